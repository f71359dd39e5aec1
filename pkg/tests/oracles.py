"""Independent reference implementations used to check the package.

Everything here is deliberately written from the raw formulas (plain loops,
raw-moment normal equations) so it shares no code with the library under
test. Keep it that way.
"""

import math


def pearson_formula(x, y):
    """Pearson r from the raw-sums textbook formula."""
    n = len(x)
    assert n == len(y) and n >= 2
    sx = sum(x)
    sy = sum(y)
    sxx = sum(v * v for v in x)
    syy = sum(v * v for v in y)
    sxy = sum(a * b for a, b in zip(x, y))
    num = n * sxy - sx * sy
    den = math.sqrt((n * sxx - sx * sx) * (n * syy - sy * sy))
    return num / den


def pearson_matrix_formula(columns):
    """Full matrix via pearson_formula, pairwise-complete over None cells."""
    k = len(columns)
    mat = [[1.0] * k for _ in range(k)]
    for i in range(k):
        for j in range(k):
            if i == j:
                continue
            xs, ys = [], []
            for a, b in zip(columns[i], columns[j]):
                if a is not None and b is not None:
                    xs.append(a)
                    ys.append(b)
            mat[i][j] = pearson_formula(xs, ys)
    return mat


def loglinear_normal_equations(freqs, values):
    """Exponential fit a*exp(b*f) via raw-moment normal equations on ln y."""
    n = len(freqs)
    z = [math.log(v) for v in values]
    sf = sum(freqs)
    sz = sum(z)
    sff = sum(f * f for f in freqs)
    sfz = sum(f * v for f, v in zip(freqs, z))
    b = (n * sfz - sf * sz) / (n * sff - sf * sf)
    ln_a = (sz - b * sf) / n
    return math.exp(ln_a), b


def weighted_log_objective(freqs, values, weights, a, b):
    """Sum of w * (ln y - ln a - b f)^2, evaluated directly."""
    ln_a = math.log(a)
    return sum(
        w * (math.log(y) - ln_a - b * f) ** 2
        for f, y, w in zip(freqs, values, weights)
    )


def log_bin_edges(f_lo, f_hi, n_bins):
    """Logarithmically spaced bin edges over [f_lo, f_hi], endpoints exact."""
    lo = math.log10(f_lo)
    hi = math.log10(f_hi)
    edges = [10.0 ** (lo + (hi - lo) * i / n_bins) for i in range(n_bins + 1)]
    edges[0] = f_lo
    edges[-1] = f_hi
    return edges


def per_bin_max_scan(points, n_bins):
    """Exhaustive best-point scan: one max-y point per non-empty log bin.

    Ties on y inside a bin resolve to the lowest frequency, then first seen.
    Bin i covers [edge[i], edge[i+1]); the top edge belongs to the last bin.
    """
    fs = [p[0] for p in points]
    edges = log_bin_edges(min(fs), max(fs), n_bins)
    best = {}
    for f, y in points:
        idx = n_bins - 1
        for i in range(n_bins):
            if edges[i] <= f < edges[i + 1]:
                idx = i
                break
        cur = best.get(idx)
        if cur is None or y > cur[1] or (y == cur[1] and f < cur[0]):
            best[idx] = (f, y)
    return [best[i] for i in sorted(best)]
