"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for data, fit, and query failures (CLI exit code 2)."""


class DatasetError(ToolkitError):
    """CSV ingestion or dataset statistics failure."""


class FitError(ToolkitError):
    """Curve fitting failed or its preconditions were not met."""


class ModelFormatError(ToolkitError):
    """A serialized model document is malformed or of the wrong kind."""


class QueryError(ToolkitError):
    """A model query hit an unphysical or out-of-contract condition."""
