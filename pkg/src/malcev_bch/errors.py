"""Exception hierarchy.

The CLI maps these onto exit codes: configuration problems exit with 2,
resource caps with 3.
"""


class MalcevBCHError(Exception):
    """Base class for all library errors."""


class ConfigurationError(MalcevBCHError, ValueError):
    """Invalid model name, parameter, backend mix or serialized config."""


class DomainError(MalcevBCHError, ValueError):
    """An index or argument lies outside the admissible domain of a model."""


class UnsupportedModelError(MalcevBCHError):
    """The operation needs structure the model does not have (e.g. an ambient product)."""


class ResourceError(MalcevBCHError):
    """A size cap (tree leaves, truncation order) would be exceeded."""
