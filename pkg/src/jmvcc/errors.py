class DimensionError(ValueError):
    """Operands have incompatible shapes."""


class DomainError(ValueError):
    """Input holds values outside the admissible domain (negative, NaN)."""


class ParameterError(ValueError):
    """A scalar parameter is out of range."""


class DatasetError(ValueError):
    """Views of a dataset are mutually inconsistent."""
