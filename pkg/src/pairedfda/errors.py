"""Exception types shared across the package."""


class PairedFdaError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(PairedFdaError):
    """Vector or matrix dimensions do not match."""


class DegenerateGrid(PairedFdaError):
    """Grid has fewer than two points or is not strictly increasing."""


class DegenerateSample(PairedFdaError):
    """Sample is too small for the requested operation."""


class PreprocessRequired(PairedFdaError):
    """Missing entries encountered where only complete data is allowed."""


class AllZeroScores(PairedFdaError):
    """Every subject score is zero; the test statistic is undefined."""


class SizeError(PairedFdaError):
    """Requested size is outside the supported range."""


class InsufficientCoverage(PairedFdaError):
    """Too few observed values to estimate a mean or covariance entry."""


class NumericalError(PairedFdaError):
    """A numerical routine failed to converge or produced invalid output."""


class EmptyCurve(PairedFdaError):
    """A subject has no observed values at all."""


class SchemaError(PairedFdaError):
    """Input file does not conform to the expected layout."""


class ManifestError(PairedFdaError):
    """Simulation manifest could not be parsed."""


class CellError(PairedFdaError):
    """A simulation cell aborted; carries the failing replicate and seed."""

    def __init__(self, message: str, replicate: int, seed: int):
        super().__init__(message)
        self.replicate = replicate
        self.seed = seed
