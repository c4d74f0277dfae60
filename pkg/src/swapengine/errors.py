"""Exception hierarchy shared by all modules."""


class SwapEngineError(ValueError):
    """Base class for every domain error raised by the package."""


class InvalidBath(SwapEngineError):
    pass


class InvalidPopulation(SwapEngineError):
    pass


class LengthMismatch(SwapEngineError):
    pass


class SupportMismatch(SwapEngineError):
    pass


class XOutOfRange(SwapEngineError):
    pass


class DimMismatch(SwapEngineError):
    pass


class InvalidDensityMatrix(SwapEngineError):
    pass


class AsymmetricPhi(SwapEngineError):
    pass


class DegenerateCycle(SwapEngineError):
    """Raised when x*R == 0: every population is stationary."""


class NoConvergence(SwapEngineError):
    pass


class UltraHotTemperature(SwapEngineError):
    """Raised by quantities that need a finite temperature (beta > 0)."""


class AmbiguousMaximum(SwapEngineError):
    pass


class ZeroChange(SwapEngineError):
    pass


class PreconditionUnmet(SwapEngineError):
    pass


class NotAnEngine(SwapEngineError):
    pass


class DegenerateSpectrum(SwapEngineError):
    pass


class ConfigError(SwapEngineError):
    """Malformed CLI configuration; ``line`` points into the source file when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
