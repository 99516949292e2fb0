"""Exception hierarchy shared across the package."""


class FrameError(Exception):
    pass


class DimensionMismatch(FrameError, ValueError):
    pass


class NotPositive(FrameError, ValueError):
    pass


class NotModuleLinear(FrameError):
    """A matrix function of an operator's representation left the A-linear space."""


class NotInGLPlus(FrameError, ValueError):
    pass


class CommutationViolated(FrameError):
    def __init__(self, message, index=None, residual=None):
        super().__init__(message)
        self.index = index
        self.residual = residual


class SingularPencil(FrameError):
    pass


class NotAFrame(FrameError):
    pass


class NotConverged(FrameError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CertificationError(FrameError):
    """A numerically certified inequality failed on a sample."""
