"""Exception types shared across the package."""


class GestureBotError(Exception):
    """Base class for all package errors."""


# --- signal / trace errors -------------------------------------------------

class NoZeroCrossing(GestureBotError):
    """Button released before the dominant axis crossed zero."""


class InsufficientSamples(GestureBotError):
    """Fewer than the required number of samples after the press."""


class UnknownClass(GestureBotError):
    """A class label outside the 12 trainable gesture/posture classes."""


class ParseError(GestureBotError):
    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class ClockError(GestureBotError):
    """Non-increasing timestamps in a trace file."""


# --- recognizer errors -----------------------------------------------------

class EmptyClass(GestureBotError):
    def __init__(self, missing):
        super().__init__("no training patterns for: %s" % ", ".join(missing))
        self.missing = tuple(missing)


class WrongWindowLength(GestureBotError):
    """Window does not contain exactly 4 samples."""


class DivergenceDetected(GestureBotError):
    """Training MSE became non-finite or regressed past the guard factor."""


# --- geometry errors -------------------------------------------------------

class NotATranslation(GestureBotError):
    pass


class NotARotation(GestureBotError):
    pass


class Degenerate(GestureBotError):
    """Pose outside the workspace shell."""


# --- simulator / session errors --------------------------------------------

class MotorsOff(GestureBotError):
    pass


class NotStopped(GestureBotError):
    """Guard reset requested while the guard is not in the Stopped phase."""


class EmptyProgram(GestureBotError):
    pass


class GuardStopped(GestureBotError):
    """Force guard tripped during program replay."""


class UnknownVerb(GestureBotError):
    pass


class BindFailure(GestureBotError):
    pass
