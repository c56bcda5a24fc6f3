"""Exception types shared across the package."""


class InconsistencyError(RuntimeError):
    """A mathematical postcondition failed; the computed numbers cannot be trusted."""


class GenerationError(InconsistencyError):
    """The quadrics found do not generate the ideal in degrees 2 and 3."""


class InconclusiveError(RuntimeError):
    """A saturation search ran out of window or degree budget before stabilising."""
