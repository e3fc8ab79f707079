"""Exception types shared across the package."""


class CapacityError(RuntimeError):
    """A word would exceed the materialization cap.

    ``required`` carries the exact (big-integer) length that was asked for.
    """

    def __init__(self, required, cap, what="word"):
        self.required = required
        self.cap = cap
        super().__init__(f"{what} of length {required} exceeds materialization cap {cap}")


class StabilizationError(RuntimeError):
    """Per-length factor counts changed at the safety recheck depth."""


class PreconditionError(ValueError):
    """An operation's hypotheses fail on the given input.

    ``where`` is the offending ``(n, i)`` position when one can be named.
    """

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{message} (at stage {where[0]}, index {where[1]})"
        super().__init__(message)


class NormalizationError(PreconditionError):
    """The spec has a nonzero final spacer ``s[n, r_n]`` where zero is required.

    Rewriting a presentation into one with vanishing final spacers is
    Danilenko's normalization of rank-one presentations; it is not provided
    here.
    """


class ClassificationError(RuntimeError):
    """A right-special word matched none (or more than one) of the known families."""


class TableExhaustedError(ValueError):
    """A finite growth-function table ran out before a parameter could be chosen."""
