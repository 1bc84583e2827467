"""Exception types shared across matchlab."""


class MatchlabError(Exception):
    """Base class for all matchlab errors."""


class InputError(MatchlabError, ValueError):
    """Malformed input or a violated precondition."""


class CapExceeded(MatchlabError):
    """An exhaustive computation would exceed its configured size cap."""

    def __init__(self, what, size, cap):
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class SoundnessError(MatchlabError, AssertionError):
    """A construction guaranteed to succeed did not.

    Raised instead of silently accepting output that contradicts a
    proven statement (for example a greedy matching that turns out not
    to be acyclic).
    """


class ClaimFailed(MatchlabError):
    """A construction that is claimed to work does not work on this input."""
