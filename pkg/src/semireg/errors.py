"""Exception types shared across the package."""


class TooLargeError(RuntimeError):
    """An object exceeds a configured enumeration or size ceiling.

    Raised instead of truncating results.  The CLI maps it to a distinct
    message so size caps are never confused with failed checks.
    """

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
        self.what = what
        self.size = size
        self.limit = limit


class NotAutomorphismError(ValueError):
    """A permutation that was required to preserve a graph does not."""
