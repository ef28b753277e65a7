import time

from .errors import BudgetExceeded


class Deadline:
    """Wall-clock budget; ``None`` seconds means unlimited."""

    def __init__(self, seconds: float | None = None) -> None:
        self.seconds = seconds
        self.expires = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.expires is not None and time.monotonic() > self.expires

    def check(self, what: str = "search") -> None:
        if self.expired():
            raise BudgetExceeded(f"{what} exceeded the time budget of {self.seconds}s")


UNLIMITED = Deadline(None)
