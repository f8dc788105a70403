"""Three-valued results for semi-decidable properties."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any


class Status(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "UnknownWithinBound"

    @property
    def exit_code(self) -> int:
        return {Status.HOLDS: 0, Status.FAILS: 1, Status.UNKNOWN: 2}[self]


@dataclass
class Verdict:
    """Outcome of a bounded check.

    ``certificate`` is set for ``HOLDS`` and must be replayable; ``counterexample``
    is set for ``FAILS``. ``bound`` records the search bound used and
    ``complete`` whether the search was exhaustive (finite category, complete
    amalgam search, or a registered class oracle).
    """

    status: Status
    certificate: Any = None
    counterexample: Any = None
    bound: int | None = None
    complete: bool = False
    notes: list[str] = field(default_factory=list)

    @classmethod
    def holds(cls, certificate=None, **kw) -> "Verdict":
        return cls(Status.HOLDS, certificate=certificate, **kw)

    @classmethod
    def fails(cls, counterexample=None, **kw) -> "Verdict":
        return cls(Status.FAILS, counterexample=counterexample, **kw)

    @classmethod
    def unknown(cls, **kw) -> "Verdict":
        return cls(Status.UNKNOWN, **kw)

    @property
    def ok(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAILS

    def __bool__(self) -> bool:
        return self.ok

    def summary(self) -> dict:
        return {
            "status": self.status.value,
            "bound": self.bound,
            "complete": self.complete,
            "notes": list(self.notes),
        }
