"""Pass/fail results returned by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive check.

    ``witness`` holds the first violating tuple (in the documented element
    order) when ``ok`` is false; ``checked``/``total`` count the instances
    that were examined for the headline identity.
    """

    ok: bool
    message: str
    witness: tuple | None = None
    checked: int = 0
    total: int = 0
    info: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, message: str, total: int = 0, **info) -> "Verdict":
        return cls(True, message, None, total, total, info)

    @classmethod
    def failed(cls, message: str, witness: tuple | None = None, checked: int = 0, total: int = 0, **info) -> "Verdict":
        return cls(False, message, witness, checked, total, info)

    def to_json(self) -> dict:
        out = {"ok": self.ok, "message": self.message, "checked": self.checked, "total": self.total}
        if self.witness is not None:
            out["witness"] = [_plain(w) for w in self.witness]
        if self.info:
            out["info"] = {k: _plain(v) for k, v in sorted(self.info.items())}
        return out


def _plain(x):
    if isinstance(x, (bool, int, float, str)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)
