"""Check records and reports with deterministic JSON rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"
STATUSES = (PASS, FAIL, INCONCLUSIVE)


@dataclass
class Check:
    id: str
    claim: str
    status: str
    detail: Any = None

    def to_json(self) -> dict:
        out = {"id": self.id, "claim": self.claim, "status": self.status}
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    suite: str
    checks: list[Check] = field(default_factory=list)

    def add(self, id: str, claim: str, ok: bool | str, detail: Any = None) -> Check:
        if any(c.id == id for c in self.checks):
            raise ValueError(f"duplicate check id {id!r}")
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        if status not in STATUSES:
            raise ValueError(f"bad status {status!r}")
        c = Check(id, claim, status, detail)
        self.checks.append(c)
        return c

    def run(self, id: str, claim: str, fn: Callable[[], bool | str | tuple]) -> Check:
        """Record fn's verdict; an exception is a failure with its message as detail."""
        try:
            res = fn()
        except Exception as exc:  # a crashing check is a failing check
            return self.add(id, claim, False, f"{type(exc).__name__}: {exc}")
        if isinstance(res, tuple):
            return self.add(id, claim, res[0], res[1])
        return self.add(id, claim, res)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.add(prefix + c.id, c.claim, c.status, c.detail)

    @property
    def passed(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    @property
    def failed(self) -> bool:
        return any(c.status == FAIL for c in self.checks)

    def counts(self) -> dict[str, int]:
        return {s: sum(c.status == s for c in self.checks) for s in STATUSES}

    def to_json(self) -> dict:
        return {"suite": self.suite, "counts": self.counts(), "checks": [c.to_json() for c in self.checks]}


def _default(o):
    if isinstance(o, Fraction):
        return str(o.numerator) if o.denominator == 1 else f"{o.numerator}/{o.denominator}"
    if isinstance(o, (set, frozenset)):
        return sorted(o, key=str)
    if hasattr(o, "to_json"):
        return o.to_json()
    return str(o)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False, default=_default) + "\n"
