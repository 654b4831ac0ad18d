"""Structured pass/fail records for inequality checks."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

TOL_CHECK = 1e-6

CSV_HEADER = ("check_id", "subject", "lhs", "rhs", "margin", "pass")


def _num(x):
    """JSON-safe float: inf/nan become strings."""
    if x is None:
        return None
    x = float(x)
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


@dataclass
class Check:
    check_id: str
    subject: str
    lhs: float
    rhs: float
    margin: float
    passed: bool
    locations: list = field(default_factory=list)
    note: str = ""

    def to_dict(self):
        out = {
            "check_id": self.check_id,
            "subject": self.subject,
            "lhs": _num(self.lhs),
            "rhs": _num(self.rhs),
            "margin": _num(self.margin),
            "pass": self.passed,
            "locations": [[_num(complex(z).real), _num(complex(z).imag)] for z in self.locations],
        }
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def add(self, check_id, subject, lhs, rhs, margin, locations=(), tol=TOL_CHECK, note="", passed=None):
        """Append an inequality check; ``margin >= -tol`` passes unless ``passed`` is given."""
        if passed is None:
            passed = bool(margin >= -tol) if math.isfinite(margin) else False
        chk = Check(check_id, subject, float(lhs), float(rhs), float(margin), bool(passed), list(locations), note)
        self.checks.append(chk)
        return chk

    def extend(self, other: VerificationReport):
        self.checks.extend(other.checks)
        for k, v in other.details.items():
            self.details[k] = v
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.checks)
        return {"total": len(self.checks), "passed": n_pass, "failed": len(self.checks) - n_pass}

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def worst(self, check_id=None):
        """The check with the smallest margin (optionally of one kind)."""
        pool = [c for c in self.checks if check_id is None or c.check_id == check_id]
        return min(pool, key=lambda c: c.margin) if pool else None

    def to_dict(self):
        return {"checks": [c.to_dict() for c in self.checks], "summary": self.summary}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for c in self.checks:
            w.writerow([c.check_id, c.subject, repr(c.lhs), repr(c.rhs), repr(c.margin), "true" if c.passed else "false"])
        return buf.getvalue()
