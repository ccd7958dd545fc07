"""Margin reports and the comparison slack policy used by every inequality check."""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

SLACK_REL = 1e-9


class Variant(str, enum.Enum):
    MAIN = "main"
    LCM = "lcm"
    STRONG = "strong"

    @classmethod
    def parse(cls, value) -> "Variant":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


def slack(a: float, b: float) -> float:
    return SLACK_REL * max(1.0, abs(a), abs(b))


def holds(lhs: float, relation: str, rhs: float) -> bool:
    """Evaluate ``lhs relation rhs`` under the slack policy.

    Strict relations must clear the slack; non-strict ones are allowed to
    miss by at most the slack (so exact ties computed in floating point pass).
    """
    eps = slack(lhs, rhs)
    if relation == "<":
        return lhs + eps < rhs
    if relation == ">":
        return lhs > rhs + eps
    if relation == "<=":
        return lhs <= rhs + eps
    if relation == ">=":
        return lhs + eps >= rhs
    raise ValueError(f"unknown relation {relation!r}")


@dataclass
class MarginReport:
    """One inequality ``lhs relation rhs`` evaluated at a single k.

    ``margin`` is oriented so that a positive value means the claimed
    direction holds: ``rhs - lhs`` for ``<``/``<=`` and ``lhs - rhs`` for
    ``>``/``>=``. ``passed`` is None when the claim does not apply at this k.
    """

    k: int | None
    variant: str | None
    claim: str
    relation: str
    lhs: float
    rhs: float
    margin: float
    passed: bool | None
    terms: dict = field(default_factory=dict)
    claim_ref: str = ""

    @property
    def applicable(self) -> bool:
        return self.passed is not None

    def to_dict(self) -> dict:
        return asdict(self)


def check(claim: str, lhs: float, relation: str, rhs: float, *, k=None, variant=None,
          terms=None, claim_ref="", applicable=True) -> MarginReport:
    lhs = float(lhs)
    rhs = float(rhs)
    margin = rhs - lhs if relation in ("<", "<=") else lhs - rhs
    passed = holds(lhs, relation, rhs) if applicable else None
    v = variant.value if isinstance(variant, Variant) else variant
    return MarginReport(k=k, variant=v, claim=claim, relation=relation, lhs=lhs, rhs=rhs,
                        margin=margin, passed=passed, terms=dict(terms or {}),
                        claim_ref=claim_ref)


def check_log(claim: str, lhs: float, relation: str, rhs: float, **kw) -> MarginReport:
    """Compare two positive quantities through their logarithms.

    The absolute floor of the slack policy swamps values far below 1e-9;
    in log space the slack becomes relative to the quantities themselves.
    """
    if lhs <= 0 or rhs <= 0:
        raise ValueError("log-space comparison needs positive sides")
    terms = {**kw.pop("terms", {}), "lhs_raw": float(lhs), "rhs_raw": float(rhs)}
    return check(claim + "[log]", math.log(lhs), relation, math.log(rhs), terms=terms, **kw)


def all_pass(reports) -> bool:
    return all(r.passed is not False for r in reports)


def failures(reports) -> list[MarginReport]:
    return [r for r in reports if r.passed is False]
