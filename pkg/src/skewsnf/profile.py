"""Multiplicities of p-power elementary divisors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class DivisorProfile:
    """Map ``i -> e_i``: how often ``p^i`` occurs as an elementary divisor.

    Only nonzero multiplicities are stored, so two profiles compare equal
    exactly when they agree on every exponent.
    """

    p: int
    mult: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for i, e in self.mult.items():
            i, e = int(i), int(e)
            if i < 0 or e < 0:
                raise ValueError(f"invalid multiplicity entry {i}: {e}")
            if e:
                clean[i] = e
        object.__setattr__(self, "mult", dict(sorted(clean.items())))

    def __getitem__(self, i: int) -> int:
        return self.mult.get(i, 0)

    def __hash__(self):
        return hash((self.p, tuple(self.mult.items())))

    @property
    def total(self) -> int:
        return sum(self.mult.values())

    @property
    def valuation(self) -> int:
        """Sum of i * e_i, the p-adic valuation of the product of the divisors."""
        return sum(i * e for i, e in self.mult.items())

    def to_json(self) -> str:
        body = {"p": self.p, "multiplicities": {str(i): e for i, e in self.mult.items()}}
        return json.dumps(body)

    @classmethod
    def from_json(cls, text: str) -> DivisorProfile:
        body = json.loads(text)
        return cls(int(body["p"]), {int(k): int(v) for k, v in body["multiplicities"].items()})
