"""Arai-constant tables and the finite-support bound n^2 | 2 prod ell^(2+a) (d0-1)! d."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from torsionbound.arith import FactoredInt, as_factored
from torsionbound.errors import SchemaError


@dataclass(frozen=True)
class AraiConfig:
    """a(d0, ell) caps on the ell-adic valuation of the adelic index. Values are external input."""

    d0: int = 1
    entries: dict[int, int] = field(default_factory=dict)
    provenance: str = "empty default table"

    def __post_init__(self):
        if self.d0 < 1:
            raise SchemaError("d0 must be positive")
        for ell, a in self.entries.items():
            if a < 0:
                raise SchemaError(f"a({self.d0}, {ell}) must be nonnegative")

    def value(self, ell: int, strict: bool = True) -> int:
        if ell in self.entries:
            return self.entries[ell]
        if strict:
            raise KeyError(f"no Arai constant for ell={ell} (d0={self.d0})")
        return 0

    def covers(self, primes) -> bool:
        return all(p in self.entries for p in primes)

    def to_json(self) -> dict:
        return {"d0": self.d0, "entries": {str(k): v for k, v in sorted(self.entries.items())},
                "provenance": self.provenance}

    @classmethod
    def from_json(cls, data: dict) -> AraiConfig:
        try:
            entries = {int(k): int(v) for k, v in data.get("entries", {}).items()}
            return cls(int(data.get("d0", 1)), entries, str(data.get("provenance", "")))
        except (TypeError, ValueError, AttributeError) as exc:
            raise SchemaError(f"malformed Arai table: {exc}") from None


def load_arai(path: str | Path) -> AraiConfig:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    return AraiConfig.from_json(data)


@dataclass(frozen=True)
class FiniteSupportVerdict:
    status: str            # PASS or FAIL
    n: int
    cap_squared: int       # 2 prod ell^(2+a) (d0-1)! d ; the bound is n <= sqrt(cap_squared)
    divides: bool          # whether n^2 actually divides cap_squared
    conditional: bool      # True when some a-values were defaulted

    @property
    def cap(self) -> Fraction:
        """Floor of the real cap, which is all an integer n can use."""
        return Fraction(math.isqrt(self.cap_squared))


def finite_support_bound(n: int | FactoredInt, d0: int, config: AraiConfig, d: int,
                         strict: bool = True) -> FiniteSupportVerdict:
    """PASS iff n <= sqrt(2 prod_{ell | n} ell^(2+a(d0, ell)) (d0-1)! d)."""
    f = as_factored(n)
    if d < 1 or d0 < 1:
        raise ValueError("degrees must be positive")
    if config.d0 != d0:
        raise SchemaError(f"table is for d0={config.d0}, requested d0={d0}")
    cap_sq = 2 * math.factorial(d0 - 1) * d
    for p in f.primes:
        cap_sq *= p ** (2 + config.value(p, strict))
    ok = f.value**2 <= cap_sq
    return FiniteSupportVerdict("PASS" if ok else "FAIL", f.value, cap_sq, cap_sq % f.value**2 == 0,
                                not config.covers(f.primes))
