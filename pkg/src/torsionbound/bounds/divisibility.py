"""Divisibility requirements for large-prime torsion, degree lower bounds on X1(n)/X0(n),
and the integer splits used to assemble the exponent bound."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from sympy import divisors, isprime

from torsionbound.arith import (
    DEFAULT_THRESHOLD,
    FactoredInt,
    as_factored,
    coprime_split,
    euler_phi,
    squarefull_split,
    threshold_split,
)
from torsionbound.errors import HypothesisError


@dataclass(frozen=True)
class DivisibilityRequirement:
    ell: int
    k: int
    r: int
    required_divisor: int

    def satisfied_by(self, field_degree: int) -> bool:
        return field_degree % self.required_divisor == 0


def divisibility_requirement(ell: int, k: int, r: int = 0, threshold: int = DEFAULT_THRESHOLD) -> DivisibilityRequirement:
    """Degree divisor forced by a point of order ell^k when the curve is ell^r-isogenous to a rational one."""
    if not isprime(ell):
        raise ValueError(f"{ell} is not prime")
    if ell <= threshold:
        raise HypothesisError(f"requirement only holds for primes above {threshold}, got {ell}")
    if k < 1 or r < 0:
        raise ValueError("need k >= 1 and r >= 0")
    twice = euler_phi(ell**k) * ell ** max(r - 1, 0) * (ell + 1)
    return DivisibilityRequirement(ell, k, r, twice // 2)


def admissible_large_torsion(d: int, threshold: int = DEFAULT_THRESHOLD) -> list[tuple[int, int]]:
    """Primes ell > threshold (with the largest k) whose order-ell^k requirement divides d.

    Since (ell - 1) divides 2d whenever the requirement divides d, only
    ell = e + 1 for divisors e of 2d need to be tried.
    """
    d = int(d)
    if d < 1:
        raise ValueError("degree must be positive")
    out = []
    for e in divisors(2 * d):
        ell = e + 1
        if ell <= threshold or not isprime(ell):
            continue
        k = 0
        while d % divisibility_requirement(ell, k + 1, 0, threshold).required_divisor == 0:
            k += 1
        if k:
            out.append((ell, k))
    return out


def _large_prime_factors(n: int | FactoredInt, threshold: int) -> FactoredInt:
    f = as_factored(n)
    small = [p for p in f.primes if p <= threshold]
    if small:
        raise HypothesisError(f"primes {small} do not exceed {threshold}")
    return f


def degree_lower_bound_x1(n: int | FactoredInt, k_bad: int, threshold: int = DEFAULT_THRESHOLD) -> Fraction:
    """1/2 * 24^-k * n^2 * prod (1 - 1/ell^2) over ell | n."""
    f = _large_prime_factors(n, threshold)
    if not 0 <= k_bad <= len(f.factors):
        raise ValueError(f"k_bad must lie in [0, {len(f.factors)}]")
    out = Fraction(f.value**2, 2 * 24**k_bad)
    for p in f.primes:
        out *= Fraction(p * p - 1, p * p)
    return out


def degree_lower_bound_x0(n: int | FactoredInt, k_bad: int, threshold: int = DEFAULT_THRESHOLD) -> Fraction:
    """24^-k * n * prod (1 + 1/ell) over ell | n."""
    f = _large_prime_factors(n, threshold)
    if not 0 <= k_bad <= len(f.factors):
        raise ValueError(f"k_bad must lie in [0, {len(f.factors)}]")
    out = Fraction(f.value, 24**k_bad)
    for p in f.primes:
        out *= Fraction(p + 1, p)
    return out


@dataclass(frozen=True)
class ExponentSplit:
    N: FactoredInt
    M: FactoredInt   # primes <= threshold
    m: FactoredInt   # primes > threshold
    m1: FactoredInt  # square-full part of m
    m2: FactoredInt  # square-free part of m
    n1: FactoredInt  # part of m2 dividing the isogeny degree
    n2: FactoredInt  # part of m2 coprime to it

    def as_dict(self) -> dict[str, int]:
        return {k: getattr(self, k).value for k in ("N", "M", "m", "m1", "m2", "n1", "n2")}


def assemble_exponent_split(N: int | FactoredInt, deg_phi: int | FactoredInt,
                            threshold: int = DEFAULT_THRESHOLD) -> ExponentSplit:
    f = as_factored(N)
    if int(deg_phi) < 1:
        raise ValueError("isogeny degree must be positive")
    M, m = threshold_split(f, threshold)
    m1, m2 = squarefull_split(m)
    n1, n2 = coprime_split(m2, deg_phi)
    assert M.value * m1.value * n1.value * n2.value == f.value
    assert math.gcd(n2.value, int(deg_phi)) == 1 and int(deg_phi) % n1.value == 0
    return ExponentSplit(f, M, m, m1, m2, n1, n2)
