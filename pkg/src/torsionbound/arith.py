"""Exact integer arithmetic: factorizations, Euler phi, integer splits,
primitive roots, prime counting and the explicit phi lower-bound constant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable

import numpy as np
from sympy import factorint, isprime

from torsionbound import _kernels
from torsionbound._interval import frac as iv_frac, ivprec, lower as iv_lower, upper as iv_upper
from torsionbound.errors import TailNotCertified

FACTOR_CAP = 2**63 - 1
DEFAULT_THRESHOLD = 37
PHI_GRID_BITS = 20
PI_EXACT_LIMIT = 10**10


@dataclass(frozen=True)
class FactoredInt:
    """A positive integer together with its prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("FactoredInt requires a positive integer")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors!r} do not multiply to {self.value}")

    @classmethod
    def from_factors(cls, factors: Iterable[tuple[int, int]]) -> FactoredInt:
        merged: dict[int, int] = {}
        for p, e in factors:
            if e:
                merged[p] = merged.get(p, 0) + e
        items = tuple(sorted(merged.items()))
        return cls(math.prod(p**e for p, e in items), items)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def valuation(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def __int__(self):
        return self.value

    def __mul__(self, other: FactoredInt) -> FactoredInt:
        return FactoredInt.from_factors(self.factors + other.factors)


def as_factored(n: int | FactoredInt) -> FactoredInt:
    return n if isinstance(n, FactoredInt) else factorize(n)


def factorize(n: int) -> FactoredInt:
    n = int(n)
    if not 1 <= n <= FACTOR_CAP:
        raise ValueError(f"factorize expects 1 <= n <= {FACTOR_CAP}, got {n}")
    return FactoredInt(n, tuple(sorted(factorint(n).items())))


def factorize_unbounded(n: int) -> FactoredInt:
    """Factor integers beyond the 64-bit cap (used for smooth audit inputs)."""
    n = int(n)
    if n < 1:
        raise ValueError("expected a positive integer")
    return FactoredInt(n, tuple(sorted(factorint(n).items())))


def euler_phi(n: int | FactoredInt) -> int:
    f = as_factored(n)
    return math.prod(p ** (e - 1) * (p - 1) for p, e in f.factors)


def threshold_split(n: int | FactoredInt, threshold: int = DEFAULT_THRESHOLD) -> tuple[FactoredInt, FactoredInt]:
    """Split n = A*B with every prime of A at most ``threshold`` and every prime of B above it."""
    f = as_factored(n)
    low = FactoredInt.from_factors((p, e) for p, e in f.factors if p <= threshold)
    high = FactoredInt.from_factors((p, e) for p, e in f.factors if p > threshold)
    return low, high


def squarefull_split(m: int | FactoredInt) -> tuple[FactoredInt, FactoredInt]:
    """Split m = m1*m2 into its square-full part m1 and square-free part m2."""
    f = as_factored(m)
    full = FactoredInt.from_factors((p, e) for p, e in f.factors if e >= 2)
    free = FactoredInt.from_factors((p, e) for p, e in f.factors if e == 1)
    return full, free


def coprime_split(m: int | FactoredInt, d: int | FactoredInt) -> tuple[FactoredInt, FactoredInt]:
    """Split m = n1*n2 with n1 supported on primes dividing d and n2 coprime to d."""
    f = as_factored(m)
    dd = int(d)
    n1 = FactoredInt.from_factors((p, e) for p, e in f.factors if dd % p == 0)
    n2 = FactoredInt.from_factors((p, e) for p, e in f.factors if dd % p != 0)
    return n1, n2


def multiplicative_order(g: int, n: int) -> int:
    if math.gcd(g, n) != 1:
        raise ValueError(f"{g} is not a unit mod {n}")
    order = euler_phi(n)
    for p, _ in factorize(order).factors:
        while order % p == 0 and pow(g, order // p, n) == 1:
            order //= p
    return order


def least_primitive_root(ell: int) -> int:
    if ell < 3 or not isprime(ell):
        raise ValueError(f"least_primitive_root expects an odd prime, got {ell}")
    qs = factorize(ell - 1).primes
    g = 2
    while any(pow(g, (ell - 1) // q, ell) == 1 for q in qs):
        g += 1
    return g


def unit_group_generators(n: int) -> list[int]:
    """A small generating set of (Z/nZ)^x, chosen greedily in increasing order."""
    if n <= 2:
        return [1] if n == 2 else []
    units = [u for u in range(1, n) if math.gcd(u, n) == 1]
    target = len(units)
    gens: list[int] = []
    span = {1}
    for u in units:
        if u in span:
            continue
        gens.append(u)
        frontier = list(span)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = x * g % n
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(span) == target:
            break
    return gens


def primes_upto(x: int) -> list[int]:
    if x < 2:
        return []
    sieve = np.ones(x + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(x) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return [int(p) for p in np.flatnonzero(sieve)]


def prime_pi(x: int) -> int:
    """Exact prime count #{p <= x}."""
    x = int(x)
    if x < 1:
        raise ValueError("prime_pi expects x >= 1")
    return int(_kernels.prime_pi(x))


# Rosser & Schoenfeld (1962): pi(x) < 1.25506 x / ln x for x > 1.
_RS_PI_CONSTANT = Fraction(125506, 100000)


def prime_pi_upper(x: int, exact_limit: int = PI_EXACT_LIMIT) -> tuple[int, bool]:
    """An integer P >= pi(x); exact (flag True) when x <= exact_limit."""
    x = int(x)
    if x <= exact_limit:
        return prime_pi(x), True
    prec = 64 + x.bit_length()
    with ivprec(prec) as iv:
        bound = iv.mpf(_RS_PI_CONSTANT.numerator) / _RS_PI_CONSTANT.denominator * iv.mpf(x) / iv.log(iv.mpf(x))
        hi = iv_upper(bound)
    return math.floor(hi), False


def as_fraction(x, max_denominator: int = 10**6) -> Fraction:
    """Exact rational for a decimal-like input (0.05 -> 1/20)."""
    if isinstance(x, Fraction):
        q = x
    elif isinstance(x, int):
        q = Fraction(x)
    else:
        q = Fraction(str(x))
    if q.denominator > max_denominator:
        raise ValueError(f"{x!r} needs a denominator above {max_denominator}")
    return q


# ---------------------------------------------------------------------------
# explicit constant b with b * n^(1-eps) < phi(n) for all n >= 1


@dataclass(frozen=True)
class PhiBoundConstant:
    epsilon: Fraction
    b: Fraction
    scan_limit: int
    tail_certified: bool
    method: str = "rosser-schoenfeld"
    minimizer: int = 1
    detail: dict = field(default_factory=dict, compare=False)

    def holds_at(self, n: int, phi_n: int) -> bool:
        """Exact test of b * n^(1-eps) < phi(n)."""
        return _ratio_exceeds(self.b, self.epsilon, n, phi_n)


def _ratio_exceeds(b: Fraction, eps: Fraction, n: int, phi_n: int) -> bool:
    # b * n^((q-p)/q) < phi  <=>  (b_num)^q * n^(q-p) < (b_den * phi)^q
    p, q = eps.numerator, eps.denominator
    return b.numerator**q * n ** (q - p) < (b.denominator * phi_n) ** q


def _ratio_lower(eps: Fraction, n: int, phi_n: int, prec: int = 128) -> Fraction:
    with ivprec(prec) as iv:
        r = iv.mpf(phi_n) * iv.power(iv.mpf(n), -(iv_frac(1 - eps)))
        return iv_lower(r)


def _grid_below(x: Fraction, bits: int = PHI_GRID_BITS) -> Fraction:
    """Largest k / 2^bits strictly below x."""
    k = math.ceil(x * 2**bits) - 1
    return Fraction(k, 2**bits)


def _prime_product_minimum(eps: Fraction) -> tuple[int, Fraction]:
    """inf_n phi(n)/n^(1-eps) = prod of p^eps (1-1/p) over primes where that factor is < 1.

    phi(n)/n^(1-eps) = prod_{p^k || n} p^(k eps) (1 - 1/p) >= prod_{p | n} p^eps (1 - 1/p);
    the factor is increasing in p, so the infimum is attained at the primorial of the
    initial run of primes with factor below 1. Returns that primorial and a rigorous
    lower bound for the infimum.
    """
    a, q = eps.numerator, eps.denominator
    primorial = 1
    primes = []
    p = 2
    while True:
        # p^(a/q) (p-1)/p < 1  <=>  p^a (p-1)^q < p^q
        if p**a * (p - 1) ** q >= p**q:
            break
        primes.append(p)
        primorial *= p
        p += 1
        while not isprime(p):
            p += 1
    phi_m = math.prod(pp - 1 for pp in primes)
    return primorial, _ratio_lower(eps, primorial, phi_m)


_EULER_GAMMA_UPPER = Fraction(57721566490153287, 10**17)  # gamma < 0.57721566490153287


def _rs_tail_holds(b: Fraction, eps: Fraction, x0: int) -> bool:
    """Certify b * n^(1-eps) < phi(n) for every real n >= x0 analytically.

    Uses n/phi(n) < e^gamma lnln n + 3/lnln n (n >= 3). With y = ln n and t = ln y,
    F(y) = eps*y - ln(b*g(t)), g(t) = e^gamma t + 3/t. For t >= 1.3, g is increasing and
    g'/g <= 1/(y t), so F' >= eps - 1/(y ln y) > 0 once y ln y > 1/eps. Hence F(y0) > 0
    at y0 = ln x0 together with those two conditions gives F > 0 on [y0, inf).
    """
    if x0 < 16:
        return False
    with ivprec(128) as iv:
        y = iv.log(iv.mpf(x0))
        t = iv.log(y)
        if not (t > iv.mpf(13) / 10):
            return False
        if not (y * t > 1 / iv_frac(eps)):
            return False
        g = iv.exp(iv_frac(_EULER_GAMMA_UPPER)) * t + 3 / t
        F = iv_frac(eps) * y - iv.log(iv_frac(b) * g)
        return bool(F > 0)


def totients_upto(limit: int) -> np.ndarray:
    return _kernels.totients(int(limit))


def _verify_scan(b: Fraction, eps: Fraction, phis: np.ndarray) -> int | None:
    """First n <= len(phis)-1 with b*n^(1-eps) >= phi(n), or None."""
    n = np.arange(1, phis.size, dtype=np.float64)
    lhs = float(b) * n ** (1.0 - float(eps))
    rhs = phis[1:].astype(np.float64)
    rel = (rhs - lhs) / rhs
    close = np.flatnonzero(rel < 1e-9)
    for idx in close:
        m = int(idx) + 1
        if not _ratio_exceeds(b, eps, m, int(phis[m])):
            return m
    return None


def phi_lower_constant(
    epsilon,
    scan_limit: int | None = None,
    method: str = "rosser-schoenfeld",
    max_scan: int = 10**7,
) -> PhiBoundConstant:
    """Largest b on the grid k/2^20 with b * n^(1-eps) < phi(n) for every n >= 1.

    method="rosser-schoenfeld": b is read off an exhaustive scan up to ``scan_limit``
    and the range beyond is certified with the explicit n/phi(n) bound. When
    ``scan_limit`` is None the smallest power of 10 that certifies is used.

    method="prime-product": b sits below the exact infimum (see
    ``_prime_product_minimum``), which covers every n; the scan is a cross-check.
    """
    eps = as_fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")

    if method == "prime-product":
        limit = scan_limit or 10**5
        minimizer, inf_lower = _prime_product_minimum(eps)
        b = _grid_below(min(inf_lower, Fraction(1)))
        phis = totients_upto(limit)
        bad = _verify_scan(b, eps, phis)
        if bad is not None:  # pragma: no cover - would contradict the product argument
            raise AssertionError(f"prime-product constant fails at n={bad}")
        return PhiBoundConstant(eps, b, limit, True, method, minimizer,
                                {"infimum_lower": str(inf_lower)})

    if method != "rosser-schoenfeld":
        raise ValueError(f"unknown method {method!r}")

    if scan_limit is None:
        limit = 100
        while limit <= max_scan:
            try:
                return phi_lower_constant(eps, limit, method)
            except TailNotCertified:
                limit *= 10
        raise TailNotCertified(f"no scan limit up to {max_scan} certifies epsilon={eps}")

    limit = int(scan_limit)
    phis = totients_upto(limit)
    n = np.arange(1, limit + 1, dtype=np.float64)
    ratios = phis[1:] / n ** (1.0 - float(eps))
    order = np.argsort(ratios, kind="stable")[:8]
    best = min((_ratio_lower(eps, int(i) + 1, int(phis[int(i) + 1])), int(i) + 1) for i in order)
    b = _grid_below(min(best[0], Fraction(1)))
    while (bad := _verify_scan(b, eps, phis)) is not None:
        b = _grid_below(min(b, _ratio_lower(eps, bad, int(phis[bad]))))
    if not _rs_tail_holds(b, eps, limit):
        raise TailNotCertified(f"tail bound does not dominate beyond n={limit} for epsilon={eps}")
    return PhiBoundConstant(eps, b, limit, True, method, best[1])


def lcm(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)
