"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def trial_division(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def phi_brute(n: int) -> int:
    return sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


def sieve(limit: int) -> list[int]:
    if limit < 2:
        return []
    flags = [True] * (limit + 1)
    flags[0] = flags[1] = False
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            for q in range(p * p, limit + 1, p):
                flags[q] = False
    return [i for i, f in enumerate(flags) if f]


def order_mod(g: int, n: int) -> int:
    k, x = 1, g % n
    while x != 1:
        x = x * g % n
        k += 1
    return k


def all_invertible(n: int):
    for a, b, c, d in itertools.product(range(n), repeat=4):
        if math.gcd((a * d - b * c) % n, n) == 1:
            yield (a, b, c, d)


def mul(x, y, n):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % n, (a * f + b * h) % n, (c * e + d * g) % n, (c * f + d * h) % n)


def closure_brute(gens, n):
    """Closure by repeated multiplication of the whole set (quadratic, fine for tiny groups)."""
    elems = {(1, 0, 0, 1)}
    frontier = set(elems)
    while frontier:
        new = {mul(x, g, n) for x in frontier for g in gens} - elems
        elems |= new
        frontier = new
    return elems


def act(m, u, v, n):
    a, b, c, d = m
    return ((a * u + b * v) % n, (c * u + d * v) % n)


def exact_order_brute(n: int):
    return [(u, v) for u in range(n) for v in range(n)
            if all((k * u % n, k * v % n) != (0, 0) for k in range(1, n))]


def subgroup_of(u, v, n):
    return frozenset((k * u % n, k * v % n) for k in range(n))


def orbit_sizes_brute(elements, n, subgroups=False):
    """Orbit sizes by applying every group element (not just generators)."""
    pts = exact_order_brute(n)
    if subgroups:
        items = {subgroup_of(u, v, n) for u, v in pts}
        seen, sizes = set(), []
        for s in sorted(items, key=sorted):
            if s in seen:
                continue
            u, v = next(iter(x for x in s if math.gcd(math.gcd(*x), n) == 1))
            orb = {subgroup_of(*act(m, u, v, n), n) for m in elements}
            seen |= orb
            sizes.append(len(orb))
        return sorted(sizes)
    seen, sizes = set(), []
    for p in pts:
        if p in seen:
            continue
        orb = {act(m, *p, n) for m in elements}
        seen |= orb
        sizes.append(len(orb))
    return sorted(sizes)


def degree_x1_oracle(primes_exps, k_bad):
    n = math.prod(p**e for p, e in primes_exps)
    val = Fraction(1, 2) / 24**k_bad * n * n
    for p, _ in primes_exps:
        val *= 1 - Fraction(1, p * p)
    return val
