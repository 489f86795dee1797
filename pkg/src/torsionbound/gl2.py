"""Invertible 2x2 matrices over Z/nZ and enumerated subgroups of GL2(Z/nZ)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from torsionbound import _kernels
from torsionbound.arith import (
    FactoredInt,
    as_factored,
    euler_phi,
    factorize,
    least_primitive_root,
    unit_group_generators,
)
from torsionbound.errors import ModulusMismatch, NotInvertible, UnsupportedSubgroup

DEFAULT_CAP = 5_000_000


@dataclass(frozen=True, order=True)
class Mat2:
    """[[a, b], [c, d]] over Z/nZ, entries reduced to [0, n)."""

    modulus: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        n = self.modulus
        if n < 2:
            raise ValueError("modulus must be at least 2")
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % n)
        if math.gcd(self.det, n) != 1:
            raise NotInvertible(f"determinant {self.det} is not a unit mod {n}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]], n: int) -> Mat2:
        (a, b), (c, d) = rows
        return cls(n, a, b, c, d)

    @classmethod
    def identity(cls, n: int) -> Mat2:
        return cls(n, 1, 0, 0, 1)

    @classmethod
    def scalar(cls, u: int, n: int) -> Mat2:
        return cls(n, u, 0, 0, u)

    @classmethod
    def from_code(cls, code: int, n: int) -> Mat2:
        code = int(code)
        d = code % n
        code //= n
        c = code % n
        code //= n
        return cls(n, code // n, code % n, c, d)

    @property
    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.modulus

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def code(self) -> int:
        """Canonical packing ((a*n + b)*n + c)*n + d, below n^4."""
        n = self.modulus
        return ((self.a * n + self.b) * n + self.c) * n + self.d

    def __matmul__(self, other: Mat2) -> Mat2:
        return mat_mul(self, other)

    def __pow__(self, k: int) -> Mat2:
        base = self if k >= 0 else mat_inv(self)
        k = abs(k)
        out = Mat2.identity(self.modulus)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def act(self, u: int, v: int) -> tuple[int, int]:
        """Image of the column vector (u, v)."""
        n = self.modulus
        return ((self.a * u + self.b * v) % n, (self.c * u + self.d * v) % n)

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]] mod {self.modulus})"


def mat_mul(x: Mat2, y: Mat2) -> Mat2:
    if x.modulus != y.modulus:
        raise ModulusMismatch(f"moduli {x.modulus} and {y.modulus} differ")
    return Mat2(
        x.modulus,
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def mat_inv(x: Mat2) -> Mat2:
    """Adjugate times the inverse determinant."""
    n = x.modulus
    try:
        di = pow(x.det, -1, n)
    except ValueError:
        raise NotInvertible(f"determinant {x.det} is not a unit mod {n}") from None
    return Mat2(n, x.d * di, -x.b * di, -x.c * di, x.a * di)


def gl2_order(n: int | FactoredInt) -> int:
    f = as_factored(n)
    if f.value < 2:
        raise ValueError("gl2_order expects n >= 2")
    return math.prod(p ** (4 * k - 3) * (p - 1) * (p * p - 1) for p, k in f.factors)


class GroupKind(str, Enum):
    FULL = "FULL"
    SL2 = "SL2"
    BOREL0 = "BOREL0"
    BOREL1 = "BOREL1"
    CARTAN_NS_PLUS = "CARTAN_NS_PLUS"
    SCALARS = "SCALARS"

    @classmethod
    def parse(cls, name: str | GroupKind) -> GroupKind:
        if isinstance(name, GroupKind):
            return name
        key = name.strip().upper().replace("-", "_")
        aliases = {"GL2": "FULL", "B0": "BOREL0", "B1": "BOREL1", "CARTAN": "CARTAN_NS_PLUS",
                   "CNS+": "CARTAN_NS_PLUS", "CNS_PLUS": "CARTAN_NS_PLUS", "Z": "SCALARS"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise UnsupportedSubgroup(f"unknown subgroup kind {name!r}") from None


class MatrixGroup:
    """A finite subgroup of GL2(Z/nZ) given by generators.

    The element set is enumerated by breadth-first closure on first use and
    cached as a sorted array of packed codes. ``kind`` records which named
    subgroup this is, if any.
    """

    def __init__(self, modulus: int, generators: Iterable[Mat2], kind: GroupKind | None = None,
                 cap: int = DEFAULT_CAP, codes: np.ndarray | None = None):
        self.modulus = int(modulus)
        gens = tuple(generators)
        for g in gens:
            if g.modulus != self.modulus:
                raise ModulusMismatch(f"generator {g} is not mod {self.modulus}")
        self.generators = gens
        self.kind = kind
        self.cap = cap
        if codes is not None:
            codes = np.sort(np.asarray(codes, dtype=np.int64))
            codes.setflags(write=False)
        self._codes = codes

    @property
    def is_enumerated(self) -> bool:
        return self._codes is not None

    @property
    def codes(self) -> np.ndarray:
        if self._codes is None:
            gens = [g.entries for g in self.generators] or [(1, 0, 0, 1)]
            codes = _kernels.closure(np.array(gens, dtype=np.int64), self.modulus, self.cap)
            codes.setflags(write=False)
            self._codes = codes
        return self._codes

    @property
    def order(self) -> int:
        return int(self.codes.size)

    def __len__(self):
        return self.order

    def __iter__(self) -> Iterator[Mat2]:
        n = self.modulus
        for c in self.codes:
            yield Mat2.from_code(int(c), n)

    def __contains__(self, m: Mat2) -> bool:
        if m.modulus != self.modulus:
            return False
        if m in self.generators or m == Mat2.identity(self.modulus):
            return True
        codes = self.codes
        i = int(np.searchsorted(codes, m.code))
        return i < codes.size and int(codes[i]) == m.code

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(x @ y == y @ x for i, x in enumerate(gens) for y in gens[i + 1:])

    def __repr__(self):
        label = self.kind.value if self.kind else "generated"
        size = self.order if self.is_enumerated else "?"
        return f"MatrixGroup({label}, n={self.modulus}, order={size})"


def generate(gens: Sequence[Mat2], cap: int = DEFAULT_CAP, modulus: int | None = None) -> MatrixGroup:
    """Enumerate the subgroup generated by ``gens`` (raises EnumerationCapExceeded)."""
    if not gens and modulus is None:
        raise ValueError("need at least one generator or an explicit modulus")
    n = modulus if modulus is not None else gens[0].modulus
    group = MatrixGroup(n, gens, cap=cap)
    group.codes
    return group


def _t(n):
    return Mat2(n, 1, 1, 0, 1)


def _standard_generators(kind: GroupKind, n: int) -> list[Mat2]:
    units = unit_group_generators(n)
    if kind is GroupKind.SL2:
        return [_t(n), Mat2(n, 1, 0, 1, 1)]
    if kind is GroupKind.FULL:
        return [_t(n), Mat2(n, 1, 0, 1, 1)] + [Mat2(n, u, 0, 0, 1) for u in units]
    if kind is GroupKind.BOREL0:
        return [_t(n)] + [Mat2(n, u, 0, 0, 1) for u in units] + [Mat2(n, 1, 0, 0, u) for u in units]
    if kind is GroupKind.BOREL1:
        return [_t(n)] + [Mat2(n, 1, 0, 0, u) for u in units]
    if kind is GroupKind.SCALARS:
        return [Mat2.scalar(u, n) for u in units]
    raise UnsupportedSubgroup(kind)


def cartan_ns_plus_elements(ell: int) -> np.ndarray:
    """Codes of [[a, b*eps], [b, a]] and [[a, b*eps], [-b, -a]] that are invertible mod ell."""
    eps = least_primitive_root(ell)
    a, b = np.meshgrid(np.arange(ell, dtype=np.int64), np.arange(ell, dtype=np.int64), indexing="ij")
    a, b = a.ravel(), b.ravel()
    out = []
    for c, d in ((b, a), ((-b) % ell, (-a) % ell)):
        det = (a * d - b * eps * c) % ell
        keep = det != 0
        e = [a[keep], (b * eps % ell)[keep], c[keep], d[keep]]
        out.append(((e[0] * ell + e[1]) * ell + e[2]) * ell + e[3])
    return np.unique(np.concatenate(out))


def _cartan_generators(ell: int) -> list[Mat2]:
    eps = least_primitive_root(ell)
    order = ell * ell - 1
    qs = factorize(order).primes
    ident = Mat2.identity(ell)
    for a in range(ell):
        for b in range(1, ell):
            x = Mat2(ell, a, b * eps, b, a) if (a * a - eps * b * b) % ell else None
            if x is not None and all(x ** (order // q) != ident for q in qs):
                return [x, Mat2(ell, 1, 0, 0, -1)]
    raise AssertionError("no generator of the non-split Cartan found")  # pragma: no cover


def standard_subgroup(kind: str | GroupKind, n: int, cap: int = DEFAULT_CAP, lazy: bool = False) -> MatrixGroup:
    """A named subgroup of GL2(Z/nZ), enumerated unless ``lazy``."""
    kind = GroupKind.parse(kind)
    n = int(n)
    if n < 2:
        raise UnsupportedSubgroup("modulus must be at least 2")
    if kind is GroupKind.CARTAN_NS_PLUS:
        if n < 3 or len(factorize(n).factors) != 1 or factorize(n).factors[0][1] != 1:
            raise UnsupportedSubgroup("CARTAN_NS_PLUS is only defined at odd prime level")
        group = MatrixGroup(n, _cartan_generators(n), kind, cap, codes=cartan_ns_plus_elements(n))
        if group.order > cap:
            from torsionbound.errors import EnumerationCapExceeded
            raise EnumerationCapExceeded(cap, group.order)
        return group
    group = MatrixGroup(n, _standard_generators(kind, n), kind, cap)
    if not lazy:
        group.codes
    return group


def scalar_generators(n: int) -> list[Mat2]:
    return [Mat2.scalar(u, n) for u in unit_group_generators(n)]


def contains_scalars(group: MatrixGroup) -> bool:
    """True iff u*Id lies in the group for every unit u mod n."""
    if group.kind in (GroupKind.FULL, GroupKind.SCALARS):
        return True
    return all(s in group for s in scalar_generators(group.modulus))


def subgroup_index(group: MatrixGroup) -> int:
    total = gl2_order(group.modulus)
    q, r = divmod(total, group.order)
    if r:
        raise AssertionError(f"order {group.order} does not divide #GL2(Z/{group.modulus}) = {total}")
    return q


def closed_form_order(kind: str | GroupKind, n: int) -> int:
    """Order of a named subgroup from its closed form."""
    kind = GroupKind.parse(kind)
    f = factorize(n)
    phi = euler_phi(f)
    if kind is GroupKind.FULL:
        return gl2_order(f)
    if kind is GroupKind.SL2:
        return gl2_order(f) // phi
    if kind is GroupKind.BOREL0:
        return phi * phi * n
    if kind is GroupKind.BOREL1:
        return phi * n
    if kind is GroupKind.SCALARS:
        return phi
    if kind is GroupKind.CARTAN_NS_PLUS:
        return 2 * (n * n - 1)
    raise UnsupportedSubgroup(kind)  # pragma: no cover


def borel0_index(ell: int, k: int) -> int:
    return ell ** (k - 1) * (ell + 1)


def borel1_index(ell: int, k: int) -> int:
    return ell ** (2 * k - 2) * (ell * ell - 1)
