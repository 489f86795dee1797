"""Orbits of matrix groups on exact-order vectors and cyclic subgroups of (Z/nZ)^2.

A point of exact order n on E[n] is a vector (u, v) with gcd(u, v, n) = 1; its
orbit size under the mod-n image is the relative degree [F(P):F]. Cyclic
order-n subgroups play the same role for isogeny kernels.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from torsionbound import _kernels
from torsionbound.arith import euler_phi, factorize
from torsionbound.errors import EnumerationCapExceeded, ModulusMismatch
from torsionbound.gl2 import DEFAULT_CAP, GroupKind, MatrixGroup, contains_scalars

# deg(x) on X1 is half the orbit size up to the +-1 ambiguity; recorded in every report.
POINT_DEGREE_FACTOR = "1/2"


class ActionKind(str, Enum):
    POINT = "POINT"
    SUBGROUP = "SUBGROUP"


@dataclass(frozen=True, order=True)
class TorsionVector:
    modulus: int
    u: int
    v: int

    def __post_init__(self):
        object.__setattr__(self, "u", self.u % self.modulus)
        object.__setattr__(self, "v", self.v % self.modulus)

    @property
    def order(self) -> int:
        n = self.modulus
        return n // math.gcd(self.u, self.v, n)

    @property
    def code(self) -> int:
        return self.u * self.modulus + self.v


@dataclass(frozen=True, order=True)
class CyclicSubgroupLabel:
    """A cyclic order-n subgroup, named by its lexicographically least generator."""

    modulus: int
    generator: TorsionVector

    @classmethod
    def of(cls, x: TorsionVector) -> CyclicSubgroupLabel:
        n = x.modulus
        if x.order != n:
            raise ValueError(f"{x} does not have exact order {n}")
        best = min(((t * x.u) % n, (t * x.v) % n) for t in range(1, n) if math.gcd(t, n) == 1) if n > 2 \
            else (x.u, x.v)
        return cls(n, TorsionVector(n, *best))


@dataclass(frozen=True)
class Check:
    statement: str
    verdict: str  # PASS, FAIL, NOT_APPLICABLE
    detail: str = ""


@dataclass(frozen=True)
class OrbitReport:
    group: MatrixGroup = field(repr=False)
    modulus: int
    kind: ActionKind
    orbit_sizes: tuple[int, ...]
    representatives: tuple[TorsionVector, ...] = field(repr=False)
    divisibility_checks: tuple[Check, ...] = ()
    degree_factor: str = POINT_DEGREE_FACTOR

    @property
    def multiset(self) -> dict[int, int]:
        return dict(sorted(Counter(self.orbit_sizes).items()))

    @property
    def total(self) -> int:
        return sum(self.orbit_sizes)


# ---------------------------------------------------------------------------


def count_exact_order_vectors(n: int) -> int:
    f = factorize(n)
    return math.prod(p ** (2 * e - 2) * (p * p - 1) for p, e in f.factors)


def count_cyclic_subgroups(n: int) -> int:
    f = factorize(n)
    return math.prod(p ** (e - 1) * (p + 1) for p, e in f.factors)


def _exact_order_mask(n: int) -> np.ndarray:
    u, v = np.divmod(np.arange(n * n, dtype=np.int64), n)
    return np.gcd(np.gcd(u, v), n) == 1


def exact_order_vectors(n: int, cap: int = DEFAULT_CAP) -> list[TorsionVector]:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n * n > 4 * cap:
        raise EnumerationCapExceeded(cap, n * n)
    codes = np.flatnonzero(_exact_order_mask(n))
    if codes.size > cap:
        raise EnumerationCapExceeded(cap, int(codes.size))
    return [TorsionVector(n, int(c) // n, int(c) % n) for c in codes]


def _canonical_codes(n: int) -> np.ndarray:
    """For each vector code, the code of its subgroup's least generator (-1 if not exact order)."""
    u, v = np.divmod(np.arange(n * n, dtype=np.int64), n)
    best = np.full(n * n, n * n, dtype=np.int64)
    for t in range(1, n):
        if math.gcd(t, n) == 1:
            np.minimum(best, (t * u % n) * n + (t * v % n), out=best)
    best[~_exact_order_mask(n)] = -1
    return best


def cyclic_subgroups(n: int, cap: int = DEFAULT_CAP) -> list[CyclicSubgroupLabel]:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n * n > 4 * cap:
        raise EnumerationCapExceeded(cap, n * n)
    canon = _canonical_codes(n)
    reps = np.unique(canon[canon >= 0])
    return [CyclicSubgroupLabel(n, TorsionVector(n, int(c) // n, int(c) % n)) for c in reps]


def _vector_images(group: MatrixGroup) -> np.ndarray:
    n = group.modulus
    u, v = np.divmod(np.arange(n * n, dtype=np.int64), n)
    rows = [((g.a * u + g.b * v) % n) * n + (g.c * u + g.d * v) % n for g in group.generators]
    if not rows:
        rows = [np.arange(n * n, dtype=np.int64)]
    return np.stack(rows)


def _point_labels(group: MatrixGroup) -> tuple[np.ndarray, np.ndarray]:
    """(exact-order codes, orbit label per code) for the point action."""
    n = group.modulus
    labels = _kernels.components(_vector_images(group))
    codes = np.flatnonzero(_exact_order_mask(n))
    return codes, labels[codes]


def _subgroup_labels(group: MatrixGroup) -> tuple[np.ndarray, np.ndarray]:
    """(canonical subgroup codes, orbit label per subgroup) for the subgroup action."""
    n = group.modulus
    canon = _canonical_codes(n)
    reps = np.unique(canon[canon >= 0])
    index = np.full(n * n, -1, dtype=np.int64)
    index[reps] = np.arange(reps.size)
    images = _vector_images(group)[:, reps]
    perm = index[canon[images]]
    labels = _kernels.components(perm)
    return reps, labels


def orbit(group: MatrixGroup, x: TorsionVector | CyclicSubgroupLabel) -> list:
    """Breadth-first orbit of x under the group's generators."""
    if group.modulus != x.modulus:
        raise ModulusMismatch(f"group is mod {group.modulus}, element is mod {x.modulus}")
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in group.generators:
            if isinstance(y, CyclicSubgroupLabel):
                z = CyclicSubgroupLabel.of(TorsionVector(y.modulus, *g.act(y.generator.u, y.generator.v)))
            else:
                z = TorsionVector(y.modulus, *g.act(y.u, y.v))
            if z not in seen:
                seen.add(z)
                queue.append(z)
    return sorted(seen)


def orbit_size(group: MatrixGroup, x: TorsionVector | CyclicSubgroupLabel) -> int:
    return len(orbit(group, x))


def stabilizer_order(group: MatrixGroup, x: TorsionVector) -> int:
    """Number of enumerated elements fixing x (direct count, independent of orbit code)."""
    if group.modulus != x.modulus:
        raise ModulusMismatch("modulus mismatch")
    n = group.modulus
    c = group.codes
    d = c % n
    cc = (c // n) % n
    b = (c // (n * n)) % n
    a = c // (n * n * n)
    fixed = ((a * x.u + b * x.v) % n == x.u) & ((cc * x.u + d * x.v) % n == x.v)
    return int(np.count_nonzero(fixed))


def _sizes(labels: np.ndarray, codes: np.ndarray, n: int) -> tuple[tuple[int, ...], tuple[TorsionVector, ...]]:
    uniq, first, counts = np.unique(labels, return_index=True, return_counts=True)
    order = np.argsort(codes[first], kind="stable")
    reps = tuple(TorsionVector(n, int(codes[first[i]]) // n, int(codes[first[i]]) % n) for i in order)
    return tuple(int(counts[i]) for i in order), reps


def orbit_partition(group: MatrixGroup, n: int | None = None, kind: ActionKind | str = ActionKind.POINT,
                    cap: int = DEFAULT_CAP) -> OrbitReport:
    n = group.modulus if n is None else int(n)
    if n != group.modulus:
        raise ModulusMismatch(f"group is mod {group.modulus}, requested n={n}")
    if n * n > 4 * cap:
        raise EnumerationCapExceeded(cap, n * n)
    kind = ActionKind(kind)
    if kind is ActionKind.POINT:
        codes, labels = _point_labels(group)
        sizes, reps = _sizes(labels, codes, n)
    else:
        codes, labels = _subgroup_labels(group)
        sizes, reps = _sizes(labels, codes, n)

    checks = []
    if kind is ActionKind.POINT and contains_scalars(group):
        phi = euler_phi(n)
        bad = [s for s in sizes if s % phi]
        checks.append(Check("SCALAR_DIV", "FAIL" if bad else "PASS",
                            f"phi({n})={phi}" + (f"; non-divisible sizes {sorted(set(bad))}" if bad else "")))
    if group.kind is GroupKind.CARTAN_NS_PLUS and n == group.modulus:
        want = n * n - 1 if kind is ActionKind.POINT else n + 1
        ok = all(s == want for s in sizes)
        checks.append(Check("CARTAN_DEG", "PASS" if ok else "FAIL", f"expected every orbit of size {want}"))
    if group.is_enumerated:
        ok = all(group.order % s == 0 for s in sizes)
        checks.append(Check("ORBIT_DIVIDES_ORDER", "PASS" if ok else "FAIL", f"|G|={group.order}"))
    return OrbitReport(group, n, kind, sizes, reps, tuple(checks))


@dataclass(frozen=True)
class ScalarDivisibilityVerdict:
    status: str  # PASS, FAIL, PRECONDITION_UNMET
    phi: int
    witness: TorsionVector | None = None
    orbit_size: int | None = None


def verify_scalar_divisibility(group: MatrixGroup, n: int | None = None) -> ScalarDivisibilityVerdict:
    """phi(n) divides every exact-order-n point orbit when the group contains the scalars."""
    n = group.modulus if n is None else int(n)
    if n != group.modulus:
        raise ModulusMismatch(f"group is mod {group.modulus}, requested n={n}")
    phi = euler_phi(n)
    if not contains_scalars(group):
        return ScalarDivisibilityVerdict("PRECONDITION_UNMET", phi)
    codes, labels = _point_labels(group)
    sizes, reps = _sizes(labels, codes, n)
    for s, r in zip(sizes, reps):
        if s % phi:
            return ScalarDivisibilityVerdict("FAIL", phi, r, s)
    return ScalarDivisibilityVerdict("PASS", phi)


def random_scalar_supergroup(n: int, rng: np.random.Generator, extra: int | None = None) -> MatrixGroup:
    """A random subgroup of GL2(Z/nZ) generated by the scalars and 1-2 random matrices.

    Half of the draws are restricted to the Borel subgroup so that small,
    non-transitive groups occur regularly.
    """
    from torsionbound.gl2 import Mat2, scalar_generators

    gens = list(scalar_generators(n))
    extra = int(rng.integers(1, 3)) if extra is None else extra
    borel = bool(rng.integers(0, 2))
    while extra:
        a, b, c, d = (int(x) for x in rng.integers(0, n, size=4))
        if borel:
            c = 0
        if math.gcd((a * d - b * c) % n, n) == 1:
            gens.append(Mat2(n, a, b, c, d))
            extra -= 1
    return MatrixGroup(n, gens)


def orbit_sizes_for(group: MatrixGroup, kind: ActionKind | str = ActionKind.POINT) -> Sequence[int]:
    return orbit_partition(group, kind=kind).orbit_sizes
