"""Named property suites run by ``torsionbound verify``."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

import mpmath
import numpy as np
from sympy import primerange

from torsionbound.arith import euler_phi, factorize
from torsionbound.bounds import evaluate_bound, synthesize_certificate, verify_certificate
from torsionbound.gl2 import (
    DEFAULT_CAP,
    GroupKind,
    MatrixGroup,
    borel0_index,
    borel1_index,
    cartan_ns_plus_elements,
    closed_form_order,
    generate,
    gl2_order,
    standard_subgroup,
    subgroup_index,
)
from torsionbound.orbits import (
    ActionKind,
    count_cyclic_subgroups,
    count_exact_order_vectors,
    orbit_partition,
    random_scalar_supergroup,
    verify_scalar_divisibility,
)

SUITES = ("GROUP_ORDERS", "SCALAR_DIV", "CARTAN_DEG", "CERT_REPLAY", "ALL")
CARTAN_PRIMES = (41, 43, 47, 53)
REPLAY_EPSILONS = ("0.4", "0.25", "0.1", "0.05")


@dataclass(frozen=True)
class PropertyResult:
    name: str
    ok: bool
    detail: str = ""
    seconds: float = 0.0


@dataclass
class SuiteReport:
    name: str
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def first_failure(self) -> PropertyResult | None:
        return next((r for r in self.results if not r.ok), None)

    def to_json(self, timings: bool = True) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "properties": [
                {"name": r.name, "ok": r.ok, "detail": r.detail, **({"seconds": round(r.seconds, 3)} if timings else {})}
                for r in self.results
            ],
        }


def _timed(name: str, fn: Callable[[], tuple[bool, str]]) -> PropertyResult:
    t = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failed property, not a crashed suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return PropertyResult(name, ok, detail, time.perf_counter() - t)


def prime_powers_under(cap: int) -> list[tuple[int, int]]:
    """All (ell, k) with #GL2(Z/ell^k) <= cap."""
    out = []
    for ell in primerange(2, 10**4):
        ell = int(ell)
        if gl2_order(ell) > cap:
            break
        k = 1
        while gl2_order(ell**k) <= cap:
            out.append((ell, k))
            k += 1
    return out


def group_order_properties(cap: int = DEFAULT_CAP) -> Iterator[PropertyResult]:
    for ell, k in prime_powers_under(cap):
        n = ell**k

        def check(ell=ell, k=k, n=n):
            full = standard_subgroup(GroupKind.FULL, n, cap)
            b0 = standard_subgroup(GroupKind.BOREL0, n, cap)
            b1 = standard_subgroup(GroupKind.BOREL1, n, cap)
            closed = ell ** (4 * k - 3) * (ell - 1) * (ell * ell - 1)
            facts = {
                "full": full.order == closed,
                "b0": b0.order == closed_form_order(GroupKind.BOREL0, n),
                "b1": b1.order == closed_form_order(GroupKind.BOREL1, n),
                "b0_index": subgroup_index(b0) == borel0_index(ell, k) == ell ** (k - 1) * (ell + 1),
                "b1_index": subgroup_index(b1) == borel1_index(ell, k) == ell ** (2 * k - 2) * (ell * ell - 1),
            }
            bad = [key for key, v in facts.items() if not v]
            return not bad, f"#GL2={full.order}, #B0={b0.order}, #B1={b1.order}" + (f"; failed {bad}" if bad else "")

        yield _timed(f"group_orders[{ell}^{k}]", check)


def cartan_properties(primes=CARTAN_PRIMES, cap: int = DEFAULT_CAP) -> Iterator[PropertyResult]:
    for ell in primes:
        def check(ell=ell):
            g = standard_subgroup(GroupKind.CARTAN_NS_PLUS, ell, cap)
            closure = generate(g.generators, cap)
            pts = orbit_partition(g, ell, ActionKind.POINT)
            subs = orbit_partition(g, ell, ActionKind.SUBGROUP)
            index2 = MatrixGroup(ell, g.generators[:1])
            facts = {
                "order": g.order == 2 * (ell * ell - 1),
                "generated_equals_displayed": np.array_equal(closure.codes, cartan_ns_plus_elements(ell)),
                "point_orbits": set(pts.orbit_sizes) == {ell * ell - 1},
                "subgroup_orbits": set(subs.orbit_sizes) == {ell + 1},
                "point_total": pts.total == count_exact_order_vectors(ell),
                "subgroup_total": subs.total == count_cyclic_subgroups(ell),
                "nonabelian": not g.is_abelian(),
                "index2_abelian": index2.is_abelian() and index2.order == ell * ell - 1,
                "checks": all(c.verdict == "PASS" for c in pts.divisibility_checks + subs.divisibility_checks),
            }
            bad = [key for key, v in facts.items() if not v]
            return not bad, (f"order {g.order}, point orbits {pts.multiset}, subgroup orbits {subs.multiset}"
                             + (f"; failed {bad}" if bad else ""))

        yield _timed(f"cartan[{ell}]", check)


def scalar_div_properties(n_max: int = 60, random_groups: int = 100, seed: int = 0) -> Iterator[PropertyResult]:
    rng = np.random.default_rng(seed)
    for n in range(2, n_max + 1):
        def check(n=n):
            groups = [standard_subgroup(GroupKind.SCALARS, n), standard_subgroup(GroupKind.FULL, n, lazy=True)]
            groups += [random_scalar_supergroup(n, rng) for _ in range(random_groups)]
            phi = euler_phi(factorize(n))
            for i, g in enumerate(groups):
                v = verify_scalar_divisibility(g, n)
                if v.status != "PASS":
                    return False, f"group #{i}: {v.status} (witness {v.witness}, orbit {v.orbit_size}, phi={phi})"
            return True, f"{len(groups)} groups, phi({n})={phi}"

        yield _timed(f"scalar_div[{n}]", check)


def _independent_z(eps: Fraction) -> int:
    with mpmath.workprec(64 + int(10 / eps)):
        return int(mpmath.floor(mpmath.power(24, 1 + 1 / mpmath.mpf(eps.numerator) * eps.denominator))) + 1


def cert_replay_properties(epsilons=REPLAY_EPSILONS) -> Iterator[PropertyResult]:
    for e in epsilons:
        def check(e=e):
            cert = synthesize_certificate(e)
            checks = verify_certificate(cert)
            bad = [name for name, ok in checks if not ok]
            if cert.Z != _independent_z(cert.epsilon):
                bad.append("Z_formula")
            bounds = [evaluate_bound(cert, d) for d in (1, 2, 3, 10, 1000)]
            if not all(a[0].ln_upper < b[0].ln_upper and a[1].ln_upper < b[1].ln_upper
                       for a, b in zip(bounds, bounds[1:])):
                bad.append("monotone_in_d")
            if evaluate_bound(cert, 1) != evaluate_bound(cert, 1):
                bad.append("deterministic")
            return not bad, (f"Z={cert.Z}, pi_Z={cert.pi_Z}, b={cert.b}, exponents {cert.exponent_exp}/"
                             f"{cert.exponent_order}, {len(cert.trace)} steps" + (f"; failed {bad}" if bad else ""))

        yield _timed(f"cert_replay[{e}]", check)


def run_suite(name: str, cap: int = DEFAULT_CAP, seed: int = 0, stop_on_failure: bool = False) -> SuiteReport:
    name = name.strip().upper()
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    parts = {
        "GROUP_ORDERS": lambda: group_order_properties(cap),
        "CARTAN_DEG": lambda: cartan_properties(cap=cap),
        "SCALAR_DIV": lambda: scalar_div_properties(seed=seed),
        "CERT_REPLAY": lambda: cert_replay_properties(),
    }
    chosen = list(parts) if name == "ALL" else [name]
    report = SuiteReport(name)
    for key in chosen:
        for res in parts[key]():
            report.results.append(res)
            if stop_on_failure and not res.ok:
                return report
    return report
