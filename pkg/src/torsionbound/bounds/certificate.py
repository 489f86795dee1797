"""Numeric bound certificates for the torsion exponent and order.

Every constant here is astronomically large (c1 = 2^(1+L) 24^pi(Z) with pi(Z)
in the hundreds of digits for small epsilon), so each is carried as a rigorous
upper bound on its natural logarithm: an exact dyadic rational obtained from
outward-rounded interval arithmetic. Every derived quantity is produced by a
named step whose inputs and output are strings, so replay is an exact string
comparison.

Epsilon bookkeeping, for a requested eps:
  * headline point path at eps:  B < c_point d^(1/2+eps)        (needs eps < 1/2)
  * headline cyclic path at eps: B < c_cyclic d^((1+2eps)/(1-2eps))
  * exponent bound at eta = eps: point path at eta/2, cyclic path from the point
    constant at eta/10 (exponent below 1 + eta/2), M <= c_M D^(1/2), m1 <= D^2,
    [K:Q] <= 2D; total exponent 4 + eta.
  * order bound: exponent bound at eta = eps/2 times the diagonal factor
    d <= B_w D^(1 + eps/2), B_w = (1/b_w)^(1/(1-eps_w)), eps_w = eps/(2+eps);
    total exponent 5 + eps.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
from sympy import integer_nthroot, primerange

from torsionbound._interval import frac, ivprec, lower, upper
from torsionbound.arith import (
    DEFAULT_THRESHOLD,
    PI_EXACT_LIMIT,
    PhiBoundConstant,
    as_fraction,
    phi_lower_constant,
    prime_pi,
    prime_pi_upper,
)
from torsionbound.bounds.arai import AraiConfig
from torsionbound.errors import SchemaError

SCHEMA_VERSION = 1
PRECISION_MARGIN = 192


@dataclass(frozen=True)
class LogBound:
    """A positive real known through an upper bound on its natural logarithm."""

    ln_upper: Fraction

    def log10(self) -> mpmath.mpf:
        q = self.ln_upper
        with mpmath.workprec(64 + max(q.numerator.bit_length() - q.denominator.bit_length(), 0)):
            return mpmath.mpf(q.numerator) / q.denominator / mpmath.log(10)

    def admits(self, x: int) -> bool:
        """Exact test of x <= exp(ln_upper) for a positive integer x."""
        x = int(x)
        if x < 1:
            raise ValueError("expected a positive integer")
        if x == 1:
            return self.ln_upper >= 0
        prec = 96
        while True:
            with ivprec(prec) as iv:
                lx = iv.log(iv.mpf(x))
                if upper(lx) <= self.ln_upper:
                    return True
                if lower(lx) > self.ln_upper:
                    return False
            prec *= 2

    def __str__(self):
        return f"10^{mpmath.nstr(self.log10(), 7)}"

    def to_json(self) -> dict:
        return {"ln_upper": _fstr(self.ln_upper), "log10_approx": mpmath.nstr(self.log10(), 7)}

    @classmethod
    def from_json(cls, data) -> LogBound:
        return cls(_parse_fraction(data["ln_upper"]))


def _fstr(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def _parse_fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError):
        raise SchemaError(f"not an exact rational: {s!r}") from None


# ---------------------------------------------------------------------------
# step registry


@dataclass(frozen=True)
class TraceStep:
    id: str
    name: str
    formula: str
    inputs: dict[str, str]
    output: str

    def to_json(self) -> dict:
        return {"id": self.id, "name": self.name, "formula": self.formula,
                "inputs": dict(self.inputs), "output": self.output}


_STEPS: dict[str, tuple[str, Callable[..., str]]] = {}


def _step(name: str, formula: str):
    def register(fn):
        _STEPS[name] = (formula, fn)
        return fn
    return register


def _eps_parts(epsilon: str) -> tuple[int, int]:
    e = Fraction(epsilon)
    return e.numerator, e.denominator


@_step("z_select", "Z = floor(24^(1+1/eps)) + 1")
def _z_select(epsilon: str) -> str:
    p, q = _eps_parts(epsilon)
    root, _ = integer_nthroot(24 ** (p + q), p)
    return str(int(root) + 1)


@_step("z_condition", "Z^p > 24^(p+q) >= (Z-1)^p for eps = p/q, i.e. log_{Z/24}(24) < eps with Z minimal")
def _z_condition(epsilon: str, Z: str) -> str:
    p, q = _eps_parts(epsilon)
    z = int(Z)
    target = 24 ** (p + q)
    return "true" if z**p > target >= (z - 1) ** p else "false"


@lru_cache(maxsize=64)
def _cached_pi(x: int) -> int:
    return prime_pi(x)


@_step("prime_pi", "pi(x), exact count")
def _prime_pi(x: str) -> str:
    return str(_cached_pi(int(x)))


@_step("prime_pi_upper", "floor(1.25506 x / ln x) >= pi(x)")
def _prime_pi_upper(x: str) -> str:
    return str(prime_pi_upper(int(x), exact_limit=0)[0])


@_step("log_ratio", "L = ln 24 / ln(Z/24), rounded up")
def _log_ratio(Z: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        return _fstr(upper(iv.log(iv.mpf(24)) / iv.log(iv.mpf(int(Z)) / 24)))


@_step("ln_c1", "ln c1 = (1+L) ln 2 + pi(Z) ln 24, rounded up")
def _ln_c1(L: str, pi: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        return _fstr(upper((1 + frac(Fraction(L))) * iv.log(iv.mpf(2)) + iv.mpf(int(pi)) * iv.log(iv.mpf(24))))


@_step("phi_constant", "largest grid b with b n^(1-eps) < phi(n) for all n")
def _phi_constant(epsilon: str, method: str, scan_limit: str) -> str:
    return _fstr(phi_lower_constant(Fraction(epsilon), int(scan_limit), method=method).b)


@_step("ln_c_point", "ln c_point = (ln c1 - ln b) / (2 - eps), rounded up")
def _ln_c_point(ln_c1: str, b: str, epsilon: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        num = frac(Fraction(ln_c1)) - iv.log(frac(Fraction(b)))
        return _fstr(upper(num / frac(2 - Fraction(epsilon))))


@_step("ln_c_cyclic", "ln c_cyclic = ln c_point / (1/2 - eps), rounded up")
def _ln_c_cyclic(ln_c_point: str, epsilon: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        return _fstr(upper(frac(Fraction(ln_c_point)) / frac(Fraction(1, 2) - Fraction(epsilon))))


@_step("ln_c_uniform", "ln c_M = (ln 2 + ln (d0-1)! + sum_{ell <= T} (2 + a(d0, ell)) ln ell) / 2, rounded up")
def _ln_c_uniform(threshold: str, d0: str, arai: str, prec: str) -> str:
    entries = {int(k): int(v) for k, v in json.loads(arai).items()}
    with ivprec(int(prec)) as iv:
        total = iv.log(iv.mpf(2)) + iv.log(iv.mpf(math.factorial(int(d0) - 1)))
        for ell in primerange(2, int(threshold) + 1):
            total += (2 + entries.get(int(ell), 0)) * iv.log(iv.mpf(int(ell)))
        return _fstr(upper(total / 2))


@_step("exp_exponent", "4 + eta, after checking (1+eta/2)/(2-eta/2) <= 1/2+eta/2 and (1+eta/5)/(1-eta/5) <= 1+eta/2")
def _exp_exponent(eta: str) -> str:
    h = Fraction(eta)
    point, cyc = h / 2, h / 10
    if (1 + point) / (2 - point) > Fraction(1, 2) + point:
        return "invalid"
    if (1 + 2 * cyc) / (1 - 2 * cyc) > 1 + h / 2:
        return "invalid"
    return _fstr(Fraction(1, 2) + 2 + (1 + h / 2) + (Fraction(1, 2) + h / 2))


@_step("ln_c_exp", "ln c_exp = ln c_M + ln c_cyclic(eta/10) + ln c_point(eta/2) + (3/2 + eta) ln 2, rounded up")
def _ln_c_exp(ln_c_uniform: str, ln_c_cyclic: str, ln_c_point: str, eta: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        total = frac(Fraction(ln_c_uniform)) + frac(Fraction(ln_c_cyclic)) + frac(Fraction(ln_c_point))
        total += frac(Fraction(3, 2) + Fraction(eta)) * iv.log(iv.mpf(2))
        return _fstr(upper(total))


@_step("ln_c_diag", "ln B_w = -ln b_w / (1 - eps_w), rounded up")
def _ln_c_diag(b: str, epsilon: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        return _fstr(upper(-iv.log(frac(Fraction(b))) / frac(1 - Fraction(epsilon))))


@_step("order_exponent", "exp exponent + 1/(1 - eps_w)")
def _order_exponent(exp_exponent: str, eps_w: str) -> str:
    return _fstr(Fraction(exp_exponent) + 1 / (1 - Fraction(eps_w)))


@_step("ln_c_order", "ln c_order = ln B_w + ln c_exp, rounded up")
def _ln_c_order(ln_c_diag: str, ln_c_exp: str, prec: str) -> str:
    with ivprec(int(prec)) as iv:
        return _fstr(upper(frac(Fraction(ln_c_diag)) + frac(Fraction(ln_c_exp))))


def run_step(name: str, inputs: dict[str, str]) -> str:
    try:
        _, fn = _STEPS[name]
    except KeyError:
        raise SchemaError(f"unknown trace step {name!r}") from None
    return fn(**inputs)


class _TraceBuilder:
    def __init__(self):
        self.steps: list[TraceStep] = []
        self.values: dict[str, str] = {}

    def add(self, sid: str, name: str, **inputs) -> str:
        if sid in self.values:
            return self.values[sid]
        raw = {k: str(v) for k, v in inputs.items()}
        resolved = {k: self.values[v[1:]] if v.startswith("@") else v for k, v in raw.items()}
        out = run_step(name, resolved)
        self.steps.append(TraceStep(sid, name, _STEPS[name][0], raw, out))
        self.values[sid] = out
        return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundCertificate:
    epsilon: Fraction
    Z: int
    pi_Z: int
    pi_Z_exact: bool
    c1: LogBound | None
    b: Fraction | None
    c_point: LogBound | None
    c_cyclic: LogBound | None
    c_exp: LogBound | None
    c_order: LogBound | None
    exponent_point: Fraction | None
    exponent_cyclic: Fraction | None
    exponent_exp: Fraction | None
    exponent_order: Fraction | None
    threshold: int
    arai: AraiConfig
    conditional: bool
    trace: tuple[TraceStep, ...] = field(repr=False)
    metadata: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def z_only(self) -> bool:
        return self.c_point is None

    def step(self, sid: str) -> TraceStep:
        for s in self.trace:
            if s.id == sid:
                return s
        raise KeyError(sid)


def _check_eps(eps: Fraction, z_only: bool):
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if not z_only and eps >= Fraction(1, 2):
        raise ValueError("the point-order path needs 0 < epsilon < 1/2; pass z_only=True for Z selection only")


def _z_block(tr: _TraceBuilder, prefix: str, eps: Fraction) -> tuple[str, str, bool]:
    z = tr.add(f"{prefix}Z", "z_select", epsilon=_fstr(eps))
    if tr.add(f"{prefix}Z_condition", "z_condition", epsilon=_fstr(eps), Z=f"@{prefix}Z") != "true":
        raise AssertionError(f"Z selection failed at eps={eps}")  # pragma: no cover
    exact = int(z) <= PI_EXACT_LIMIT
    tr.add(f"{prefix}pi_Z", "prime_pi" if exact else "prime_pi_upper", x=f"@{prefix}Z")
    return z, tr.values[f"{prefix}pi_Z"], exact


def _prec(pi: str) -> int:
    return PRECISION_MARGIN + int(pi).bit_length()


def _b_step(tr: _TraceBuilder, prefix: str, eps: Fraction, source: PhiBoundConstant | None = None) -> str:
    if source is None:
        return tr.add(f"{prefix}b", "phi_constant", epsilon=_fstr(eps), method="prime-product", scan_limit=10**5)
    return tr.add(f"{prefix}b", "phi_constant", epsilon=_fstr(eps), method=source.method,
                  scan_limit=source.scan_limit)


def _point_path(tr: _TraceBuilder, prefix: str, eps: Fraction, source: PhiBoundConstant | None = None) -> int:
    """Adds Z, pi_Z, L, c1, b, c_point at eps; returns the precision used."""
    _, pi, _ = _z_block(tr, prefix, eps)
    prec = _prec(pi)
    tr.add(f"{prefix}L", "log_ratio", Z=f"@{prefix}Z", prec=prec)
    tr.add(f"{prefix}c1", "ln_c1", L=f"@{prefix}L", pi=f"@{prefix}pi_Z", prec=prec)
    _b_step(tr, prefix, eps, source)
    tr.add(f"{prefix}c_point", "ln_c_point", ln_c1=f"@{prefix}c1", b=f"@{prefix}b", epsilon=_fstr(eps), prec=prec)
    return prec


def _cyclic_path(tr: _TraceBuilder, prefix: str, eps: Fraction, source: PhiBoundConstant | None = None) -> int:
    prec = _point_path(tr, prefix, eps, source)
    tr.add(f"{prefix}c_cyclic", "ln_c_cyclic", ln_c_point=f"@{prefix}c_point", epsilon=_fstr(eps), prec=prec)
    return prec


def _exp_path(tr: _TraceBuilder, prefix: str, eta: Fraction, threshold: int, arai: AraiConfig) -> int:
    if not 0 < eta < 1:
        raise ValueError("the exponent bound needs 0 < eta < 1")
    p1 = _point_path(tr, f"{prefix}point.", eta / 2)
    p2 = _cyclic_path(tr, f"{prefix}cyclic.", eta / 10)
    prec = max(p1, p2)
    entries = json.dumps({str(k): v for k, v in sorted(arai.entries.items())}, separators=(",", ":"))
    tr.add(f"{prefix}c_uniform", "ln_c_uniform", threshold=threshold, d0=arai.d0, arai=entries, prec=prec)
    if tr.add(f"{prefix}exponent", "exp_exponent", eta=_fstr(eta)) == "invalid":
        raise AssertionError("exponent bookkeeping failed")  # pragma: no cover
    tr.add(f"{prefix}c_exp", "ln_c_exp", ln_c_uniform=f"@{prefix}c_uniform",
           ln_c_cyclic=f"@{prefix}cyclic.c_cyclic", ln_c_point=f"@{prefix}point.c_point",
           eta=_fstr(eta), prec=prec)
    return prec


def synthesize_certificate(epsilon, b_source: PhiBoundConstant | None = None, *,
                           threshold: int = DEFAULT_THRESHOLD, arai: AraiConfig | None = None,
                           z_only: bool = False) -> BoundCertificate:
    """Run the constant-synthesis recipe at epsilon and record every step.

    ``b_source`` fixes the headline b; sub-path constants always use the
    prime-product method, which is exact for every epsilon. ``z_only`` stops
    after selecting Z and counting primes (for epsilon >= 1/2).
    """
    eps = as_fraction(epsilon)
    _check_eps(eps, z_only)
    if b_source is not None and b_source.epsilon != eps:
        raise ValueError(f"b_source is for epsilon={b_source.epsilon}, not {eps}")
    arai = arai or AraiConfig()
    if arai.d0 != 1:
        raise ValueError("the exponent assembly uses d0 = 1 (isogenous to a curve over Q)")
    tr = _TraceBuilder()
    small_primes = list(primerange(2, threshold + 1))
    conditional = not arai.covers(small_primes)
    meta = {
        "epsilon_adjustment": "exponent bound built at eta=eps from point path eta/2 and cyclic path eta/10; "
                              "order bound uses the exponent bound at eps/2 and the diagonal factor at eps/(2+eps)",
        "arai_provenance": arai.provenance,
        "conditional_on_arai_table": conditional,
    }

    if z_only:
        z, pi, exact = _z_block(tr, "", eps)
        return BoundCertificate(eps, int(z), int(pi), exact, None, None, None, None, None, None,
                                None, None, None, None, threshold, arai, conditional, tuple(tr.steps), meta)

    _cyclic_path(tr, "", eps, b_source)
    _exp_path(tr, "exp.", eps, threshold, arai)
    _exp_path(tr, "order.exp.", eps / 2, threshold, arai)
    eps_w = eps / (2 + eps)
    _b_step(tr, "order.diag.", eps_w)
    tr.add("order.diag.c_diag", "ln_c_diag", b="@order.diag.b", epsilon=_fstr(eps_w), prec=PRECISION_MARGIN)
    order_prec = max(_prec(tr.values["order.exp.point.pi_Z"]), _prec(tr.values["order.exp.cyclic.pi_Z"]))
    tr.add("order.c_order", "ln_c_order", ln_c_diag="@order.diag.c_diag", ln_c_exp="@order.exp.c_exp",
           prec=order_prec)
    tr.add("order.exponent", "order_exponent", exp_exponent="@order.exp.exponent", eps_w=_fstr(eps_w))

    v = tr.values
    cert = BoundCertificate(
        epsilon=eps, Z=int(v["Z"]), pi_Z=int(v["pi_Z"]), pi_Z_exact=int(v["Z"]) <= PI_EXACT_LIMIT,
        c1=LogBound(Fraction(v["c1"])), b=Fraction(v["b"]),
        c_point=LogBound(Fraction(v["c_point"])), c_cyclic=LogBound(Fraction(v["c_cyclic"])),
        c_exp=LogBound(Fraction(v["exp.c_exp"])), c_order=LogBound(Fraction(v["order.c_order"])),
        exponent_point=Fraction(1, 2) + eps,
        exponent_cyclic=(1 + 2 * eps) / (1 - 2 * eps),
        exponent_exp=Fraction(v["exp.exponent"]), exponent_order=Fraction(v["order.exponent"]),
        threshold=threshold, arai=arai, conditional=conditional, trace=tuple(tr.steps), metadata=meta,
    )
    return cert


# ---------------------------------------------------------------------------
# replay and verification


@dataclass(frozen=True)
class ReplayReport:
    ok: bool
    steps: int
    mismatches: tuple[str, ...] = ()


def replay_trace(cert: BoundCertificate | list[TraceStep]) -> ReplayReport:
    """Re-run every recorded step from its inputs and compare outputs as strings."""
    steps = cert.trace if isinstance(cert, BoundCertificate) else tuple(cert)
    values: dict[str, str] = {}
    bad = []
    for s in steps:
        try:
            resolved = {k: values[v[1:]] if v.startswith("@") else v for k, v in s.inputs.items()}
            if s.name not in _STEPS:
                raise SchemaError(f"unknown step {s.name}")
            if _STEPS[s.name][0] != s.formula:
                bad.append(f"{s.id}: formula text differs from the registered one")
            out = run_step(s.name, resolved)
        except (KeyError, SchemaError, ValueError, TypeError) as exc:
            bad.append(f"{s.id}: cannot evaluate ({exc})")
            continue
        if out != s.output:
            bad.append(f"{s.id}: recorded {s.output[:40]} but replay gives {out[:40]}")
        values[s.id] = s.output
    return ReplayReport(not bad, len(steps), tuple(bad))


def verify_certificate(cert: BoundCertificate) -> list[tuple[str, bool]]:
    """Replay plus consistency of the headline fields with the trace."""
    checks = []
    rep = replay_trace(cert)
    checks.append(("trace_replay", rep.ok))
    out = {s.id: s.output for s in cert.trace}
    checks.append(("Z_matches_trace", out.get("Z") == str(cert.Z)))
    checks.append(("pi_Z_matches_trace", out.get("pi_Z") == str(cert.pi_Z)))
    checks.append(("Z_condition", out.get("Z_condition") == "true"
                   and _z_condition(_fstr(cert.epsilon), str(cert.Z)) == "true"))
    if not cert.z_only:
        pairs = [("c1", cert.c1), ("c_point", cert.c_point), ("c_cyclic", cert.c_cyclic),
                 ("exp.c_exp", cert.c_exp), ("order.c_order", cert.c_order)]
        checks.append(("constants_match_trace",
                       all(v is not None and out.get(k) == _fstr(v.ln_upper) for k, v in pairs)
                       and cert.b is not None and out.get("b") == _fstr(cert.b)))
        checks.append(("b_in_range", cert.b is not None and 0 < cert.b < 1))
        checks.append(("exponents", cert.exponent_exp == 4 + cert.epsilon and cert.exponent_order == 5 + cert.epsilon))
    return checks


def evaluate_bound(cert: BoundCertificate, d: int) -> tuple[LogBound, LogBound]:
    """Upper bounds c_exp d^(4+eps) and c_order d^(5+eps) for a degree-d field."""
    d = int(d)
    if d < 1:
        raise ValueError("degree must be positive")
    if cert.z_only:
        raise ValueError("certificate carries no bound constants")
    mag = max(abs(int(cert.c_exp.ln_upper)).bit_length(), abs(int(cert.c_order.ln_upper)).bit_length())
    prec = PRECISION_MARGIN + mag + d.bit_length()
    with ivprec(prec) as iv:
        ld = iv.log(iv.mpf(d))
        e = upper(frac(cert.c_exp.ln_upper) + frac(cert.exponent_exp) * ld)
        o = upper(frac(cert.c_order.ln_upper) + frac(cert.exponent_order) * ld)
    return LogBound(e), LogBound(o)


# ---------------------------------------------------------------------------
# JSON


def _opt(x, fn):
    return None if x is None else fn(x)


def certificate_to_json(cert: BoundCertificate) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "epsilon": _fstr(cert.epsilon),
        "Z": str(cert.Z),
        "pi_Z": str(cert.pi_Z),
        "pi_Z_exact": cert.pi_Z_exact,
        "c1": _opt(cert.c1, LogBound.to_json),
        "b": _opt(cert.b, _fstr),
        "c_point": _opt(cert.c_point, LogBound.to_json),
        "c_cyclic": _opt(cert.c_cyclic, LogBound.to_json),
        "c_exp": _opt(cert.c_exp, LogBound.to_json),
        "c_order": _opt(cert.c_order, LogBound.to_json),
        "exponent_point": _opt(cert.exponent_point, _fstr),
        "exponent_cyclic": _opt(cert.exponent_cyclic, _fstr),
        "exponent_exp": _opt(cert.exponent_exp, _fstr),
        "exponent_order": _opt(cert.exponent_order, _fstr),
        "threshold": cert.threshold,
        "arai": cert.arai.to_json(),
        "conditional": cert.conditional,
        "metadata": cert.metadata,
        "trace": [s.to_json() for s in cert.trace],
    }


def certificate_from_json(data: dict) -> BoundCertificate:
    if not isinstance(data, dict):
        raise SchemaError("certificate must be a JSON object")
    if data.get("schema_version") != SCHEMA_VERSION:
        raise SchemaError(f"unsupported certificate schema_version {data.get('schema_version')!r}")
    try:
        trace = tuple(TraceStep(str(s["id"]), str(s["name"]), str(s["formula"]),
                                {str(k): str(v) for k, v in s["inputs"].items()}, str(s["output"]))
                      for s in data["trace"])
        lb = lambda k: _opt(data.get(k), LogBound.from_json)  # noqa: E731
        fr = lambda k: _opt(data.get(k), _parse_fraction)  # noqa: E731
        return BoundCertificate(
            epsilon=_parse_fraction(data["epsilon"]), Z=int(data["Z"]), pi_Z=int(data["pi_Z"]),
            pi_Z_exact=bool(data["pi_Z_exact"]), c1=lb("c1"), b=fr("b"), c_point=lb("c_point"),
            c_cyclic=lb("c_cyclic"), c_exp=lb("c_exp"), c_order=lb("c_order"),
            exponent_point=fr("exponent_point"), exponent_cyclic=fr("exponent_cyclic"),
            exponent_exp=fr("exponent_exp"), exponent_order=fr("exponent_order"),
            threshold=int(data["threshold"]), arai=AraiConfig.from_json(data["arai"]),
            conditional=bool(data["conditional"]), trace=trace, metadata=dict(data.get("metadata", {})),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(f"malformed certificate: {exc!r}") from None


def toy_certificate(epsilon, ln_c_exp: Fraction, ln_c_order: Fraction) -> BoundCertificate:
    """A certificate with hand-picked small constants, for exercising audit verdicts.

    It carries no trace and is not a valid bound; replay reports it as such.
    """
    eps = as_fraction(epsilon)
    return BoundCertificate(eps, 0, 0, False, None, None, LogBound(Fraction(0)), None,
                            LogBound(Fraction(ln_c_exp)), LogBound(Fraction(ln_c_order)),
                            None, None, 4 + eps, 5 + eps, DEFAULT_THRESHOLD, AraiConfig(), False, (),
                            {"toy": True})
