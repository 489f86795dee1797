"""Auditing torsion data for curves in a rational geometric isogeny class.

Each record is checked against four necessary conditions:

RULE_DIV    every ell^k || N with ell > T forces a degree divisor (r = v_ell(isogeny degree))
RULE_WEIL   phi(torsion_d) divides the field degree
RULE_EXP    N <= c_exp * D^(4+eps)
RULE_ORDER  d * N <= c_order * D^(5+eps)

Records outside the hypotheses (CM, unknown isogeny degree, inconsistent
j-invariant degree) get INCONCLUSIVE on the rules that need them.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np
from sympy import factorint, nextprime

from torsionbound.arith import DEFAULT_THRESHOLD, euler_phi, factorize_unbounded
from torsionbound.bounds.certificate import BoundCertificate, LogBound, evaluate_bound
from torsionbound.bounds.divisibility import divisibility_requirement
from torsionbound.errors import SchemaError

FIELDS = ("id", "field_degree", "j_degree", "isogeny_degree", "torsion_d", "torsion_N")
OPTIONAL_FIELDS = ("cm",)
RULES = ("RULE_DIV", "RULE_WEIL", "RULE_EXP", "RULE_ORDER")
PASS, FAIL, INCONCLUSIVE = "PASS", "FAIL", "INCONCLUSIVE"


@dataclass(frozen=True)
class CurveRecord:
    id: str
    field_degree: int
    j_degree: int
    isogeny_degree: int  # 0 means unknown
    torsion_d: int
    torsion_N: int
    cm: bool = False

    def validate(self):
        if not self.id:
            raise SchemaError("empty id")
        for name in ("field_degree", "j_degree", "torsion_d", "torsion_N"):
            if getattr(self, name) < 1:
                raise SchemaError(f"{name} must be a positive integer")
        if self.isogeny_degree < 0:
            raise SchemaError("isogeny_degree must be nonnegative (0 = unknown)")
        if self.torsion_N % self.torsion_d:
            raise SchemaError(f"torsion_d={self.torsion_d} does not divide torsion_N={self.torsion_N}")

    def to_row(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class RuleCheck:
    rule: str
    verdict: str
    detail: str = ""


@dataclass(frozen=True)
class AuditReport:
    record_id: str
    checks: tuple[RuleCheck, ...]

    @property
    def verdicts(self) -> dict[str, str]:
        return {c.rule: c.verdict for c in self.checks}

    @property
    def status(self) -> str:
        v = [c.verdict for c in self.checks]
        return FAIL if FAIL in v else INCONCLUSIVE if INCONCLUSIVE in v else PASS

    def to_json(self) -> dict:
        return {"id": self.record_id, "status": self.status,
                "checks": [{"rule": c.rule, "verdict": c.verdict, "detail": c.detail} for c in self.checks]}


# ---------------------------------------------------------------------------
# parsing

_TRUE = {"1", "true", "yes", "y", "t"}
_FALSE = {"0", "false", "no", "n", "f", ""}


def _as_int(value, name: str) -> int:
    if isinstance(value, bool):
        raise SchemaError(f"{name}: expected an integer")
    if isinstance(value, int):
        return value
    s = str(value).strip()
    if not s or not s.lstrip("-").isdigit():
        raise SchemaError(f"{name}: expected an integer, got {value!r}")
    return int(s)


def _as_bool(value, name: str) -> bool:
    if isinstance(value, bool):
        return value
    s = str(value).strip().lower()
    if s in _TRUE:
        return True
    if s in _FALSE:
        return False
    raise SchemaError(f"{name}: expected a boolean, got {value!r}")


def record_from_mapping(row: dict) -> CurveRecord:
    missing = [f for f in FIELDS if f not in row or row[f] is None]
    if missing:
        raise SchemaError(f"missing field(s) {', '.join(missing)}")
    rec = CurveRecord(
        id=str(row["id"]).strip(),
        **{f: _as_int(row[f], f) for f in FIELDS[1:]},
        cm=_as_bool(row.get("cm", False), "cm"),
    )
    rec.validate()
    return rec


def _rows_csv(text: str):
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    if list(header[: len(FIELDS)]) != list(FIELDS):
        raise SchemaError(f"line 1: CSV header must start with {','.join(FIELDS)}")
    extra = [h for h in header[len(FIELDS):] if h not in OPTIONAL_FIELDS]
    if extra:
        raise SchemaError(f"line 1: unknown column(s) {', '.join(extra)}")
    for row in reader:
        if None in row:
            yield reader.line_num, SchemaError("too many fields")
        else:
            yield reader.line_num, row


def _rows_jsonl(text: str):
    for i, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            yield i, SchemaError(f"invalid JSON ({exc.msg})")
            continue
        yield i, obj if isinstance(obj, dict) else SchemaError("expected a JSON object")


def parse_dataset(path: str | Path) -> list[CurveRecord]:
    """Read a CSV or JSON-lines dataset; every malformed line is reported with its number."""
    path = Path(path)
    text = path.read_text()
    jsonl = path.suffix.lower() in (".jsonl", ".ndjson", ".json") or text.lstrip().startswith("{")
    records, errors, seen = [], [], set()
    try:
        rows = list(_rows_jsonl(text) if jsonl else _rows_csv(text))
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    for line, row in rows:
        try:
            if isinstance(row, SchemaError):
                raise row
            rec = record_from_mapping(row)
            if rec.id in seen:
                raise SchemaError(f"duplicate id {rec.id!r}")
            seen.add(rec.id)
            records.append(rec)
        except SchemaError as exc:
            errors.append(f"line {line}: {exc}")
    if errors:
        raise SchemaError(f"{path}: " + "; ".join(errors))
    return records


def write_dataset(records: Iterable[CurveRecord], path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("jsonl" if path.suffix.lower() in (".jsonl", ".ndjson") else "csv")
    records = list(records)
    if fmt == "jsonl":
        path.write_text("".join(json.dumps(r.to_row()) + "\n" for r in records))
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(FIELDS + OPTIONAL_FIELDS)
    for r in records:
        w.writerow([r.id, r.field_degree, r.j_degree, r.isogeny_degree, r.torsion_d, r.torsion_N,
                    "true" if r.cm else "false"])
    path.write_text(buf.getvalue())


# ---------------------------------------------------------------------------
# rules


def _psi(n: int) -> int:
    return math.prod(p ** (e - 1) * (p + 1) for p, e in factorint(n).items())


def hypothesis_gaps(rec: CurveRecord) -> list[str]:
    gaps = []
    if rec.cm:
        gaps.append("CM curve (bounds cover non-CM curves only)")
    if rec.isogeny_degree == 0:
        gaps.append("isogeny degree unknown, membership in the rational class unverified")
    else:
        if rec.field_degree % rec.j_degree:
            gaps.append(f"j_degree {rec.j_degree} does not divide field_degree {rec.field_degree}")
        if rec.j_degree > _psi(rec.isogeny_degree):
            gaps.append(f"j_degree {rec.j_degree} exceeds psi({rec.isogeny_degree}) = {_psi(rec.isogeny_degree)}")
    return gaps


def _rule_div(rec: CurveRecord, threshold: int, gaps: list[str]) -> RuleCheck:
    big = [(p, e) for p, e in sorted(factorint(rec.torsion_N).items()) if p > threshold]
    if not big:
        return RuleCheck("RULE_DIV", PASS, f"no prime above {threshold} divides N")
    if gaps:
        return RuleCheck("RULE_DIV", INCONCLUSIVE, "; ".join(gaps))
    iso = factorint(rec.isogeny_degree)
    parts = []
    for p, k in big:
        req = divisibility_requirement(p, k, iso.get(p, 0), threshold)
        if rec.field_degree % req.required_divisor:
            return RuleCheck("RULE_DIV", FAIL,
                             f"{p}^{k} || N (r={req.r}) needs {req.required_divisor} | {rec.field_degree}; "
                             f"{rec.field_degree} mod {req.required_divisor} = {rec.field_degree % req.required_divisor}")
        parts.append(f"{req.required_divisor} | {rec.field_degree}")
    return RuleCheck("RULE_DIV", PASS, ", ".join(parts))


def _rule_weil(rec: CurveRecord) -> RuleCheck:
    phi = euler_phi(factorize_unbounded(rec.torsion_d))
    if rec.field_degree % phi:
        return RuleCheck("RULE_WEIL", FAIL, f"phi({rec.torsion_d}) = {phi} does not divide {rec.field_degree}")
    return RuleCheck("RULE_WEIL", PASS, f"phi({rec.torsion_d}) = {phi} | {rec.field_degree}")


def _rule_bound(rule: str, value: int, bound: LogBound, label: str, gaps: list[str],
                conditional: bool) -> RuleCheck:
    if bound.admits(value):
        return RuleCheck(rule, PASS, f"{label} = {value} <= {bound}")
    if gaps:
        return RuleCheck(rule, INCONCLUSIVE, f"{label} = {value} > {bound}, but " + "; ".join(gaps))
    if conditional:
        return RuleCheck(rule, INCONCLUSIVE, f"{label} = {value} > {bound}; certificate assumes default Arai values")
    return RuleCheck(rule, FAIL, f"{label} = {value} > {bound}")


def audit_record(rec: CurveRecord, cert: BoundCertificate, threshold: int = DEFAULT_THRESHOLD) -> AuditReport:
    gaps = hypothesis_gaps(rec)
    exp_b, ord_b = evaluate_bound(cert, rec.field_degree)
    checks = (
        _rule_div(rec, threshold, gaps),
        _rule_weil(rec),
        _rule_bound("RULE_EXP", rec.torsion_N, exp_b, "N", gaps, cert.conditional),
        _rule_bound("RULE_ORDER", rec.torsion_d * rec.torsion_N, ord_b, "d*N", gaps, cert.conditional),
    )
    return AuditReport(rec.id, checks)


def audit(records: Iterable[CurveRecord], certificate: BoundCertificate,
          threshold: int = DEFAULT_THRESHOLD) -> list[AuditReport]:
    if certificate.z_only:
        raise ValueError("certificate has no bound constants")
    reports = [audit_record(r, certificate, threshold) for r in records]
    return sorted(reports, key=lambda r: r.record_id)


# ---------------------------------------------------------------------------
# synthetic records with known verdicts


@dataclass(frozen=True)
class GeneratedRecord:
    record: CurveRecord
    expected: dict[str, str] = field(hash=False)
    violated: str | None = None


_SMALL = (2, 3, 5, 7, 11, 13)


def _ln(x) -> float:
    return math.log(x)


class _Generator:
    """Builds records whose verdicts follow from how they were built.

    Bound comparisons use float logarithms with a margin of at least one unit in
    ln, so the ground truth does not depend on the audit's exact comparison code.
    """

    MARGIN = 1.0

    def __init__(self, cert: BoundCertificate, rng: np.random.Generator, threshold: int):
        self.cert = cert
        self.rng = rng
        self.T = threshold
        self.eps = float(cert.epsilon)
        self.ln_exp = float(cert.c_exp.ln_upper) if cert.c_exp.ln_upper < 10**6 else math.inf
        self.ln_ord = float(cert.c_order.ln_upper) if cert.c_order.ln_upper < 10**6 else math.inf

    def exp_room(self, D: int) -> float:
        return self.ln_exp + (4 + self.eps) * _ln(D)

    def ord_room(self, D: int) -> float:
        return self.ln_ord + (5 + self.eps) * _ln(D)

    def pick(self, seq):
        return seq[int(self.rng.integers(0, len(seq)))]

    def large_prime(self) -> int:
        return int(nextprime(self.T + int(self.rng.integers(0, 40))))

    def smooth_part(self, D: int, d: int) -> int:
        """A small-prime factor, kept well inside both bounds."""
        room = min(self.exp_room(D), self.ord_room(D) - _ln(d)) - self.MARGIN
        out = 1
        for _ in range(int(self.rng.integers(0, 4))):
            p = self.pick(_SMALL)
            if _ln(out * p) < room - 4:
                out *= p
        return out

    def weil_ok_d(self, D: int) -> int:
        choices = [1, 2] + [q for q in (3, 4, 5, 6, 7, 8, 9, 10, 12) if D % euler_phi(q) == 0]
        return self.pick(choices)

    def valid(self, rid: str) -> GeneratedRecord:
        kind = self.pick(("plain", "large", "large_r"))
        iso, D, N_big = 1, 1, 1
        if kind != "plain":
            ell = self.large_prime()
            k = 1 if self.rng.random() < 0.8 else 2
            r = 0
            if kind == "large_r":
                r = int(self.rng.integers(1, 3))
                iso = ell**r
            req = divisibility_requirement(ell, k, r, self.T).required_divisor
            D = req * int(self.rng.integers(1, 4))
            N_big = ell**k
        else:
            iso = self.pick((1, 2, 3, 11))
            D = int(self.rng.integers(1, 50))
        d = self.weil_ok_d(D)
        N = math.lcm(d, N_big) * self.smooth_part(D, d)
        while self.ord_room(D) - _ln(d * N) < self.MARGIN or self.exp_room(D) - _ln(N) < self.MARGIN:
            D *= 2  # only happens with toy constants
        rec = CurveRecord(rid, D, 1, iso, d, N)
        return GeneratedRecord(rec, dict.fromkeys(RULES, PASS))

    def cm_record(self, rid: str) -> GeneratedRecord:
        g = self.valid(rid)
        ell = self.large_prime()
        rec = CurveRecord(rid, g.record.field_degree, 1, g.record.isogeny_degree, g.record.torsion_d,
                          g.record.torsion_N * ell, cm=True)
        # a large prime with no degree divisibility check makes RULE_DIV inconclusive
        exp = {"RULE_DIV": INCONCLUSIVE, "RULE_WEIL": PASS}
        for rule, room, val in (("RULE_EXP", self.exp_room(rec.field_degree), rec.torsion_N),
                                ("RULE_ORDER", self.ord_room(rec.field_degree), rec.torsion_N * rec.torsion_d)):
            margin = room - _ln(val)
            if margin >= self.MARGIN:
                exp[rule] = PASS
            elif margin <= -self.MARGIN:
                exp[rule] = INCONCLUSIVE
            else:
                return self.cm_record(rid)
        return GeneratedRecord(rec, exp)

    def violate_div(self, rid: str) -> GeneratedRecord:
        ell = self.large_prime()
        k = 1
        if self.rng.random() < 0.5:
            r = int(self.rng.integers(2, 4))
            weak = divisibility_requirement(ell, k, 0, self.T).required_divisor
            D = weak * int(self.rng.integers(1, 4))
            while D % ell == 0:
                D += weak
            iso = ell**r  # the r-strengthened requirement adds a factor ell that D lacks
        else:
            req = divisibility_requirement(ell, k, 0, self.T).required_divisor
            D = int(self.rng.integers(1, req))
            iso = 1
        d = 1 if self.rng.random() < 0.5 else 2
        N = math.lcm(d, ell)
        rec = CurveRecord(rid, D, 1, iso, d, N)
        if self.exp_room(D) - _ln(N) < self.MARGIN or self.ord_room(D) - _ln(d * N) < self.MARGIN:
            return self.violate_div(rid)
        return GeneratedRecord(rec, {**dict.fromkeys(RULES, PASS), "RULE_DIV": FAIL}, "RULE_DIV")

    def violate_weil(self, rid: str) -> GeneratedRecord:
        d = self.pick((3, 4, 5, 7, 8, 9, 11, 13))
        phi = euler_phi(d)
        D = int(self.rng.integers(1, 60))
        while D % phi == 0:
            D += 1
        N = d * self.pick((1, 2, 3))
        rec = CurveRecord(rid, D, 1, self.pick((1, 2, 5)), d, N)
        if self.exp_room(D) - _ln(N) < self.MARGIN or self.ord_room(D) - _ln(d * N) < self.MARGIN:
            return self.violate_weil(rid)
        return GeneratedRecord(rec, {**dict.fromkeys(RULES, PASS), "RULE_WEIL": FAIL}, "RULE_WEIL")

    def violate_exp(self, rid: str) -> GeneratedRecord | None:
        # N a power of 2 between the exponent bound and the order bound
        if math.isinf(self.ln_exp) or math.isinf(self.ln_ord):
            return None
        for _ in range(200):
            D = 2 ** int(self.rng.integers(8, 24))
            lo, hi = self.exp_room(D) + self.MARGIN, self.ord_room(D) - self.MARGIN
            a_lo, a_hi = math.ceil(lo / _ln(2)), math.floor(hi / _ln(2))
            if a_lo <= a_hi:
                N = 2 ** int(self.rng.integers(a_lo, a_hi + 1))
                return GeneratedRecord(CurveRecord(rid, D, 1, 1, 1, N),
                                       {**dict.fromkeys(RULES, PASS), "RULE_EXP": FAIL}, "RULE_EXP")
        return None

    def violate_order(self, rid: str) -> GeneratedRecord | None:
        # d = 2^j with phi(d) | D = 2^m; N within the exponent bound, d*N beyond the order bound
        if math.isinf(self.ln_exp) or math.isinf(self.ln_ord):
            return None
        for _ in range(200):
            m = int(self.rng.integers(8, 24))
            D = 2**m
            j = int(self.rng.integers(2, m + 2))
            d = 2**j
            lo = self.ord_room(D) - _ln(d) + self.MARGIN
            hi = self.exp_room(D) - self.MARGIN
            a_lo, a_hi = max(math.ceil(lo / _ln(2)), j), math.floor(hi / _ln(2))
            if a_lo <= a_hi:
                N = 2 ** int(self.rng.integers(a_lo, a_hi + 1))
                return GeneratedRecord(CurveRecord(rid, D, 1, 1, d, N),
                                       {**dict.fromkeys(RULES, PASS), "RULE_ORDER": FAIL}, "RULE_ORDER")
        return None


def generate_records(count: int, certificate: BoundCertificate, seed: int = 0,
                     violating_fraction: float = 0.5, cm_fraction: float = 0.1,
                     threshold: int = DEFAULT_THRESHOLD) -> list[GeneratedRecord]:
    """Synthetic records: about ``violating_fraction`` violate exactly one rule.

    Violations of RULE_EXP and RULE_ORDER are only constructible when the
    certificate constants are small enough to be exceeded by a concrete integer
    (e.g. a toy certificate); otherwise only RULE_DIV and RULE_WEIL are violated.
    The valid remainder includes ``cm_fraction`` CM records, whose
    hypothesis-dependent rules are expected to be INCONCLUSIVE or PASS.
    """
    if certificate.z_only:
        raise ValueError("certificate has no bound constants")
    rng = np.random.default_rng(seed)
    gen = _Generator(certificate, rng, threshold)
    bad_kinds = [gen.violate_div, gen.violate_weil]
    if gen.violate_exp("probe") is not None:
        bad_kinds.append(gen.violate_exp)
    if gen.violate_order("probe") is not None:
        bad_kinds.append(gen.violate_order)
    n_bad = round(count * violating_fraction)
    out = []
    width = len(str(count))
    for i in range(count):
        rid = f"rec{i:0{width}d}"
        if i < n_bad:
            rec = bad_kinds[i % len(bad_kinds)](rid)
        elif rng.random() < cm_fraction:
            rec = gen.cm_record(rid)
        else:
            rec = gen.valid(rid)
        out.append(rec)
    order = rng.permutation(count)
    return [out[i] for i in order]


@dataclass(frozen=True)
class Confusion:
    false_pass: int
    false_fail: int
    mismatches: tuple[str, ...]


def score_against_truth(generated: list[GeneratedRecord], reports: list[AuditReport]) -> Confusion:
    by_id = {r.record_id: r for r in reports}
    fp = ff = 0
    bad = []
    for g in generated:
        got = by_id[g.record.id].verdicts
        for rule, want in g.expected.items():
            have = got[rule]
            if have == want:
                continue
            if have == PASS and want != PASS:
                fp += 1
            elif have == FAIL and want != FAIL:
                ff += 1
            bad.append(f"{g.record.id} {rule}: expected {want}, got {have}")
    return Confusion(fp, ff, tuple(bad))

