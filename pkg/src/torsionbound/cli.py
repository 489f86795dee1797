"""Command-line interface: ``torsionbound <command> ...``.

Exit codes: 0 success, 1 property or audit failure, 2 usage error, 3 I/O or schema error.
"""

from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path

from torsionbound import __version__
from torsionbound.arith import DEFAULT_THRESHOLD, as_fraction
from torsionbound.audit import audit, generate_records, parse_dataset, write_dataset
from torsionbound.bounds import (
    SCHEMA_VERSION,
    AraiConfig,
    admissible_large_torsion,
    certificate_from_json,
    certificate_to_json,
    divisibility_requirement,
    load_arai,
    synthesize_certificate,
    toy_certificate,
    verify_certificate,
)
from torsionbound.errors import SchemaError, TorsionBoundError
from torsionbound.gl2 import DEFAULT_CAP, GroupKind, closed_form_order, contains_scalars, standard_subgroup, subgroup_index
from torsionbound.orbits import ActionKind, orbit_partition
from torsionbound.suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _envelope(args, kind: str, body: dict) -> dict:
    out = {"schema_version": SCHEMA_VERSION, "kind": kind, **body}
    if not args.no_timestamp:
        out["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return out


def _emit(args, kind: str, body: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(_envelope(args, kind, body), indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _kind(name: str) -> GroupKind:
    try:
        return GroupKind.parse(name)
    except TorsionBoundError as exc:
        raise UsageError(str(exc)) from None


def _arai(args) -> AraiConfig:
    return load_arai(args.arai) if args.arai else AraiConfig()


# ---------------------------------------------------------------------------


def cmd_group(args) -> int:
    kind = _kind(args.kind)
    g = standard_subgroup(kind, args.n, cap=args.cap)
    body = {
        "group": kind.value, "n": args.n, "order": g.order,
        "closed_form_order": closed_form_order(kind, args.n),
        "index": subgroup_index(g), "contains_scalars": contains_scalars(g),
        "abelian": g.is_abelian(), "generators": [list(m.entries) for m in g.generators],
    }
    lines = [f"{kind.value}({args.n})",
             f"  order              {g.order}",
             f"  closed form        {body['closed_form_order']}",
             f"  index in GL2       {body['index']}",
             f"  contains scalars   {body['contains_scalars']}",
             f"  abelian            {body['abelian']}",
             f"  generators         {', '.join(repr(m) for m in g.generators)}"]
    _emit(args, "group", body, lines)
    return EXIT_OK if g.order == body["closed_form_order"] else EXIT_FAIL


def cmd_orbit(args) -> int:
    kind = _kind(args.kind)
    g = standard_subgroup(kind, args.n, cap=args.cap, lazy=True)
    action = ActionKind.SUBGROUP if args.subgroups else ActionKind.POINT
    rep = orbit_partition(g, args.n, action, cap=args.cap)
    checks = [{"statement": c.statement, "verdict": c.verdict, "detail": c.detail} for c in rep.divisibility_checks]
    body = {"group": kind.value, "n": args.n, "action": action.value,
            "orbit_sizes": {str(k): v for k, v in rep.multiset.items()}, "total": rep.total,
            "degree_factor": rep.degree_factor, "checks": checks}
    lines = [f"{kind.value}({args.n}) acting on {'cyclic subgroups' if args.subgroups else 'points'} of order {args.n}",
             f"  {'size':>10}  {'count':>6}"]
    lines += [f"  {size:>10}  {count:>6}" for size, count in rep.multiset.items()]
    lines.append(f"  total {rep.total}; closed-point degree = {rep.degree_factor} x orbit size on X1"
                 if action is ActionKind.POINT else f"  total {rep.total}")
    lines += [f"  {c['statement']}: {c['verdict']} ({c['detail']})" for c in checks]
    _emit(args, "orbit", body, lines)
    return EXIT_FAIL if any(c.verdict == "FAIL" for c in rep.divisibility_checks) else EXIT_OK


def cmd_verify(args) -> int:
    name = args.suite.upper()
    if name not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    rep = run_suite(name, cap=args.cap, seed=args.seed, stop_on_failure=args.fail_fast)
    lines = [f"{'PASS' if r.ok else 'FAIL'}  {r.name}  {r.detail}" for r in rep.results]
    first = rep.first_failure
    lines.append(f"{name}: {'PASS' if rep.ok else 'FAIL'} ({len(rep.results)} properties)"
                 + (f"; first failure {first.name}" if first else ""))
    _emit(args, "verify", rep.to_json(timings=not args.no_timestamp), lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_bound(args) -> int:
    try:
        eps = as_fraction(args.epsilon)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad epsilon: {exc}") from None
    if eps <= 0:
        raise UsageError("epsilon must be positive")
    z_only = args.z_only or eps >= Fraction(1, 2)
    cert = synthesize_certificate(eps, threshold=args.threshold, arai=_arai(args), z_only=z_only)
    checks = verify_certificate(cert)
    ok = all(v for _, v in checks)
    data = certificate_to_json(cert)
    if args.emit:
        Path(args.emit).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    lines = [f"epsilon        {eps}", f"Z              {cert.Z}",
             f"pi(Z)          {cert.pi_Z}{'' if cert.pi_Z_exact else ' (upper bound)'}"]
    if z_only:
        lines.append("bound constants need 0 < epsilon < 1/2; Z selection only")
    else:
        lines += [f"b              {cert.b}",
                  f"c1             {cert.c1}",
                  f"c_point        {cert.c_point}   (exponent {cert.exponent_point})",
                  f"c_cyclic       {cert.c_cyclic}   (exponent {cert.exponent_cyclic})",
                  f"c_exp          {cert.c_exp}   (exp E(F)[tors] <= c_exp D^({cert.exponent_exp}))",
                  f"c_order        {cert.c_order}   (#E(F)[tors] <= c_order D^({cert.exponent_order}))",
                  f"conditional    {cert.conditional}"]
    lines += [f"check {name}: {'ok' if v else 'FAILED'}" for name, v in checks]
    if args.emit:
        lines.append(f"certificate written to {args.emit}")
    body = {"certificate": data if args.json and not args.emit else {"Z": str(cert.Z), "epsilon": str(eps)},
            "checks": dict(checks)}
    _emit(args, "bound", body, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _load_cert(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    if isinstance(data, dict) and data.get("toy"):
        return toy_certificate(data["epsilon"], Fraction(data["ln_c_exp"]), Fraction(data["ln_c_order"]))
    return certificate_from_json(data)


def cmd_audit(args) -> int:
    cert = _load_cert(args.cert)
    if cert.z_only:
        raise UsageError("certificate carries no bound constants (epsilon >= 1/2)")
    if not cert.metadata.get("toy"):
        failed = [name for name, ok in verify_certificate(cert) if not ok]
        if failed:
            raise SchemaError(f"{args.cert}: certificate does not verify ({', '.join(failed)})")
    records = parse_dataset(args.dataset)
    reports = audit(records, cert, threshold=args.threshold)
    counts = {s: sum(r.status == s for r in reports) for s in ("PASS", "FAIL", "INCONCLUSIVE")}
    lines = []
    for r in reports:
        lines.append(f"{r.record_id}: {r.status}")
        lines += [f"  {c.rule:<10} {c.verdict:<12} {c.detail}" for c in r.checks if c.verdict != "PASS" or args.verbose]
    lines.append(f"{len(reports)} records: {counts['PASS']} PASS, {counts['FAIL']} FAIL, "
                 f"{counts['INCONCLUSIVE']} INCONCLUSIVE")
    body = {"epsilon": str(cert.epsilon), "threshold": args.threshold, "summary": counts,
            "reports": [r.to_json() for r in reports]}
    _emit(args, "audit", body, lines)
    return EXIT_FAIL if counts["FAIL"] else EXIT_OK


def cmd_admissible(args) -> int:
    if args.degree < 1:
        raise UsageError("degree must be positive")
    pairs = admissible_large_torsion(args.degree, args.threshold)
    body = {"degree": args.degree, "threshold": args.threshold,
            "admissible": [{"ell": ell, "k_max": k,
                            "required_divisor": divisibility_requirement(ell, 1, 0, args.threshold).required_divisor}
                           for ell, k in pairs]}
    if pairs:
        lines = [f"primes ell > {args.threshold} allowed as torsion over degree-{args.degree} fields:"]
        lines += [f"  ell={ell}  k_max={k}" for ell, k in pairs]
    else:
        lines = [f"no point of prime order > {args.threshold} over any degree-{args.degree} field "
                 f"(for curves isogenous to a rational curve)"]
    _emit(args, "admissible", body, lines)
    return EXIT_OK


def cmd_synth_dataset(args) -> int:
    if args.toy:
        cert = toy_certificate(args.epsilon, Fraction(14), Fraction(7))
    elif args.cert:
        cert = _load_cert(args.cert)
    else:
        cert = synthesize_certificate(args.epsilon, threshold=args.threshold)
    gen = generate_records(args.count, cert, seed=args.seed, threshold=args.threshold)
    write_dataset([g.record for g in gen], args.out)
    if args.truth:
        Path(args.truth).write_text(json.dumps(
            {g.record.id: {"violated": g.violated, "expected": g.expected} for g in gen}, indent=1, sort_keys=True))
    if args.toy and args.emit_cert:
        Path(args.emit_cert).write_text(json.dumps(
            {"toy": True, "epsilon": str(cert.epsilon), "ln_c_exp": "14", "ln_c_order": "7"}) + "\n")
    print(f"wrote {len(gen)} records to {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="enumeration cap in elements")
    common.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD, help="small-prime threshold T")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--arai", help="JSON table of Arai constants")
    common.add_argument("--no-timestamp", action="store_true", help="omit timestamps and timings for byte-stable output")

    p = argparse.ArgumentParser(prog="torsionbound", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("group", parents=[common], help="order, index and scalar containment of a named subgroup")
    s.add_argument("kind", help="FULL, SL2, BOREL0, BOREL1, CARTAN_NS_PLUS or SCALARS")
    s.add_argument("n", type=int)
    s.set_defaults(fn=cmd_group)

    s = sub.add_parser("orbit", parents=[common], help="orbit sizes on points or cyclic subgroups")
    s.add_argument("kind")
    s.add_argument("n", type=int)
    s.add_argument("--subgroups", action="store_true", help="act on cyclic order-n subgroups")
    s.set_defaults(fn=cmd_orbit)

    s = sub.add_parser("verify", parents=[common], help="run a property suite")
    s.add_argument("suite", help=", ".join(SUITES))
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--fail-fast", action="store_true")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("bound", parents=[common], help="synthesize a bound certificate")
    s.add_argument("--epsilon", required=True)
    s.add_argument("--emit", help="write the certificate JSON here")
    s.add_argument("--z-only", action="store_true", help="stop after choosing Z and counting primes")
    s.set_defaults(fn=cmd_bound)

    s = sub.add_parser("audit", parents=[common], help="audit a CSV or JSON-lines dataset")
    s.add_argument("dataset")
    s.add_argument("--cert", required=True)
    s.add_argument("--verbose", action="store_true", help="show passing checks too")
    s.set_defaults(fn=cmd_audit)

    s = sub.add_parser("admissible", parents=[common], help="large primes allowed as torsion in degree d")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(fn=cmd_admissible)

    s = sub.add_parser("synth-dataset", parents=[common], help="write synthetic records with known verdicts")
    s.add_argument("--out", required=True)
    s.add_argument("--count", type=int, default=1000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--epsilon", default="0.1")
    s.add_argument("--cert", help="certificate to generate against")
    s.add_argument("--toy", action="store_true", help="use small toy constants so bound violations occur")
    s.add_argument("--emit-cert", help="with --toy, write the toy certificate here")
    s.add_argument("--truth", help="write the expected verdicts here")
    s.set_defaults(fn=cmd_synth_dataset)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (TorsionBoundError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
