"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--json]

Each workload runs on every available backend; results are checked for
agreement before timings are reported.
"""

from __future__ import annotations

import argparse
import json
import time

import numpy as np

from torsionbound._kernels import available_backends
from torsionbound.gl2 import _standard_generators, GroupKind
from torsionbound.orbits import _vector_images


def _gens(kind: str, n: int) -> np.ndarray:
    return np.array([g.entries for g in _standard_generators(GroupKind(kind), n)], dtype=np.int64)


def workloads():
    from torsionbound.gl2 import standard_subgroup

    yield "closure GL2(Z/23)", lambda k: k.closure(_gens("FULL", 23), 23, 10**7)
    yield "closure GL2(Z/32)", lambda k: k.closure(_gens("FULL", 32), 32, 10**7)
    yield "closure B0(Z/125)", lambda k: k.closure(_gens("BOREL0", 125), 125, 10**7)
    # 343^4 codes exceed the bitmap limit, so this exercises the hash-set path
    yield "closure B1(Z/343) hashed", lambda k: k.closure(_gens("BOREL1", 343), 343, 10**7)
    images = _vector_images(standard_subgroup("FULL", 401, lazy=True))
    yield "components 401^2 vectors", lambda k: k.components(images)
    yield "prime_pi(10^8)", lambda k: k.prime_pi(10**8)
    yield "totients(10^7)", lambda k: k.totients(10**7)


def _same(a, b) -> bool:
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = available_backends()
    rows = []
    for name, fn in workloads():
        best, outs = {}, {}
        for bname, mod in backends.items():
            times = []
            for _ in range(args.repeat):
                t = time.perf_counter()
                outs[bname] = fn(mod)
                times.append(time.perf_counter() - t)
            best[bname] = min(times)
        vals = list(outs.values())
        agree = all(_same(vals[0], v) for v in vals[1:])
        rows.append({"workload": name, "seconds": best, "agree": agree})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        names = sorted(backends)
        print(f"{'workload':<28}" + "".join(f"{b:>12}" for b in names) + f"{'speedup':>10}  agree")
        for r in rows:
            s = r["seconds"]
            speed = s["python"] / s["cython"] if "cython" in s else float("nan")
            print(f"{r['workload']:<28}" + "".join(f"{s[b]:>11.3f}s" for b in names) + f"{speed:>9.1f}x  {r['agree']}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
