"""Time the compiled kernels against the pure-Python ones on fixed workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Every workload is run on each importable backend and the results are compared
before any timing is reported.
"""
from __future__ import annotations

import argparse
import json
import time

import numpy as np

from ybforge import kernels
from ybforge.amplify import lambda2
from ybforge.constructions import build_c35, build_q8c3, trivial_morphism
from ybforge.groups import generating_set, quotient, small_faithful_action
from ybforge.iybgroup import generator_morphism_to_full
from ybforge.perm import all_permutations


def workloads():
    perms4 = np.array(all_permutations(4), dtype=np.int64)
    q8 = build_q8c3()
    m15 = generator_morphism_to_full(q8.morphism, small_faithful_action(q8.group)).iyb_map
    big = lambda2(m15, compare_closures=False).result.array()
    c35 = build_c35()
    g = c35.group
    normal = g.derived_subgroup()
    q, proj = quotient(g, normal)
    coset_of = np.asarray(proj.images)
    cosets = [np.nonzero(coset_of == c)[0].tolist() for c in range(q.order)]
    gens = generating_set(g)
    lift_args = (g.table, g.inv, coset_of, q.table, q.inv, cosets, trivial_morphism(q).mu,
                 [c35.named["d"], c35.named["e"]])
    return {
        "enumerate_iyb n=4": ("enumerate_iyb", (perms4,)),
        "iyb_violation 225 points": ("iyb_violation", (big,)),
        "associativity |G|=243": ("associativity_violation", (g.table,)),
        "extend_hom identity |G|=243": ("extend_hom", (g.table, g.table, gens, gens)),
        "lift_search order 243": ("lift_search", lift_args),
    }


def _same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(_same(x, y) for x, y in zip(a, b))
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    backends = kernels.backends()
    rows = []
    for name, (fn, fargs) in workloads().items():
        timings, results = {}, {}
        for bname, mod in backends.items():
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                results[bname] = getattr(mod, fn)(*fargs)
                best = min(best, time.perf_counter() - t0)
            timings[bname] = best
        vals = list(results.values())
        agree = all(_same(vals[0], v) for v in vals[1:])
        rows.append({"workload": name, "seconds": timings, "agree": agree})
    if args.json:
        print(json.dumps(rows, indent=2))
        return 0
    names = list(backends)
    print(f"{'workload':32}" + "".join(f"{n:>12}" for n in names) + "   speedup  agree")
    for r in rows:
        t = r["seconds"]
        speed = t["python"] / t["cython"] if "cython" in t and t["cython"] > 0 else float("nan")
        print(f"{r['workload']:32}" + "".join(f"{t[n]:12.4f}" for n in names)
              + f"{speed:9.1f}x  {'yes' if r['agree'] else 'NO'}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
