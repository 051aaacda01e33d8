"""Command-line front end.

Exit codes: 0 success, 1 verification failure (the violation is printed on
standard output, as JSON with ``--json``), 2 usage or format errors.
Objects are written as canonical JSON to ``--out`` or standard output.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .amplify import DEFAULT_POINT_CAP, iterate_lambda2, require_within_cap
from .catalog import Catalog, catalog_dedup
from .constructions import (
    build_c35,
    build_cba,
    build_q8c3,
    car_iyb,
    class2_decomposition,
    cyclic_perm_cocycle,
    direct_product_cocycle,
    hall_restriction,
    inversion_action,
    semidirect_from_action,
    sylow_sym,
    trivial_cocycle,
    trivial_morphism,
    wreath,
)
from .errors import BudgetExceeded, VerificationError, Violation
from .groups import (
    DEFAULT_ISO_CAP,
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    abelian,
    cyclic,
    dihedral,
    fingerprint,
    generating_set,
    heisenberg,
    quaternion,
    quotient,
    small_faithful_action,
    symmetric,
)
from .iybgroup import (
    BijectiveCocycle,
    GeneratorMorphism,
    IYBMorphism,
    PreconditionError,
    check_cocycle,
    cocycle_to_morphism,
    full_morphism,
    generator_morphism_to_full,
    lift_search,
    quotient_morphism,
    star_product,
)
from .presented import cba_violations
from .serialize import FormatError, canonical_dumps, load, read_json, to_json, write_json
from .ybe import (
    BRAID_POINT_CAP,
    IYBMap,
    check_solution,
    enumerate_iyb_maps,
    map_from_solution,
    solution_from_map,
    t_conjugation_check,
)


class UsageError(Exception):
    pass


def _fp_json(group: FiniteGroup) -> list:
    fp = fingerprint(group)
    return [fp[0], fp[1], fp[2], [list(p) for p in fp[3]]]


# small helpers shared by the verbs

def group_from_text(text: str) -> FiniteGroup:
    """``cyclic:6``, ``abelian:2,2``, ``sym:3``, ``dihedral:8``, ``quaternion``,
    ``heisenberg:3`` or a path to a group JSON file."""
    name, _, arg = text.partition(":")
    nums = [int(v) for v in arg.split(",")] if arg else []
    makers = {
        "cyclic": lambda: cyclic(nums[0]),
        "abelian": lambda: abelian(*nums),
        "sym": lambda: symmetric(nums[0]),
        "dihedral": lambda: dihedral(nums[0]),
        "quaternion": lambda: quaternion(),
        "heisenberg": lambda: heisenberg(nums[0] if nums else 3),
    }
    if name in makers:
        try:
            return makers[name]()
        except IndexError:
            raise UsageError(f"group {text!r} needs a parameter") from None
    path = Path(text)
    if not path.exists():
        raise UsageError(f"unknown group name or missing file: {text}")
    kind, obj = load(path)
    if kind == "group":
        return obj
    if kind in ("morphism", "generator_morphism", "cocycle"):
        return obj.group
    raise UsageError(f"{text} holds a {kind}, not a group")


def _load_kind(path: str, *kinds: str):
    if not Path(path).exists():
        raise UsageError(f"no such file: {path}")
    kind, obj = load(path)
    if kind not in kinds:
        raise UsageError(f"{path} holds a {kind}; expected {' or '.join(kinds)}")
    return kind, obj


def _as_morphism(kind: str, obj) -> IYBMorphism:
    if kind == "generator_morphism":
        return full_morphism(obj)
    if kind == "cocycle":
        return cocycle_to_morphism(obj)
    return obj


def _elements(group: FiniteGroup, text: str) -> list[int]:
    """Comma-separated element indices or labels."""
    out = []
    labels = list(group.labels) if group.labels is not None else []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if tok.lstrip("-").isdigit():
            v = int(tok)
        elif tok in labels:
            v = labels.index(tok)
        else:
            raise UsageError(f"unknown element {tok!r}")
        if not 0 <= v < group.order:
            raise UsageError(f"element {v} out of range")
        out.append(v)
    return out


class Output:
    def __init__(self, args):
        self.json = args.json
        self.out = getattr(args, "out", None)

    def emit_object(self, obj, summary: str) -> None:
        payload = to_json(obj) if not isinstance(obj, dict) else obj
        if self.out:
            write_json(self.out, payload)
            self.status(summary + f" -> {self.out}")
        else:
            sys.stdout.write(canonical_dumps(payload))
            print(summary, file=sys.stderr)

    def status(self, text: str, **data) -> None:
        if self.json:
            sys.stdout.write(canonical_dumps(dict(data, ok=True, message=text)))
        else:
            print(text)


# verbs

def cmd_verify_map(args, out: Output) -> int:
    _, m = _load_kind(args.file, "map")
    cl = m.closure(cap=args.cap_order)
    out.status(f"OK: IYB map on {m.size} points; closure order {cl.order}",
               kind="map", size=m.size, closure_fingerprint=_fp_json(cl))
    return 0


def cmd_verify_solution(args, out: Output) -> int:
    _, s = _load_kind(args.file, "solution")
    cap = args.braid_cap
    check_solution(s, braid_cap=cap)
    ok, _ = t_conjugation_check(s)
    if not ok:
        raise VerificationError(Violation("T conjugation", (), detail="T f_x T^-1 != g_x^-1 for some x"))
    braid = "checked" if s.size <= cap else f"skipped above {cap} points"
    out.status(f"OK: involutive non-degenerate solution on {s.size} points; braid {braid}",
               kind="solution", size=s.size, braid_checked=s.size <= cap)
    return 0


def cmd_verify_morphism(args, out: Output) -> int:
    kind, m = _load_kind(args.file, "morphism", "generator_morphism")
    if kind == "generator_morphism":
        out.status(f"OK: IYB morphism on a generating set of size {len(m.gen_set)} "
                   f"of a group of order {m.group.order}",
                   kind=kind, order=m.group.order, gen_set_size=len(m.gen_set))
    else:
        out.status(f"OK: IYB morphism of a group of order {m.group.order}; kernel size {len(m.kernel())}",
                   kind=kind, order=m.group.order, kernel_size=len(m.kernel()))
    return 0


def cmd_verify_cocycle(args, out: Output) -> int:
    _, c = _load_kind(args.file, "cocycle")
    out.status(f"OK: bijective 1-cocycle of a group of order {c.group.order}",
               kind="cocycle", order=c.group.order)
    return 0


def cmd_from_map(args, out: Output) -> int:
    _, m = _load_kind(args.file, "map")
    s = solution_from_map(m)
    check_solution(s, braid_cap=args.braid_cap)
    out.emit_object(s, f"solution on {s.size} points")
    return 0


def cmd_from_solution(args, out: Output) -> int:
    _, s = _load_kind(args.file, "solution")
    m = map_from_solution(s)
    out.emit_object(m, f"IYB map on {m.size} points")
    return 0


def cmd_star(args, out: Output) -> int:
    kind, obj = _load_kind(args.file, "morphism", "generator_morphism")
    _, c = star_product(_as_morphism(kind, obj))
    out.emit_object(c, f"cocycle onto an abelian group of order {c.target.order}")
    return 0


def cmd_to_morphism(args, out: Output) -> int:
    _, c = _load_kind(args.file, "cocycle")
    if args.check_action:
        from .iybgroup import check_action_forcing
        check_action_forcing(c.group, c.target, c.action.per_element, c.pi)
    m = cocycle_to_morphism(c)
    out.emit_object(m, f"IYB morphism of a group of order {m.group.order}")
    return 0


def cmd_enumerate(args, out: Output) -> int:
    if args.n < 0:
        raise UsageError("n must be non-negative")
    res = enumerate_iyb_maps(args.n, up_to_relabeling=not args.labelled, workers=args.workers,
                             allow_large=args.allow_large)
    if args.out_dir:
        d = Path(args.out_dir)
        files = []
        for i, m in enumerate(res.maps):
            name = f"map-{args.n}-{i:04d}.json"
            write_json(d / name, m)
            files.append(name)
        write_json(d / "manifest.json", {"n": args.n, "count": res.count, "complete": res.complete,
                                          "up_to_relabeling": res.up_to_relabeling,
                                          "labelled_total": res.total_labelled, "files": files,
                                          "seed": args.seed, "tool_version": __version__})
    if args.count_only and not args.json:
        print(res.count)
    else:
        out.status(f"{res.count} IYB maps on {args.n} points"
                   f" ({'up to relabeling' if res.up_to_relabeling else 'labelled'};"
                   f" {res.total_labelled} labelled; {'complete' if res.complete else 'incomplete'})",
                   n=args.n, count=res.count, labelled_total=res.total_labelled,
                   complete=res.complete, up_to_relabeling=res.up_to_relabeling)
    return 0 if res.complete else 1


def cmd_amplify(args, out: Output) -> int:
    _, m = _load_kind(args.file, "map")
    cap = args.cap_points or DEFAULT_POINT_CAP
    if args.strict_cap:
        require_within_cap(m, args.iterations, cap)
    res = iterate_lambda2(m, args.iterations, cap_points=cap, iso_cap=args.iso_cap)
    stages = []
    d = Path(args.out_dir) if args.out_dir else None
    for k, mk in enumerate(res.maps):
        cl = mk.closure(cap=max(args.cap_order, DEFAULT_ORDER_CAP))
        entry = {"stage": k, "size": mk.size, "closure_fingerprint": _fp_json(cl)}
        if k > 0:
            st = res.stages[k - 1]
            entry["isomorphic_to_previous"] = st.isomorphic
            entry["notes"] = st.notes
        if d is not None:
            entry["file"] = f"stage-{k}.json"
            write_json(d / entry["file"], mk)
        stages.append(entry)
    manifest = {"iterations": args.iterations, "complete": res.complete, "notes": res.notes,
                "stages": stages, "seed": args.seed, "tool_version": __version__}
    if d is not None:
        write_json(d / "manifest.json", manifest)
    sizes = " -> ".join(str(s["size"]) for s in stages)
    out.status(f"amplified: {sizes} points" + ("" if res.complete else " (stopped at the point cap)"),
               **manifest)
    return 0


def _emit_gm(args, out: Output, ex_group, gm: GeneratorMorphism, name: str) -> int:
    if args.as_map:
        rows = small_faithful_action(ex_group)
        res = generator_morphism_to_full(gm, y_action=rows)
        out.emit_object(res.iyb_map, f"{name}: IYB map on {res.iyb_map.size} points, "
                                     f"closure order {res.closure.order}")
    elif args.full:
        m = full_morphism(gm)
        out.emit_object(m, f"{name}: IYB morphism of a group of order {m.group.order}")
    else:
        out.emit_object(gm, f"{name}: group of order {ex_group.order}, |Z| = {len(gm.gen_set)}")
    return 0


def cmd_build(args, out: Output) -> int:
    what = args.what
    if what == "q8c3":
        ex = build_q8c3()
        return _emit_gm(args, out, ex.group, ex.morphism, "Q8 x| C3")
    if what == "c35":
        ex = build_c35()
        return _emit_gm(args, out, ex.group, ex.morphism, "order-243 group")
    if what == "cba":
        params = [args.n, args.q1, args.q2, args.r1, args.r2, args.s1, args.s2, args.t, args.u]
        if any(p is None for p in params):
            raise UsageError("cba needs --n --q1 --q2 --r1 --r2 --s1 --s2 --t --u")
        bad = cba_violations(*params)
        if bad:
            raise UsageError("parameters rejected: " + "; ".join(bad))
        ex = build_cba(*params)
        return _emit_gm(args, out, ex.group, ex.morphism, "cyclic-by-abelian group")
    if what == "wreath":
        base = trivial_cocycle(cyclic(args.base_order))
        top, rows = cyclic_perm_cocycle(args.top_order)
        c = wreath(base, top, rows, cap=args.cap_order)
        out.emit_object(c, f"C{args.base_order} wr C{args.top_order}: order {c.group.order}")
        return 0
    if what == "sylow":
        if args.p is None or args.degree is None:
            raise UsageError("sylow needs -p and -n")
        return _sylow(args, out)
    if what == "class2":
        if not args.group:
            raise UsageError("class2 needs a group (name like dihedral:8, or a JSON file)")
        g = group_from_text(args.group)
        data = class2_decomposition(g)
        _, m = car_iyb(data)
        out.emit_object(m, f"class-2 group of order {g.order}: {len(data.abelian_parts)} abelian parts")
        return 0
    if what == "semidirect":
        a = group_from_text(args.normal)
        if not a.is_abelian():
            raise UsageError("the normal factor must be abelian")
        k = args.top_order
        h = cyclic(k)
        if args.action == "inversion":
            if k % 2:
                raise UsageError("inversion needs an even top order")
            action = inversion_action(h, a)
        else:
            action = np.tile(np.arange(a.order), (k, 1))
        g, c = semidirect_from_action(a, trivial_cocycle(h), action)
        out.emit_object(c, f"semidirect product of order {g.order}")
        return 0
    raise UsageError(f"unknown build target {what}")


def _sylow(args, out: Output) -> int:
    c = sylow_sym(args.p, args.degree, cap=args.cap_order)
    out.emit_object(c, f"Sylow {args.p}-subgroup of Sym_{args.degree}: order {c.group.order}")
    return 0


def cmd_lift_search(args, out: Output) -> int:
    kind, obj = _load_kind(args.file, "group", "morphism", "generator_morphism", "cocycle")
    g = obj if kind == "group" else obj.group
    if args.normal == "derived":
        normal = g.derived_subgroup()
    elif args.normal == "center":
        normal = g.center()
    else:
        normal = sorted(set(_elements(g, args.normal)))
    if not g.is_normal(normal):
        raise UsageError("N is not a normal subgroup")
    if args.quotient == "trivial":
        q, proj = quotient(g, normal)
        mubar = trivial_morphism(q)
    elif args.quotient == "induced":
        if kind == "group":
            raise UsageError("--quotient induced needs a morphism file")
        mubar, proj = quotient_morphism(_as_morphism(kind, obj), normal)
    else:
        raise UsageError("--quotient is 'trivial' or 'induced'")
    gens = _elements(g, args.gens) if args.gens else generating_set(g)
    res = lift_search(g, normal, mubar, proj, gens, budget=args.budget)
    if args.out_dir:
        d = Path(args.out_dir)
        for i, m in enumerate(res.liftings):
            write_json(d / f"lifting-{i:04d}.json", m)
    flag = "exhaustive" if res.exhaustive else "budget exhausted"
    out.status(f"{len(res.liftings)} liftings ({flag})",
               liftings=len(res.liftings), exhaustive=res.exhaustive, nodes=res.nodes,
               branch_points=[list(p) for p in res.branch_points], space_size=res.space_size,
               normal_size=res.normal_size)
    if not args.json:
        print(f"search: {res.nodes} nodes, branch points {len(res.branch_points)}, "
              f"candidate space {res.space_size}", file=sys.stderr)
    return 0


def cmd_hall(args, out: Output) -> int:
    _, c = _load_kind(args.file, "cocycle")
    primes = [int(p) for p in args.primes.split(",") if p]
    h = hall_restriction(c, primes)
    out.emit_object(h, f"Hall restriction: order {h.group.order}")
    return 0


def cmd_product(args, out: Output) -> int:
    _, c1 = _load_kind(args.first, "cocycle")
    _, c2 = _load_kind(args.second, "cocycle")
    c = direct_product_cocycle(c1, c2)
    out.emit_object(c, f"direct product: order {c.group.order}")
    return 0


def cmd_wreath(args, out: Output) -> int:
    _, cg = _load_kind(args.base, "cocycle")
    _, ch = _load_kind(args.top, "cocycle")
    if args.perms:
        rows = np.asarray(read_json(args.perms), dtype=np.int64)
    elif ch.group.perms is not None:
        rows = ch.group.perms
    else:
        raise UsageError("the top group needs a permutation action (group 'perms' or --perms)")
    c = wreath(cg, ch, rows, cap=args.cap_order)
    out.emit_object(c, f"wreath product: order {c.group.order}")
    return 0


def cmd_catalog(args, out: Output) -> int:
    cat = Catalog(args.catalog)
    if args.action == "add":
        if not args.files:
            raise UsageError("catalog add needs at least one file")
        prov = json.loads(args.provenance) if args.provenance else None
        for f in args.files:
            e = cat.add(f, prov)
            out.status(f"{e.id} {e.kind} size {e.size}", id=e.id, kind=e.kind, size=e.size)
        return 0
    if args.action == "list":
        entries = cat.entries()
        if args.json:
            sys.stdout.write(canonical_dumps({"entries": [e.__dict__ for e in entries]}))
        else:
            for e in entries:
                print(f"{e.id[:16]} {e.kind:18} size {e.size:5} closure {e.closure_fingerprint[0]}")
        return 0
    if args.action == "dedup":
        classes = catalog_dedup(cat)
        if args.json:
            sys.stdout.write(canonical_dumps({"classes": [{"members": c.members, "exact": c.exact}
                                                          for c in classes]}))
        else:
            print(f"{len(classes)} classes")
            for c in classes:
                tag = "exact" if c.exact else "coarse"
                print(f"  [{tag}] " + " ".join(m[:16] for m in c.members))
        return 0
    if args.action == "verify":
        bad = cat.verify()
        if bad:
            raise VerificationError(Violation("catalog entry", tuple(bad), detail="hash or fingerprint mismatch"))
        out.status(f"OK: {len(cat.entries())} entries verified")
        return 0
    raise UsageError(f"unknown catalog action {args.action}")


def cmd_fixtures(args, out: Output) -> int:
    """Write the standard corpus to ``--out-dir``; identical output for a given seed."""
    if not args.out_dir:
        raise UsageError("fixtures needs --out-dir")
    d = Path(args.out_dir)
    rng = random.Random(args.seed)
    files: dict[str, str] = {}

    def put(name, obj):
        write_json(d / name, obj)
        files[name] = type(obj).__name__

    for n in (1, 2, 3):
        put(f"identity-{n}.json", IYBMap(n, tuple(tuple(range(n)) for _ in range(n))))
        for i, m in enumerate(enumerate_iyb_maps(n).maps):
            put(f"map-{n}-{i}.json", m)
    q8 = build_q8c3()
    put("q8c3.json", q8.morphism)
    put("q8c3-map.json", generator_morphism_to_full(q8.morphism, small_faithful_action(q8.group)).iyb_map)
    put("c35.json", build_c35().morphism)
    put("cba42.json", build_cba(7, 3, 2, 2, 6, 0, 0, 1, 3).morphism)
    _, c = star_product(full_morphism(q8.morphism))
    put("q8c3-cocycle.json", c)
    # a relabelled copy of the same cocycle: new element indices for G (fixing 0) and A
    pg = [0] + rng.sample(range(1, c.group.order), c.group.order - 1)
    pa = [0] + rng.sample(range(1, c.target.order), c.target.order - 1)
    put("q8c3-cocycle-relabelled.json", relabel_cocycle(c, pg, pa))
    cp, rows = cyclic_perm_cocycle(2)
    put("c2-perm.json", BijectiveCocycle(FiniteGroup(cp.group.table, perms=rows), cp.target,
                                         cp.action, cp.pi))
    put("wreath-c2-c2.json", wreath(trivial_cocycle(cyclic(2)), cp, rows))
    put("sylow-2-4.json", sylow_sym(2, 4))
    for name, g in (("q8", quaternion()), ("d8", dihedral(8)), ("heis27", heisenberg(3))):
        put(f"car-{name}.json", car_iyb(class2_decomposition(g))[1])
    write_json(d / "manifest.json", {"files": sorted(files), "seed": args.seed, "tool_version": __version__})
    out.status(f"wrote {len(files)} fixtures to {d}", files=sorted(files))
    return 0


def relabel_cocycle(c: BijectiveCocycle, pg, pa) -> BijectiveCocycle:
    """Transport ``c`` along bijections ``pg`` of G and ``pa`` of A (both fixing 0)."""
    pg = np.asarray(pg, dtype=np.int64)
    pa = np.asarray(pa, dtype=np.int64)
    ig = np.argsort(pg)
    ia = np.argsort(pa)
    gt = pg[c.group.table[np.ix_(ig, ig)]]
    at = pa[c.target.table[np.ix_(ia, ia)]]
    g = FiniteGroup(gt, check=False)
    a = FiniteGroup(at, check=False)
    alpha = pa[c.action.per_element[np.ix_(ig, ia)]]
    pi = pa[c.pi[ig]]
    return check_cocycle(g, a, alpha, pi)


# argument parsing

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for any randomized step (default 0)")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--cap-order", type=int, default=DEFAULT_ORDER_CAP, help="largest group built")
    p.add_argument("--cap-points", type=int, default=None, help="largest point set built")
    p.add_argument("--out-dir", default=None)
    p.add_argument("-o", "--out", default=None, help="write the resulting object here")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="ybforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ybforge {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    for name, func, what in (("verify-map", cmd_verify_map, "an IYB map"),
                             ("verify-solution", cmd_verify_solution, "a set-theoretic solution"),
                             ("verify-morphism", cmd_verify_morphism, "an IYB morphism"),
                             ("verify-cocycle", cmd_verify_cocycle, "a bijective 1-cocycle")):
        p = verb(name, func, f"check {what} file")
        p.add_argument("file")
        if name == "verify-solution":
            p.add_argument("--braid-cap", type=int, default=BRAID_POINT_CAP)

    p = verb("from-map", cmd_from_map, "solution of an IYB map")
    p.add_argument("file")
    p.add_argument("--braid-cap", type=int, default=BRAID_POINT_CAP)
    p = verb("from-solution", cmd_from_solution, "IYB map of a solution")
    p.add_argument("file")
    p = verb("star", cmd_star, "bijective 1-cocycle of an IYB morphism")
    p.add_argument("file")
    p = verb("to-morphism", cmd_to_morphism, "IYB morphism of a bijective 1-cocycle")
    p.add_argument("file")
    p.add_argument("--check-action", action="store_true",
                   help="also re-derive that every alpha_g is an automorphism")

    p = verb("enumerate", cmd_enumerate, "all IYB maps on n points")
    p.add_argument("n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--labelled", action="store_true", help="count labelled maps, not classes")
    p.add_argument("--allow-large", action="store_true", help="permit n = 5")

    p = verb("amplify", cmd_amplify, "iterate the X -> X^2 doubling")
    p.add_argument("file")
    p.add_argument("--iterations", type=int, default=1)
    p.add_argument("--iso-cap", type=int, default=DEFAULT_ISO_CAP)
    p.add_argument("--strict-cap", action="store_true", help="fail instead of stopping at the cap")

    p = verb("build", cmd_build, "build a named example or construction")
    p.add_argument("what", choices=["q8c3", "c35", "cba", "wreath", "sylow", "class2", "semidirect"])
    p.add_argument("group", nargs="?", help="group for class2")
    for k in ("n", "q1", "q2", "r1", "r2", "s1", "s2", "t", "u"):
        p.add_argument(f"--{k}", type=int)
    p.add_argument("-p", type=int, dest="p")
    p.add_argument("--degree", type=int, help="n for sylow")
    p.add_argument("--base-order", type=int, default=2)
    p.add_argument("--top-order", type=int, default=2)
    p.add_argument("--normal", default="cyclic:3", help="abelian normal factor for semidirect")
    p.add_argument("--action", choices=["inversion", "trivial"], default="inversion")
    p.add_argument("--full", action="store_true", help="emit the IYB morphism on all of G")
    p.add_argument("--as-map", action="store_true", help="emit the IYB map on Z u Y")

    p = verb("lift-search", cmd_lift_search, "IYB morphisms inducing a given one on G/N")
    p.add_argument("file", help="group, morphism or cocycle JSON")
    p.add_argument("--normal", default="derived", help="derived, center, or element list")
    p.add_argument("--quotient", default="trivial", help="trivial or induced")
    p.add_argument("--gens", default=None, help="generators (indices or labels)")
    p.add_argument("--budget", type=int, default=-1, help="node budget (-1: none)")

    p = verb("hall", cmd_hall, "restrict a cocycle to a Hall subgroup")
    p.add_argument("file")
    p.add_argument("--primes", required=True)
    p = verb("product", cmd_product, "direct product of two cocycles")
    p.add_argument("first")
    p.add_argument("second")
    p = verb("wreath", cmd_wreath, "wreath product of two cocycles")
    p.add_argument("base")
    p.add_argument("top")
    p.add_argument("--perms", default=None, help="JSON rows: permutation of each top element")
    p = verb("sylow", _sylow, "Sylow subgroup of a symmetric group")
    p.add_argument("-p", type=int, required=True, dest="p")
    p.add_argument("-n", type=int, required=True, dest="degree")

    p = verb("catalog", cmd_catalog, "the solution catalog")
    p.add_argument("action", choices=["add", "list", "dedup", "verify"])
    p.add_argument("files", nargs="*")
    p.add_argument("--catalog", default=None, help="catalog directory (default $YBFORGE_CATALOG)")
    p.add_argument("--provenance", default=None, help="JSON object recorded with each entry")

    verb("fixtures", cmd_fixtures, "write the reproducible test corpus")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = Output(args)
    try:
        return args.func(args, out)
    except VerificationError as exc:
        v = exc.violation
        if args.json:
            sys.stdout.write(canonical_dumps({"ok": False, "violation": v.to_json()}))
        else:
            print(f"FAILED: {v}")
        return 1
    except (UsageError, FormatError, GroupError, PreconditionError, BudgetExceeded,
            KeyError, ValueError, TypeError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
