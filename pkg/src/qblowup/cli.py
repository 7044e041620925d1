"""Command-line front end.

Commands: verify, orbits, tau, expand, higgs-check, hypergeom-check,
cache-stats.  Reports are deterministic JSON (sorted keys; a timestamp is
added only with ``--timestamp`` and lives in its own ``meta`` field).

Exit status: 0 when every selected check passes, 1 when some check fails,
2 on configuration or catalog errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from typing import List, Optional, Sequence

from . import __version__
from .cache import ResultCache, default_cache_dir

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


class ConfigError(Exception):
    pass


FAMILY_ALIASES = {
    "a1": "A1",
    "a1-two-term": "A1-two-term",
    "a2-general": "A2-general",
    "a2-higgsed-t1y": "A2-higgsed-t1y",
    "a2-higgsed-yt1": "A2-higgsed-yt1",
    "a2-higgsed-ty1": "A2-higgsed-ty1",
    "a2-two-term-higgsed": "A2-two-term-higgsed",
    "a3-higgsed": "A3-higgsed",
}


def _families(text: Optional[str]) -> List[str]:
    if not text or text == "all":
        return list(FAMILY_ALIASES.values())
    out = []
    for name in text.split(","):
        name = name.strip().lower()
        if name not in FAMILY_ALIASES:
            raise ConfigError(f"unknown family {name!r}; choose from {', '.join(FAMILY_ALIASES)} or all")
        out.append(FAMILY_ALIASES[name])
    return out


def _orders(text: Optional[str]):
    if text is None:
        return None
    try:
        parts = tuple(Fraction(x) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"bad order {text!r}") from None
    if any(p < 0 for p in parts):
        raise ConfigError("orders must be non-negative")
    return parts


def _seeds(args) -> List[int]:
    if getattr(args, "seed_list", None):
        try:
            return [int(x) for x in args.seed_list.split(",")]
        except ValueError:
            raise ConfigError(f"bad seed list {args.seed_list!r}") from None
    if args.seeds < 1:
        raise ConfigError("--seeds must be at least 1")
    return list(range(args.seeds))


def _n_range(text: str) -> List[int]:
    try:
        lo, hi = (int(x) for x in text.split(","))
    except ValueError:
        raise ConfigError(f"bad n-range {text!r}; expected lo,hi") from None
    if lo > 0 or hi < 0:
        raise ConfigError("n-range must contain 0")
    return list(range(lo, hi + 1))


def _jobs(args) -> int:
    j = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    return max(1, j)


# ---------------------------------------------------------------------------
# report emission


def emit(args, command: str, config: dict, results, summary: dict) -> None:
    report = {"command": command, "config": config, "results": results, "summary": summary,
              "version": __version__}
    if getattr(args, "timestamp", False):
        report["meta"] = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    text = json.dumps(report, sort_keys=True, indent=1) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)


def _line(status: str, label: str, detail: str = "") -> None:
    print(f"{status:<5} {label}" + (f"  {detail}" if detail else ""))


# ---------------------------------------------------------------------------
# verify


@lru_cache(maxsize=None)
def _catalog(family: str):
    from .blowup import load_catalog
    return tuple(load_catalog([family]))


def _verify_job(job):
    family, index, seed, order, backend = job
    from .blowup import verify_relation
    from .exact import make_param_point
    rec = _catalog(family)[index]
    rep = verify_relation(rec, make_param_point(seed), order, backend)
    return rep.to_json()


def cmd_verify(args) -> int:
    from .blowup import DEFAULT_ORDERS
    from .exact import make_param_point
    families = _families(args.family)
    order = _orders(args.order)
    seeds = _seeds(args)
    cache = ResultCache(args.cache_dir, enabled=not args.no_cache)
    jobs = []
    for fam in families:
        recs = _catalog(fam)
        if args.record:
            recs = [r for r in recs if r.record_id in set(args.record.split(","))]
        for rec in recs:
            o = order if order is not None else DEFAULT_ORDERS[fam]
            if len(o) != len(DEFAULT_ORDERS[fam]):
                raise ConfigError(f"{fam} needs {len(DEFAULT_ORDERS[fam])} comma-separated orders")
            for seed in seeds:
                jobs.append((fam, rec.index, seed, o, rec))
    if not jobs:
        raise ConfigError("no records selected")
    keys = [{"kind": "verify", "record": rec.line(), "record-id": rec.record_id,
             "point": make_param_point(seed).fingerprint(), "order": [str(x) for x in o], "version": __version__}
            for fam, idx, seed, o, rec in jobs]
    results: List[Optional[dict]] = [cache.get(k) for k in keys]
    todo = [i for i, r in enumerate(results) if r is None]
    payload = [(jobs[i][0], jobs[i][1], jobs[i][2], jobs[i][3], args.backend) for i in todo]
    n = _jobs(args)
    if n > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            fresh = list(ex.map(_verify_job, payload, chunksize=max(1, len(payload) // (4 * n))))
    else:
        fresh = [_verify_job(p) for p in payload]
    for i, r in zip(todo, fresh):
        results[i] = r
        cache.put(keys[i], r)
    failed = [r for r in results if r["status"] != "PASS"]
    for r in results:
        if r["status"] != "PASS" or args.verbose:
            _line(r["status"], f"{r['record-id']} seed={r['seed']}", json.dumps(r.get("first-failure", "")))
    summary = {"total": len(results), "passed": len(results) - len(failed), "failed": len(failed),
               "status": "PASS" if not failed else "FAIL"}
    print(f"verify: {summary['passed']}/{summary['total']} PASS  (cache hits {cache.hits}, misses {cache.misses})")
    config = {"families": families, "order": None if order is None else [str(x) for x in order], "seeds": seeds,
              "records": args.record}
    emit(args, "verify", config, results, summary)
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------------------
# orbits


def cmd_orbits(args) -> int:
    from . import weyl
    from .blowup import load_catalog
    ok = True
    results = {}
    if args.algebra == "d5":
        cat = load_catalog(["A1"])
        tuples = [tuple(r.j) + (r.d,) for r in cat]
        orbs = weyl.orbits(tuples, weyl.D5_EXTENDED)
        sizes = sorted((len(o) for o in orbs), reverse=True)
        closed = set().union(*orbs) == set(tuples)
        results["orbits"] = weyl.orbit_report(orbs, weyl.a1_labels)
        results["sizes"] = sizes
        results["catalog_closed"] = closed
        results["characters"] = [
            {"size": len(o), "decomposition": {",".join(map(str, k)): v for k, v in
                                               sorted(weyl.character_decompose([weyl.a1_labels(t) for t in o],
                                                                               weyl.D5).items())}}
            for o in sorted(orbs, key=lambda o: (-len(o), min(o)))]
        results["lattice_quotient"] = list(weyl.lattice_quotient(weyl.D5_OMEGA, weyl.D5_ALPHA))
        ok = closed
        print(f"D5 orbit sizes: {sizes}; lattice quotient {results['lattice_quotient']}")
        if args.group_orders:
            results["group_orders"] = {"W(D5)": weyl.group_order(weyl.D5_SIMPLE, 5),
                                       "extended": weyl.group_order(weyl.D5_EXTENDED, 5)}
            print(f"group orders: {results['group_orders']}")
        if args.f_check:
            from .exact import make_param_point
            checks = []
            for seed in _seeds(args):
                pt = make_param_point(seed)
                for rec in cat:
                    for g in weyl.D5_SIMPLE:
                        checks.append(weyl.f_transform_check(rec, g, pt, catalog=cat))
            n_ok = sum(c["status"] == "PASS" for c in checks)
            results["f_transform"] = {"checked": len(checks), "passed": n_ok,
                                      "failures": [c for c in checks if c["status"] != "PASS"]}
            ok = ok and n_ok == len(checks)
            print(f"f-transform: {n_ok}/{len(checks)} PASS")
    elif args.algebra == "a2":
        reps = [tuple(r.j) + (r.d, r.r) for r in load_catalog(["A2-general"])]
        omega = weyl.a2_omega_set(reps)
        ext = weyl.orbits(omega, weyl.A2_EXTENDED)
        a5 = weyl.orbits(omega, weyl.A5_SIMPLE)
        sizes = sorted(len(o) for o in ext)
        from collections import Counter
        a5_card = sorted(Counter(len(o) for o in a5).items())
        dec = weyl.character_decompose([weyl.a2_labels(t) for t in omega], weyl.A2_SYMMETRY)
        results.update(total=len(omega), sizes=sizes, a5_cardinalities=[list(x) for x in a5_card],
                       orbits=weyl.orbit_report(ext, weyl.a2_labels),
                       characters=[{"sl2+sl2": list(k[:2]), "sl6": list(k[2:]), "multiplicity": v}
                                   for k, v in sorted(dec.items())],
                       lattice_quotient=list(weyl.lattice_quotient(weyl.A5_OMEGA, weyl.A5_ALPHA)))
        print(f"A2 tuples: {len(omega)}; extended orbit sizes {sizes}")
        print("W(A5) cardinalities: " + " + ".join(f"{m} x {s}" for s, m in a5_card))
        if args.group_orders:
            results["group_orders"] = {"W(A5)": weyl.group_order(weyl.A5_SIMPLE, 7),
                                       "extended": weyl.group_order(weyl.A2_EXTENDED, 7)}
            print(f"group orders: {results['group_orders']}")
    else:
        raise ConfigError(f"unknown algebra {args.algebra!r}")
    emit(args, "orbits", {"algebra": args.algebra, "f_check": bool(getattr(args, "f_check", False))},
         results, {"status": "PASS" if ok else "FAIL"})
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# tau


def cmd_tau(args) -> int:
    from . import tauqp6
    from .exact import make_param_point
    n_range = _n_range(args.n_range)
    seeds = _seeds(args)
    rels = [r.strip().upper() for r in args.relations.split(",")]
    for r in rels:
        if r not in ("B1", "B2", "B3", "B4"):
            raise ConfigError(f"unknown relation {r!r}")
    cache = ResultCache(args.cache_dir, enabled=not args.no_cache)
    results = []
    for seed in seeds:
        pt = make_param_point(seed, "tau")
        key = {"kind": "tau", "check": args.check, "relations": rels, "order": args.order, "n_range": n_range,
               "convention": args.convention, "point": pt.fingerprint(), "version": __version__}
        rep = cache.get(key)
        if rep is None:
            if args.check == "bilinear":
                try:
                    reps = [tauqp6.bilinear_check(r, pt, args.order, n_range, args.convention) for r in rels]
                except ValueError as exc:
                    raise ConfigError(str(exc)) from None
                rep = {"reports": reps}
                rep["status"] = "PASS" if all(x["status"] == "PASS" for x in rep["reports"]) else "FAIL"
            elif args.check == "y":
                rep = tauqp6.y_consistency_check(pt, args.order, n_range, args.convention)
            elif args.check == "convention":
                rep = tauqp6.select_shift_convention(pt, args.order, n_range)
                rep["status"] = "PASS" if rep["selected"] else "FAIL"
            else:
                raise ConfigError(f"unknown tau check {args.check!r}")
            cache.put(key, rep)
        rep = dict(rep, seed=seed)
        results.append(rep)
        _line(rep["status"], f"tau {args.check} seed={seed}",
              json.dumps(rep.get("selected", "")) if args.check == "convention" else "")
    if args.check == "convention":
        chosen = {r["selected"] for r in results}
        stable = len(chosen) == 1 and None not in chosen
        print(f"shift convention: {sorted(map(str, chosen))} ({'stable' if stable else 'unstable'})")
    failed = [r for r in results if r["status"] != "PASS"]
    emit(args, "tau", {"check": args.check, "relations": rels, "order": args.order, "n_range": n_range,
                       "convention": args.convention, "seeds": seeds},
         results, {"status": "PASS" if not failed else "FAIL"})
    return EXIT_OK if not failed else EXIT_FAIL


# ---------------------------------------------------------------------------
# expand


def cmd_expand(args) -> int:
    from .exact import make_param_point
    from .nekrasov import f4_inst, f5_inst, f6_inst
    order = _orders(args.order)
    pt = make_param_point(args.seed)
    need = {"f4": 1, "f5": 2, "f6": 3}[args.function]
    if len(order) == 1:
        order = order * need
    if len(order) != need:
        raise ConfigError(f"{args.function} needs {need} orders")
    fn = {"f4": f4_inst, "f5": f5_inst, "f6": f6_inst}[args.function]
    series = fn(None, pt, *order)
    text = f"# {args.function} vars={','.join(series.vars)} order={','.join(map(str, order))} seed={args.seed}\n"
    text += series.dump()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# limit and Higgsing checks


def cmd_higgs(args) -> int:
    from .exact import make_param_point
    from .nekrasov import higgs_check
    kinds = ["right-identity", "left-identity", "middle-identity"] if args.kinds == "all" else args.kinds.split(",")
    results = []
    for seed in _seeds(args):
        pt = make_param_point(seed)
        for k in kinds:
            try:
                rep = higgs_check(k, pt, args.order)
            except ValueError as exc:
                raise ConfigError(str(exc)) from None
            rep["seed"] = seed
            results.append(rep)
            _line(rep["status"], f"{k} seed={seed}")
    failed = [r for r in results if r["status"] != "PASS"]
    emit(args, "higgs-check", {"kinds": kinds, "order": args.order}, results,
         {"status": "PASS" if not failed else "FAIL"})
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_hypergeom(args) -> int:
    from .blowup import hypergeom_limit_check, load_catalog
    from .exact import make_param_point
    recs = load_catalog(["A2-higgsed-t1y"])
    results = []
    for seed in _seeds(args):
        pt = make_param_point(seed)
        for rec in recs:
            rep = hypergeom_limit_check(rec, pt, args.order_y)
            rep["seed"] = seed
            results.append(rep)
            if rep["status"] != "PASS" or args.verbose:
                _line(rep["status"], f"{rec.record_id} seed={seed}")
    failed = [r for r in results if r["status"] != "PASS"]
    print(f"hypergeom-check: {len(results) - len(failed)}/{len(results)} PASS")
    emit(args, "hypergeom-check", {"order_y": args.order_y}, results,
         {"status": "PASS" if not failed else "FAIL"})
    return EXIT_OK if not failed else EXIT_FAIL


def cmd_cache_stats(args) -> int:
    cache = ResultCache(args.cache_dir)
    st = cache.stats()
    for k in ("directory", "entries", "bytes"):
        print(f"{k}: {st[k]}")
    emit(args, "cache-stats", {}, st, {"status": "PASS"})
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _common(p, seeds=True, cache=False):
    p.add_argument("--report", help="write the JSON report to this path")
    p.add_argument("--json", action="store_true", help="also print the JSON report")
    p.add_argument("--timestamp", action="store_true", help="add a timestamp in the report's meta field")
    p.add_argument("-v", "--verbose", action="store_true", help="print a line for every check")
    if seeds:
        p.add_argument("--seeds", type=int, default=3, help="number of random points (seeds 0..N-1)")
        p.add_argument("--seed-list", help="explicit comma-separated seeds")
    if cache:
        p.add_argument("--cache-dir", default=None,
                       help=f"cache directory (default $QBLOWUP_CACHE_DIR or {default_cache_dir()})")
        p.add_argument("--no-cache", action="store_true", help="neither read nor write the cache")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qblowup", description="Exact checks of q-deformed blowup relations.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify catalog relations order by order")
    p.add_argument("--family", default="all", help="comma-separated families (" + ", ".join(FAMILY_ALIASES) + ") or all")
    p.add_argument("--record", help="comma-separated record ids, e.g. A1#3")
    p.add_argument("--order", help="expansion order(s), e.g. 3 or 2,2 (default: per family)")
    p.add_argument("--backend", choices=["python", "cython"], default=None, help="localization kernel")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: logical cores)")
    _common(p, cache=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbits", help="Weyl-group orbits and character decompositions")
    p.add_argument("--algebra", choices=["d5", "a2"], default="d5")
    p.add_argument("--group-orders", action="store_true", help="also enumerate the generated groups")
    p.add_argument("--f-check", action="store_true", help="check the f-factor transformation (d5)")
    _common(p)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("tau", help="q-Painleve VI bilinear relations")
    p.add_argument("--check", choices=["bilinear", "y", "convention"], default="bilinear")
    p.add_argument("--relations", default="B1,B4")
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--n-range", default="-2,2", help="Fourier window lo,hi")
    p.add_argument("--convention", choices=["minus", "plus"], default="minus",
                   help="underline means t -> q^{-1} t (minus) or q t (plus)")
    _common(p, cache=True)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("expand", help="dump an instanton series")
    p.add_argument("function", choices=["f4", "f5", "f6"])
    p.add_argument("--order", default="1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="write the dump here instead of stdout")
    p.set_defaults(func=cmd_expand, report=None, json=False)

    p = sub.add_parser("higgs-check", help="F5 -> F4 degeneration identities")
    p.add_argument("--kinds", default="all", help="right-identity, left-identity, middle-identity or all")
    p.add_argument("--order", type=int, default=2)
    _common(p)
    p.set_defaults(func=cmd_higgs)

    p = sub.add_parser("hypergeom-check", help="t -> 0 limit of the t1y relations")
    p.add_argument("--order-y", type=int, default=3)
    _common(p)
    p.set_defaults(func=cmd_hypergeom)

    p = sub.add_parser("cache-stats", help="summarise the result cache")
    p.add_argument("--cache-dir", default=None)
    _common(p, seeds=False)
    p.set_defaults(func=cmd_cache_stats)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    from .blowup import CatalogError
    try:
        return args.func(args)
    except (ConfigError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
