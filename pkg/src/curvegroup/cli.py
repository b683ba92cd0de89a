"""Command-line front end: ``curvegroup {group,rep,curve,report}``.

Exit codes: 0 every check passed, 1 a verification check failed, 2 usage
error, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .curvelab import (
    MAX_RETRIES,
    audit_with_resampling,
    curve_build,
    delta_A,
    genus_degree_oracle,
    genus_theorem,
    sing_count_formula,
    singularity_audit,
    tjurina_total_formula,
    zariski_quartic,
)
from .dihedralrep import (
    DEFAULT_CLOSURE_CAP,
    build_rep,
    closure,
    emit_matrices,
    extension_structure,
    verify_relations,
)
from .enumeration import DEFAULT_COSET_CAP, STRATEGIES, CapExceeded, abelianization, todd_coxeter
from .fpcore import GroupParams, presentation_complement, presentation_H
from .polycore import DEFAULT_PRIME

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
GRID_Q = (3, 5, 7, 9)
GRID_K = (1, 2, 3)

log = logging.getLogger("curvegroup")


class _Timer:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: dict[str, float] = {}

    def run(self, stage, fn, *args, **kw):
        t0 = time.perf_counter()
        try:
            return fn(*args, **kw)
        finally:
            self.stages[stage] = round(time.perf_counter() - t0, 4)

    def attach(self, doc: dict) -> dict:
        if self.enabled:
            doc["timing"] = dict(self.stages)
        return doc


# -- sections --------------------------------------------------------------------


def group_section(q, k, max_cosets=DEFAULT_COSET_CAP, strategy="felsch", abelianize=True, timer=None):
    timer = timer or _Timer(False)
    pres = presentation_H(q, k)
    res = timer.run("todd_coxeter", todd_coxeter, pres, max_cosets, strategy)
    expected = 2 * q * (q - 1) * k
    doc = res.as_dict(pres.name)
    doc["expected_order"] = expected
    checks = {"order": res.order == expected}
    if abelianize:
        ab = timer.run("abelianization", abelianization, pres)
        doc["abelianization"] = ab.as_dict()
        checks["abelianization"] = ab.is_cyclic and ab.order == 2 * (q - 1) * k
    doc["checks"] = checks
    return doc


def rep_section(q, k, emit=None, timer=None):
    timer = timer or _Timer(False)
    A, B = build_rep(q, k)
    rel = timer.run("relations", verify_relations, A, B, q, k)
    G = timer.run("closure", closure, [A, B], DEFAULT_CLOSURE_CAP)
    ext = timer.run("extension", extension_structure, G, q, k)
    if emit:
        Path(emit).write_text(json.dumps(emit_matrices(G, ext, q, k), indent=1) + "\n", encoding="utf-8")
    doc = {
        "conductor": A.N,
        "relations": rel.as_dict(),
        "closure_order": len(G),
        "extension": ext.as_dict(),
    }
    doc["checks"] = {
        "relations": rel.all,
        "closure_order": len(G) == 2 * q * (q - 1) * k,
        "scalar_subgroup": ext.scalar_order == k * (q - 1) and ext.scalar_central and ext.scalars_generated_by_c,
        "pgl_dihedral": ext.pgl_order == 2 * q and ext.pgl_dihedral,
    }
    return doc


def curve_section(q, k, seed, prime, audit, timer=None, out_dir=None):
    timer = timer or _Timer(False)
    d = 2 * (q - 1) * k
    expected_N = sing_count_formula(q, k, k)
    doc = {"degree": d, "expected_N": expected_N, "expected_T": tjurina_total_formula(q, k, k)}
    N_for_genus = expected_N
    checks = {}
    curve = None
    if audit:
        outcome = timer.run("audit", audit_with_resampling, q, k, seed, prime, seed)
        curve = outcome.curve
        a = outcome.audit
        doc.update(
            seed=curve.seed,
            attempts=outcome.attempts,
            N=a.N,
            T=a.T,
            audit=a.to_json(outcome.expected_N, outcome.expected_T),
        )
        N_for_genus = a.N
        checks["singularities"] = outcome.passed
        if out_dir:
            _write_json(out_dir, "audit.json", a.to_json(outcome.expected_N, outcome.expected_T))
    doc["genus_formula"] = genus_theorem(q, k)
    doc["genus_oracle"] = genus_degree_oracle(d, N_for_genus, delta_A(q))
    checks["genus"] = doc["genus_formula"] == doc["genus_oracle"]
    doc["checks"] = checks
    if out_dir:
        if curve is None:
            curve = timer.run("build", curve_build, q, k, seed)
        _write_json(out_dir, "curve.json", curve.to_json())
    return doc


def _write_json(out_dir, name, doc):
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    (path / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _all_pass(doc) -> bool:
    if isinstance(doc, dict):
        if "checks" in doc and not all(doc["checks"].values()):
            return False
        return all(_all_pass(v) for v in doc.values())
    if isinstance(doc, list):
        return all(_all_pass(v) for v in doc)
    return True


def full_report(q, k, *, audit=False, seed=7, prime=DEFAULT_PRIME, max_cosets=DEFAULT_COSET_CAP, strategy="felsch", timings=False):
    timer = _Timer(timings)
    doc = {"params": {"p": 2, "q": q, "m": 2, "k": k, "l": k}}
    doc["group"] = group_section(q, k, max_cosets, strategy, True, timer)
    doc["rep"] = rep_section(q, k, None, timer)
    doc["curve"] = curve_section(q, k, seed, prime, audit, timer)
    doc["checks"] = {"tc_equals_closure": doc["group"]["order"] == doc["rep"]["closure_order"]}
    doc["pass"] = _all_pass(doc)
    return timer.attach(doc)


def _grid_job(args):
    q, k, audit, seed, prime, max_cosets, strategy, timings = args
    return full_report(q, k, audit=audit, seed=seed, prime=prime, max_cosets=max_cosets, strategy=strategy, timings=timings)


def grid_report(deep=False, seed=7, prime=DEFAULT_PRIME, max_cosets=DEFAULT_COSET_CAP, strategy="felsch", timings=False):
    jobs = [
        (q, k, deep or (q <= 5 and k == 1), seed, prime, max_cosets, strategy, timings)
        for q in GRID_Q
        for k in GRID_K
    ]
    workers = max(1, int(os.environ.get("CURVEGROUP_THREADS", os.cpu_count() or 1)))
    if workers == 1:
        results = [_grid_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_grid_job, jobs))  # map preserves (q, k) order
    return {"grid": results, "pass": all(r["pass"] for r in results)}


# -- argument parsing --------------------------------------------------------------


def _odd_q(text: str) -> int:
    q = int(text)
    if q < 3 or q % 2 == 0:
        raise argparse.ArgumentTypeError(f"q must be an odd integer >= 3, got {q}")
    return q


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="curvegroup", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def qk(p, required=True):
        p.add_argument("-q", type=_odd_q, required=required, help="odd integer >= 3")
        p.add_argument("-k", type=_positive, required=required, default=None if required else 1)
        p.add_argument("--json", action="store_true", help="print the full JSON document")

    g = sub.add_parser("group", help="coset enumeration and abelianization of H(q;k)")
    qk(g, required=False)
    g.add_argument("--max-cosets", type=_positive, default=DEFAULT_COSET_CAP)
    g.add_argument("--abelianize", action="store_true")
    g.add_argument("--strategy", choices=STRATEGIES, default="felsch")
    g.add_argument(
        "--general", nargs=5, type=_positive, metavar=("P", "Q", "M", "K", "L"),
        help="enumerate the complement presentation for general (p, q, m, k, l) instead",
    )

    r = sub.add_parser("rep", help="the 2x2 cyclotomic representation")
    qk(r)
    r.add_argument("--emit", metavar="FILE", help="write matrices.json")

    c = sub.add_parser("curve", help="build C(q,k) and optionally audit its singularities")
    qk(c, required=False)
    c.add_argument("--seed", type=int, default=7)
    c.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    c.add_argument("--audit", action="store_true")
    c.add_argument("--fixture", choices=("zariski",))
    c.add_argument("--out", metavar="DIR", help="write curve.json (and audit.json) here")

    rp = sub.add_parser("report", help="end-to-end verification report")
    qk(rp, required=False)
    rp.add_argument("--audit", action="store_true")
    rp.add_argument("--grid", action="store_true", help="q in {3,5,7,9} x k in {1,2,3}")
    rp.add_argument("--deep", action="store_true", help="audit every grid curve")
    rp.add_argument("--seed", type=int, default=7)
    rp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    rp.add_argument("--max-cosets", type=_positive, default=DEFAULT_COSET_CAP)
    rp.add_argument("--strategy", choices=STRATEGIES, default="felsch")
    rp.add_argument("--timings", action="store_true", help="add per-stage timings (breaks byte-identity)")
    return ap


def _emit(doc: dict, as_json: bool, summary: list[str]) -> None:
    if as_json:
        print(json.dumps(doc, indent=2))
    else:
        print("\n".join(summary))


def _checks_line(doc: dict) -> str:
    return "pass" if _all_pass(doc) else "FAIL"


def cmd_group(args) -> int:
    if args.general:
        p, q, m, k, l = args.general
        try:
            params = GroupParams(p, q, m, k, l)
        except ValueError as exc:
            raise _Usage(str(exc))
        pres = presentation_complement(params)
        res = todd_coxeter(pres, args.max_cosets, args.strategy)
        doc = res.as_dict(pres.name)
        if args.abelianize:
            doc["abelianization"] = abelianization(pres).as_dict()
        _emit(doc, args.json, [f"{pres.name}: order {res.order} ({res.cosets_defined} cosets defined, {res.strategy})"])
        return EXIT_OK
    if args.q is None:
        raise _Usage("group needs -q (or --general)")
    doc = group_section(args.q, args.k, args.max_cosets, args.strategy, args.abelianize)
    lines = [f"{doc['group']}: order {doc['order']} (expected {doc['expected_order']}; "
             f"{doc['cosets_defined']} cosets defined, {doc['strategy']})"]
    if "abelianization" in doc:
        ab = doc["abelianization"]
        lines.append(f"abelianization: invariants {ab['invariants']}, free rank {ab['free_rank']}")
    lines.append(_checks_line(doc))
    _emit(doc, args.json, lines)
    return EXIT_OK if _all_pass(doc) else EXIT_FAIL


def cmd_rep(args) -> int:
    doc = rep_section(args.q, args.k, args.emit)
    ext = doc["extension"]
    lines = [
        f"rep q={args.q} k={args.k} over Q(zeta_{doc['conductor']})",
        "relations: " + ", ".join(f"{k} {'ok' if v else 'FAILS'}" for k, v in doc["relations"].items()),
        f"closure order {doc['closure_order']}; scalars {ext['scalar_subgroup_order']} "
        f"(central {ext['scalar_subgroup_central']}); pgl {ext['pgl_image_order']} (dihedral {ext['pgl_image_dihedral']})",
        _checks_line(doc),
    ]
    _emit(doc, args.json, lines)
    return EXIT_OK if _all_pass(doc) else EXIT_FAIL


def cmd_curve(args) -> int:
    if args.fixture == "zariski":
        curve = zariski_quartic()
        doc = {"curve": curve.to_json()}
        lines = [f"zariski quartic: {doc['curve']['equation']}"]
        if args.audit:
            a = singularity_audit(curve, args.prime, args.seed)
            doc["audit"] = a.to_json(3, 6)
            doc["checks"] = {"singularities": doc["audit"]["pass"]}
            lines.append(f"N={a.N} T={a.T} (expected 3, 6)")
        if args.out:
            _write_json(args.out, "curve.json", doc["curve"])
            if args.audit:
                _write_json(args.out, "audit.json", doc["audit"])
    else:
        if args.q is None:
            raise _Usage("curve needs -q or --fixture")
        if args.audit:
            doc = curve_section(args.q, args.k, args.seed, args.prime, True, out_dir=args.out)
            lines = [
                f"C({args.q},{args.k}) degree {doc['degree']}, seed {doc['seed']} after {doc['attempts']} attempt(s)",
                f"N={doc['N']} T={doc['T']} (expected {doc['expected_N']}, {doc['expected_T']})",
                f"genus {doc['genus_formula']} (oracle {doc['genus_oracle']})",
            ]
        else:
            curve = curve_build(args.q, args.k, args.seed)
            doc = {"curve": curve.to_json()}
            if args.out:
                _write_json(args.out, "curve.json", doc["curve"])
            lines = [f"C({args.q},{args.k}) degree {curve.degree}: {doc['curve']['equation']}"]
    lines.append(_checks_line(doc))
    _emit(doc, args.json, lines)
    return EXIT_OK if _all_pass(doc) else EXIT_FAIL


def cmd_report(args) -> int:
    opts = dict(seed=args.seed, prime=args.prime, max_cosets=args.max_cosets, strategy=args.strategy, timings=args.timings)
    if args.grid:
        doc = grid_report(deep=args.deep, **opts)
        lines = [
            f"q={r['params']['q']} k={r['params']['k']}: order {r['group']['order']}, "
            f"closure {r['rep']['closure_order']}, {'pass' if r['pass'] else 'FAIL'}"
            for r in doc["grid"]
        ]
    else:
        if args.q is None:
            raise _Usage("report needs -q or --grid")
        doc = full_report(args.q, args.k, audit=args.audit, **opts)
        g, r, c = doc["group"], doc["rep"], doc["curve"]
        lines = [
            f"H({args.q};{args.k}): todd-coxeter {g['order']}, closure {r['closure_order']}, "
            f"abelianization {g['abelianization']['invariants']}",
            f"extension: scalars {r['extension']['scalar_subgroup_order']}, pgl {r['extension']['pgl_image_order']} "
            f"dihedral {r['extension']['pgl_image_dihedral']}",
            f"curve degree {c['degree']}, genus {c['genus_formula']} (oracle {c['genus_oracle']})"
            + (f", N={c['N']} T={c['T']}" if "N" in c else ""),
        ]
    lines.append("pass" if doc["pass"] else "FAIL")
    _emit(doc, args.json, lines)
    return EXIT_OK if doc["pass"] else EXIT_FAIL


class _Usage(Exception):
    pass


COMMANDS = {"group": cmd_group, "rep": cmd_rep, "curve": cmd_curve, "report": cmd_report}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except _Usage as exc:
        parser.print_usage(sys.stderr)
        print(f"curvegroup: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"curvegroup: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
