"""The ``forge`` command line: JSON lines out, exit 0/1/2 for pass/fail/bad input."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .constructions import (OrnamentationSpec, build_Ndoubleprime, graph_minor_of_ornament, ornament_matrix,
                            verify_ornament_circuits)
from .errors import CapacityError, InputError
from .field import FieldMatrix
from .frame import sweep_all_U
from .graphs import (cycle_matroid, cyclic_edge_connectivity, girth, graph_from_dict,
                     library_graph)
from .matroid import RepresentedMatroid, dual, epsilon, same_matroid_over_fields
from .perturbation import check_size_bound, dist_upto, pert_upto
from .report import VerificationReport
from .suite import CRITERIA, DEFAULT_SEED, SuiteConfig, run_suite
from .templates import (FrameTemplate, conforms, construct_witness, extremal_construct, extremal_formula,
                        extremal_search, is_reduced, is_refined, is_y_reduced)


class Output:
    """Collects the overall verdict while streaming JSON lines."""

    def __init__(self, stream=None):
        self.stream = stream or sys.stdout
        self.failed = False

    def line(self, obj):
        if isinstance(obj, VerificationReport):
            self.failed |= not obj.passed
            obj = obj.to_dict()
        self.stream.write(json.dumps(obj, sort_keys=True) + "\n")
        self.stream.flush()


def _load_json(path_or_text: str):
    if os.path.exists(path_or_text):
        with open(path_or_text) as fh:
            text = fh.read()
    elif path_or_text.lstrip()[:1] in ("[", "{"):
        text = path_or_text
    else:
        raise InputError(f"no such file: {path_or_text}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"cannot parse JSON from {path_or_text!r}: {exc}") from None


def _load_matrix(path: str) -> RepresentedMatroid:
    d = _load_json(path)
    if not isinstance(d, dict) or not {"p", "rows", "row_labels", "col_labels"} <= set(d):
        raise InputError(f"{path}: expected a matrix object with p, row_labels, col_labels and rows")
    return RepresentedMatroid(FieldMatrix.from_dict(d))


def _load_graph(args):
    if args.library:
        return library_graph(args.library)
    if args.graph:
        return graph_from_dict(_load_json(args.graph))
    raise InputError("give --graph FILE or --library NAME")


def _write(path, obj):
    with open(path, "w") as fh:
        json.dump(obj, fh, sort_keys=True)
        fh.write("\n")


# --- commands ---------------------------------------------------------------------

def cmd_ornament(args, out: Output):
    g = _load_graph(args)
    selected = [v for v in (args.R or "").split(",") if v]
    spec = OrnamentationSpec(g, selected)
    mat = ornament_matrix(spec, args.p)
    if args.out:
        _write(args.out, mat.to_dict())
    out.line({"ornament": {"rows": mat.shape[0], "elements": mat.shape[1], "R": selected, "p": args.p}})
    if args.check:
        other = 5 if args.p == 3 else 3
        ok = same_matroid_over_fields(mat, args.p, other)
        out.line(VerificationReport("thm:dyadic", {"fields": [args.p, other], "R": selected}, ok,
                                    None if ok else {"R": selected}))
        m = RepresentedMatroid(mat)
        ok = graph_minor_of_ornament(m, spec).same_independent_sets(cycle_matroid(g, args.p))
        out.line(VerificationReport("def:ornamentation", {"minor": "M(G)", "R": selected}, ok,
                                    None if ok else {"R": selected}))
        out.line(verify_ornament_circuits(spec, args.p))


def _load_u(arg):
    d = _load_json(arg)
    if isinstance(d, dict):
        if "U" in d:
            d = d["U"]
        elif "rows" in d:
            return FieldMatrix.from_dict(d)
        else:
            raise InputError("U must be a list of rows, {\"U\": rows} or a matrix object")
    if not isinstance(d, list):
        raise InputError("U must be a list of rows")
    return d


def cmd_n2(args, out: Output):
    m = build_Ndoubleprime(_load_u(args.u) if args.u else [])
    if args.out:
        _write(args.out, m.matrix.to_dict())
    out.line({"n2": {"rank": m.rank, "elements": len(m), "ground": list(m.ground)}})


def cmd_sweep(args, out: Output):
    emit = out.line if args.verbose else None
    out.line(sweep_all_U(workers=args.workers, emit=emit, witness_dir=args.emit_witnesses))


def cmd_pertdist(args, out: Output):
    m1, m2 = _load_matrix(args.m1), _load_matrix(args.m2)
    pt = pert_upto(m1, m2, args.max)
    d = dist_upto(m1, m2, min(2 * args.max, 4))
    params = {"pert": pt, "dist": d, "max": args.max}
    if pt is None or d is None:
        out.line({"claim": "lem:pert&dist", "params": params, "resolved": False})
        return
    ok = pt <= d <= 2 * pt
    out.line(VerificationReport("lem:pert&dist", params, ok, None if ok else params))


def cmd_bound_size(args, out: Output):
    out.line(check_size_bound(_load_matrix(args.n), args.t, args.trials, args.seed))


def cmd_template(args, out: Output):
    phi = FrameTemplate.from_dict(_load_json(args.template))
    if args.action == "check":
        info = {"y_reduced": is_y_reduced(phi), "reduced": is_reduced(phi), "refined": is_refined(phi)}
        if args.rank is not None:
            w = construct_witness(phi, args.rank)
            info["construction_conforms"] = conforms(w, phi)
        out.line({"template": info})
    elif args.action == "extremal":
        rank = _need_rank(args)
        rep = extremal_formula(phi, rank)
        rep.constructed = epsilon(extremal_construct(phi, rank))
        ok = rep.constructed == rep.predicted
        out.line(VerificationReport("lem:polynomial", rep.to_dict(), ok, None if ok else rep.to_dict()))
    else:
        rank = _need_rank(args)
        found = extremal_search(phi, rank)
        params = {"r": rank, "bruteforce": found.size, "points": list(found.points)}
        try:
            rep = extremal_formula(phi, rank)
        except ValueError:
            out.line({"bruteforce": params, "witness": found.witness.a.to_dict()})
            return
        params["predicted"] = rep.predicted
        ok = found.size == rep.predicted
        witness = {"A": found.witness.a.to_dict(), "Z": list(found.witness.z)}
        out.line(VerificationReport("lem:polynomial", params, ok, None if ok else witness))


def _need_rank(args) -> int:
    if args.rank is None:
        raise InputError("--rank is required")
    return args.rank


def cmd_graph(args, out: Output):
    g = _load_graph(args)
    info = {"vertices": len(g.vertices), "edges": len(g.edges), "cubic": g.is_cubic(), "girth": girth(g)}
    try:
        info["cyclic_edge_connectivity"] = cyclic_edge_connectivity(g)
    except CapacityError as exc:
        info["cyclic_edge_connectivity"] = None
        info["note"] = str(exc)
    if info["girth"] == float("inf"):
        info["girth"] = None
    out.line({"graph": info})


def cmd_matroid(args, out: Output):
    m = _load_matrix(args.matrix)
    if args.action == "rank":
        print(m.rank, file=out.stream)
    elif args.action == "epsilon":
        print(epsilon(m), file=out.stream)
    else:
        d = dual(m)
        if args.out:
            _write(args.out, d.matrix.to_dict())
        out.line(d.matrix.to_dict())


def cmd_verify_all(args, out: Output):
    if args.suite != "paper-desk":
        raise InputError(f"unknown suite {args.suite!r}")
    only = None
    if args.only:
        only = {int(x) for x in args.only.split(",")}
        if not only <= set(CRITERIA):
            raise InputError(f"criteria are numbered 1..{len(CRITERIA)}")
    cfg = SuiteConfig(seed=args.seed, workers=args.workers)
    for k, reports in run_suite(cfg, only):
        for rep in reports:
            d = rep.to_dict()
            d["criterion"] = k
            out.line(d)
            out.failed |= not rep.passed


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forge", description="Build and verify the matroid constructions.")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_source(p):
        p.add_argument("--graph", help="graph JSON file")
        p.add_argument("--library", help="named graph: K4, K33, Prism, Cube, Petersen, Heawood")

    p = sub.add_parser("ornament", help="build Or(G, R)")
    graph_source(p)
    p.add_argument("--R", default="", help="comma-separated vertices to ornament")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--out")
    p.add_argument("--check", action="store_true", help="run the two-field, minor and circuit checks")
    p.set_defaults(func=cmd_ornament)

    p = sub.add_parser("n2", help="build N''(U)")
    p.add_argument("--u", help="U as JSON rows (file or literal); omitted means the zero case")
    p.add_argument("--out")
    p.set_defaults(func=cmd_n2)

    p = sub.add_parser("sweep-u", help="check every U candidate")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--emit-witnesses", metavar="DIR")
    p.add_argument("--verbose", action="store_true", help="also print one line per U")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("pertdist", help="pert and dist of two represented matroids")
    p.add_argument("--m1", required=True)
    p.add_argument("--m2", required=True)
    p.add_argument("--max", type=int, default=2, choices=(0, 1, 2))
    p.set_defaults(func=cmd_pertdist)

    p = sub.add_parser("bound-size", help="sample perturbations against the epsilon bound")
    p.add_argument("--n", required=True, help="matrix JSON of N")
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_bound_size)

    p = sub.add_parser("template", help="frame template predicates and extremal sizes")
    p.add_argument("action", choices=("check", "extremal", "bruteforce"))
    p.add_argument("--template", required=True)
    p.add_argument("--rank", type=int)
    p.set_defaults(func=cmd_template)

    p = sub.add_parser("graph", help="graph invariants")
    p.add_argument("action", choices=("info",))
    graph_source(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("matroid", help="rank, epsilon or dual of a matrix")
    p.add_argument("action", choices=("rank", "epsilon", "dual"))
    p.add_argument("--matrix", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_matroid)

    p = sub.add_parser("verify-all", help="run the acceptance suite")
    p.add_argument("--suite", default="paper-desk")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--only", help="comma-separated criterion numbers")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None, stream=None) -> int:
    args = build_parser().parse_args(argv)
    out = Output(stream)
    try:
        args.func(args, out)
    except (ValueError, CapacityError, KeyError, OSError) as exc:
        print(f"forge: error: {exc}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
