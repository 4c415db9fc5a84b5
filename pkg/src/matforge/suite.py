"""The desk-scale acceptance suite: ten checks, each a list of reports.

Every check is deterministic; the randomized ones take a seed that is
echoed in their reports.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations
from math import comb
from typing import Callable

from .constructions import (OrnamentationSpec, build_Ndoubleprime, gadget_block, graph_minor_of_ornament,
                            k5_matrix, n2_zero_display, ornament_matrix, verify_ornament_circuits)
from .field import FieldMatrix, add, iter_rref
from .frame import sweep_all_U
from .graphs import (MultiGraph, SignedGraph, complete_graph, cycle_matroid, cyclic_edge_connectivity,
                     frame_matroid, k4_signed_graph, library_graph)
from .matroid import (RepresentedMatroid, connectivity, dual, epsilon, is_isomorphic, minor,
                      same_matroid_over_fields, simplify)
from .perturbation import (MoveGraph, _profile, check_frame_dual_bound, check_size_bound, dist_upto,
                           pert_upto, random_low_rank)
from .report import VerificationReport, stopwatch
from .templates import BATTERY, check_notspanning, extremal_construct, extremal_search, \
    extremal_formula, min_rank, not_refined_template

DEFAULT_SEED = 20240601


@dataclass
class SuiteConfig:
    seed: int = DEFAULT_SEED
    workers: int = 1
    random_pairs: int = 100
    random_pair_size: int = 4
    size_trials: int = 200
    notspanning_samples: int = 20
    max_template_rank: int = 6
    ornament_graphs: tuple[str, ...] = ("K4", "K33", "Petersen")
    emit: Callable | None = field(default=None, repr=False)


# 1 ---------------------------------------------------------------------------

def check_sweep(cfg: SuiteConfig) -> list[VerificationReport]:
    return [sweep_all_U(workers=cfg.workers, emit=cfg.emit)]


# 2 ---------------------------------------------------------------------------

def check_n2_display(cfg: SuiteConfig) -> list[VerificationReport]:
    with stopwatch() as sw:
        n2 = build_Ndoubleprime([])
        shown = RepresentedMatroid(n2_zero_display())
        iso = is_isomorphic(n2, shown)
        simple = len(simplify(n2)) == len(n2)
    ok = iso is not None and n2.rank == 4 and len(n2) == 13 and simple
    params = {"rank": n2.rank, "elements": len(n2), "simple": simple}
    witness = {"isomorphism": iso} if ok else {"matrix": n2.matrix.to_dict()}
    return [VerificationReport("cla:nopert", params, ok, witness, elapsed_ms=sw.ms)]


# 3 ---------------------------------------------------------------------------

def gadget_identity(i: int = 1, p: int = 3) -> bool:
    """Delete g_i and contract {d_i, e_i, f_i} in the gadget block: M([1 1 1 / -I])."""
    block = RepresentedMatroid(gadget_block(i, p))
    d, e, f, g = (f"{x}{i}" for x in "defg")
    got = minor(block, [d, e, f], [g])
    want = RepresentedMatroid(FieldMatrix.from_rows(p, [[1, 1, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]],
                                                    col_labels=list(got.ground)))
    return got.same_independent_sets(want)


def check_gadget(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for p in (3, 5):
        with stopwatch() as sw:
            ok = gadget_identity(1, p)
        out.append(VerificationReport("lem:dyadic", {"identity": "gadget minor", "p": p}, ok,
                                      None if ok else {"p": p}, elapsed_ms=sw.ms))
    return out


# 4 ---------------------------------------------------------------------------

def check_small_pictures(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    with stopwatch() as sw:
        iso = is_isomorphic(frame_matroid(k4_signed_graph()), cycle_matroid(complete_graph(4)))
    out.append(VerificationReport("lem:K4signedgraph", {"graph": "signed K4"}, iso is not None,
                                  {"isomorphism": iso} if iso else {"isomorphism": None}, elapsed_ms=sw.ms))
    with stopwatch() as sw:
        iso = is_isomorphic(RepresentedMatroid(k5_matrix()), cycle_matroid(complete_graph(5)))
    out.append(VerificationReport("K5matrix", {"graph": "K5"}, iso is not None,
                                  {"isomorphism": iso} if iso else {"isomorphism": None}, elapsed_ms=sw.ms))
    return out


# 5 ---------------------------------------------------------------------------

def ornament_spec(name: str, selected: int = 1) -> OrnamentationSpec:
    g = library_graph(name)
    return OrnamentationSpec(g, g.vertices[:selected])


def check_ornaments(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for name in cfg.ornament_graphs:
        spec = ornament_spec(name)
        base = {"graph": name, "R": list(spec.selected)}
        with stopwatch() as sw:
            ok = same_matroid_over_fields(ornament_matrix(spec, 3), 3, 5)
        out.append(VerificationReport("thm:dyadic", {**base, "fields": [3, 5]}, ok,
                                      None if ok else base, elapsed_ms=sw.ms))
        with stopwatch() as sw:
            m = RepresentedMatroid(ornament_matrix(spec, 3))
            ok = graph_minor_of_ornament(m, spec).same_independent_sets(cycle_matroid(spec.graph))
        out.append(VerificationReport("def:ornamentation", {**base, "minor": "M(G)"}, ok,
                                      None if ok else base, elapsed_ms=sw.ms))
        rep = verify_ornament_circuits(spec)
        rep.params["graph"] = name
        out.append(rep)
    return out


# 6 ---------------------------------------------------------------------------

def check_extremal(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for name, make in BATTERY.items():
        phi = make()
        with stopwatch() as sw:
            rows, bad = [], None
            for r in range(min_rank(phi), cfg.max_template_rank + 1):
                rep = extremal_formula(phi, r)
                rep.constructed = epsilon(extremal_construct(phi, r))
                rows.append(rep.to_dict())
                if rep.constructed != rep.predicted and bad is None:
                    bad = rep.to_dict()
        out.append(VerificationReport("lem:polynomial", {"template": name, "check": "construction",
                                                         "ranks": [x["r"] for x in rows]},
                                      bad is None, bad, elapsed_ms=sw.ms))
        if min_rank(phi) <= 3:
            with stopwatch() as sw:
                rep = extremal_formula(phi, 3)
                found = extremal_search(phi, 3)
                rep.bruteforce = found.size
            ok = rep.bruteforce == rep.predicted
            witness = {**rep.to_dict(), "A": found.witness.a.to_dict(), "Z": list(found.witness.z),
                       "points": list(found.points)}
            out.append(VerificationReport("lem:polynomial", {"template": name, "check": "bruteforce", "r": 3,
                                                             "predicted": rep.predicted,
                                                             "bruteforce": rep.bruteforce},
                                          ok, None if ok else witness, elapsed_ms=sw.ms))
    return out


# 7 ---------------------------------------------------------------------------

def tiny_matroids(n: int, max_rank: int = 2, p: int = 3) -> list[RepresentedMatroid]:
    """One represented matroid per rank profile among n-element GF(p) matrices of rank <= max_rank."""
    ground = [f"e{j}" for j in range(n)]
    seen, out = set(), []
    for k in range(max_rank + 1):
        for rows in iter_rref(k, n, p):
            key = _profile(rows, n, p)
            if key in seen:
                continue
            seen.add(key)
            mat = FieldMatrix.from_rows(p, [list(r) for r in rows], [f"r{i}" for i in range(k)], ground)
            out.append(RepresentedMatroid(mat))
    return out


def _pair_verdict(m1, m2, graph):
    pt = pert_upto(m1, m2, 2)
    if pt is None:
        return None
    d = dist_upto(m1, m2, 4, graph)
    if d is None:
        return None
    return pt, d


def check_pert_dist(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    with stopwatch() as sw:
        pairs = resolved = 0
        bad = None
        for n in range(1, 5):
            family = tiny_matroids(n)
            graph = MoveGraph(n, 3)
            for m1 in family:
                for m2 in family:
                    pairs += 1
                    res = _pair_verdict(m1, m2, graph)
                    if res is None:
                        continue
                    resolved += 1
                    pt, d = res
                    if not pt <= d <= 2 * pt and bad is None:
                        bad = {"m1": m1.matrix.to_dict(), "m2": m2.matrix.to_dict(), "pert": pt, "dist": d}
    out.append(VerificationReport("lem:pert&dist", {"family": "exhaustive", "pairs": pairs,
                                                    "resolved": resolved}, bad is None, bad, elapsed_ms=sw.ms))
    rng = random.Random(cfg.seed)
    n = cfg.random_pair_size
    ground = [f"e{j}" for j in range(n)]
    with stopwatch() as sw:
        graph = MoveGraph(n, 3)
        resolved = 0
        bad = None
        for _ in range(cfg.random_pairs):
            k = rng.randint(0, 2)
            rows = [[rng.randrange(3) for _ in ground] for _ in range(k)]
            pad = rows + [[0] * n for _ in range(2)]
            labels = [f"r{i}" for i in range(len(pad))]
            m1 = RepresentedMatroid(FieldMatrix.from_rows(3, rows, labels[:k], ground))
            delta = random_low_rank(rng, labels, ground, rng.randint(0, 2), 3)
            m2 = RepresentedMatroid(add(FieldMatrix.from_rows(3, pad, labels, ground), delta))
            res = _pair_verdict(m1, m2, graph)
            if res is None:
                continue
            resolved += 1
            pt, d = res
            if not pt <= d <= 2 * pt and bad is None:
                bad = {"m1": m1.matrix.to_dict(), "m2": m2.matrix.to_dict(), "pert": pt, "dist": d}
    out.append(VerificationReport("lem:pert&dist", {"family": "random", "pairs": cfg.random_pairs,
                                                    "elements": n, "resolved": resolved},
                                  bad is None, bad, cfg.seed, sw.ms))
    return out


# 8 ---------------------------------------------------------------------------

def signed_graph_classes(n_vertices: int = 4, max_edges: int = 6):
    """Signed multigraphs on n labelled vertices with at most max_edges edges,
    one per class under vertex permutations.

    Edge kinds: positive or negative link on each pair, positive or negative
    loop on each vertex.
    """
    vs = list(range(n_vertices))
    kinds = [(u, v, s) for u, v in combinations(vs, 2) for s in (1, -1)]
    kinds += [(v, v, s) for v in vs for s in (1, -1)]
    index = {k: i for i, k in enumerate(kinds)}
    maps = []
    for perm in permutations(vs):
        maps.append([index[(min(perm[u], perm[v]), max(perm[u], perm[v]), s)] for u, v, s in kinds])
    seen = set()
    for size in range(max_edges + 1):
        for ms in combinations_with_replacement(range(len(kinds)), size):
            key = min(tuple(sorted(m[i] for i in ms)) for m in maps)
            if key in seen:
                continue
            seen.add(key)
            names = tuple(f"v{v}" for v in vs)
            edges = tuple((names[kinds[i][0]], names[kinds[i][1]], f"x{j}") for j, i in enumerate(ms))
            yield SignedGraph(MultiGraph(names, edges), tuple(kinds[i][2] for i in ms))


def check_epsilon_bounds(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    with stopwatch() as sw:
        bad = None
        for r in range(1, 8):
            e = epsilon(cycle_matroid(complete_graph(r + 1)))
            if e != comb(r + 1, 2) and bad is None:
                bad = {"r": r, "epsilon": e}
    out.append(VerificationReport("epsilon:complete", {"ranks": [1, 7]}, bad is None, bad, elapsed_ms=sw.ms))
    with stopwatch() as sw:
        count = 0
        bad = None
        for sg in signed_graph_classes():
            count += 1
            rep = check_frame_dual_bound(sg)
            if not rep.passed:
                bad = rep.witness
                break
    out.append(VerificationReport("framedualbound", {"vertices": 4, "max_edges": 6, "classes": count},
                                  bad is None, bad, elapsed_ms=sw.ms))
    rng = random.Random(cfg.seed)
    with stopwatch() as sw:
        bad, worst = None, 0
        for k in range(cfg.size_trials):
            rows = [[rng.randrange(3) for _ in range(4)] for _ in range(2)]
            n = RepresentedMatroid(FieldMatrix.from_rows(3, rows, col_labels=[f"e{j}" for j in range(4)]))
            rep = check_size_bound(n, rng.randint(1, 2), trials=1, seed=rng.randrange(2 ** 31))
            worst = max(worst, rep.params["max_epsilon"] - rep.params["bound"])
            if not rep.passed:
                bad = rep.witness
                break
    out.append(VerificationReport("sizedifference", {"trials": cfg.size_trials, "q": 3,
                                                     "max_excess": worst}, bad is None, bad, cfg.seed, sw.ms))
    return out


# 9 ---------------------------------------------------------------------------

CYCLIC_EDGE_CONNECTIVITY = {"Petersen": 5, "K33": 4, "K4": 3}


def check_connectivity(cfg: SuiteConfig) -> list[VerificationReport]:
    out = []
    for name, want in CYCLIC_EDGE_CONNECTIVITY.items():
        with stopwatch() as sw:
            got = cyclic_edge_connectivity(library_graph(name))
        out.append(VerificationReport("cyclic-edge-connectivity", {"graph": name, "expected": want, "value": got},
                                      got == want, None if got == want else {"value": got}, elapsed_ms=sw.ms))
    with stopwatch() as sw:
        m = cycle_matroid(complete_graph(4))
        md = dual(m)
        ground = list(m.ground)
        subsets = [frozenset(s) for k in range(len(ground) + 1) for s in combinations(ground, k)]
        lam = {s: connectivity(m, s) for s in subsets}
        bad = None
        for s in subsets:
            if connectivity(md, s) != lam[s]:
                bad = {"dual": sorted(s)}
                break
        if bad is None:
            for s in subsets:
                for t in subsets:
                    if lam[s] + lam[t] < lam[s | t] + lam[s & t]:
                        bad = {"submodular": [sorted(s), sorted(t)]}
                        break
                if bad:
                    break
    out.append(VerificationReport("connectivity-function", {"matroid": "M(K4)", "subsets": len(subsets)},
                                  bad is None, bad, elapsed_ms=sw.ms))
    return out


# 10 --------------------------------------------------------------------------

def check_not_refined(cfg: SuiteConfig) -> list[VerificationReport]:
    return [check_notspanning(not_refined_template(), cfg.notspanning_samples, (2, 3), cfg.seed)]


CRITERIA: dict[int, tuple[str, Callable[[SuiteConfig], list[VerificationReport]]]] = {
    1: ("U sweep: no N''(U) is signed-graphic", check_sweep),
    2: ("N''(0) matches the reference 4x13 matrix", check_n2_display),
    3: ("gadget minor identity", check_gadget),
    4: ("signed K4 and the K5 matrix", check_small_pictures),
    5: ("ornamentation suite", check_ornaments),
    6: ("extremal formula vs construction and brute force", check_extremal),
    7: ("pert <= dist <= 2 pert", check_pert_dist),
    8: ("epsilon bounds", check_epsilon_bounds),
    9: ("connectivity", check_connectivity),
    10: ("reduced but not refined templates", check_not_refined),
}


def run_criterion(k: int, cfg: SuiteConfig | None = None) -> list[VerificationReport]:
    return CRITERIA[k][1](cfg or SuiteConfig())


def run_suite(cfg: SuiteConfig | None = None, only=None):
    """Yield (criterion, reports) in order."""
    cfg = cfg or SuiteConfig()
    for k in CRITERIA:
        if only is None or k in only:
            yield k, run_criterion(k, cfg)
