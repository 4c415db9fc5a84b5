"""Gamma-frame matrices, signed-graphic recognition over GF(3) and the U sweep.

Recognition works one matroid component at a time. A component of rank r
in standard form is signed-graphic exactly when some invertible r x r
matrix T sends every column into the {+-1}-frame point set. Over GF(3) a
nonzero vector with at most two nonzero entries is always such a point,
so the search is over r independent row functionals phi_i (the rows of T)
such that every element lies outside the kernel of at least one and at
most two of them.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from itertools import combinations, product
from multiprocessing import Pool
from typing import Iterable

from .errors import CapacityError, InputError
from .field import FieldMatrix, echelon_rows, projective_points, reduce_against
from .graphs import MultiGraph, SignedGraph
from .matroid import RepresentedMatroid, simplify
from .report import VerificationReport, stopwatch

RECOGNITION_MAX_RANK = 8
RECOGNITION_MAX_ELEMENTS = 40


def check_subgroup(gamma: Iterable[int], p: int) -> tuple[int, ...]:
    g = tuple(sorted({x % p for x in gamma}))
    if 1 not in g or 0 in g or any((a * b) % p not in g for a in g for b in g):
        raise InputError(f"{list(g)} is not a multiplicative subgroup of GF({p})")
    return g


def is_gamma_frame(a: FieldMatrix, gamma: Iterable[int]) -> bool:
    p = a.p
    neg = {(-x) % p for x in check_subgroup(gamma, p)}
    for col in a.columns():
        vals = [x for x in col if x]
        if len(vals) > 2:
            return False
        if len(vals) == 1 and vals[0] != 1:
            return False
        if len(vals) == 2:
            x, y = vals
            if not ((x == 1 and y in neg) or (y == 1 and x in neg)):
                return False
    return True


@dataclass(frozen=True)
class FramePointSet:
    rank: int
    gamma: tuple[int, ...] = (1, 2)
    p: int = 3

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_subgroup(self.gamma, self.p))

    @property
    def points(self) -> list[tuple[int, ...]]:
        r, p = self.rank, self.p
        out = []
        for i in range(r):
            e = [0] * r
            e[i] = 1
            out.append(tuple(e))
        for i, j in combinations(range(r), 2):
            for g in self.gamma:
                v = [0] * r
                v[i], v[j] = 1, (-g) % p
                out.append(tuple(v))
        return out

    def matrix(self) -> FieldMatrix:
        pts = self.points
        return FieldMatrix.from_columns(self.p, pts, [f"r{i}" for i in range(self.rank)],
                                        [f"q{k}" for k in range(len(pts))])

    def matroid(self) -> RepresentedMatroid:
        return RepresentedMatroid(self.matrix())


# --- recognition -------------------------------------------------------------

def components(m: RepresentedMatroid) -> list[tuple[list[int], list[int]]]:
    """Connected components as (element indices, RREF row indices).

    Uses the fundamental graph of the pivot basis: a non-basis element is
    joined to every basis element in its fundamental circuit.
    """
    p = m.p
    rows, pivots = echelon_rows(m.matrix.rows, p)
    n = len(m)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for j in range(n):
        for i, pc in enumerate(pivots):
            if rows[i][j]:
                parent[find(j)] = find(pc)
    groups: dict[int, list[int]] = {}
    for j in range(n):
        groups.setdefault(find(j), []).append(j)
    row_of = {pc: i for i, pc in enumerate(pivots)}
    out = []
    for members in groups.values():
        out.append((members, [row_of[j] for j in members if j in row_of]))
    return out


def _find_frame_rows(vectors: list[tuple[int, ...]], r: int, p: int) -> list[tuple[int, ...]] | None:
    """r independent functionals with every vector hit by one or two of them."""
    n = len(vectors)
    full = (1 << n) - 1
    cands = []
    for phi in projective_points(r, p):
        s = 0
        for j, v in enumerate(vectors):
            if sum(a * b for a, b in zip(phi, v)) % p:
                s |= 1 << j
        if s:
            cands.append((phi, s))
    hits = [[k for k, (_, s) in enumerate(cands) if s >> j & 1] for j in range(n)]

    def grow(chosen, basis, once, twice, floor):
        if len(chosen) == r:
            return list(chosen) if once == full else None
        todo = full & ~once
        if todo:
            best = None
            for j in range(n):
                if todo >> j & 1:
                    opts = [k for k in hits[j] if not cands[k][1] & twice]
                    if best is None or len(opts) < len(best):
                        best = opts
                        if not opts:
                            return None
            pool, next_floor = best, 0
        else:
            pool, next_floor = range(floor, len(cands)), None
        for k in pool:
            phi, s = cands[k]
            if s & twice:
                continue
            nb = dict(basis)
            if reduce_against(nb, list(phi), p) is None:
                continue
            chosen.append(phi)
            found = grow(chosen, nb, once | s, twice | (once & s), k + 1 if next_floor is None else 0)
            if found:
                return found
            chosen.pop()
        return None

    return grow([], {}, 0, 0, 0)


def frame_representation(m: RepresentedMatroid) -> FieldMatrix | None:
    """An r-row frame matrix with the same matroid as m, or None if none exists."""
    if m.p != 3:
        raise InputError("signed-graphic recognition is implemented over GF(3) only")
    r = m.rank
    if r > RECOGNITION_MAX_RANK or len(simplify(m)) > RECOGNITION_MAX_ELEMENTS:
        raise CapacityError(f"recognition capped at rank {RECOGNITION_MAX_RANK} "
                            f"and {RECOGNITION_MAX_ELEMENTS} points")
    p = m.p
    rows, _ = echelon_rows(m.matrix.rows, p)
    n = len(m)
    out_cols = [[0] * r for _ in range(n)]
    for members, comp_rows in components(m):
        if not comp_rows:
            continue
        # work on the simplification of the component
        reps: dict[tuple, list[int]] = {}
        for j in members:
            v = tuple(rows[i][j] for i in comp_rows)
            lead = next(x for x in v if x)
            key = tuple((x * pow(lead, p - 2, p)) % p for x in v)
            reps.setdefault(key, []).append(j)
        keys = list(reps)
        t_rows = _find_frame_rows(keys, len(comp_rows), p)
        if t_rows is None:
            return None
        for j in members:
            v = [rows[i][j] for i in comp_rows]
            for local, phi in enumerate(t_rows):
                out_cols[j][comp_rows[local]] = sum(a * b for a, b in zip(phi, v)) % p
    return FieldMatrix.from_columns(p, out_cols, [f"r{i}" for i in range(r)], m.ground)


def signed_graph_of_frame(a: FieldMatrix) -> SignedGraph:
    """Read a frame matrix over GF(3) as a signed graph.

    Columns with two nonzeros are edges (negative when the entries agree),
    single-entry columns become negative loops and zero columns positive
    loops on the first vertex.
    """
    if a.p != 3:
        raise InputError("frame decoding is implemented over GF(3) only")
    vertices = list(a.row_labels) or ["r0"]
    edges, signs = [], []
    for label, col in zip(a.col_labels, a.columns()):
        nz = [(i, x) for i, x in enumerate(col) if x]
        if len(nz) > 2:
            raise InputError(f"column {label!r} has {len(nz)} nonzero entries")
        if not nz:
            edges.append((vertices[0], vertices[0], label))
            signs.append(1)
        elif len(nz) == 1:
            v = vertices[nz[0][0]]
            edges.append((v, v, label))
            signs.append(-1)
        else:
            (i, x), (j, y) = nz
            edges.append((vertices[i], vertices[j], label))
            signs.append(-1 if x == y else 1)
    return SignedGraph(MultiGraph(tuple(vertices), tuple(edges)), tuple(signs))


@dataclass
class Recognition:
    signed_graphic: bool
    witness: SignedGraph | None = None
    frame: FieldMatrix | None = None

    def __bool__(self):
        return self.signed_graphic


def is_signed_graphic(m: RepresentedMatroid) -> Recognition:
    """Decide whether a ternary represented matroid is signed-graphic.

    Parallel elements and loops are allowed; they are carried along and show
    up as parallel edges and loops in the witness.
    """
    frame = frame_representation(m)
    if frame is None:
        return Recognition(False)
    return Recognition(True, signed_graph_of_frame(frame), frame)


# --- the U sweep -------------------------------------------------------------

BASIS_SUBSETS = [b for k in range(5) for b in combinations(range(4), k)]


def u_candidates():
    """Every (basis subset, U) pair of the sweep, in a fixed order: 704 in all."""
    for b in BASIS_SUBSETS:
        k = len(b)
        free_cols = [j for j in range(4) if j not in b]
        for vals in product(range(3), repeat=k * len(free_cols)):
            u = [[0] * 4 for _ in range(k)]
            for i, pc in enumerate(b):
                u[i][pc] = 1
            it = iter(vals)
            for i in range(k):
                for j in free_cols:
                    u[i][j] = next(it)
            yield b, tuple(tuple(r) for r in u)


def _invertible(u, cols) -> bool:
    sub = [[row[j] for j in cols] for row in u]
    return len(echelon_rows(sub, 3)[0]) == len(cols)


def is_duplicate(b, u) -> bool:
    """True when an earlier basis subset of the same size is also a basis of M(U)."""
    for other in combinations(range(4), len(b)):
        if other == b:
            return False
        if _invertible(u, other):
            return True
    return False


def check_u(u) -> dict:
    from .constructions import build_Ndoubleprime

    with stopwatch() as sw:
        n2 = build_Ndoubleprime([list(r) for r in u])
        rec = is_signed_graphic(n2)
    return {"U": [list(r) for r in u], "k": len(u), "rank": n2.rank, "elements": len(n2),
            "signed_graphic": rec.signed_graphic, "ms": sw.ms}


def sweep_all_U(workers: int = 1, emit=None, witness_dir: str | None = None) -> VerificationReport:
    """Build N''(U) for every surviving U candidate and check none is signed-graphic.

    ``emit`` receives each per-U result dict in enumeration order.
    """
    with stopwatch() as sw:
        total = 0
        todo = []
        for b, u in u_candidates():
            total += 1
            if not is_duplicate(b, u):
                todo.append(u)
        if workers > 1:
            with Pool(workers) as pool:
                results = pool.map(check_u, todo, chunksize=max(1, len(todo) // (4 * workers)))
        else:
            results = [check_u(u) for u in todo]
        bad = []
        for res in results:
            if emit:
                emit(res)
            if res["signed_graphic"]:
                bad.append(res["U"])
        if witness_dir and bad:
            os.makedirs(witness_dir, exist_ok=True)
            for k, u in enumerate(bad):
                with open(os.path.join(witness_dir, f"u{k}.json"), "w") as fh:
                    json.dump({"U": u}, fh)
    params = {"candidates": total, "checked": len(todo), "skipped": total - len(todo), "workers": workers}
    return VerificationReport("cla:nopert", params, not bad, {"U": bad} if bad else None, elapsed_ms=sw.ms)
