"""Bounded-rank perturbations, lifts and projections, and the size bounds they obey.

Searches here are exhaustive and only meant for a handful of elements over
GF(3). Over GF(3) every matroid has a unique representation up to row
operations and column scaling, so a matroid's rank profile identifies its
represented matroid and we can use it as the search state.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import product

from .errors import CapacityError, InputError
from .field import FieldMatrix, add, block_compose, echelon_rows, iter_rref, projective_points, rank
from .graphs import SignedGraph, frame_matroid
from .matroid import RepresentedMatroid, _all_subset_ranks, _reduce, dual, epsilon, minor
from .report import VerificationReport, stopwatch

DIST_CAP = 6  # ground-set size for dist/pert searches
MOVE_CAP = 500  # candidate moves per state


@dataclass(frozen=True)
class PerturbationWitness:
    base: FieldMatrix
    delta: FieldMatrix
    t: int

    def __post_init__(self):
        if self.base.row_labels != self.delta.row_labels or self.base.col_labels != self.delta.col_labels:
            raise InputError("base and delta must share labels")
        if rank(self.delta) > self.t:
            raise InputError(f"delta has rank {rank(self.delta)} > {self.t}")

    def result(self) -> RepresentedMatroid:
        return RepresentedMatroid(add(self.base, self.delta))


def perturb(m: RepresentedMatroid, delta: FieldMatrix) -> RepresentedMatroid:
    return RepresentedMatroid(add(m.matrix, delta))


def _fresh(label: str, taken) -> str:
    k = 0
    while f"{label}{k}" in taken:
        k += 1
    return f"{label}{k}"


def elementary_lift(m: RepresentedMatroid, new_row) -> RepresentedMatroid:
    new_row = tuple(x % m.p for x in new_row)
    if len(new_row) != len(m):
        raise InputError(f"row has {len(new_row)} entries, ground set has {len(m)}")
    mat = m.matrix
    label = _fresh("lift", mat.row_labels)
    return RepresentedMatroid(FieldMatrix(m.p, mat.row_labels + (label,), mat.col_labels, mat.rows + (new_row,)))


def elementary_projection(m: RepresentedMatroid, column) -> RepresentedMatroid:
    """Adjoin ``column`` as a new element and contract it."""
    column = [x % m.p for x in column]
    mat = m.matrix
    if len(column) != len(mat.row_labels):
        raise InputError(f"column has {len(column)} entries, matrix has {len(mat.row_labels)} rows")
    label = _fresh("proj", mat.col_labels)
    rows = tuple(r + (c,) for r, c in zip(mat.rows, column))
    ext = RepresentedMatroid(FieldMatrix(m.p, mat.row_labels, mat.col_labels + (label,), rows))
    return minor(ext, [label], ())


# --- Remark-style realization of a perturbation as a contraction -------

def contraction_realization(a1: FieldMatrix, v_rows, coeffs) -> FieldMatrix:
    """The block matrix [[V, -I], [A1, a]] whose contraction of C gives M(A1 + aV).

    ``v_rows`` is t x n, ``coeffs`` is (rows of A1) x t.
    """
    p = a1.p
    t = len(v_rows)
    c_labels = [f"c{i}" for i in range(t)]
    if set(c_labels) & set(a1.col_labels):
        raise InputError("column labels c0.. are reserved for the contraction set")
    top_rows = [f"v{i}" for i in range(t)]
    v = FieldMatrix.from_rows(p, v_rows, top_rows, a1.col_labels)
    neg_i = FieldMatrix.from_rows(p, [[-(i == j) for j in range(t)] for i in range(t)], top_rows, c_labels)
    a = FieldMatrix.from_rows(p, coeffs, a1.row_labels, c_labels)
    return block_compose([[v, neg_i], [a1, a]])


def realize_by_contraction(a1: FieldMatrix, v_rows, coeffs) -> RepresentedMatroid:
    big = contraction_realization(a1, v_rows, coeffs)
    return minor(RepresentedMatroid(big), [f"c{i}" for i in range(len(v_rows))], ())


# --- dist ------------------------------------------------------------------

def _profile(rows, n, p) -> tuple[int, ...]:
    cols = [tuple(r[j] for r in rows) for j in range(n)] if rows else [()] * n
    return tuple(_all_subset_ranks(cols, p))


def _canon(rows, p):
    return tuple(tuple(r) for r in echelon_rows(rows, p)[0])


def _aligned_rows(m: RepresentedMatroid, order) -> list[list[int]]:
    idx = [m.index[e] for e in order]
    return [[r[j] for j in idx] for r in m.matrix.rows]


class MoveGraph:
    """Lazily built graph of lift/projection moves between rank profiles.

    Sharing one instance across many dist queries on the same ground-set
    size and field avoids recomputing neighbourhoods.
    """

    def __init__(self, n: int, p: int):
        if n > DIST_CAP:
            raise CapacityError(f"dist search capped at {DIST_CAP} elements, got {n}")
        if (p ** n - 1) // (p - 1) > MOVE_CAP:
            raise CapacityError("too many candidate lift rows for this field and ground set")
        self.n, self.p = n, p
        self.rows_of: dict[tuple, tuple] = {}
        self._adj: dict[tuple, tuple] = {}
        self._lift_rows = list(projective_points(n, p))

    def add(self, rows) -> tuple:
        rows = _canon(rows, self.p)
        key = _profile(rows, self.n, self.p)
        self.rows_of.setdefault(key, rows)
        return key

    def neighbours(self, key) -> tuple:
        hit = self._adj.get(key)
        if hit is not None:
            return hit
        rows = [list(r) for r in self.rows_of[key]]
        p = self.p
        out = set()
        for x in self._lift_rows:
            out.add(self.add(rows + [list(x)]))
        for y in projective_points(len(rows), p):
            i = y.index(1)
            new = [[(a - y[k] * b) % p for a, b in zip(rows[k], rows[i])]
                   for k in range(len(rows)) if k != i]
            out.add(self.add(new))
        out.discard(key)
        self._adj[key] = tuple(sorted(out))
        return self._adj[key]


def dist_upto(m1: RepresentedMatroid, m2: RepresentedMatroid, max_steps: int = 4,
              graph: MoveGraph | None = None) -> int | None:
    """Least number of elementary lifts and projections taking m1 to m2.

    Returns None when more than ``max_steps`` moves are needed.
    """
    if set(m1.ground) != set(m2.ground):
        raise InputError("dist needs a common ground set")
    if m1.p != m2.p:
        raise InputError("dist needs a common field")
    if not 0 <= max_steps <= 4:
        raise CapacityError("max_steps must lie in 0..4")
    order = m1.ground
    graph = graph or MoveGraph(len(order), m1.p)
    start = graph.add(_aligned_rows(m1, order))
    goal = _profile(_canon(_aligned_rows(m2, order), m1.p), len(order), m1.p)
    if start == goal:
        return 0
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        key, d = frontier.popleft()
        if d == max_steps:
            continue
        for nb in graph.neighbours(key):
            if nb == goal:
                return d + 1
            if nb not in seen:
                seen.add(nb)
                frontier.append((nb, d + 1))
    return None


# --- pert ------------------------------------------------------------------

def _search_columns(base_cols, u_cols, target, p, t):
    """Choose v_j per column so that a_j + U v_j has the target rank profile."""
    n = len(base_cols)
    dim = len(base_cols[0]) if base_cols else 0
    choices = list(product(range(p), repeat=t))
    spans: dict[int, dict] = {0: {}}
    picked: list[tuple] = []

    def place(j):
        if j == n:
            return True
        for v in choices:
            col = [(base_cols[j][i] + sum(u_cols[k][i] * v[k] for k in range(t))) % p for i in range(dim)]
            ok = True
            fresh = {}
            for mask in range(1 << j):
                basis = spans[mask]
                piv, w = _reduce(basis, col, p)
                r = len(basis) + (piv is not None)
                if r != target[mask | 1 << j]:
                    ok = False
                    break
                if piv is not None:
                    nb = dict(basis)
                    nb[piv] = w
                    fresh[mask | 1 << j] = nb
                else:
                    fresh[mask | 1 << j] = basis
            if not ok:
                continue
            spans.update(fresh)
            picked.append(v)
            if place(j + 1):
                return True
            picked.pop()
        return False

    return picked if place(0) else None


def find_perturbation(m1: RepresentedMatroid, m2: RepresentedMatroid, t: int) -> PerturbationWitness | None:
    """A delta of rank exactly ``t`` with M(A1 + delta) = m2, if one exists.

    A1 is m1's matrix reduced to a row basis and padded with t zero rows.
    Deltas are written U V with the columns of U a basis of a t-dimensional
    subspace (one per subspace) and V arbitrary, chosen column by column.
    """
    p = m1.p
    order = m1.ground
    n = len(order)
    base_rows = [list(r) for r in _canon(_aligned_rows(m1, order), p)]
    base_rows += [[0] * n for _ in range(t)]
    dim = len(base_rows)
    target = _profile(_aligned_rows(m2, order), n, p)
    row_labels = tuple(f"r{i}" for i in range(dim))
    base = FieldMatrix.from_rows(p, base_rows, row_labels, order)
    base_cols = [[row[j] for row in base_rows] for j in range(n)]
    if t == 0:
        if _profile(base_rows, n, p) != target:
            return None
        return PerturbationWitness(base, FieldMatrix.zeros(p, row_labels, order), 0)
    for u in iter_rref(t, dim, p):
        vs = _search_columns(base_cols, u, target, p, t)
        if vs is not None:
            delta = [[sum(u[k][i] * vs[j][k] for k in range(t)) % p for j in range(n)] for i in range(dim)]
            return PerturbationWitness(base, FieldMatrix.from_rows(p, delta, row_labels, order), t)
    return None


def pert_upto(m1: RepresentedMatroid, m2: RepresentedMatroid, max_t: int = 2) -> int | None:
    """Least t with m2 a rank-(<= t) perturbation of m1, or None beyond ``max_t``."""
    if set(m1.ground) != set(m2.ground):
        raise InputError("pert needs a common ground set")
    if m1.p != m2.p:
        raise InputError("pert needs a common field")
    if len(m1) > DIST_CAP or not 0 <= max_t <= 2:
        raise CapacityError(f"pert search capped at {DIST_CAP} elements and t <= 2")
    for t in range(max_t + 1):
        if find_perturbation(m1, m2, t) is not None:
            return t
    return None


# --- size bounds -------------------------------------------------------------

def size_bound(eps_n: int, q: int, t: int) -> int:
    return q ** t * eps_n + sum(q ** i for i in range(t))


def random_low_rank(rng: random.Random, row_labels, col_labels, t: int, p: int) -> FieldMatrix:
    u = [[rng.randrange(p) for _ in range(t)] for _ in row_labels]
    v = [[rng.randrange(p) for _ in col_labels] for _ in range(t)]
    rows = [[sum(u[i][k] * v[k][j] for k in range(t)) for j in range(len(col_labels))]
            for i in range(len(row_labels))]
    return FieldMatrix.from_rows(p, rows, row_labels, col_labels)


def check_size_bound(n: RepresentedMatroid, t: int, trials: int = 200, seed: int = 0) -> VerificationReport:
    """Sample rank-(<= t) perturbations of n and test the epsilon growth bound.

    The base matrix gets t extra zero rows so that the perturbation can also
    raise the rank.
    """
    if len(n) > 64:
        raise CapacityError("size-bound sampling is capped at 64 elements")
    rng = random.Random(seed)
    with stopwatch() as sw:
        mat = n.matrix
        pad = tuple(f"pad{i}" for i in range(t))
        base = FieldMatrix(n.p, mat.row_labels + pad, mat.col_labels,
                           mat.rows + tuple((0,) * len(n) for _ in pad))
        bound = size_bound(epsilon(n), n.p, t)
        worst, bad = 0, None
        for _ in range(trials):
            delta = random_low_rank(rng, base.row_labels, base.col_labels, t, n.p)
            e = epsilon(RepresentedMatroid(add(base, delta)))
            worst = max(worst, e)
            if e > bound and bad is None:
                bad = {"delta": delta.to_dict(), "epsilon": e}
    params = {"t": t, "q": n.p, "trials": trials, "epsilon_N": epsilon(n), "bound": bound, "max_epsilon": worst}
    return VerificationReport("lem:sizedifference", params, bad is None, bad, seed, sw.ms)


def check_frame_dual_bound(sg: SignedGraph, p: int = 3) -> VerificationReport:
    """For M the dual of a frame matroid, epsilon(M) <= 3 r(M)."""
    with stopwatch() as sw:
        m = dual(frame_matroid(sg, p))
        eps, r = epsilon(m), m.rank
    ok = eps <= 3 * r
    params = {"edges": len(sg.graph.edges), "vertices": len(sg.graph.vertices), "epsilon": eps, "rank": r}
    return VerificationReport("lem:framedualbound", params, ok,
                              None if ok else {"signed_graph": sg.to_dict()}, elapsed_ms=sw.ms)
