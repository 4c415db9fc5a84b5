"""Explicit matrices of the counterexample construction.

Covers the K5 matrix, the signed-graphic K4, the 7x7 gadget block, the
ornamentation Or(G, R), the glued complete graph N and the eight-gadget
matroids N'(U) and N''(U).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import CapacityError, InputError
from .field import FieldMatrix
from .graphs import MultiGraph, complete_graph
from .matroid import CIRCUIT_CAP, RepresentedMatroid, minor, simplify
from .report import VerificationReport, stopwatch

K5_ROWS = (
    (1, 1, 0, 0, 1, 1, 0, 1, 0, 1),
    (-1, 1, 1, 1, 0, 0, 0, 1, 1, 0),
    (0, 0, -1, 1, -1, 1, 0, 0, 1, 1),
    (0, 0, 0, 0, 0, 0, 1, 1, 1, 1),
)

# rows: three triangle rows, the three neighbour rows, the new bottom row
GADGET_ROWS = (
    (1, 0, 0, 0, 1, 0, 1),
    (0, 1, 0, 0, 1, 1, 0),
    (0, 0, 1, 0, 0, 1, 1),
    (-1, 0, 0, 0, 0, 0, 0),
    (0, -1, 0, 0, 0, 0, 0),
    (0, 0, -1, 0, 0, 0, 0),
    (0, 0, 0, 1, 1, 1, 1),
)

# gadget columns d, e, f, g on (triangle rows a, b, c, bottom row)
GADGET_COLUMNS = {
    "d": (0, 0, 0, 1),
    "e": (1, 1, 0, 1),
    "f": (0, 1, 1, 1),
    "g": (1, 0, 1, 1),
}

# the 4x13 matrix N''(0): M(K5) glued to the rank-3 ternary Dowling geometry
N2_ZERO_ROWS = (
    (1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1),
    (0, 1, 0, 0, 1, 1, 0, -1, 1, 1, 1, 0, 0),
    (0, 0, 1, 0, 0, 1, 1, 0, 0, -1, 1, -1, 1),
    (0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0),
)
N2_ZERO_LABELS = ("d1", "d2", "d3", "d4", "e4", "f4", "g4", "x1", "x2", "x3", "x4", "x5", "x6")


def _need_odd(p: int):
    if p == 2:
        raise InputError("this construction needs a field of characteristic other than 2")


def k5_matrix(p: int = 3) -> FieldMatrix:
    _need_odd(p)
    return FieldMatrix.from_rows(p, K5_ROWS, row_labels=[f"r{i}" for i in range(1, 5)],
                                 col_labels=[f"k{j}" for j in range(1, 11)])


def gadget_labels(i) -> tuple[str, str, str, str]:
    return tuple(f"{x}{i}" for x in "defg")


def gadget_block(i, p: int = 3) -> FieldMatrix:
    _need_odd(p)
    cols = (f"1_{i}", f"2_{i}", f"3_{i}") + gadget_labels(i)
    rows = (f"t{i}a", f"t{i}b", f"t{i}c", f"x{i}", f"y{i}", f"z{i}", f"w{i}")
    return FieldMatrix.from_rows(p, GADGET_ROWS, row_labels=rows, col_labels=cols)


def n2_zero_display(p: int = 3) -> FieldMatrix:
    return FieldMatrix.from_rows(p, N2_ZERO_ROWS, row_labels=["r1", "r2", "r3", "r4"], col_labels=N2_ZERO_LABELS)


@dataclass(frozen=True)
class Gadget:
    index: int
    elements: tuple[str, str, str, str]
    attachment: tuple[str, str, str]  # rows the gadget hangs off (triangle rows)
    bottom: str


@dataclass(frozen=True)
class OrnamentationSpec:
    graph: MultiGraph
    selected: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "selected", tuple(self.selected))
        for v in self.selected:
            if v not in self.graph.vertices:
                raise InputError(f"unknown vertex {v!r}")
            if self.graph.degree(v) != 3:
                raise InputError(f"selected vertex {v!r} does not have degree 3")
            if any(a == b == v for a, b, _ in self.graph.edges):
                raise InputError(f"selected vertex {v!r} carries a loop")
        if len(set(self.selected)) != len(self.selected):
            raise InputError("repeated vertex in R")

    def gadgets(self) -> list[Gadget]:
        return [Gadget(i, gadget_labels(i), (f"t{i}a", f"t{i}b", f"t{i}c"), f"w{i}")
                for i in range(1, len(self.selected) + 1)]


def _gadget_columns(rows_index, a, b, c, bottom, i, p):
    cols = []
    for key in "defg":
        col = [0] * len(rows_index)
        for r, x in zip((a, b, c, bottom), GADGET_COLUMNS[key]):
            col[rows_index[r]] = x % p
        cols.append(col)
    return cols


def ornament_matrix(spec: OrnamentationSpec, p: int = 3) -> FieldMatrix:
    """Signed incidence of G with every selected vertex replaced by a gadget.

    The three edges at a selected vertex v_i are re-attached to its triangle
    rows t_i a, t_i b, t_i c (in edge order); gadget elements d_i..g_i sit on
    those rows plus a new bottom row w_i.
    """
    _need_odd(p)
    g = spec.graph
    sel = {v: i for i, v in enumerate(spec.selected, start=1)}
    rows = [v for v in g.vertices if v not in sel]
    for i in range(1, len(spec.selected) + 1):
        rows += [f"t{i}a", f"t{i}b", f"t{i}c", f"w{i}"]
    ri = {r: k for k, r in enumerate(rows)}
    slot = {v: iter("abc") for v in sel}
    endpoint = {}
    for u, v, e in g.edges:
        for x in (u, v):
            if x in sel:
                endpoint[(e, x)] = f"t{sel[x]}{next(slot[x])}"
            else:
                endpoint[(e, x)] = x
    cols, labels = [], []
    for u, v, e in g.edges:
        col = [0] * len(rows)
        if u != v:
            col[ri[endpoint[(e, u)]]] = 1
            col[ri[endpoint[(e, v)]]] = p - 1
        cols.append(col)
        labels.append(e)
    for i in range(1, len(spec.selected) + 1):
        cols += _gadget_columns(ri, f"t{i}a", f"t{i}b", f"t{i}c", f"w{i}", i, p)
        labels += gadget_labels(i)
    return FieldMatrix.from_columns(p, cols, rows, labels)


def ornament(spec: OrnamentationSpec, p: int = 3) -> RepresentedMatroid:
    return RepresentedMatroid(ornament_matrix(spec, p))


def gadget_elements(spec: OrnamentationSpec) -> list[str]:
    return [e for gd in spec.gadgets() for e in gd.elements]


def graph_minor_of_ornament(m: RepresentedMatroid, spec: OrnamentationSpec,
                            contract_slots="efg") -> RepresentedMatroid:
    """Collapse every gadget back onto its vertex.

    The default contracts {e_i, f_i, g_i} and deletes d_i, which leaves the
    three re-attached edges as a positive star, so the result is M(G) with
    the original labels.  ``contract_slots="def"`` gives the other natural
    choice; that one negates the edge in slot b and is only locally M(G).
    """
    slots = "defg"
    if len(set(contract_slots)) != 3 or not set(contract_slots) <= set(slots):
        raise InputError(f"contract_slots must name three of d, e, f, g, got {contract_slots!r}")
    contract, delete = [], []
    for i in range(1, len(spec.selected) + 1):
        labels = dict(zip(slots, gadget_labels(i)))
        contract += [labels[s] for s in contract_slots]
        delete += [labels[s] for s in slots if s not in contract_slots]
    return minor(m, contract, delete)


def _dichotomy_holds(g: MultiGraph, edges, selected) -> bool:
    """Does the edge set contain a cycle of g or a path joining two selected vertices?"""
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in edges:
        u, v = g.edge(e)
        ru, rv = find(u), find(v)
        if ru == rv:
            return True
        parent[ru] = rv
    hits = {}
    for v in selected:
        r = find(v)
        if r in hits:
            return True
        hits[r] = v
    return False


def verify_ornament_circuits(spec: OrnamentationSpec, p: int = 3, cap: int = CIRCUIT_CAP) -> VerificationReport:
    """Every circuit of Or(G,R) holds a cycle of G or a path of G between two vertices of R."""
    with stopwatch() as sw:
        m = ornament(spec, p)
        if len(m.ground) > cap:
            raise CapacityError(f"{len(m.ground)} elements exceeds circuit cap {cap}")
        edge_set = set(spec.graph.edge_labels)
        bad = None
        circuits = m.circuits()
        for c in circuits:
            if not _dichotomy_holds(spec.graph, [e for e in c if e in edge_set], spec.selected):
                bad = sorted(c)
                break
    params = {"graph_edges": len(edge_set), "R": list(spec.selected), "p": p,
              "circuits": len(circuits)}
    return VerificationReport("cla:ornamentationcircuits", params, bad is None,
                              {"circuit": bad} if bad else None, elapsed_ms=sw.ms)


# --- glued complete graph ------------------------------------------------

def build_N(complete_size: int, gluings, p: int = 3) -> RepresentedMatroid:
    """Signed incidence of K_n with a gadget glued onto each vertex triple.

    Each triple (a, b, c) gets the three triangle columns oriented as
    ab: +a -b, bc: +b -c, ac: +a -c, then gadget columns d..g on rows a, b, c
    and a fresh bottom row.
    """
    _need_odd(p)
    kn = complete_graph(complete_size)
    gluings = [tuple(t) for t in gluings]
    used = set()
    for t in gluings:
        if len(t) != 3 or len(set(t)) != 3:
            raise InputError(f"gluing {t!r} is not three distinct vertices")
        for v in t:
            if v not in kn.vertices:
                raise InputError(f"unknown vertex {v!r}")
        if used & set(t):
            raise InputError("gluing triples overlap")
        used |= set(t)
    rows = list(kn.vertices) + [f"w{i}" for i in range(1, len(gluings) + 1)]
    ri = {r: k for k, r in enumerate(rows)}
    orient = {}
    for a, b, c in gluings:
        orient[frozenset((a, b))] = (a, b)
        orient[frozenset((b, c))] = (b, c)
        orient[frozenset((a, c))] = (a, c)
    cols, labels = [], []
    for u, v, e in kn.edges:
        plus, minus = orient.get(frozenset((u, v)), (u, v))
        col = [0] * len(rows)
        col[ri[plus]] = 1
        col[ri[minus]] = p - 1
        cols.append(col)
        labels.append(e)
    for i, (a, b, c) in enumerate(gluings, start=1):
        cols += _gadget_columns(ri, a, b, c, f"w{i}", i, p)
        labels += gadget_labels(i)
    return RepresentedMatroid(FieldMatrix.from_columns(p, cols, rows, labels))


# --- the eight-gadget matroids N'(U), N''(U) -----------------------------

GREEK = ("alpha", "beta", "gamma")


def j3_tree_edges() -> list[tuple[str, str, str]]:
    """(tail, head, label) for the 21 tree edges joining the eight gadgets.

    Gadgets 1, 2, 3 hang off gadget 4 by alpha_i (a_i a_4), beta_i (b_i b_4),
    gamma_i (c_i c_4); gadgets 4..8 form a chain with edges p{i}{a,b,c}
    joining gadget i to gadget i + 1.
    """
    edges = []
    for i in (1, 2, 3):
        for name, x in zip(GREEK, "abc"):
            edges.append((f"{x}{i}", f"{x}4", f"{name}{i}"))
    for i in range(4, 8):
        for x in "abc":
            edges.append((f"{x}{i}", f"{x}{i + 1}", f"p{i}{x}"))
    return edges


def j3_matrix(p: int = 3) -> FieldMatrix:
    rows = [f"{x}{i}" for i in range(1, 9) for x in "abc"] + [f"w{i}" for i in range(1, 9)]
    ri = {r: k for k, r in enumerate(rows)}
    cols, labels = [], []
    for tail, head, label in j3_tree_edges():
        col = [0] * len(rows)
        col[ri[tail]] = 1
        col[ri[head]] = p - 1
        cols.append(col)
        labels.append(label)
    for i in range(1, 9):
        cols += _gadget_columns(ri, f"a{i}", f"b{i}", f"c{i}", f"w{i}", i, p)
        labels += gadget_labels(i)
    return FieldMatrix.from_columns(p, cols, rows, labels)


def _as_u(u) -> FieldMatrix:
    if isinstance(u, FieldMatrix):
        if u.p != 3:
            raise InputError("U must be a ternary matrix")
        if u.shape[1] != 4:
            raise InputError(f"U must have 4 columns, got {u.shape[1]}")
        mat = u
    else:
        rows = [list(r) for r in u]
        if any(len(r) != 4 for r in rows):
            raise InputError("U must have 4 columns")
        mat = FieldMatrix.from_rows(3, rows, col_labels=["d", "e", "f", "g"])
    if mat.shape[0] > 4:
        raise InputError("U has more than four rows")
    return mat


def build_Nprime(u) -> RepresentedMatroid:
    """The matrix [0 | U U ... U] stacked on J''' over GF(3)."""
    umat = _as_u(u)
    j3 = j3_matrix(3)
    n_tree = len(j3_tree_edges())
    top = []
    for r in umat.rows:
        top.append(tuple([0] * n_tree + list(r) * 8))
    rows = tuple(top) + j3.rows
    row_labels = tuple(f"u{k}" for k in range(1, len(top) + 1)) + j3.row_labels
    return RepresentedMatroid(FieldMatrix(3, row_labels, j3.col_labels, rows))


# contraction list in the order the construction states it
N2_CONTRACT = (
    [f"p{i}{x}" for i in range(4, 8) for x in "abc"]
    + ["alpha1", "beta2", "gamma3"]
    + [f"{x}{i}" for i in (1, 2, 3) for x in "efg"]
    + ["d5", "e6", "f7", "g8"]
)


def build_Ndoubleprime(u, contract_order=None) -> RepresentedMatroid:
    order = list(N2_CONTRACT if contract_order is None else contract_order)
    if sorted(order) != sorted(N2_CONTRACT):
        raise InputError("contract_order must be a permutation of the fixed contraction list")
    return simplify(minor(build_Nprime(u), order, ()))
