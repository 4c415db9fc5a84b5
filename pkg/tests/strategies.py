"""Hypothesis strategies and brute-force oracles shared by the tests."""

from itertools import combinations, product

from hypothesis import strategies as st

from matforge.field import FieldMatrix
from matforge.graphs import MultiGraph, SignedGraph
from matforge.matroid import RepresentedMatroid


@st.composite
def matrices(draw, p=None, max_rows=4, max_cols=6, min_cols=0):
    p = draw(st.sampled_from([2, 3, 5, 7])) if p is None else p
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(min_cols, max_cols))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return FieldMatrix.from_rows(p, rows, [f"r{i}" for i in range(r)], [f"e{j}" for j in range(c)])


@st.composite
def ternary_matroids(draw, max_rows=4, max_cols=6, min_cols=0):
    return RepresentedMatroid(draw(matrices(3, max_rows, max_cols, min_cols)))


@st.composite
def signed_graphs(draw, max_vertices=5, max_edges=8):
    n = draw(st.integers(1, max_vertices))
    vs = [f"v{i}" for i in range(n)]
    m = draw(st.integers(0, max_edges))
    ends = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=m, max_size=m))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=m, max_size=m))
    edges = tuple((vs[a], vs[b], f"x{k}") for k, (a, b) in enumerate(ends))
    return SignedGraph(MultiGraph(tuple(vs), edges), tuple(signs))


def span_rank(vectors, p):
    """Rank as log_p of the number of distinct linear combinations."""
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 0
    dim = len(vectors[0])
    span = set()
    for coeffs in product(range(p), repeat=len(vectors)):
        span.add(tuple(sum(c * v[i] for c, v in zip(coeffs, vectors)) % p for i in range(dim)))
    k = 0
    while p ** k < len(span):
        k += 1
    return k


def oracle_rank(m: RepresentedMatroid, subset) -> int:
    return span_rank([m.vectors[m.index[e]] for e in subset], m.p)


def oracle_circuits(m: RepresentedMatroid) -> set:
    out = set()
    ground = list(m.ground)
    for k in range(1, len(ground) + 1):
        for s in combinations(ground, k):
            if oracle_rank(m, s) == k - 1 and all(oracle_rank(m, t) == k - 1
                                                  for t in combinations(s, k - 1)):
                out.add(frozenset(s))
    return out


def all_subsets(ground):
    ground = list(ground)
    return [frozenset(s) for k in range(len(ground) + 1) for s in combinations(ground, k)]
