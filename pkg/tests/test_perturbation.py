import random

import pytest
from hypothesis import given, settings, strategies as st

from matforge.errors import CapacityError, InputError
from matforge.field import FieldMatrix, add, block_compose, rank
from matforge.graphs import MultiGraph, SignedGraph, complete_graph, cycle_matroid, k4_signed_graph
from matforge.matroid import RepresentedMatroid, dual, epsilon
from matforge.perturbation import (MoveGraph, check_frame_dual_bound, check_size_bound, contraction_realization,
                                   dist_upto, elementary_lift, elementary_projection, find_perturbation, perturb,
                                   pert_upto, random_low_rank, realize_by_contraction, size_bound)
from matforge.suite import tiny_matroids

from strategies import matrices


def ternary(rows, ground=("a", "b", "c")):
    return RepresentedMatroid(FieldMatrix.from_rows(3, rows, col_labels=list(ground)))


U23 = ternary([[1, 0, 1], [0, 1, 1]])


def test_perturb_examples():
    zero = FieldMatrix.zeros(3, U23.matrix.row_labels, U23.ground)
    assert perturb(U23, zero).same_independent_sets(U23)
    kill = FieldMatrix.from_rows(3, [[0, 0, -1], [0, 0, -1]], U23.matrix.row_labels, U23.ground)
    m2 = perturb(U23, kill)
    assert m2.is_loop("c") and epsilon(m2) == 2
    assert pert_upto(U23, m2) == 1
    assert dist_upto(U23, m2) == 2


def test_lift_is_rank_one_perturbation():
    lifted = elementary_lift(U23, (0, 0, 1))
    assert lifted.rank == 3
    padded = FieldMatrix.from_rows(3, [[1, 0, 1], [0, 1, 1], [0, 0, 0]], col_labels=U23.ground)
    delta = FieldMatrix.from_rows(3, [[0, 0, 0], [0, 0, 0], [0, 0, 1]], col_labels=U23.ground)
    assert RepresentedMatroid(add(padded, delta)).same_independent_sets(lifted)
    assert dist_upto(U23, lifted) == 1
    assert pert_upto(U23, lifted) == 1
    assert elementary_lift(U23, (0, 0, 0)).same_independent_sets(U23)
    with pytest.raises(InputError):
        elementary_lift(U23, (1, 0))


def test_projection_drops_rank_by_at_most_one():
    m = ternary([[1, 0, 0, 1], [0, 1, 0, 1], [0, 0, 1, 1]], "abcd")
    for col in ([1, 0, 0], [1, 1, 1], [0, 0, 0], [1, 2, 0]):
        pm = elementary_projection(m, col)
        assert m.rank - 1 <= pm.rank <= m.rank
        assert pm.ground == m.ground
    with pytest.raises(InputError):
        elementary_projection(m, [1, 0])


def test_trivial_distances():
    assert dist_upto(U23, U23, 4) == 0
    assert pert_upto(U23, U23, 2) == 0
    other = ternary([[1, 0, 1]], "abd")
    with pytest.raises(InputError):
        dist_upto(U23, other)
    with pytest.raises(InputError):
        pert_upto(U23, other)
    big = RepresentedMatroid(FieldMatrix.identity(3, 7))
    with pytest.raises(CapacityError):
        pert_upto(big, big)
    with pytest.raises(CapacityError):
        MoveGraph(7, 3)


def test_contraction_realization_layout():
    a1 = U23.matrix
    big = contraction_realization(a1, [[1, 1, 0]], [[1], [2]])
    assert big.shape == (3, 4)
    assert big.row_labels == ("v0",) + a1.row_labels
    assert big.col_labels == a1.col_labels + ("c0",)
    assert big.rows[0] == (1, 1, 0, 2)


@st.composite
def contraction_cases(draw):
    n = draw(st.integers(1, 5))
    r = draw(st.integers(1, 3))
    t = draw(st.integers(1, 2))
    ent = st.integers(0, 2)
    a1 = draw(st.lists(st.lists(ent, min_size=n, max_size=n), min_size=r, max_size=r))
    v = draw(st.lists(st.lists(ent, min_size=n, max_size=n), min_size=t, max_size=t))
    a = draw(st.lists(st.lists(ent, min_size=t, max_size=t), min_size=r, max_size=r))
    return a1, v, a


@given(contraction_cases())
@settings(max_examples=80)
def test_contraction_realizes_the_perturbation(case):
    a1_rows, v, a = case
    a1 = FieldMatrix.from_rows(3, a1_rows, col_labels=[f"e{j}" for j in range(len(a1_rows[0]))])
    p_rows = [[sum(a[i][k] * v[k][j] for k in range(len(v))) for j in range(len(v[0]))] for i in range(len(a))]
    p = FieldMatrix.from_rows(3, p_rows, a1.row_labels, a1.col_labels)
    assert rank(p) <= len(v)
    got = realize_by_contraction(a1, v, a)
    assert got.same_independent_sets(RepresentedMatroid(add(a1, p)))


def test_exhaustive_pert_dist_on_three_elements():
    family = tiny_matroids(3)
    g = MoveGraph(3, 3)
    for m1 in family:
        for m2 in family:
            pt, d = pert_upto(m1, m2), dist_upto(m1, m2, 4, g)
            assert pt is not None and d is not None
            assert pt <= d <= 2 * pt
            assert d == dist_upto(m2, m1, 4, g)


def test_tiny_family_counts():
    # distinct ternary matroids of rank <= 2 on n labelled elements
    assert [len(tiny_matroids(n)) for n in range(1, 5)] == [2, 5, 15, 52]


@st.composite
def perturbed_pairs(draw):
    n = draw(st.integers(2, 4))
    ground = [f"e{j}" for j in range(n)]
    k = draw(st.integers(0, 2))
    rows = draw(st.lists(st.lists(st.integers(0, 2), min_size=n, max_size=n), min_size=k, max_size=k))
    t = draw(st.integers(0, 2))
    seed = draw(st.integers(0, 10 ** 6))
    m1 = RepresentedMatroid(FieldMatrix.from_rows(3, rows, [f"r{i}" for i in range(k)], ground))
    pad = FieldMatrix.from_rows(3, rows + [[0] * n] * t, [f"r{i}" for i in range(k + t)], ground)
    delta = random_low_rank(random.Random(seed), pad.row_labels, ground, t, 3)
    return m1, RepresentedMatroid(add(pad, delta)), t


@given(perturbed_pairs())
@settings(max_examples=40, deadline=None)
def test_pert_bounded_by_delta_rank_and_dist(case):
    m1, m2, t = case
    pt = pert_upto(m1, m2, 2)
    assert pt is not None and pt <= t
    w = find_perturbation(m1, m2, pt)
    assert w.result().same_independent_sets(m2)
    d = dist_upto(m1, m2, 4)
    assert d is not None and pt <= d <= 2 * pt


@given(perturbed_pairs())
@settings(max_examples=25, deadline=None)
def test_dual_perturbation(case):
    m1, m2, t = case
    d = dist_upto(m1, m2, 4)
    assert dist_upto(dual(m1), dual(m2), 4) == d
    pd = pert_upto(dual(m1), dual(m2), 2)
    assert pd is not None and pd <= 2 * t


def test_size_bound_examples():
    assert size_bound(3, 3, 1) == 10
    assert size_bound(6, 3, 2) == 58
    rep = check_size_bound(U23, 1, trials=200, seed=1)
    assert rep.passed and rep.params["bound"] == 10 and rep.seed == 1
    k4 = cycle_matroid(complete_graph(4))
    rep = check_size_bound(k4, 2, trials=50, seed=2)
    assert rep.passed and rep.params["bound"] == 58
    rep = check_size_bound(k4, 0, trials=5)
    assert rep.params["max_epsilon"] == rep.params["bound"] == 6


@given(matrices(p=3, max_rows=3, max_cols=5, min_cols=1), st.integers(0, 2), st.integers(0, 1000))
@settings(max_examples=40, deadline=None)
def test_size_bound_property(m, t, seed):
    assert check_size_bound(RepresentedMatroid(m), t, trials=10, seed=seed).passed


def test_size_bound_is_reproducible():
    a = check_size_bound(U23, 2, trials=30, seed=9)
    b = check_size_bound(U23, 2, trials=30, seed=9)
    assert a.params == b.params


def test_frame_dual_bound_examples():
    assert check_frame_dual_bound(k4_signed_graph()).passed
    assert check_frame_dual_bound(SignedGraph.all_positive(complete_graph(4))).passed
    single = SignedGraph(MultiGraph(("a", "b"), (("a", "b", "x"),)), (1,))
    rep = check_frame_dual_bound(single)
    assert rep.passed and rep.params["epsilon"] <= 1
