import pytest
from hypothesis import given, settings, strategies as st

from matforge.constructions import k5_matrix
from matforge.errors import CapacityError, InputError
from matforge.field import FieldMatrix
from matforge.graphs import complete_graph, cycle_matroid, frame_matroid, k4_signed_graph, library_graph
from matforge.matroid import (RepresentedMatroid, connectivity, cosimplify, dual, epsilon, is_cyclically_k_connected,
                              is_isomorphic, is_vertically_k_connected, minor, rank_of, same_matroid_over_fields,
                              simplify)

from strategies import all_subsets, matrices, oracle_circuits, oracle_rank, ternary_matroids

K5 = RepresentedMatroid(k5_matrix())
MK4 = cycle_matroid(complete_graph(4))


def u23():
    return RepresentedMatroid.from_rows(3, [[1, 0, 1], [0, 1, 1]], ["a", "b", "c"])


def test_rank_of_examples():
    assert rank_of(K5, []) == 0
    assert rank_of(K5, K5.ground) == 4
    i3 = RepresentedMatroid(FieldMatrix.identity(3, 3))
    assert all(rank_of(i3, pair) == 2 for pair in [("c0", "c1"), ("c0", "c2"), ("c1", "c2")])
    with pytest.raises(InputError):
        rank_of(K5, ["nope"])


def test_dual_examples():
    assert dual(dual(MK4)).same_independent_sets(MK4)
    assert dual(K5).rank == 6
    loops = RepresentedMatroid(FieldMatrix.zeros(3, ["r"], ["a", "b", "c"]))
    d = dual(loops)
    assert d.rank == 3 and d.is_independent(["a", "b", "c"])


def test_minor_examples():
    assert minor(MK4).same_independent_sets(MK4)
    m = RepresentedMatroid.from_rows(3, [[1, 0, 0], [0, 1, 0]], ["a", "b", "z"])
    assert minor(m, ["z"], []).same_independent_sets(minor(m, [], ["z"]))
    with pytest.raises(InputError):
        minor(m, ["a"], ["a"])


def test_simplify_examples():
    assert simplify(MK4).same_independent_sets(MK4)
    m = RepresentedMatroid.from_rows(3, [[1, 2, 0], [1, 2, 0]], ["v", "w", "z"])
    assert simplify(m).ground == ("v",)
    assert len(simplify(K5)) == epsilon(K5) == 10


def test_epsilon_examples():
    assert epsilon(RepresentedMatroid(FieldMatrix.zeros(3, ["r"], ["a", "b"]))) == 0
    assert epsilon(u23()) == 3


def test_connectivity_examples():
    assert connectivity(MK4, []) == 0
    triangle = ["v0-v1", "v1-v2", "v0-v2"]
    assert connectivity(MK4, triangle) == 2
    d = dual(MK4)
    for s in all_subsets(MK4.ground):
        assert connectivity(MK4, s) == connectivity(d, s)


def test_vertical_and_cyclic_connectivity():
    assert is_vertically_k_connected(u23(), 1)
    assert is_vertically_k_connected(MK4, 3)
    # M(K4) has no vertical separation at all
    assert is_vertically_k_connected(MK4, 10)
    two_lines = RepresentedMatroid.from_rows(3, [[1, 0, 1, 0, 0, 0], [0, 1, 1, 0, 0, 0],
                                                 [0, 0, 0, 1, 0, 1], [0, 0, 0, 0, 1, 1]])
    assert is_vertically_k_connected(two_lines, 1)
    assert not is_vertically_k_connected(two_lines, 2)
    assert is_cyclically_k_connected(cycle_matroid(library_graph("Petersen")), 5)
    assert not is_cyclically_k_connected(cycle_matroid(library_graph("Petersen")), 6)
    with pytest.raises(CapacityError):
        is_vertically_k_connected(cycle_matroid(library_graph("Heawood")), 3)


def test_isomorphism_examples():
    mapping = {e: f"x{i}" for i, e in enumerate(reversed(MK4.ground))}
    iso = is_isomorphic(MK4, MK4.relabel(mapping))
    assert iso is not None
    assert is_isomorphic(frame_matroid(k4_signed_graph()), MK4) is not None
    coloops = RepresentedMatroid(FieldMatrix.identity(3, 3))
    assert is_isomorphic(u23(), coloops) is None
    # same size and rank, different circuits
    u24 = RepresentedMatroid.from_rows(3, [[1, 0, 1, 1], [0, 1, 1, 2]])
    par = RepresentedMatroid.from_rows(3, [[1, 1, 0, 1], [0, 0, 1, 1]])
    assert is_isomorphic(u24, par) is None


def test_same_matroid_over_fields():
    assert same_matroid_over_fields(cycle_matroid(library_graph("Petersen")).matrix, 3, 5)
    # four points on a line: U_{2,4} over both fields, so the readings agree
    assert same_matroid_over_fields([[1, 0, 1, 1], [0, 1, 1, -1]], 3, 5)
    with pytest.raises(InputError):
        same_matroid_over_fields([[2]], 3, 5)


def test_two_field_disagreement():
    # determinant -3: a basis over GF(5), a circuit over GF(3)
    pattern = [[1, 1, 0], [-1, 1, 1], [0, 1, -1]]
    assert not same_matroid_over_fields(pattern, 3, 5)


@given(ternary_matroids(max_rows=3, max_cols=5))
@settings(max_examples=60)
def test_circuits_match_oracle(m):
    assert set(m.circuits()) == oracle_circuits(m)


@given(ternary_matroids(max_rows=3, max_cols=5))
@settings(max_examples=60)
def test_dual_rank_formula(m):
    d = dual(m)
    full = frozenset(m.ground)
    for s in all_subsets(m.ground):
        assert d.rank_of(s) == len(s) + m.rank_of(full - s) - m.rank


@given(ternary_matroids(max_rows=3, max_cols=5), st.data())
@settings(max_examples=60)
def test_minor_rank_formula(m, data):
    ground = list(m.ground)
    c = data.draw(st.lists(st.sampled_from(ground), unique=True)) if ground else []
    rest = [e for e in ground if e not in c]
    d = data.draw(st.lists(st.sampled_from(rest), unique=True)) if rest else []
    mm = minor(m, c, d)
    assert set(mm.ground) == set(ground) - set(c) - set(d)
    for s in all_subsets(mm.ground):
        assert mm.rank_of(s) == oracle_rank(m, set(s) | set(c)) - oracle_rank(m, c)


@given(ternary_matroids(max_rows=3, max_cols=6))
@settings(max_examples=40)
def test_submodularity_and_lambda_symmetry(m):
    subs = all_subsets(m.ground)
    full = frozenset(m.ground)
    for a in subs[:: max(1, len(subs) // 12)]:
        assert connectivity(m, a) == connectivity(m, full - a)
        for b in subs[:: max(1, len(subs) // 12)]:
            assert m.rank_of(a) + m.rank_of(b) >= m.rank_of(a | b) + m.rank_of(a & b)


@given(ternary_matroids(max_rows=3, max_cols=6), st.randoms(use_true_random=False))
@settings(max_examples=40)
def test_isomorphic_to_relabelled_copy(m, rnd):
    names = [f"y{i}" for i in range(len(m))]
    rnd.shuffle(names)
    other = m.relabel(dict(zip(m.ground, names)))
    iso = is_isomorphic(m, other)
    assert iso is not None
    assert {frozenset(iso[e] for e in c) for c in m.circuits()} == set(other.circuits())


@given(ternary_matroids(max_rows=3, max_cols=6))
@settings(max_examples=40)
def test_simplify_and_cosimplify(m):
    s = simplify(m)
    assert len(s) == epsilon(m) and s.rank == m.rank
    assert epsilon(s) == len(s)
    c = cosimplify(m)
    assert epsilon(dual(c)) == len(c)
