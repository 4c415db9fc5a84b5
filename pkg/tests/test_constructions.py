import pytest
from hypothesis import given, settings, strategies as st

from matforge.constructions import (N2_CONTRACT, OrnamentationSpec, build_N, build_Ndoubleprime, build_Nprime,
                                    gadget_block, gadget_elements, graph_minor_of_ornament, j3_tree_edges,
                                    k5_matrix, n2_zero_display, ornament, ornament_matrix,
                                    verify_ornament_circuits)
from matforge.errors import InputError
from matforge.field import FieldMatrix, iter_rref, rank
from matforge.frame import is_gamma_frame, is_signed_graphic
from matforge.graphs import MultiGraph, complete_graph, cycle_matroid, library_graph
from matforge.matroid import RepresentedMatroid, epsilon, is_isomorphic, minor, same_matroid_over_fields, simplify
from matforge.suite import gadget_identity


def spec(name, k=1):
    g = library_graph(name)
    return OrnamentationSpec(g, g.vertices[:k])


def test_k5_matrix():
    m = k5_matrix()
    assert rank(m) == 4
    k5 = RepresentedMatroid(m)
    assert is_isomorphic(k5, cycle_matroid(complete_graph(5))) is not None
    assert epsilon(k5) == 10
    assert not is_gamma_frame(m, (1,))
    with pytest.raises(InputError):
        k5_matrix(2)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_gadget_block(p):
    block = gadget_block(1, p)
    assert rank(block) == 7
    assert RepresentedMatroid(block).is_independent(["d1", "e1", "f1", "g1"])
    assert gadget_identity(1, p)


def test_ornament_k4_counts():
    s = spec("K4")
    mat = ornament_matrix(s)
    assert mat.shape == (7, 10)
    assert same_matroid_over_fields(mat, 3, 5)


@pytest.mark.parametrize("name,k", [("K4", 1), ("K33", 1), ("K33", 3), ("Prism", 2), ("Petersen", 1)])
def test_graph_minor_is_exact(name, k):
    s = spec(name, k)
    m = ornament(s)
    assert graph_minor_of_ornament(m, s).same_independent_sets(cycle_matroid(s.graph))


def test_literal_minor_choice_is_not_graphic():
    # contracting {d, e, f} and deleting g leaves the slot-b edge negative
    s = spec("K4")
    m = graph_minor_of_ornament(ornament(s), s, contract_slots="def")
    assert m.rank == cycle_matroid(s.graph).rank + 1
    with pytest.raises(InputError):
        graph_minor_of_ornament(ornament(s), s, contract_slots="dd")


@pytest.mark.parametrize("name,k", [("K4", 0), ("K4", 1), ("K33", 1), ("K33", 2)])
def test_ornament_circuit_dichotomy(name, k):
    rep = verify_ornament_circuits(spec(name, k))
    assert rep.passed
    assert rep.params["circuits"] > 0


def test_ornament_without_gadgets_is_graphic():
    s = spec("K33", 0)
    assert ornament(s).same_independent_sets(cycle_matroid(s.graph))
    assert gadget_elements(s) == []


def test_ornament_spec_validation():
    g = library_graph("K4")
    with pytest.raises(InputError):
        OrnamentationSpec(g, ["v9"])
    with pytest.raises(InputError):
        OrnamentationSpec(g, ["v0", "v0"])
    path = MultiGraph(("a", "b"), (("a", "b", "x"),))
    with pytest.raises(InputError):
        OrnamentationSpec(path, ["a"])


def test_build_N_without_gluing_is_complete_graph():
    assert build_N(5, []).same_independent_sets(cycle_matroid(complete_graph(5)))


def test_build_N_display_block():
    n = build_N(4, [("v0", "v1", "v2")])
    cols = ["v0-v1", "v1-v2", "v0-v2", "d1", "e1", "f1", "g1"]
    block = n.matrix.submatrix(["v0", "v1", "v2", "w1"], cols)
    shown = FieldMatrix.from_rows(3, [[1, 0, 1, 0, 1, 0, 1],
                                      [-1, 1, 0, 0, 1, 1, 0],
                                      [0, -1, -1, 0, 0, 1, 1],
                                      [0, 0, 0, 1, 1, 1, 1]])
    assert block.rows == shown.rows
    assert n.matrix.submatrix(["v3"], cols).is_zero()
    assert minor(n, [], ["d1", "e1", "f1", "g1"]).same_independent_sets(cycle_matroid(complete_graph(4)))
    # measured rank: the gadget columns leave the sum-zero space
    assert n.rank == 5
    assert build_N(7, [("v0", "v1", "v2"), ("v3", "v4", "v5")]).rank == 9


def test_build_N_rejects_overlap():
    with pytest.raises(InputError):
        build_N(6, [("v0", "v1", "v2"), ("v2", "v3", "v4")])
    with pytest.raises(InputError):
        build_N(4, [("v0", "v1")])


def test_nprime_shape():
    assert len(j3_tree_edges()) == 21
    empty = build_Nprime([])
    assert len(empty) == 53
    assert empty.matrix.shape[0] == 32
    u = [[1, 0, 2, 1], [0, 1, 1, 0]]
    m = build_Nprime(u)
    assert m.matrix.shape[0] == 34
    top = m.matrix.submatrix(["u1", "u2"])
    for i in range(1, 9):
        assert [[r[top.col_index(f"{x}{i}")] for x in "defg"] for r in top.rows] == u
    assert all(top.column(e)[k] == 0 for _, _, e in j3_tree_edges() for k in range(2))
    with pytest.raises(InputError):
        build_Nprime([[1, 0, 0]])


def test_u_rows_lie_in_row_space():
    for u in ([], [[1, 2, 0, 1]], [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]):
        assert build_Nprime(u).rank == 32


def test_ndoubleprime_zero_matches_display():
    n2 = build_Ndoubleprime([])
    shown = RepresentedMatroid(n2_zero_display())
    assert n2.rank == 4 and len(n2) == 13
    assert len(simplify(n2)) == 13
    assert is_isomorphic(n2, shown) is not None


def test_ndoubleprime_identity_u_not_signed_graphic():
    eye = [[int(i == j) for j in range(4)] for i in range(4)]
    n2 = build_Ndoubleprime(eye)
    assert n2.rank == 4
    assert not is_signed_graphic(n2)


def test_contract_order_validation():
    with pytest.raises(InputError):
        build_Ndoubleprime([], contract_order=N2_CONTRACT[:-1])


U_SPACES = [u for k in range(5) for u in iter_rref(k, 4, 3)]


@given(st.sampled_from(U_SPACES), st.permutations(N2_CONTRACT))
@settings(max_examples=25, deadline=None)
def test_contraction_order_is_irrelevant(u, order):
    u = [list(r) for r in u]
    assert build_Ndoubleprime(u, order).same_independent_sets(build_Ndoubleprime(u))
