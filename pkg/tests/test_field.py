import json

import pytest
from hypothesis import given, strategies as st

from matforge.errors import StructuralError
from matforge.field import (ZERO, FieldMatrix, PrimeField, add, block_compose, echelon_rows, iter_rref,
                            matmul, projective_points, rank)
from matforge.constructions import k5_matrix

from strategies import matrices, span_rank


def test_rank_examples():
    assert rank(FieldMatrix.zeros(3, ["a", "b", "c"], ["x", "y", "z"])) == 0
    assert rank(FieldMatrix.identity(3, 4)) == 4
    assert rank(k5_matrix()) == 4


def test_add_examples():
    a = FieldMatrix.from_rows(3, [[2]])
    assert add(a, a).rows == ((1,),)
    m = k5_matrix()
    assert add(m, FieldMatrix.zeros(3, m.row_labels, m.col_labels)) == m
    assert add(m, m.neg()).is_zero()


def test_add_rejects_mismatch():
    a = FieldMatrix.from_rows(3, [[1, 2]])
    with pytest.raises(StructuralError):
        add(a, FieldMatrix.from_rows(5, [[1, 2]]))
    with pytest.raises(StructuralError):
        add(a, FieldMatrix.from_rows(3, [[1, 2]], col_labels=["x", "y"]))


def test_block_compose():
    i2a = FieldMatrix.identity(3, labels=["a", "b"], row_labels=["r", "s"])
    i2b = FieldMatrix.identity(3, labels=["c", "d"], row_labels=["t", "u"])
    assert block_compose([[i2a]]) == i2a
    got = block_compose([[i2a, ZERO], [ZERO, i2b]])
    assert got.rows == FieldMatrix.identity(3, 4).rows
    assert got.row_labels == ("r", "s", "t", "u")
    with pytest.raises(StructuralError):
        block_compose([[i2a, ZERO], [ZERO, ZERO]])


def test_entries_are_canonical():
    m = FieldMatrix.from_rows(3, [[-1, 4, 3]])
    assert m.rows == ((2, 1, 0),)


def test_structural_errors():
    with pytest.raises(StructuralError):
        FieldMatrix(3, ("a",), ("x", "x"), ((0, 0),))
    with pytest.raises(StructuralError):
        FieldMatrix(3, ("a", "b"), ("x",), ((0,),))
    with pytest.raises(ValueError):
        PrimeField(4)


def test_json_roundtrip_is_bit_exact():
    m = k5_matrix()
    text = m.to_json()
    assert FieldMatrix.from_json(text) == m
    assert FieldMatrix.from_json(text).to_json() == text
    with pytest.raises(StructuralError):
        FieldMatrix.from_dict({**json.loads(text), "rows": [[3] * 10] * 4})


def test_projective_points_and_rref_counts():
    assert len(list(projective_points(3, 3))) == 13
    # Gaussian binomials [4 choose k]_3
    assert [sum(1 for _ in iter_rref(k, 4, 3)) for k in range(5)] == [1, 40, 130, 40, 1]
    assert sum(sum(1 for _ in iter_rref(k, 4, 3)) for k in range(5)) == 212


@given(matrices(max_rows=3, max_cols=4))
def test_rank_matches_span_oracle(m):
    assert rank(m) == span_rank(m.columns(), m.p)


@given(matrices(max_rows=4, max_cols=5))
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(matrices(max_rows=4, max_cols=5), st.data())
def test_rank_invariant_under_row_ops(m, data):
    if m.shape[0] < 2:
        return
    i, j = data.draw(st.lists(st.integers(0, m.shape[0] - 1), min_size=2, max_size=2, unique=True))
    c = data.draw(st.integers(1, m.p - 1))
    rows = [list(r) for r in m.rows]
    rows[i] = [(a + c * b) % m.p for a, b in zip(rows[i], rows[j])]
    assert rank(FieldMatrix.from_rows(m.p, rows, m.row_labels, m.col_labels)) == rank(m)


@given(matrices(max_rows=4, max_cols=5))
def test_echelon_is_reduced(m):
    rows, piv = echelon_rows(m.rows, m.p)
    for i, pc in enumerate(piv):
        assert rows[i][pc] == 1
        assert all(rows[k][pc] == 0 for k in range(len(rows)) if k != i)
    assert piv == sorted(piv)


@given(matrices(p=5, max_rows=3, max_cols=3))
def test_matmul_identity(m):
    ident = FieldMatrix.identity(5, labels=m.col_labels, row_labels=m.col_labels)
    assert matmul(m, ident).rows == m.rows
