"""Labeled matrices over small prime fields.

Entries are kept as canonical residues ``0..p-1`` so matrices hash and
compare exactly. Zero rows are allowed everywhere.
"""

from __future__ import annotations

import json
from itertools import combinations, product
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError, StructuralError

SUPPORTED_PRIMES = (2, 3, 5, 7)


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p not in SUPPORTED_PRIMES:
            raise ValueError(f"unsupported field size {self.p}; expected one of {SUPPORTED_PRIMES}")

    def __call__(self, x: int) -> int:
        return x % self.p

    def inv(self, x: int) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(x, self.p - 2, self.p)

    @property
    def units(self) -> tuple[int, ...]:
        return tuple(range(1, self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _check_labels(labels: Sequence[str], what: str) -> tuple[str, ...]:
    labels = tuple(str(x) for x in labels)
    if len(set(labels)) != len(labels):
        raise StructuralError(f"duplicate {what} labels")
    return labels


@dataclass(frozen=True)
class FieldMatrix:
    p: int
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        PrimeField(self.p)
        object.__setattr__(self, "row_labels", _check_labels(self.row_labels, "row"))
        object.__setattr__(self, "col_labels", _check_labels(self.col_labels, "column"))
        rows = tuple(tuple(int(x) % self.p for x in r) for r in self.rows)
        if len(rows) != len(self.row_labels):
            raise StructuralError(f"{len(rows)} rows but {len(self.row_labels)} row labels")
        for r in rows:
            if len(r) != len(self.col_labels):
                raise StructuralError(f"row of length {len(r)} but {len(self.col_labels)} column labels")
        object.__setattr__(self, "rows", rows)

    # construction helpers

    @classmethod
    def from_rows(cls, p, rows, row_labels=None, col_labels=None) -> "FieldMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else (len(col_labels) if col_labels is not None else 0)
        if row_labels is None:
            row_labels = [f"r{i}" for i in range(len(rows))]
        if col_labels is None:
            col_labels = [f"c{j}" for j in range(ncols)]
        return cls(p, tuple(row_labels), tuple(col_labels), tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, p, columns: Sequence[Sequence[int]], row_labels, col_labels) -> "FieldMatrix":
        nrows = len(row_labels)
        rows = [[columns[j][i] for j in range(len(columns))] for i in range(nrows)]
        return cls(p, tuple(row_labels), tuple(col_labels), tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, p, row_labels, col_labels) -> "FieldMatrix":
        return cls(p, tuple(row_labels), tuple(col_labels),
                   tuple((0,) * len(col_labels) for _ in row_labels))

    @classmethod
    def identity(cls, p, n=None, labels=None, row_labels=None) -> "FieldMatrix":
        if labels is None:
            labels = [f"c{j}" for j in range(n)]
        if row_labels is None:
            row_labels = [f"r{i}" for i in range(len(labels))]
        k = len(labels)
        return cls(p, tuple(row_labels), tuple(labels),
                   tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    # shape and access

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def column(self, label: str) -> tuple[int, ...]:
        j = self.col_index(label)
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(c) for c in zip(*self.rows)] if self.rows else [() for _ in self.col_labels]

    def col_index(self, label: str) -> int:
        try:
            return self.col_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown column label {label!r}") from None

    def row_index(self, label: str) -> int:
        try:
            return self.row_labels.index(label)
        except ValueError:
            raise KeyError(f"unknown row label {label!r}") from None

    def entry(self, row: str, col: str) -> int:
        return self.rows[self.row_index(row)][self.col_index(col)]

    def submatrix(self, row_labels=None, col_labels=None) -> "FieldMatrix":
        rl = self.row_labels if row_labels is None else tuple(row_labels)
        cl = self.col_labels if col_labels is None else tuple(col_labels)
        ri = [self.row_index(r) for r in rl]
        ci = [self.col_index(c) for c in cl]
        return FieldMatrix(self.p, rl, cl, tuple(tuple(self.rows[i][j] for j in ci) for i in ri))

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(self.p, self.col_labels, self.row_labels, tuple(self.columns()))

    def relabel_columns(self, mapping) -> "FieldMatrix":
        return FieldMatrix(self.p, self.row_labels,
                           tuple(mapping.get(c, c) for c in self.col_labels), self.rows)

    def neg(self) -> "FieldMatrix":
        return FieldMatrix(self.p, self.row_labels, self.col_labels,
                           tuple(tuple(-x for x in r) for r in self.rows))

    def with_field(self, p: int) -> "FieldMatrix":
        """Reinterpret a {0, 1, -1} pattern over another prime field."""
        out = []
        for r in self.rows:
            row = []
            for x in r:
                if x == 0:
                    row.append(0)
                elif x == 1:
                    row.append(1)
                elif x == self.p - 1:
                    row.append(p - 1)
                else:
                    raise InputError(f"entry {x} is not in {{0, 1, -1}} over GF({self.p})")
            out.append(tuple(row))
        return FieldMatrix(p, self.row_labels, self.col_labels, tuple(out))

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)

    # serialization

    def to_dict(self) -> dict:
        return {"p": self.p, "row_labels": list(self.row_labels),
                "col_labels": list(self.col_labels), "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d: dict) -> "FieldMatrix":
        p = int(d["p"])
        rows = d["rows"]
        for r in rows:
            for x in r:
                if not isinstance(x, int) or not 0 <= x < p:
                    raise StructuralError(f"entry {x!r} is not a residue modulo {p}")
        return cls(p, tuple(d["row_labels"]), tuple(d["col_labels"]), tuple(tuple(r) for r in rows))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "FieldMatrix":
        return cls.from_dict(json.loads(text))

    def __str__(self):
        width = max([len(c) for c in self.col_labels] + [1])
        head = " ".join(c.rjust(width) for c in self.col_labels)
        body = "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)
        return f"GF({self.p}) {self.shape[0]}x{self.shape[1]}\n{head}\n{body}"


# --- elimination kernels -------------------------------------------------

def echelon_rows(rows: Iterable[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(m)) if m[i][col] % p), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        inv = pow(m[top][col], p - 2, p)
        m[top] = [(x * inv) % p for x in m[top]]
        prow = m[top]
        for i in range(len(m)):
            if i != top and m[i][col] % p:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], prow)]
        pivots.append(col)
        top += 1
        if top == len(m):
            break
    return m[:top], pivots


def rank_of_vectors(vectors: Iterable[Sequence[int]], p: int) -> int:
    """Rank of a family of equal-length vectors."""
    basis: dict[int, list[int]] = {}
    r = 0
    for v in vectors:
        if reduce_against(basis, list(v), p) is not None:
            r += 1
    return r


def reduce_against(basis: dict[int, list[int]], v: list[int], p: int):
    """Reduce ``v`` by an echelon basis keyed by pivot position.

    If ``v`` is independent of the basis it is normalized, stored and its
    pivot returned; otherwise returns None. ``basis`` is mutated.
    """
    for i in range(len(v)):
        x = v[i] % p
        if x == 0:
            continue
        b = basis.get(i)
        if b is None:
            inv = pow(x, p - 2, p)
            v = [(y * inv) % p for y in v]
            basis[i] = v
            return i
        f = x
        v = [(a - f * c) % p for a, c in zip(v, b)]
    return None


def rank(m: FieldMatrix) -> int:
    return len(echelon_rows(m.rows, m.p)[0])


def add(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    if a.p != b.p:
        raise StructuralError("cannot add matrices over different fields")
    if a.row_labels != b.row_labels or a.col_labels != b.col_labels:
        raise StructuralError("label mismatch in matrix addition")
    rows = tuple(tuple((x + y) % a.p for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows))
    return FieldMatrix(a.p, a.row_labels, a.col_labels, rows)


def matmul(a: FieldMatrix, b: FieldMatrix, row_labels=None, col_labels=None) -> FieldMatrix:
    """Plain product; inner dimensions are matched by position."""
    if a.p != b.p:
        raise StructuralError("field mismatch")
    if a.shape[1] != b.shape[0]:
        raise StructuralError(f"cannot multiply {a.shape} by {b.shape}")
    p = a.p
    bcols = b.columns()
    rows = tuple(tuple(sum(x * y for x, y in zip(r, c)) % p for c in bcols) for r in a.rows)
    return FieldMatrix(p, row_labels or a.row_labels, col_labels or b.col_labels, rows)


@dataclass(frozen=True)
class Zero:
    """Placeholder for a zero block in :func:`block_compose`."""


ZERO = Zero()


def block_compose(blocks: Sequence[Sequence[FieldMatrix | Zero]]) -> FieldMatrix:
    """Assemble a grid of blocks into one matrix.

    Every grid row needs at least one real block (to fix its row labels) and
    likewise every grid column.
    """
    if not blocks or not blocks[0]:
        raise StructuralError("empty block grid")
    nb_cols = len(blocks[0])
    if any(len(r) != nb_cols for r in blocks):
        raise StructuralError("ragged block grid")
    p = None
    row_parts: list[tuple[str, ...] | None] = [None] * len(blocks)
    col_parts: list[tuple[str, ...] | None] = [None] * nb_cols
    for i, brow in enumerate(blocks):
        for j, blk in enumerate(brow):
            if isinstance(blk, Zero):
                continue
            if p is None:
                p = blk.p
            elif blk.p != p:
                raise StructuralError("blocks over different fields")
            if row_parts[i] is None:
                row_parts[i] = blk.row_labels
            elif row_parts[i] != blk.row_labels:
                raise StructuralError(f"block ({i},{j}) row labels disagree with its grid row")
            if col_parts[j] is None:
                col_parts[j] = blk.col_labels
            elif col_parts[j] != blk.col_labels:
                raise StructuralError(f"block ({i},{j}) column labels disagree with its grid column")
    if p is None or any(x is None for x in row_parts) or any(x is None for x in col_parts):
        raise StructuralError("every grid row and column needs a non-zero block")
    rows = []
    for i, brow in enumerate(blocks):
        for k in range(len(row_parts[i])):
            row = []
            for j, blk in enumerate(brow):
                if isinstance(blk, Zero):
                    row.extend([0] * len(col_parts[j]))
                else:
                    row.extend(blk.rows[k])
            rows.append(tuple(row))
    row_labels = tuple(x for part in row_parts for x in part)
    col_labels = tuple(x for part in col_parts for x in part)
    return FieldMatrix(p, row_labels, col_labels, tuple(rows))


def projective_points(n: int, p: int):
    """Nonzero vectors of GF(p)^n whose first nonzero entry is 1, in lex order."""
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail


def iter_rref(k: int, n: int, p: int):
    """All k x n matrices of rank k in reduced row echelon form.

    These are in bijection with the k-dimensional subspaces of GF(p)^n.
    """
    for pivots in combinations(range(n), k):
        free = [(i, j) for i in range(k) for j in range(pivots[i] + 1, n) if j not in pivots]
        for vals in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), x in zip(free, vals):
                rows[i][j] = x
            yield tuple(tuple(r) for r in rows)
