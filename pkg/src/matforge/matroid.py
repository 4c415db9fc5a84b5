"""Represented matroids: column matroids of :class:`FieldMatrix` values.

Subsets are passed around as label collections at the public surface and as
integer bitmasks (bit ``i`` = ``ground[i]``) internally.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapacityError, InputError
from .field import FieldMatrix, echelon_rows

# exhaustive subset / separation routines refuse larger ground sets
DEFAULT_CAP = 16
# circuit enumeration walks independent sets, which stays cheap a bit further out
CIRCUIT_CAP = 24


def normalize(v: Sequence[int], p: int) -> tuple[int, ...] | None:
    """Scale ``v`` so its first nonzero entry is 1; None for the zero vector."""
    for x in v:
        if x % p:
            inv = pow(x, p - 2, p)
            return tuple((y * inv) % p for y in v)
    return None


@dataclass(frozen=True, eq=False)
class RepresentedMatroid:
    matrix: FieldMatrix
    _rank_cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_rows(cls, p, rows, ground=None, row_labels=None) -> "RepresentedMatroid":
        return cls(FieldMatrix.from_rows(p, rows, row_labels=row_labels, col_labels=ground))

    @property
    def ground(self) -> tuple[str, ...]:
        return self.matrix.col_labels

    @property
    def p(self) -> int:
        return self.matrix.p

    def __len__(self):
        return len(self.ground)

    def __repr__(self):
        return f"RepresentedMatroid(GF({self.p}), rank={self.rank}, n={len(self)})"

    @cached_property
    def vectors(self) -> list[tuple[int, ...]]:
        return self.matrix.columns()

    @cached_property
    def index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.ground)}

    @cached_property
    def rank(self) -> int:
        return self.rank_mask((1 << len(self)) - 1)

    @property
    def full_mask(self) -> int:
        return (1 << len(self)) - 1

    # subsets

    def mask(self, subset: Iterable[str]) -> int:
        m = 0
        for e in subset:
            try:
                m |= 1 << self.index[e]
            except KeyError:
                raise InputError(f"unknown element {e!r}") from None
        return m

    def labels(self, mask: int) -> frozenset[str]:
        return frozenset(e for i, e in enumerate(self.ground) if mask >> i & 1)

    def rank_mask(self, mask: int) -> int:
        r = self._rank_cache.get(mask)
        if r is None:
            r = _rank_cols([self.vectors[i] for i in _bits(mask)], self.p)
            self._rank_cache[mask] = r
        return r

    def rank_of(self, subset: Iterable[str]) -> int:
        return self.rank_mask(self.mask(subset))

    def is_independent(self, subset: Iterable[str]) -> bool:
        m = self.mask(subset)
        return self.rank_mask(m) == m.bit_count()

    def closure(self, subset: Iterable[str]) -> frozenset[str]:
        m = self.mask(subset)
        r = self.rank_mask(m)
        out = m
        for i in range(len(self)):
            if not m >> i & 1 and self.rank_mask(m | 1 << i) == r:
                out |= 1 << i
        return self.labels(out)

    def is_loop(self, e: str) -> bool:
        return not any(self.vectors[self.index[e]])

    # structure

    def circuit_masks(self, cap: int = CIRCUIT_CAP) -> list[int]:
        _check_cap(len(self), cap)
        cached = self._rank_cache.get("circuits")
        if cached is None:
            cached = _enumerate_circuits(self.vectors, self.p)
            self._rank_cache["circuits"] = cached
        return cached

    def circuits(self, cap: int = CIRCUIT_CAP) -> list[frozenset[str]]:
        return [self.labels(c) for c in self.circuit_masks(cap)]

    def cocircuits(self, cap: int = CIRCUIT_CAP) -> list[frozenset[str]]:
        return dual(self).circuits(cap)

    def all_ranks(self, cap: int = DEFAULT_CAP) -> list[int]:
        """Rank of every subset, indexed by bitmask."""
        _check_cap(len(self), cap)
        cached = self._rank_cache.get("all")
        if cached is None:
            cached = _all_subset_ranks(self.vectors, self.p)
            self._rank_cache["all"] = cached
        return cached

    def same_independent_sets(self, other: "RepresentedMatroid", cap: int = CIRCUIT_CAP) -> bool:
        """Exact equality of matroids on the same labelled ground set."""
        if set(self.ground) != set(other.ground):
            return False
        if self.rank != other.rank:
            return False
        mine = {frozenset(c) for c in self.circuits(cap)}
        theirs = {frozenset(c) for c in other.circuits(cap)}
        return mine == theirs

    def restrict(self, subset: Iterable[str]) -> "RepresentedMatroid":
        keep = set(subset)
        unknown = keep - set(self.ground)
        if unknown:
            raise InputError(f"unknown elements {sorted(unknown)}")
        return RepresentedMatroid(self.matrix.submatrix(col_labels=[e for e in self.ground if e in keep]))

    def delete(self, subset: Iterable[str]) -> "RepresentedMatroid":
        return minor(self, (), subset)

    def contract(self, subset: Iterable[str]) -> "RepresentedMatroid":
        return minor(self, subset, ())

    def relabel(self, mapping: dict) -> "RepresentedMatroid":
        return RepresentedMatroid(self.matrix.relabel_columns(mapping))


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _check_cap(n: int, cap: int):
    if n > cap:
        raise CapacityError(f"ground set of {n} elements exceeds the exhaustion cap of {cap}")


def _rank_cols(cols, p) -> int:
    basis: dict[int, list[int]] = {}
    r = 0
    for v in cols:
        v = list(v)
        for i in range(len(v)):
            x = v[i]
            if x == 0:
                continue
            b = basis.get(i)
            if b is None:
                inv = pow(x, p - 2, p)
                basis[i] = [(y * inv) % p for y in v]
                r += 1
                break
            v = [(a - x * c) % p for a, c in zip(v, b)]
    return r


def _reduce(basis: dict, v: list[int], p: int):
    """Reduce v by a pivot-keyed basis. Returns (pivot or None, reduced vector)."""
    for i in range(len(v)):
        x = v[i]
        if x == 0:
            continue
        b = basis.get(i)
        if b is None:
            inv = pow(x, p - 2, p)
            return i, [(y * inv) % p for y in v]
        v = [(a - x * c) % p for a, c in zip(v, b)]
    return None, v


def _all_subset_ranks(vectors, p) -> list[int]:
    n = len(vectors)
    ranks = [0] * (1 << n)

    def walk(start, mask, basis, r):
        for j in range(start, n):
            piv, w = _reduce(basis, list(vectors[j]), p)
            m = mask | 1 << j
            if piv is None:
                ranks[m] = r
                walk(j + 1, m, basis, r)
            else:
                nb = dict(basis)
                nb[piv] = w
                ranks[m] = r + 1
                walk(j + 1, m, nb, r + 1)

    walk(0, 0, {}, 0)
    return ranks


def _enumerate_circuits(vectors, p) -> list[int]:
    """All circuits as bitmasks.

    A circuit C is reported exactly once: when the independent set C - max(C)
    is extended by max(C).
    """
    n = len(vectors)
    out: list[int] = []
    # basis rows carry (vector, combination over ground indices)
    def walk(start, members_mask, basis):
        for j in range(start, n):
            v = list(vectors[j])
            comb = {j: 1}
            piv = None
            for i in range(len(v)):
                x = v[i]
                if x == 0:
                    continue
                row = basis.get(i)
                if row is None:
                    piv = i
                    break
                bv, bc = row
                v = [(a - x * c) % p for a, c in zip(v, bv)]
                for k, c in bc.items():
                    nv = (comb.get(k, 0) - x * c) % p
                    if nv:
                        comb[k] = nv
                    else:
                        comb.pop(k, None)
            if piv is None:
                support = 0
                for k in comb:
                    support |= 1 << k
                if support == members_mask | 1 << j:
                    out.append(support)
            else:
                inv = pow(v[piv], p - 2, p)
                nb = dict(basis)
                nb[piv] = ([(y * inv) % p for y in v], {k: (c * inv) % p for k, c in comb.items()})
                walk(j + 1, members_mask | 1 << j, nb)

    walk(0, 0, {})
    return out


# --- operations ----------------------------------------------------------

def rank_of(m: RepresentedMatroid, s: Iterable[str]) -> int:
    return m.rank_of(s)


def dual(m: RepresentedMatroid) -> RepresentedMatroid:
    """Standard-form dual: reduce to [I | D] and emit [-D^T | I]."""
    p, n = m.p, len(m)
    rows, pivots = echelon_rows(m.matrix.rows, p)
    nonpivots = [j for j in range(n) if j not in set(pivots)]
    out = []
    for j in nonpivots:
        row = [0] * n
        for i, pc in enumerate(pivots):
            row[pc] = (-rows[i][j]) % p
        row[j] = 1
        out.append(tuple(row))
    row_labels = tuple(f"*{m.ground[j]}" for j in nonpivots)
    return RepresentedMatroid(FieldMatrix(p, row_labels, m.ground, tuple(out)))


def minor(m: RepresentedMatroid, contract: Iterable[str] = (), delete: Iterable[str] = ()) -> RepresentedMatroid:
    """Represented minor m / contract \\ delete.

    Contracted elements are pivoted out one at a time; a contracted element
    that is a loop at its turn is simply removed.
    """
    contract = list(contract)
    delete = list(delete)
    ground = set(m.ground)
    for e in contract + delete:
        if e not in ground:
            raise InputError(f"unknown element {e!r}")
    if set(contract) & set(delete):
        raise InputError("contract and delete sets overlap")
    p = m.p
    rows = [list(r) for r in m.matrix.rows]
    row_labels = list(m.matrix.row_labels)
    cols = list(m.ground)
    for e in contract:
        j = cols.index(e)
        piv = next((i for i, r in enumerate(rows) if r[j]), None)
        if piv is not None:
            prow = rows[piv]
            inv = pow(prow[j], p - 2, p)
            prow = [(x * inv) % p for x in prow]
            for i, r in enumerate(rows):
                if i != piv and r[j]:
                    f = r[j]
                    rows[i] = [(a - f * b) % p for a, b in zip(r, prow)]
            del rows[piv]
            del row_labels[piv]
        for r in rows:
            del r[j]
        del cols[j]
    gone = set(delete)
    keep = [j for j, e in enumerate(cols) if e not in gone]
    rows = [tuple(r[j] for j in keep) for r in rows]
    return RepresentedMatroid(FieldMatrix(p, tuple(row_labels), tuple(cols[j] for j in keep), tuple(rows)))


def parallel_classes(m: RepresentedMatroid) -> list[list[str]]:
    """Parallel classes of non-loops, each in ground order."""
    classes: dict[tuple, list[str]] = {}
    for e, v in zip(m.ground, m.vectors):
        key = normalize(v, m.p)
        if key is not None:
            classes.setdefault(key, []).append(e)
    return list(classes.values())


def simplify(m: RepresentedMatroid) -> RepresentedMatroid:
    """Drop loops and keep the least label of every parallel class."""
    keep = {min(c) for c in parallel_classes(m)}
    return m.restrict([e for e in m.ground if e in keep])


def cosimplify(m: RepresentedMatroid) -> RepresentedMatroid:
    """Drop coloops and all but the least label of every series class."""
    d = simplify(dual(m))
    kept = set(d.ground)
    return minor(m, [e for e in m.ground if e not in kept], ())


def epsilon(m: RepresentedMatroid) -> int:
    """Number of rank-1 flats."""
    return len(parallel_classes(m))


def connectivity(m: RepresentedMatroid, x: Iterable[str]) -> int:
    """The connectivity function r(X) + r(E - X) - r(E)."""
    a = m.mask(x)
    return m.rank_mask(a) + m.rank_mask(m.full_mask ^ a) - m.rank


# `lambda` is reserved in Python
lam = connectivity


def is_vertically_k_connected(m: RepresentedMatroid, k: int, cap: int = DEFAULT_CAP) -> bool:
    """Every separation of order < k has a spanning side."""
    if k <= 1:
        return True
    ranks = m.all_ranks(cap)
    full, r = m.full_mask, m.rank
    for a in range(1 << len(m)):
        b = full ^ a
        ra, rb = ranks[a], ranks[b]
        if ra + rb - r < k - 1 and ra < r and rb < r:
            return False
    return True


def is_cyclically_k_connected(m: RepresentedMatroid, k: int, cap: int = DEFAULT_CAP) -> bool:
    """Vertical k-connectivity of the dual."""
    return is_vertically_k_connected(dual(m), k, cap)


def cyclic_separations(m: RepresentedMatroid, cap: int = DEFAULT_CAP):
    """Yield (side_a_mask, order) for partitions whose sides both contain circuits.

    Each unordered partition is produced once (side A holds element 0).
    """
    ranks = m.all_ranks(cap)
    n, full, r = len(m), m.full_mask, m.rank
    for a in range(1, 1 << n, 2):
        b = full ^ a
        if b == 0:
            continue
        if ranks[a] < a.bit_count() and ranks[b] < b.bit_count():
            yield a, ranks[a] + ranks[b] - r + 1


@dataclass(frozen=True)
class Separation:
    side_a: frozenset
    side_b: frozenset
    order: int


def separation(m: RepresentedMatroid, side_a: Iterable[str]) -> Separation:
    a = frozenset(side_a)
    m.mask(a)
    b = frozenset(m.ground) - a
    return Separation(a, b, connectivity(m, a) + 1)


# --- isomorphism ---------------------------------------------------------

def _signatures(m: RepresentedMatroid, circuits: list[int]) -> list[tuple]:
    n = len(m)
    per: list[Counter] = [Counter() for _ in range(n)]
    for c in circuits:
        size = c.bit_count()
        for i in _bits(c):
            per[i][size] += 1
    # closure size of each element's parallel class acts as a second invariant
    classes = parallel_classes(m)
    psize = {e: len(c) for c in classes for e in c}
    return [(psize.get(m.ground[i], 0), tuple(sorted(per[i].items()))) for i in range(n)]


def is_isomorphic(m1: RepresentedMatroid, m2: RepresentedMatroid, cap: int = CIRCUIT_CAP):
    """Return an isomorphism as a dict ground(m1) -> ground(m2), or None.

    Backtracking over element images; a partial map is extended only while
    every circuit of m1 whose elements are all mapped lands on a circuit of m2.
    """
    if len(m1) != len(m2) or m1.rank != m2.rank:
        return None
    c1, c2 = m1.circuit_masks(cap), m2.circuit_masks(cap)
    if len(c1) != len(c2):
        return None
    if Counter(c.bit_count() for c in c1) != Counter(c.bit_count() for c in c2):
        return None
    s1, s2 = _signatures(m1, c1), _signatures(m2, c2)
    if Counter(s1) != Counter(s2):
        return None
    n = len(m1)
    # most constrained first: rare signatures, then elements in many circuits
    freq = Counter(s1)
    order = sorted(range(n), key=lambda i: (freq[s1[i]], -sum(k * v for k, v in s1[i][1])))
    pos = {e: k for k, e in enumerate(order)}
    # circuits of m1 indexed by the position of their last-assigned element
    checks: list[list[list[int]]] = [[] for _ in range(n)]
    for c in c1:
        members = list(_bits(c))
        last = max(members, key=lambda i: pos[i])
        checks[pos[last]].append(members)
    target = set(c2)
    cands = {i: [j for j in range(n) if s2[j] == s1[i]] for i in range(n)}
    image = [-1] * n
    used = [False] * n

    def extend(k):
        if k == n:
            return True
        i = order[k]
        for j in cands[i]:
            if used[j]:
                continue
            image[i] = j
            ok = True
            for members in checks[k]:
                mm = 0
                for x in members:
                    mm |= 1 << image[x]
                if mm not in target:
                    ok = False
                    break
            if ok:
                used[j] = True
                if extend(k + 1):
                    return True
                used[j] = False
        image[i] = -1
        return False

    if not extend(0):
        return None
    return {m1.ground[i]: m2.ground[image[i]] for i in range(n)}


def same_matroid_over_fields(pattern, p1: int, p2: int, cap: int = CIRCUIT_CAP) -> bool:
    """Do the GF(p1) and GF(p2) readings of a {0, +1, -1} matrix define one matroid?

    ``pattern`` is a FieldMatrix (its -1 entries are p-1) or a list of integer
    rows with entries in {-1, 0, 1}.
    """
    if isinstance(pattern, FieldMatrix):
        base = pattern
    else:
        rows = [list(r) for r in pattern]
        for r in rows:
            for x in r:
                if x not in (-1, 0, 1):
                    raise InputError(f"entry {x} is not in {{0, 1, -1}}")
        base = FieldMatrix.from_rows(3, rows)
    a = RepresentedMatroid(base.with_field(p1))
    b = RepresentedMatroid(base.with_field(p2))
    _check_cap(len(a), cap)
    return a.same_independent_sets(b, cap)
