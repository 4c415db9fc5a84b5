"""Frame templates: conformance, normal-form predicates and extremal sizes.

A template Phi = (Gamma, C, X, Y0, Y1, A1, Delta, Lambda) constrains a
matrix whose rows split into X and a block of "frame rows". Everything
here is exact and fully enumerated; the templates of interest have at most
a handful of labels.

Over a prime field an additive subgroup is already a subspace, so Lambda
and Delta are stored as spans of their generators.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product

from .errors import CapacityError, InputError
from .field import FieldMatrix, echelon_rows, rank_of_vectors
from .frame import check_subgroup, is_gamma_frame
from .matroid import RepresentedMatroid, dual, epsilon, minor, simplify
from .report import VerificationReport, stopwatch


class TemplatePreconditionError(InputError):
    """The template or matrix does not meet an operation's precondition."""


@dataclass(frozen=True)
class Subgroup:
    ambient: tuple[str, ...]
    generators: tuple[tuple[int, ...], ...]
    p: int
    elements: frozenset = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        k = len(self.ambient)
        gens = tuple(tuple(x % self.p for x in g) for g in self.generators)
        if any(len(g) != k for g in gens):
            raise InputError(f"generator length differs from ambient size {k}")
        if self.p ** k > 4096:
            raise CapacityError(f"subgroup ambient GF({self.p})^{k} too large to enumerate")
        basis, _ = echelon_rows(gens, self.p) if gens else ([], [])
        elems = set()
        for coeffs in product(range(self.p), repeat=len(basis)):
            v = [0] * k
            for c, b in zip(coeffs, basis):
                v = [(x + c * y) % self.p for x, y in zip(v, b)]
            elems.add(tuple(v))
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "elements", frozenset(elems))

    @classmethod
    def zero(cls, ambient, p) -> "Subgroup":
        return cls(tuple(ambient), (), p)

    @classmethod
    def full(cls, ambient, p) -> "Subgroup":
        k = len(ambient)
        return cls(tuple(ambient), tuple(tuple(int(i == j) for j in range(k)) for i in range(k)), p)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, v) -> bool:
        return tuple(x % self.p for x in v) in self.elements

    def is_closed(self, gamma) -> bool:
        p = self.p
        for a in self.elements:
            for g in gamma:
                if tuple((g * x) % p for x in a) not in self.elements:
                    return False
            for b in self.elements:
                if tuple((x + y) % p for x, y in zip(a, b)) not in self.elements:
                    return False
        return True

    def project(self, labels) -> set[tuple[int, ...]]:
        idx = [self.ambient.index(x) for x in labels]
        return {tuple(v[i] for i in idx) for v in self.elements}

    def representatives(self) -> list[tuple[int, ...]]:
        """Nonzero elements, one per class of nonzero scalar multiples."""
        seen, reps = set(), []
        for v in sorted(self.elements):
            if not any(v) or v in seen:
                continue
            reps.append(v)
            seen.update(tuple((c * x) % self.p for x in v) for c in range(1, self.p))
        return reps


@dataclass(frozen=True)
class FrameTemplate:
    p: int
    gamma: tuple[int, ...]
    C: tuple[str, ...]
    X: tuple[str, ...]
    Y0: tuple[str, ...]
    Y1: tuple[str, ...]
    A1: FieldMatrix
    delta: Subgroup
    lam: Subgroup

    def __post_init__(self):
        object.__setattr__(self, "gamma", check_subgroup(self.gamma, self.p))
        parts = self.C + self.X + self.Y0 + self.Y1
        if len(set(parts)) != len(parts):
            raise InputError("C, X, Y0 and Y1 must be disjoint")
        if set(self.A1.row_labels) != set(self.X) or set(self.A1.col_labels) != set(self.cy):
            raise InputError("A1 must have rows X and columns C, Y0, Y1")
        if self.A1.p != self.p or self.delta.p != self.p or self.lam.p != self.p:
            raise InputError("template parts over different fields")
        if self.delta.ambient != self.cy:
            raise InputError("Delta must live on C + Y0 + Y1 in that order")
        if self.lam.ambient != self.X:
            raise InputError("Lambda must live on X")
        if not self.delta.is_closed(self.gamma) or not self.lam.is_closed(self.gamma):
            raise InputError("subgroups must be closed under addition and Gamma-scaling")

    @property
    def cy(self) -> tuple[str, ...]:
        return self.C + self.Y0 + self.Y1

    def a1_column(self, y) -> tuple[int, ...]:
        return tuple(self.A1.entry(x, y) for x in self.X)

    # serialization

    def to_dict(self) -> dict:
        return {"p": self.p, "gamma": list(self.gamma), "C": list(self.C), "X": list(self.X),
                "Y0": list(self.Y0), "Y1": list(self.Y1), "A1": self.A1.to_dict(),
                "delta_gens": [list(g) for g in self.delta.generators],
                "lambda_gens": [list(g) for g in self.lam.generators]}

    @classmethod
    def from_dict(cls, d: dict) -> "FrameTemplate":
        p = int(d["p"])
        C, X, Y0, Y1 = (tuple(d.get(k, [])) for k in ("C", "X", "Y0", "Y1"))
        a1 = d.get("A1")
        if a1 is None:
            a1m = FieldMatrix.zeros(p, X, C + Y0 + Y1)
        else:
            a1m = FieldMatrix.from_dict(a1)
            a1m = a1m.submatrix(list(X), list(C + Y0 + Y1))
        return cls(p, tuple(d.get("gamma", [1])), C, X, Y0, Y1, a1m,
                   Subgroup(C + Y0 + Y1, tuple(tuple(g) for g in d.get("delta_gens", [])), p),
                   Subgroup(X, tuple(tuple(g) for g in d.get("lambda_gens", [])), p))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "FrameTemplate":
        return cls.from_dict(json.loads(text))


def make_template(p=3, gamma=(1,), C=(), X=(), Y0=(), Y1=(), A1=None, delta_gens=(), lambda_gens=()) -> FrameTemplate:
    C, X, Y0, Y1 = tuple(C), tuple(X), tuple(Y0), tuple(Y1)
    if A1 is None:
        a1 = FieldMatrix.zeros(p, X, C + Y0 + Y1)
    else:
        a1 = FieldMatrix.from_rows(p, A1, X, C + Y0 + Y1)
    return FrameTemplate(p, tuple(gamma), C, X, Y0, Y1, a1,
                         Subgroup(C + Y0 + Y1, tuple(delta_gens), p), Subgroup(X, tuple(lambda_gens), p))


# --- respects / conforms -------------------------------------------------------

@dataclass(frozen=True)
class ConformingWitness:
    a_prime: FieldMatrix
    z: tuple[str, ...]
    y1_assignment: dict
    a: FieldMatrix


def _col(m: FieldMatrix, rows, c) -> tuple[int, ...]:
    j = m.col_index(c)
    return tuple(m.rows[m.row_index(r)][j] for r in rows)


def respects(a_prime: FieldMatrix, phi: FrameTemplate, z) -> bool:
    z = tuple(z)
    B, E = a_prime.row_labels, a_prime.col_labels
    if not set(phi.X) <= set(B) or not set(phi.cy) <= set(E):
        raise InputError("matrix lacks some template labels")
    if not set(z) <= set(E) or set(z) & set(phi.cy):
        return False
    lower = tuple(b for b in B if b not in set(phi.X))
    # (ii)
    if a_prime.submatrix(list(phi.X), list(phi.cy)).rows != phi.A1.submatrix(list(phi.X), list(phi.cy)).rows:
        return False
    # (iii)
    for c in z:
        if any(_col(a_prime, phi.X, c)):
            return False
        below = _col(a_prime, lower, c)
        if sorted(below) != [0] * (len(below) - 1) + [1]:
            return False
    rest = [e for e in E if e not in set(phi.cy) and e not in set(z)]
    if not is_gamma_frame(a_prime.submatrix(list(lower), rest), phi.gamma):
        return False
    # (iv)
    if any(_col(a_prime, phi.X, e) not in phi.lam for e in rest):
        return False
    # (v)
    sub = a_prime.submatrix(list(lower), list(phi.cy))
    return all(row in phi.delta for row in sub.rows)


def conforms(w: ConformingWitness, phi: FrameTemplate) -> bool:
    if not respects(w.a_prime, phi, w.z):
        raise TemplatePreconditionError("A' does not respect the template for the given Z")
    a, ap = w.a, w.a_prime
    if a.row_labels != ap.row_labels or a.col_labels != ap.col_labels:
        return False
    zs = set(w.z)
    for e in a.col_labels:
        if e not in zs and _col(a, a.row_labels, e) != _col(ap, ap.row_labels, e):
            return False
    for e in w.z:
        y = w.y1_assignment.get(e)
        if y not in phi.Y1:
            return False
        want = tuple((s + t) % a.p for s, t in zip(_col(ap, ap.row_labels, e), _col(ap, ap.row_labels, y)))
        if _col(a, a.row_labels, e) != want:
            return False
    return True


def template_matroid(w: ConformingWitness, phi: FrameTemplate) -> RepresentedMatroid:
    return minor(RepresentedMatroid(w.a), phi.C, phi.Y1)


def assemble(phi: FrameTemplate, delta_rows, free_columns, z_columns) -> ConformingWitness:
    """Build A' and A from frame-row data.

    ``delta_rows``: one Delta element per frame row (over C + Y0 + Y1).
    ``free_columns``: (label, lambda part over X, Gamma-frame part over the frame rows).
    ``z_columns``: (label, frame row index, element of Y1).
    """
    p = phi.p
    nf = len(delta_rows)
    frame_rows = tuple(f"f{i}" for i in range(nf))
    cols, labels = [], []
    for y in phi.cy:
        k = phi.cy.index(y)
        cols.append(phi.a1_column(y) + tuple(row[k] for row in delta_rows))
        labels.append(y)
    for label, lam, frame in free_columns:
        cols.append(tuple(lam) + tuple(frame))
        labels.append(label)
    zcols_prime, zcols, assignment = [], [], {}
    for label, i, y in z_columns:
        unit = tuple(int(k == i) for k in range(nf))
        prime = (0,) * len(phi.X) + unit
        ycol = cols[phi.cy.index(y)]
        zcols_prime.append(prime)
        zcols.append(tuple((s + t) % p for s, t in zip(prime, ycol)))
        assignment[label] = y
        labels.append(label)
    rows = phi.X + frame_rows
    a_prime = FieldMatrix.from_columns(p, cols + zcols_prime, rows, labels)
    a = FieldMatrix.from_columns(p, cols + zcols, rows, labels)
    return ConformingWitness(a_prime, tuple(z[0] for z in z_columns), assignment, a)


# --- normal forms ---------------------------------------------------------------

def reduction_partition(phi: FrameTemplate):
    """(X0, X1) derived from Lambda, or None if no valid partition exists."""
    x1 = tuple(x for x in phi.X if phi.lam.project([x]) == {(0,)})
    x0 = tuple(x for x in phi.X if x not in x1)
    if len(phi.lam.project(x0)) != phi.p ** len(x0):
        return None
    return x0, x1


def is_y_reduced(phi: FrameTemplate) -> bool:
    if len(phi.delta.project(phi.C)) != phi.p ** len(phi.C):
        return False
    if phi.delta.project(phi.Y0 + phi.Y1) - {(0,) * len(phi.Y0 + phi.Y1)}:
        return False
    return reduction_partition(phi) is not None


def _a1_rows(phi, rows, cols) -> list[tuple[int, ...]]:
    return [tuple(phi.A1.entry(x, c) for c in cols) for x in rows]


def is_reduced(phi: FrameTemplate) -> bool:
    if not is_y_reduced(phi):
        return False
    p = phi.p
    y = phi.Y0 + phi.Y1
    delta_y = phi.delta.project(y)
    product_set = {u + d for u in product(range(p), repeat=len(phi.C)) for d in delta_y}
    if set(phi.delta.elements) != product_set:
        return False
    part = reduction_partition(phi)
    if part is None:
        return False
    _, x1 = part
    if any(any(r) for r in _a1_rows(phi, x1, phi.C)):
        return False
    rows = _a1_rows(phi, x1, phi.cy)
    if rank_of_vectors(rows, p) != len(rows):
        return False
    span = Subgroup(phi.cy, tuple(rows), p)
    return span.elements & phi.delta.elements == {(0,) * len(phi.cy)}


def is_refined(phi: FrameTemplate) -> bool:
    if not is_reduced(phi):
        return False
    _, x1 = reduction_partition(phi)
    cols_y1 = [tuple(phi.A1.entry(x, c) for x in x1) for c in phi.Y1]
    cols_all = [tuple(phi.A1.entry(x, c) for x in x1) for c in phi.Y0 + phi.Y1]
    return rank_of_vectors(cols_y1, phi.p) == rank_of_vectors(cols_all, phi.p)


def strip_redundant_y1(phi: FrameTemplate) -> FrameTemplate:
    """Drop every element of Y1 whose A1 column lies in Lambda."""
    if not is_y_reduced(phi):
        raise TemplatePreconditionError("template is not Y-reduced")
    keep = tuple(y for y in phi.Y1 if phi.a1_column(y) not in phi.lam)
    if keep == phi.Y1:
        return phi
    cy = phi.C + phi.Y0 + keep
    idx = [phi.cy.index(c) for c in cy]
    gens = tuple(tuple(g[i] for i in idx) for g in phi.delta.generators)
    return FrameTemplate(phi.p, phi.gamma, phi.C, phi.X, phi.Y0, keep,
                         phi.A1.submatrix(list(phi.X), list(cy)), Subgroup(cy, gens, phi.p), phi.lam)


# --- extremal size --------------------------------------------------------------

@dataclass
class ExtremalReport:
    r: int
    a: Fraction
    b: Fraction
    c: Fraction
    n: int
    predicted: int
    t: int
    hat_lambda: int
    hat_y0: int
    constructed: int | None = None
    bruteforce: int | None = None
    exact: bool = True

    def to_dict(self) -> dict:
        return {"r": self.r, "a": str(self.a), "b": str(self.b), "c": str(self.c), "n": self.n,
                "predicted": self.predicted, "constructed": self.constructed,
                "bruteforce": self.bruteforce, "t": self.t, "hat_lambda": self.hat_lambda,
                "hat_y0": self.hat_y0, "exact": self.exact}


def _check_extremal_pre(phi: FrameTemplate):
    if not is_y_reduced(phi):
        raise TemplatePreconditionError("template is not Y-reduced")
    if any(phi.a1_column(y) in phi.lam for y in phi.Y1):
        raise TemplatePreconditionError("some A1[X, Y1] column lies in Lambda; strip it first")


def template_t(phi: FrameTemplate) -> int:
    _, x1 = reduction_partition(phi)
    return len(x1) - rank_of_vectors(_a1_rows(phi, x1, phi.cy), phi.p)


def min_rank(phi: FrameTemplate) -> int:
    return 2 * len(phi.C) + len(phi.X) - template_t(phi) + 2


def _y_columns_distinct(phi: FrameTemplate) -> bool:
    """The formula counts Y1 and outside-Lambda Y0 columns as distinct points."""
    p = phi.p
    seen = set()
    for y in phi.Y1:
        v = phi.a1_column(y)
        if not any(v) or v in seen:
            return False
        seen.add(v)
    pts = set()
    for y in phi.Y0:
        v = phi.a1_column(y)
        if v in phi.lam:
            continue
        lead = next(x for x in v if x)
        key = tuple((x * pow(lead, p - 2, p)) % p for x in v)
        if key in pts:
            return False
        pts.add(key)
    return True


def extremal_formula(phi: FrameTemplate, r: int) -> ExtremalReport:
    _check_extremal_pre(phi)
    t = template_t(phi)
    if r < min_rank(phi):
        raise ValueError(f"rank {r} below the admissible threshold {min_rank(phi)}")
    g, lam, y1 = len(phi.gamma), len(phi.lam), len(phi.Y1)
    cc, xx = len(phi.C), len(phi.X)
    hat_lambda = len(phi.lam.representatives())
    hat_y0 = sum(1 for y in phi.Y0 if phi.a1_column(y) not in phi.lam)
    half = Fraction(1, 2)
    a = half * g * lam
    b = half * g * lam * (2 * cc + 2 * t - 2 * xx - 1) + lam + y1
    s = cc + t - xx
    c = half * s * (g * lam * (s - 1) + 2 * lam + 2 * y1) + hat_lambda + hat_y0
    value = a * r * r + b * r + c
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral prediction {value}")
    n = r + cc + t - xx
    return ExtremalReport(r, a, b, c, n, int(value), t, hat_lambda, hat_y0, exact=_y_columns_distinct(phi))


def frame_column_types(nf: int, gamma, p: int):
    """Canonical Gamma-frame columns on nf rows: units, then e_i - g e_j for i < j."""
    for i in range(nf):
        yield f"u{i}", tuple(int(k == i) for k in range(nf))
    for i, j in combinations(range(nf), 2):
        for g in gamma:
            v = [0] * nf
            v[i], v[j] = 1, (-g) % p
            yield f"s{i}.{j}g{g}", tuple(v)


def _free_universe(phi: FrameTemplate, nf: int, skip_zero=()):
    cols = []
    lams = sorted(phi.lam.elements)
    for li, lam in enumerate(lams):
        for name, frame in frame_column_types(nf, phi.gamma, phi.p):
            cols.append((f"{name}l{li}", lam, frame))
    for k, lam in enumerate(phi.lam.representatives()):
        if lam not in skip_zero:
            cols.append((f"o{k}", lam, (0,) * nf))
    return cols


def _c_block(phi: FrameTemplate, nf: int):
    cc = len(phi.C)
    rows = []
    for i in range(nf):
        if i < 3 * cc:
            u = [int(k == i % cc) for k in range(cc)]
        elif i < 3 * cc + 2:
            u = [1] * cc
        else:
            u = [0] * cc
        rows.append(tuple(u) + (0,) * (len(phi.Y0) + len(phi.Y1)))
    return rows


def extremal_construct(phi: FrameTemplate, r: int) -> RepresentedMatroid:
    """The dense conforming matroid of rank r built as in the extremal count."""
    rep = extremal_formula(phi, r)
    nf = rep.n
    p = phi.p
    # zero-frame columns already present as Y0 columns lying in Lambda
    y0_in_lam = set()
    for y in phi.Y0:
        v = phi.a1_column(y)
        if v in phi.lam and any(v):
            for lam in phi.lam.representatives():
                if any(tuple((c * x) % p for x in lam) == v for c in range(1, p)):
                    y0_in_lam.add(lam)
    free = _free_universe(phi, nf, skip_zero=y0_in_lam)
    zs = [(f"z{y}@{i}", i, y) for y in phi.Y1 for i in range(nf)]
    w = assemble(phi, _c_block(phi, nf), free, zs)
    m = template_matroid(w, phi)
    if m.rank != r:
        raise ArithmeticError(f"construction has rank {m.rank}, expected {r}")
    return m


def construct_witness(phi: FrameTemplate, r: int) -> ConformingWitness:
    rep = extremal_formula(phi, r)
    nf = rep.n
    free = _free_universe(phi, nf)
    zs = [(f"z{y}@{i}", i, y) for y in phi.Y1 for i in range(nf)]
    return assemble(phi, _c_block(phi, nf), free, zs)


def _max_flat(m: RepresentedMatroid, r: int) -> int | None:
    """Mask of a largest rank-r flat of a simple matroid, None if rank < r."""
    if m.rank < r:
        return None
    if r == 0:
        return 0
    n = len(m)
    best = None
    seen = set()
    for combo in combinations(range(n), r):
        mask = 0
        for j in combo:
            mask |= 1 << j
        if m.rank_mask(mask) != r:
            continue
        flat = 0
        for j in range(n):
            if m.rank_mask(mask | 1 << j) == r:
                flat |= 1 << j
        if flat not in seen:
            seen.add(flat)
            if best is None or flat.bit_count() > best.bit_count():
                best = flat
    return best


@dataclass
class BruteForceResult:
    size: int
    witness: ConformingWitness
    points: tuple[str, ...]  # the flat; restrict M(A)/C\\Y1 to it

    def matroid(self, phi: FrameTemplate) -> RepresentedMatroid:
        return simplify(template_matroid(self.witness, phi)).restrict(self.points)


def extremal_search(phi: FrameTemplate, r: int, extra_rows: int = 1) -> BruteForceResult:
    """Largest epsilon of a rank-r matroid M(A)/C\\Y1 over conforming A, with a witness.

    Tries every number of frame rows up to r + |C| + |X| + ``extra_rows`` and
    every choice of Delta rows. For fixed rows, the conforming matroids are
    the restrictions of the one built from all admissible columns, so the
    answer for that row choice is the largest rank-r flat.
    """
    if r > 3 or len(phi.C + phi.X + phi.Y0 + phi.Y1) > 3:
        raise CapacityError("brute force is limited to r <= 3 and at most 3 template labels")
    best = None
    top = r + len(phi.C) + len(phi.X) + extra_rows
    deltas = sorted(phi.delta.elements)
    for nf in range(top + 1):
        if len(deltas) ** nf > 5000:
            raise CapacityError("too many Delta-row choices")
        free = _free_universe(phi, nf)
        zs = [(f"z{y}@{i}", i, y) for y in phi.Y1 for i in range(nf)]
        for rows in product(deltas, repeat=nf):
            w = assemble(phi, list(rows), free, zs)
            m = simplify(template_matroid(w, phi))
            flat = _max_flat(m, r)
            if flat is not None and (best is None or flat.bit_count() > best.size):
                best = BruteForceResult(flat.bit_count(), w, tuple(sorted(m.labels(flat))))
    if best is None:
        raise ValueError(f"no conforming matroid of rank {r}")
    return best


def extremal_bruteforce(phi: FrameTemplate, r: int, extra_rows: int = 1) -> int:
    return extremal_search(phi, r, extra_rows).size


# --- the not-spanning property ------------------------------------------------------

def random_witness(phi: FrameTemplate, nf: int, rng: random.Random, density: float = 0.5) -> ConformingWitness:
    deltas = sorted(phi.delta.elements)
    rows = [rng.choice(deltas) for _ in range(nf)]
    free = [c for c in _free_universe(phi, nf) if rng.random() < density]
    zs = [(f"z{y}@{i}", i, y) for y in phi.Y1 for i in range(nf) if rng.random() < density]
    return assemble(phi, rows, free, zs)


def check_notspanning(phi: FrameTemplate, samples: int = 20, ranks=(2, 3), seed: int = 0) -> VerificationReport:
    """Every sampled member M has E(M) - Y0 non-spanning, and Y0 holds a cocircuit of M."""
    if not is_reduced(phi):
        raise TemplatePreconditionError("template is not reduced")
    if is_refined(phi):
        raise TemplatePreconditionError("template is refined; the property does not apply")
    rng = random.Random(seed)
    bad = None
    checked = 0
    with stopwatch() as sw:
        for nf in ranks:
            for _ in range(samples):
                w = random_witness(phi, nf, rng)
                m = template_matroid(w, phi)
                rest = [e for e in m.ground if e not in set(phi.Y0)]
                spanning = m.rank_of(rest) == m.rank
                y0 = set(phi.Y0)
                cocircuit = any(c <= y0 for c in dual(m).circuits())
                checked += 1
                if spanning or not cocircuit:
                    bad = {"A": w.a.to_dict(), "Z": list(w.z), "spanning": spanning, "cocircuit_in_Y0": cocircuit}
                    break
            if bad:
                break
    params = {"samples": checked, "frame_rows": list(ranks)}
    return VerificationReport("lem:notspanning", params, bad is None, bad, seed, sw.ms)


# --- battery -------------------------------------------------------------------------

def trivial_template(p: int = 3) -> FrameTemplate:
    return make_template(p, (1,))


def dowling_template(p: int = 3) -> FrameTemplate:
    return make_template(p, (1, p - 1))


def xy1_template(p: int = 3) -> FrameTemplate:
    """X = {x}, Y1 = {y}, A1[x, y] = 1, Lambda = Delta = {0}."""
    return make_template(p, (1,), X=("x",), Y1=("y",), A1=[[1]])


def not_refined_template(p: int = 3) -> FrameTemplate:
    """X1 = {x}, Y0 = {y}, Y1 empty, A1[x, y] = 1: reduced but not refined."""
    return make_template(p, (1,), X=("x",), Y0=("y",), A1=[[1]])


BATTERY = {"trivial": trivial_template, "dowling": dowling_template, "xy1": xy1_template}
