"""Exact dense linear algebra over Q and over Q(u).

Rational matrices are FLINT ``fmpq_mat``.  Matrices of rational functions
are a small list-of-lists wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from math import gcd, lcm

from flint import fmpq, fmpq_mat, fmpz_mat

from .scalars import LAURENT_ZERO, RationalFunction, laurent_leading_at, rational

MatrixQ = fmpq_mat


class NotInSpan:
    """Returned by :func:`coordinates_in_basis` when v is not in the span."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NOT_IN_SPAN"

    def __bool__(self):
        return False


NOT_IN_SPAN = NotInSpan()


def matrix(rows: Sequence[Sequence]) -> fmpq_mat:
    rows = [[rational(x) for x in r] for r in rows]
    if not rows:
        return fmpq_mat(0, 0)
    return fmpq_mat(rows)


def zeros(r: int, c: int) -> fmpq_mat:
    return fmpq_mat(r, c)


def eye(n: int) -> fmpq_mat:
    m = fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def column_vectors(m: fmpq_mat) -> list[list[fmpq]]:
    rows = m.tolist()
    return [[rows[i][j] for i in range(m.nrows())] for j in range(m.ncols())]


def from_columns(cols: Sequence[Sequence], nrows: int | None = None) -> fmpq_mat:
    if not cols:
        return fmpq_mat(nrows or 0, 0)
    r = len(cols[0])
    return fmpq_mat([[rational(cols[j][i]) for j in range(len(cols))] for i in range(r)])


def rref_rank(m: fmpq_mat) -> tuple[int, list[int]]:
    """Rank and pivot columns (first nonzero entry of each reduced row)."""
    if m.nrows() == 0 or m.ncols() == 0:
        return 0, []
    r, rank = m.rref()
    pivots = []
    for i in range(rank):
        for j in range(m.ncols()):
            if r[i, j] != 0:
                pivots.append(j)
                break
    return rank, pivots


def rank(m: fmpq_mat) -> int:
    return rref_rank(m)[0]


def image_basis(m: fmpq_mat) -> list[list[fmpq]]:
    """The pivot columns of m itself: a deterministic basis of its column space."""
    _, piv = rref_rank(m)
    cols = column_vectors(m)
    return [cols[j] for j in piv]


def normalized_image_basis(m: fmpq_mat) -> tuple[fmpq_mat, list[int]]:
    """Column-space basis B with B[S, :] = identity on pivot rows S.

    Rows of rref(m^T) give this basis; S are their pivot positions.
    """
    if m.nrows() == 0 or m.ncols() == 0:
        return fmpq_mat(m.nrows(), 0), []
    r, rk = m.transpose().rref()
    if rk == 0:
        return fmpq_mat(m.nrows(), 0), []
    rows = r.tolist()[:rk]
    piv = [next(j for j, x in enumerate(row) if x != 0) for row in rows]
    return fmpq_mat([[rows[k][i] for k in range(rk)] for i in range(m.nrows())]), piv


def integer_image_basis(m: fmpz_mat) -> tuple[list[list[int]], list[int], list[int]]:
    """Fraction-free version of :func:`normalized_image_basis` for integer m.

    Returns (vectors, pivots, scales): each vector is a primitive integer
    multiple of the normalized basis vector, ``scales[k]`` its pivot entry.
    """
    if m.nrows() == 0 or m.ncols() == 0:
        return [], [], []
    r, den, rk = m.transpose().rref()
    rows = r.tolist()[:rk]
    vecs, piv, scales = [], [], []
    for row in rows:
        ints = [int(x) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        j = next(j for j, x in enumerate(ints) if x != 0)
        if ints[j] < 0:
            g = -g
        ints = [v // g for v in ints]
        vecs.append(ints)
        piv.append(j)
        scales.append(ints[j])
    return vecs, piv, scales


def determinant(m: fmpq_mat) -> fmpq:
    if m.nrows() != m.ncols():
        raise ValueError("determinant of a non-square matrix")
    if m.nrows() == 0:
        return fmpq(1)
    return m.det()


def coordinates_in_basis(v: Sequence, basis: Sequence[Sequence]):
    """Coordinates of v in the given basis, or NOT_IN_SPAN."""
    v = [rational(x) for x in v]
    if not basis:
        return [] if all(x == 0 for x in v) else NOT_IN_SPAN
    b = from_columns(basis)
    k = b.ncols()
    aug = fmpq_mat([list(row) + [x] for row, x in zip(b.tolist(), v)])
    r, rk = aug.rref()
    # in span iff the last column is not a pivot column
    rk_b = rank(b)
    if rk != rk_b:
        return NOT_IN_SPAN
    if rk_b < k:
        raise ValueError("basis vectors are linearly dependent")
    coords = [fmpq(0)] * k
    for i in range(rk):
        for j in range(k):
            if r[i, j] != 0:
                coords[j] = r[i, k]
                break
    return coords


def is_scalar_multiple_of_identity(m: fmpq_mat) -> tuple[bool, fmpq]:
    n = m.nrows()
    if n == 0:
        return True, fmpq(0)
    c = m[0, 0]
    for i in range(n):
        for j in range(m.ncols()):
            if m[i, j] != (c if i == j else 0):
                return False, c
    return True, c


def proportionality(a: fmpq_mat, b: fmpq_mat):
    """The scalar c with a = c·b, or None if there is none (b nonzero)."""
    ra, rb = a.tolist(), b.tolist()
    c = None
    for x_row, y_row in zip(ra, rb):
        for x, y in zip(x_row, y_row):
            if y == 0:
                if x != 0:
                    return None
                continue
            q = x / y
            if c is None:
                c = q
            elif q != c:
                return None
    return c


# matrices over Q(u)


class MatrixRF:
    """Dense matrix of RationalFunction entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        self.entries = [[RationalFunction.coerce(x) for x in r] for r in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0

    @classmethod
    def identity(cls, n: int) -> "MatrixRF":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __matmul__(self, other: "MatrixRF") -> "MatrixRF":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        zero = RationalFunction.constant(0)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero():
                        continue
                    b = other.entries[k][j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return MatrixRF(out)

    def __add__(self, other: "MatrixRF") -> "MatrixRF":
        return MatrixRF([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "MatrixRF") -> "MatrixRF":
        return MatrixRF([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def scale(self, c) -> "MatrixRF":
        c = RationalFunction.coerce(c)
        return MatrixRF([[c * a for a in r] for r in self.entries])

    def __eq__(self, other):
        return isinstance(other, MatrixRF) and self.entries == other.entries

    def evaluate(self, u) -> fmpq_mat:
        return fmpq_mat([[a(u) for a in r] for r in self.entries])

    def substitute_linear(self, a, b) -> "MatrixRF":
        return MatrixRF([[x.substitute_linear(a, b) for x in r] for r in self.entries])

    def map(self, f) -> "MatrixRF":
        return MatrixRF([[f(x) for x in r] for r in self.entries])


@dataclass(frozen=True)
class MatrixLaurentLeading:
    """Leading term (u - z)^(-a) · leading of a matrix-valued function."""

    a: int | None
    leading: fmpq_mat

    @property
    def is_zero(self) -> bool:
        return self.a is None


def matrix_laurent_leading(m: MatrixRF, z) -> MatrixLaurentLeading:
    z = rational(z)
    leads = [[laurent_leading_at(x, z) for x in r] for r in m.entries]
    orders = [x.order for r in leads for x in r if x is not LAURENT_ZERO and x.order is not None]
    if not orders:
        return MatrixLaurentLeading(None, fmpq_mat(m.rows, m.cols))
    k = min(orders)
    lead = fmpq_mat([[x.coefficient if x.order == k else fmpq(0) for x in r] for r in leads])
    return MatrixLaurentLeading(-k, lead)


# Burnside oracle


def _flatten(m: fmpq_mat) -> list[fmpq]:
    return [x for r in m.tolist() for x in r]


def _integer_row(m: fmpq_mat) -> list[int]:
    """Flattened m scaled to an integer row (only the span matters)."""
    flat = _flatten(m)
    q = 1
    for x in flat:
        q = lcm(q, int(x.q))
    return [int(x * q) for x in flat]


def integer_rref_pivots(m: fmpz_mat) -> tuple[int, list[int]]:
    """Rank and pivot columns of an integer matrix, fraction-free."""
    if m.nrows() == 0 or m.ncols() == 0:
        return 0, []
    r, _, rank = m.rref()
    pivots = []
    j = 0
    for i in range(rank):
        while r[i, j] == 0:
            j += 1
        pivots.append(j)
    return rank, pivots


def algebra_closure_dimension(generators: Sequence[fmpq_mat], dim_cap: int | None = None) -> int:
    """Dimension of the unital algebra generated by square matrices.

    Breadth-first: multiply the newest basis elements by every generator,
    re-echelonize, stop when nothing new appears.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator to fix the size")
    d = gens[0].nrows()
    if any(g.nrows() != d or g.ncols() != d for g in gens):
        raise ValueError("generators must be square of one size")
    cap = d * d if dim_cap is None else dim_cap

    basis_rows: list[list[int]] = []
    basis_mats: list[fmpq_mat] = []

    def absorb(cands: list[fmpq_mat]) -> list[fmpq_mat]:
        """Keep the candidates that are independent of the basis and of earlier candidates."""
        nonlocal basis_rows
        if not cands:
            return []
        rows = basis_rows + [_integer_row(c) for c in cands]
        # pivot columns of the transpose pick the greedy independent subset in order
        _, pivots = integer_rref_pivots(fmpz_mat(rows).transpose())
        k = len(basis_rows)
        picked = [p - k for p in pivots if p >= k]
        basis_rows = basis_rows + [rows[k + i] for i in picked]
        return [cands[i] for i in picked]

    frontier = absorb([eye(d)] + gens)
    basis_mats.extend(frontier)
    while frontier:
        if len(basis_rows) > cap:
            raise RuntimeError("closure exceeded the dimension cap")
        cands = [b * g for b in frontier for g in gens]
        frontier = absorb(cands)
        basis_mats.extend(frontier)
    return len(basis_rows)


def kron(a: fmpq_mat, b: fmpq_mat) -> fmpq_mat:
    ar, br = a.tolist(), b.tolist()
    rows = []
    for i in range(a.nrows()):
        for k in range(b.nrows()):
            rows.append([ar[i][j] * br[k][l] for j in range(a.ncols()) for l in range(b.ncols())])
    return fmpq_mat(rows) if rows else fmpq_mat(0, a.ncols() * b.ncols())


def embed_operator(op: fmpq_mat, dims: Sequence[int], sites: Sequence[int]) -> fmpq_mat:
    """Act with ``op`` on the tensor factors ``sites`` (in that order) of
    ``V_1 ⊗ ... ⊗ V_k`` (dims given, first factor most significant)."""
    import numpy as np

    k = len(dims)
    sub = [dims[s] for s in sites]
    total = int(np.prod(dims))
    sub_total = int(np.prod(sub))
    if op.nrows() != sub_total or op.ncols() != sub_total:
        raise ValueError("operator size does not match the sites")
    idx = np.indices(dims).reshape(k, -1).T  # multi-indices in Kronecker order
    strides = [int(np.prod(dims[i + 1 :])) for i in range(k)]
    sub_strides = [int(np.prod(sub[i + 1 :])) for i in range(len(sub))]
    local = sum(idx[:, s] * st for s, st in zip(sites, sub_strides))
    rest_base = np.zeros(total, dtype=np.int64)
    for i in range(k):
        if i not in sites:
            rest_base += idx[:, i] * strides[i]
    # columns grouped by the "rest" part; op mixes the local part only
    local_to_offset = np.zeros(sub_total, dtype=np.int64)
    loc_idx = np.indices(sub).reshape(len(sub), -1).T
    for t in range(sub_total):
        local_to_offset[t] = sum(int(loc_idx[t, a]) * strides[sites[a]] for a in range(len(sites)))
    opl = op.tolist()
    out = fmpq_mat(total, total)
    for col in range(total):
        base = int(rest_base[col])
        lc = int(local[col])
        for lr in range(sub_total):
            v = opl[lr][lc]
            if v != 0:
                out[base + int(local_to_offset[lr]), col] = v
    return out


def as_rows(vs: Iterable[Iterable]) -> fmpq_mat:
    return fmpq_mat([[rational(x) for x in v] for v in vs])
