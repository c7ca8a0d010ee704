"""Yangian modules attached to skew diagrams.

Everything here happens at matrix level on ``U^{⊗n}``, ``U = Q^N``.  The
symmetric group acts by permuting tensor slots:

    π(g) e_{i_1} ⊗ ... ⊗ e_{i_n} = e_{j_1} ⊗ ... ⊗ e_{j_n},   j_{g(p)} = i_p,

with slot 1 the most significant digit of the flat index.

Transposition products such as the pair function G(u) preserve the
weight (multiset of indices), so they are applied block by block on weight
spaces with integer arithmetic.  To read off a Laurent expansion at a point
``z0 = a/b`` we put ``u = z0 + x`` and scale each factor by ``b``:

    1 - P/(u + e) = (b x + g - b P) / (b x + g),   g = a + b e.

The numerator product is a polynomial in x with integer-matrix
coefficients, truncated at the degree we need; the denominator is
``x^m · D0(x)`` where m counts the factors with g = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb, gcd, lcm
from typing import Iterable, Sequence

import numpy as np
from flint import fmpq, fmpq_mat, fmpq_poly, fmpz_mat

from .diagrams import EPSILON, ShapeError, SkewShape, column, ssyt_count
from .fusion import fusion_element, unitarity_scalar
from .guards import check_guard
from .linalg import (
    MatrixRF,
    embed_operator,
    eye,
    algebra_closure_dimension,
    is_scalar_multiple_of_identity,
    integer_image_basis,
    proportionality,
)
from .scalars import RationalFunction, is_integer, rational, series_coefficients_at_infinity
from .symgroup import GroupRingElement, Permutation, inverse, transposition

_I64_LIMIT = 2**62

Part = tuple[SkewShape, fmpq]


# tensor index bookkeeping


@lru_cache(maxsize=None)
def _digits(N: int, n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((N,) * n, dtype=np.int64).reshape(n, -1).T.copy()


@lru_cache(maxsize=None)
def _strides(N: int, n: int) -> np.ndarray:
    return np.array([N ** (n - 1 - k) for k in range(n)], dtype=np.int64)


@dataclass(frozen=True)
class _WeightBlocks:
    weights: tuple[tuple[int, ...], ...]
    indices: tuple[np.ndarray, ...]  # ambient indices per block, ascending
    pos: np.ndarray  # position of each ambient index inside its block
    block_of: dict  # weight -> block number


@lru_cache(maxsize=None)
def _weight_blocks(N: int, n: int) -> _WeightBlocks:
    d = _digits(N, n)
    counts = np.stack([(d == a).sum(axis=1) for a in range(N)], axis=1)
    uniq, inv = np.unique(counts, axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    order = sorted(range(len(uniq)), key=lambda k: tuple(uniq[k]), reverse=True)
    weights, indices = [], []
    pos = np.zeros(len(d), dtype=np.int64)
    for k in order:
        idx = np.nonzero(inv == k)[0]
        pos[idx] = np.arange(len(idx))
        weights.append(tuple(int(x) for x in uniq[k]))
        indices.append(idx)
    return _WeightBlocks(tuple(weights), tuple(indices), pos, {w: b for b, w in enumerate(weights)})


def perm_index_map(g: Permutation, N: int) -> np.ndarray:
    """``J`` with ``π(g) e_I = e_{J[I]}`` for every flat index I."""
    n = len(g)
    gi = inverse(g)
    return _digits(N, n)[:, [gi[k] - 1 for k in range(n)]] @ _strides(N, n)


@lru_cache(maxsize=None)
def _swap_map(N: int, n: int, p: int, q: int) -> np.ndarray:
    return perm_index_map(transposition(p, q, n), N)


def perm_action_matrix(g: Permutation, N: int) -> fmpq_mat:
    """The 0/1 matrix of π(g) on U^{⊗n}."""
    n = len(g)
    check_guard("ambient_dim", N**n, "U^{⊗n}")
    jm = perm_index_map(g, N)
    m = fmpq_mat(N**n, N**n)
    for i, j in enumerate(jm.tolist()):
        m[j, i] = 1
    return m


def group_ring_action_matrix(x: GroupRingElement, N: int) -> fmpq_mat:
    """π extended linearly to Q·S_n."""
    if x.field != "Q":
        raise TypeError("evaluate the coefficients first")
    n = x.n
    check_guard("ambient_dim", N**n, "U^{⊗n}")
    size = N**n
    rows = [[fmpq(0)] * size for _ in range(size)]
    for g, c in x.terms.items():
        for i, j in enumerate(perm_index_map(g, N).tolist()):
            rows[j][i] += c
    return fmpq_mat(rows) if size else fmpq_mat(0, 0)


def flip_index_map(d1: int, d2: int) -> np.ndarray:
    """Index map of the flip V⊗V' -> V'⊗V on Kronecker-ordered bases."""
    i, j = np.divmod(np.arange(d1 * d2), d2)
    return j * d1 + i


def flip_matrix(d1: int, d2: int) -> fmpq_mat:
    m = fmpq_mat(d1 * d2, d1 * d2)
    for src, dst in enumerate(flip_index_map(d1, d2).tolist()):
        m[dst, src] = 1
    return m


# the subspace V_omega


class WeightBlock:
    """V_omega intersected with one weight space of U^{⊗n}.

    Basis vectors are stored as primitive integer columns; dividing column k
    by ``scales[k]`` gives the basis normalized to the identity on the
    pivot rows.
    """

    def __init__(self, weight, indices, int_basis, scales, pivots, offset):
        self.weight: tuple[int, ...] = weight
        self.indices: np.ndarray = indices  # ambient indices of the weight space
        self.int_basis: np.ndarray = int_basis
        self.scales: list[int] = scales
        self.pivots: list[int] = pivots  # pivot positions inside the block
        self.offset: int = offset  # global number of the first basis vector

    @property
    def dim(self) -> int:
        return len(self.pivots)

    @cached_property
    def basis(self) -> fmpq_mat:
        rows = self.int_basis.tolist()
        return fmpq_mat([[fmpq(int(x), s) for x, s in zip(r, self.scales)] for r in rows])


class ModuleSpace:
    """V_omega = Im π_n(F_omega) ⊂ U^{⊗n}, organised by weight."""

    def __init__(self, shape: SkewShape, N: int, blocks: list[WeightBlock]):
        self.shape = shape
        self.N = N
        self.n = shape.n
        self.ambient_dim = N**shape.n
        self.blocks = blocks
        self.dim = sum(b.dim for b in blocks)

    def __repr__(self):
        return f"ModuleSpace({self.shape}, N={self.N}, dim={self.dim})"

    @cached_property
    def pivot_indices(self) -> np.ndarray:
        """Ambient index of the pivot of every basis vector."""
        out = [int(b.indices[p]) for b in self.blocks for p in b.pivots]
        return np.array(out, dtype=np.int64)

    @cached_property
    def basis(self) -> list[list[fmpq]]:
        vecs = []
        for b in self.blocks:
            rows = b.basis.tolist()
            for k in range(b.dim):
                v = [fmpq(0)] * self.ambient_dim
                for pos, amb in enumerate(b.indices.tolist()):
                    v[amb] = rows[pos][k]
                vecs.append(v)
        return vecs

    def basis_matrix(self) -> fmpq_mat:
        m = fmpq_mat(self.ambient_dim, self.dim)
        for k, v in enumerate(self.basis):
            for i, x in enumerate(v):
                if x != 0:
                    m[i, k] = x
        return m

    def coordinates(self, v: Sequence) -> list[fmpq]:
        """Coordinates of a vector known to lie in V_omega (read at pivots)."""
        return [rational(v[int(i)]) for i in self.pivot_indices]


def _action_on_columns(cols: np.ndarray, ginv: np.ndarray, coeffs: np.ndarray, N: int, n: int) -> np.ndarray:
    """Integer matrix of π(x), x = sum c_g g, on a union of weight spaces.

    ``cols`` lists the ambient indices (a union of whole weight spaces, so
    the matrix is square in these coordinates); ``ginv`` holds g^{-1} - 1.
    """
    size = len(cols)
    dig = _digits(N, n)[cols]
    st = _strides(N, n)
    local = np.full(N**n, -1, dtype=np.int64)
    local[cols] = np.arange(size)
    exact_float = coeffs.dtype != object and int(np.abs(coeffs).sum()) < 2**52
    flat = np.zeros(size * size, dtype=np.float64 if exact_float else object)
    chunk = max(1, 4_000_000 // max(1, size * n))
    col_pos = np.arange(size, dtype=np.int64)
    for s in range(0, len(ginv), chunk):
        gi = ginv[s : s + chunk]
        target = np.zeros((size, len(gi)), dtype=np.int64)  # π(g) e_I = e_target
        for k in range(n):
            target += dig[:, gi[:, k]] * st[k]
        keys = (local[target] * size + col_pos[:, None]).ravel()
        vals = np.broadcast_to(coeffs[s : s + chunk], target.shape).ravel()
        if exact_float:
            flat += np.bincount(keys, weights=vals.astype(np.float64), minlength=size * size)
        else:
            np.add.at(flat, keys, vals)
    if exact_float:
        flat = np.rint(flat).astype(np.int64)
    return flat.reshape(size, size)


def _value_relabeling(w: tuple[int, ...]) -> np.ndarray:
    """phi with w[phi(a)] = sorted(w, reverse=True)[a]."""
    return np.array(sorted(range(len(w)), key=lambda a: -w[a]), dtype=np.int64)


@lru_cache(maxsize=8192)
def _fusion_integer_data(shape: SkewShape):
    """F_omega as (g^{-1} - 1 rows, integer coefficients) up to a positive scalar."""
    F = fusion_element(shape)
    perms = sorted(F.terms)
    den = 1
    for g in perms:
        den = lcm(den, int(F.terms[g].q))
    ints = [int(F.terms[g].p) * (den // int(F.terms[g].q)) for g in perms]
    dtype = np.int64 if max(abs(c) for c in ints) * len(ints) < _I64_LIMIT else object
    ginv = np.argsort(np.array(perms, dtype=np.int64), axis=1)
    return ginv, np.array(ints, dtype=dtype)


@lru_cache(maxsize=2048)
def _module_space_cached(shape: SkewShape, N: int) -> ModuleSpace:
    n = shape.n
    ginv, coeffs = _fusion_integer_data(shape)
    wb = _weight_blocks(N, n)
    st = _strides(N, n)

    # π(F) commutes with relabeling the values 1..N, so only dominant
    # weights are computed; other weight spaces are images under relabeling
    dominant = [b for b, w in enumerate(wb.weights) if list(w) == sorted(w, reverse=True)]
    cols = np.concatenate([wb.indices[b] for b in dominant])
    full = _action_on_columns(cols, ginv, coeffs, N, n)
    solved: dict[tuple[int, ...], tuple] = {}
    start = 0
    for b in dominant:
        m = len(wb.indices[b])
        mat = full[start : start + m, start : start + m]
        start += m
        if not mat.any():
            continue
        vecs, piv, scales = integer_image_basis(fmpz_mat(mat.tolist()))
        if piv:
            ib = np.array(vecs, dtype=object).T
            if max(abs(int(x)) for x in ib.flat) < _I64_LIMIT:
                ib = ib.astype(np.int64)
            solved[wb.weights[b]] = (wb.indices[b], ib, piv, scales)

    blocks: list[WeightBlock] = []
    offset = 0
    for w, idx in zip(wb.weights, wb.indices):
        dom = tuple(sorted(w, reverse=True))
        if dom not in solved:
            continue
        d_idx, ib, piv, scales = solved[dom]
        if dom != w:
            phi = _value_relabeling(w)
            new_pos = wb.pos[phi[_digits(N, n)[d_idx]] @ st]
            moved = np.empty_like(ib)
            moved[new_pos] = ib
            ib = moved
            piv = [int(new_pos[p]) for p in piv]
        blocks.append(WeightBlock(w, idx, ib, scales, piv, offset))
        offset += len(piv)
    space = ModuleSpace(shape, N, blocks)
    expected = ssyt_count(shape, N)
    if space.dim != expected:
        raise AssertionError(f"dim V_omega = {space.dim} but the tableau count is {expected} for {shape}, N={N}")
    return space


def module_space(shape: SkewShape, N: int) -> ModuleSpace:
    """The image of π_n(F_omega), with its dimension checked against SSYT."""
    if shape.is_empty:
        raise ShapeError("empty diagram")
    if N < 1:
        raise ValueError("N must be >= 1")
    check_guard("ambient_dim", N**shape.n, "U^{⊗n}")
    return _module_space_cached(shape, N)


def _nonzero_space(shape: SkewShape, N: int) -> ModuleSpace:
    v = module_space(shape, N)
    if v.dim == 0:
        raise ValueError(f"V_omega is zero for {shape} with N={N} (a column is longer than N)")
    return v


# pair spaces V ⊗ V' inside U^{⊗(n+n')}


@dataclass
class _PairBlock:
    weight: tuple[int, ...]
    amb_idx: np.ndarray  # ambient indices of the weight space of U^{⊗(n+n')}
    X: np.ndarray  # integer basis vectors (columns) of the pair space in this block
    pairs: np.ndarray  # global pair number i*d2 + j of every column
    piv_rows: np.ndarray  # row position of every pair's pivot
    scales: list[int]  # X[piv_rows[k], k]
    _sigma: dict = field(default_factory=dict)

    def sigma(self, N: int, n: int, p: int, q: int, pos: np.ndarray) -> np.ndarray:
        key = (p, q)
        s = self._sigma.get(key)
        if s is None:
            s = pos[_swap_map(N, n, p, q)[self.amb_idx]]
            self._sigma[key] = s
        return s


@dataclass
class _PairSpace:
    V1: ModuleSpace
    V2: ModuleSpace
    N: int
    n: int
    blocks: list[_PairBlock]

    @property
    def dim(self) -> int:
        return self.V1.dim * self.V2.dim


@lru_cache(maxsize=256)
def _pair_space(w: SkewShape, w2: SkewShape, N: int) -> _PairSpace:
    V1, V2 = _nonzero_space(w, N), _nonzero_space(w2, N)
    n1, n2 = w.n, w2.n
    n = n1 + n2
    A2 = N**n2
    wb = _weight_blocks(N, n)
    d2 = V2.dim
    groups: dict[tuple[int, ...], list] = {}
    for b1 in V1.blocks:
        for b2 in V2.blocks:
            W = tuple(x + y for x, y in zip(b1.weight, b2.weight))
            groups.setdefault(W, []).append((b1, b2))
    blocks = []
    for W in sorted(groups, reverse=True):
        amb = wb.indices[wb.block_of[W]]
        ncols = sum(b1.dim * b2.dim for b1, b2 in groups[W])
        X = np.zeros((len(amb), ncols), dtype=object)
        pairs, piv_rows, scales = [], [], []
        c0 = 0
        for b1, b2 in groups[W]:
            rows = wb.pos[(b1.indices[:, None] * A2 + b2.indices[None, :]).ravel()]
            K = np.kron(b1.int_basis.astype(object), b2.int_basis.astype(object))
            X[rows, c0 : c0 + K.shape[1]] = K
            for k1 in range(b1.dim):
                for k2 in range(b2.dim):
                    pairs.append((b1.offset + k1) * d2 + b2.offset + k2)
                    piv_rows.append(int(wb.pos[int(b1.indices[b1.pivots[k1]]) * A2 + int(b2.indices[b2.pivots[k2]])]))
                    scales.append(b1.scales[k1] * b2.scales[k2])
            c0 += K.shape[1]
        if X.size and max(abs(int(v)) for v in X.flat) < _I64_LIMIT:
            X = X.astype(np.int64)
        blocks.append(_PairBlock(W, amb, X, np.array(pairs), np.array(piv_rows), scales))
    return _PairSpace(V1, V2, N, n, blocks)


def _g_factors(w: SkewShape, w2: SkewShape) -> list[tuple[int, int, int]]:
    """Factors (p, q, e) of G(u) = prod (1 - (p q)/(u + e)) in product order."""
    c, c2 = w.contents, w2.contents
    n = len(c)
    return [(p, n + q, c[p - 1] - c2[q - 1]) for p in range(n, 0, -1) for q in range(1, len(c2) + 1)]


@dataclass
class _Series:
    """Truncated numerator series of G(z0 + x) restricted to V ⊗ V'.

    ``coeffs[b][j]`` is the integer matrix N_j on pair block b: the image
    of column k has coordinates ``coeffs[b][j][:, k] / scales[k]``.  The
    full function is ``sum_j N_j x^j / (x^m · D0(x))`` with
    ``D0(0) = den0``.
    """

    space: _PairSpace
    z0: fmpq
    m: int
    den0: int
    K: int
    coeffs: list[list[np.ndarray]]
    full: list[np.ndarray] | None = None  # untruncated ambient arrays, kept for span checks


def _apply_series(pb: _PairBlock, ps: _PairSpace, factors, a: int, b: int, K: int, keep: bool):
    pos = _weight_blocks(ps.N, ps.n).pos
    bound = max((abs(int(v)) for v in pb.X.flat), default=0)
    for _, _, e in factors:
        bound *= 2 * abs(b) + abs(a + b * e)
    dtype = np.int64 if bound < _I64_LIMIT else object
    A = [pb.X.astype(dtype)]
    for step, (p, q, e) in enumerate(reversed(factors)):
        g = a + b * e
        sig = pb.sigma(ps.N, ps.n, p, q, pos)
        top = min(K, step + 1)
        new = []
        for j in range(top + 1):
            if j < len(A):
                t = g * A[j] - b * A[j][sig]
            else:
                t = np.zeros_like(A[0])
            if j >= 1:
                t = t + b * A[j - 1]
            new.append(t)
        A = new
    while len(A) < K + 1:
        A.append(np.zeros_like(A[0]))
    restricted = [x[pb.piv_rows] for x in A]
    return restricted, (A if keep else None)


def _series(ps: _PairSpace, factors, z0: fmpq, K: int, keep: bool = False) -> _Series:
    a, b = int(z0.p), int(z0.q)
    gs = [a + b * e for _, _, e in factors]
    m = sum(1 for g in gs if g == 0)
    den0 = b**m
    for g in gs:
        if g:
            den0 *= g
    coeffs, full = [], []
    for pb in ps.blocks:
        r, f = _apply_series(pb, ps, factors, a, b, K, keep)
        coeffs.append(r)
        full.append(f)
    return _Series(ps, z0, m, den0, K, coeffs, full if keep else None)


def _check_span(s: _Series) -> None:
    """Each computed coefficient must be a combination of the pair basis."""
    for pb, full, rest in zip(s.space.blocks, s.full, s.coeffs):
        L = 1
        for sc in pb.scales:
            L = lcm(L, abs(sc))
        mult = np.array([L // sc for sc in pb.scales], dtype=object)
        X = pb.X.astype(object)
        for Aj, Yj in zip(full, rest):
            lhs = Aj.astype(object) * L
            rhs = X @ (Yj.astype(object) * mult[:, None])
            if not np.array_equal(lhs, rhs):
                raise AssertionError("image left V ⊗ V' (not in span)")


def _first_nonzero(s: _Series) -> int | None:
    for j in range(s.K + 1):
        if any(c[j].any() for c in s.coeffs):
            return j
    return None


# block-diagonal exact operators on V ⊗ V'


@dataclass
class BlockOperator:
    """Block-diagonal operator on V ⊗ V' stored as integer numerators.

    Entry (r, k) of block b equals ``numer[b][r, k] / col_den[b][k]``.
    """

    dim: int
    pairs: list[np.ndarray]
    numer: list[np.ndarray]
    col_den: list[list[int]]

    def to_dense(self) -> fmpq_mat:
        check_guard("ambient_dim", self.dim, "dense operator on V ⊗ V'")
        m = fmpq_mat(self.dim, self.dim)
        for pr, nm, cd in zip(self.pairs, self.numer, self.col_den):
            pl = pr.tolist()
            rows = nm.tolist()
            for r, gr in enumerate(pl):
                for k, gk in enumerate(pl):
                    v = rows[r][k]
                    if v:
                        m[gr, gk] = fmpq(int(v), int(cd[k]))
        return m

    def is_invertible(self) -> bool:
        if sum(len(p) for p in self.pairs) != self.dim:
            return False
        for nm in self.numer:
            if fmpz_mat([[int(x) for x in r] for r in nm.tolist()]).rank() < nm.shape[0]:
                return False
        return True

    def equals_scaled_permutation(self, perm: np.ndarray, c: fmpq) -> bool:
        """Is this operator c times the permutation matrix e_k -> e_{perm[k]}?"""
        c = rational(c)
        cp, cq = int(c.p), int(c.q)
        for pr, nm, cd in zip(self.pairs, self.numer, self.col_den):
            where = {int(g): r for r, g in enumerate(pr.tolist())}
            expected = np.zeros(nm.shape, dtype=object)
            for k, g in enumerate(pr.tolist()):
                r = where.get(int(perm[g]))
                if r is None:
                    if cp:
                        return False
                    continue
                expected[r, k] = cp * int(cd[k])
            if not np.array_equal(nm.astype(object) * cq, expected):
                return False
        return True


def _operator_from(s: _Series, j: int) -> BlockOperator:
    pairs, numer, col_den = [], [], []
    for pb, c in zip(s.space.blocks, s.coeffs):
        pairs.append(pb.pairs)
        numer.append(c[j])
        col_den.append([sc * s.den0 for sc in pb.scales])
    return BlockOperator(s.space.dim, pairs, numer, col_den)


# R-matrices


def _pair_guard(w: SkewShape, w2: SkewShape, N: int) -> None:
    if w.is_empty or w2.is_empty:
        raise ShapeError("empty diagram")
    check_guard("ambient_dim", N ** (w.n + w2.n), "U^{⊗(n+n')}")


def r_matrix(w: SkewShape, w2: SkewShape, N: int, check: bool = True) -> MatrixRF:
    """R_{w w2}(u): π(G_{w w2}(u)) restricted to V_w ⊗ V_w2, symbolic in u."""
    _pair_guard(w, w2, N)
    ps = _pair_space(w, w2, N)
    factors = _g_factors(w, w2)
    s = _series(ps, factors, fmpq(0), len(factors), keep=check)
    if check:
        _check_span(s)
    den = fmpq_poly([1])
    for _, _, e in factors:
        den *= fmpq_poly([e, 1])
    d = ps.dim
    zero = RationalFunction.constant(0)
    entries = [[zero] * d for _ in range(d)]
    for pb, cs in zip(ps.blocks, s.coeffs):
        pl = pb.pairs.tolist()
        lists = [c.tolist() for c in cs]
        for k, gk in enumerate(pl):
            dk = den * pb.scales[k]
            for r, gr in enumerate(pl):
                num = fmpq_poly([int(lst[r][k]) for lst in lists])
                if not num.is_zero():
                    entries[gr][gk] = RationalFunction(num, dk)
    return MatrixRF(entries)


def _pair_value(w: SkewShape, w2: SkewShape, N: int, u) -> BlockOperator:
    u = rational(u)
    _pair_guard(w, w2, N)
    ps = _pair_space(w, w2, N)
    factors = _g_factors(w, w2)
    a, b = int(u.p), int(u.q)
    m = sum(1 for _, _, e in factors if a + b * e == 0)
    s = _series(ps, factors, u, m)
    j0 = _first_nonzero(s)
    if j0 is not None and j0 < m:
        raise ZeroDivisionError(f"R-matrix has a pole at u={u}")
    return _operator_from(s, m)


def r_matrix_at(w: SkewShape, w2: SkewShape, N: int, u) -> fmpq_mat:
    """R_{w w2}(u) at a rational point (ZeroDivisionError at a pole)."""
    return _pair_value(w, w2, N, u).to_dense()


@dataclass
class IntertwinerData:
    """Leading term (u - z)^(-a) I of R_{w w2}(u) at u = z."""

    w: SkewShape
    w2: SkewShape
    N: int
    z: fmpq
    a: int
    operator: BlockOperator

    @cached_property
    def invertible(self) -> bool:
        return self.operator.is_invertible()

    @property
    def I(self) -> fmpq_mat:
        return self.operator.to_dense()

    @property
    def dim(self) -> int:
        return self.operator.dim


def intertwiner_leading(w: SkewShape, w2: SkewShape, N: int, z) -> IntertwinerData:
    z = rational(z)
    _pair_guard(w, w2, N)
    ps = _pair_space(w, w2, N)
    factors = _g_factors(w, w2)
    a, b = int(z.p), int(z.q)
    m = sum(1 for _, _, e in factors if a + b * e == 0)
    K = m
    while True:
        s = _series(ps, factors, z, K)
        j0 = _first_nonzero(s)
        if j0 is not None:
            break
        if K >= len(factors):
            raise AssertionError("R-matrix vanishes identically")
        K = min(len(factors), 2 * K + 1)
    order = m - j0
    if not is_integer(z) and order != 0:
        raise AssertionError("nonzero pole order at a non-integer point")
    return IntertwinerData(w, w2, N, z, order, _operator_from(s, j0))


# Yangian generators


def _aux_block(m: fmpq_mat, dim: int, N: int, row_aux: int, col_aux: int) -> fmpq_mat:
    rows = m.tolist()
    return fmpq_mat([[rows[k * N + row_aux][l * N + col_aux] for l in range(dim)] for k in range(dim)])


def generators_from_series(series: Sequence[fmpq_mat], dim: int, N: int) -> dict[tuple[int, int, int], fmpq_mat]:
    """T^(s)_ij from the u^{-s} coefficients of T(u) on W ⊗ U (aux last).

    T(u) = sum_ij T_ij(u) ⊗ E_ji, so T_ij is the block in aux row j, column i.
    """
    out = {}
    for s in range(1, len(series)):
        for i in range(1, N + 1):
            for j in range(1, N + 1):
                out[(s, i, j)] = _aux_block(series[s], dim, N, j - 1, i - 1)
    return out


@lru_cache(maxsize=512)
def _elementary_series_cached(shape: SkewShape, N: int, z: fmpq, s_max: int) -> tuple[fmpq_mat, ...]:
    rm = r_matrix(shape, EPSILON, N).substitute_linear(-1, z)  # R(z - u)
    d = rm.rows
    per_entry = [[series_coefficients_at_infinity(x, s_max) for x in row] for row in rm.entries]
    series = tuple(fmpq_mat([[per_entry[r][c][s] for c in range(d)] for r in range(d)]) for s in range(s_max + 1))
    if series[0] != eye(d):
        raise AssertionError("T(u) does not tend to the identity at u = ∞")
    return series


def elementary_series(shape: SkewShape, N: int, z, s_max: int) -> tuple[fmpq_mat, ...]:
    """Coefficients of u^0..u^{-s_max} of R_{w ε}(z - u) on V_w ⊗ U."""
    return _elementary_series_cached(shape, N, rational(z), int(s_max))


@dataclass
class ElementaryModule:
    space: ModuleSpace
    z: fmpq
    s_max: int
    series: tuple[fmpq_mat, ...]

    @cached_property
    def generator_matrices(self) -> dict[tuple[int, int, int], fmpq_mat]:
        return generators_from_series(self.series, self.space.dim, self.space.N)

    def generator(self, s: int, i: int, j: int) -> fmpq_mat:
        return self.generator_matrices[(s, i, j)]


def elementary_generators(shape: SkewShape, N: int, z, s_max: int, translate: tuple[int, int] = (0, 0)) -> ElementaryModule:
    """Generators of V_w(z).

    Shapes are stored up to translation.  ``translate=(k, l)`` stands for
    the diagram moved down k rows and right l columns; its contents shift
    by l - k, so its module is V_w(z - k + l).
    """
    space = _nonzero_space(shape, N)
    k, l = translate
    z = rational(z) - k + l
    return ElementaryModule(space, z, s_max, elementary_series(shape, N, z, s_max))


def _series_mul(x: Sequence[fmpq_mat], y: Sequence[fmpq_mat], s_max: int) -> list[fmpq_mat]:
    out = []
    for s in range(s_max + 1):
        acc = x[0] * y[s]
        for t in range(1, s + 1):
            acc = acc + x[t] * y[s - t]
        out.append(acc)
    return out


@dataclass
class TensorModule:
    parts: tuple[Part, ...]
    N: int
    dims: tuple[int, ...]
    series: list[fmpq_mat]
    generators: dict[tuple[int, int, int], fmpq_mat]

    @property
    def dim(self) -> int:
        return int(np.prod(self.dims))


def _parse_parts(parts: Iterable) -> tuple[Part, ...]:
    return tuple((w, rational(z)) for w, z in parts)


def tensor_module_generators(parts: Iterable, N: int, s_max: int, opposite: bool = False) -> TensorModule:
    """Generators T^(s)_ij on V_{w_1}(z_1) ⊗ ... ⊗ V_{w_k}(z_k).

    T(u) = T^[k](u) ... T^[1](u); ``opposite`` reverses the product.
    """
    parts = _parse_parts(parts)
    if not parts:
        raise ValueError("need at least one module")
    spaces = [_nonzero_space(w, N) for w, _ in parts]
    dims = tuple(v.dim for v in spaces)
    k = len(parts)
    total = int(np.prod(dims)) * N
    check_guard("ambient_dim", total, "W ⊗ U")
    full_dims = list(dims) + [N]
    factor_series = []
    for m, (w, z) in enumerate(parts):
        ser = elementary_series(w, N, z, s_max)
        factor_series.append([embed_operator(c, full_dims, [m, k]) for c in ser])
    order = range(k) if opposite else range(k - 1, -1, -1)
    acc = [eye(total)] + [fmpq_mat(total, total) for _ in range(s_max)]
    for m in order:
        acc = _series_mul(acc, factor_series[m], s_max)
    dim_w = total // N
    return TensorModule(parts, N, dims, acc, generators_from_series(acc, dim_w, N))


# irreducibility


@dataclass
class PairEvidence:
    i: int
    j: int
    z_difference: fmpq
    a: int
    invertible: bool
    data: IntertwinerData | None


@dataclass
class IrreducibilityReport:
    verdict: str
    failing_pairs: list[tuple[int, int, int, bool]]
    pairs: list[PairEvidence]

    @property
    def irreducible(self) -> bool:
        return self.verdict == "irreducible"


def irreducibility_criterion(parts: Iterable, N: int) -> IrreducibilityReport:
    """Tensor product irreducible iff every I_{w_i w_j}(z_i - z_j), i < j, is invertible."""
    parts = _parse_parts(parts)
    for w, _ in parts:
        _nonzero_space(w, N)
    evidence, failing = [], []
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            (wi, zi), (wj, zj) = parts[i], parts[j]
            diff = zi - zj
            data = intertwiner_leading(wi, wj, N, diff)
            inv = data.invertible
            evidence.append(PairEvidence(i + 1, j + 1, diff, data.a, inv, data))
            if not inv:
                failing.append((i + 1, j + 1, data.a, inv))
    return IrreducibilityReport("reducible" if failing else "irreducible", failing, evidence)


def burnside_closure_dimensions(parts: Iterable, N: int, s_cap: int = 10) -> list[int]:
    """Closure dimension of the algebra generated by T^(s)_ij, s <= 1, 2, ..."""
    parts = _parse_parts(parts)
    dims = [_nonzero_space(w, N).dim for w, _ in parts]
    d = int(np.prod(dims))
    check_guard("burnside_dim", d, "dim W for the Burnside oracle")
    tm = tensor_module_generators(parts, N, s_cap)
    out = []
    for s in range(1, s_cap + 1):
        gens = [g for (t, _, _), g in tm.generators.items() if t <= s]
        out.append(algebra_closure_dimension(gens, d * d))
        if out[-1] == d * d or (len(out) >= 3 and out[-1] == out[-2] == out[-3]):
            return out
    raise RuntimeError("oracle inconclusive: closure dimension still growing at the s cap")


def burnside_irreducible(parts: Iterable, N: int, s_max: int = 10) -> bool:
    """Brute-force irreducibility: do the generators span End(W)?"""
    parts = _parse_parts(parts)
    d = int(np.prod([_nonzero_space(w, N).dim for w, _ in parts]))
    return burnside_closure_dimensions(parts, N, s_max)[-1] == d * d


# identity checks


def sample_rationals(count: int, rng: random.Random, avoid: Sequence[fmpq] = ()) -> list[fmpq]:
    """Non-integer rationals with small denominators, no integer differences among them or with ``avoid``."""
    out: list[fmpq] = []
    while len(out) < count:
        q = rng.choice((2, 3, 5, 7))
        p = rng.randint(-20, 20)
        if p % q == 0:
            continue
        x = fmpq(p, q)
        if any(is_integer(x - y) for y in list(avoid) + out):
            continue
        out.append(x)
    return out


def _flip_conjugate(m: fmpq_mat, d1: int, d2: int) -> fmpq_mat:
    """Turn an operator on V'⊗V into the same operator on V⊗V'."""
    s = flip_matrix(d2, d1)  # V'⊗V -> V⊗V'
    return s * m * s.transpose()


def _scalar_identity(m: fmpq_mat, c: fmpq) -> bool:
    ok, val = is_scalar_multiple_of_identity(m)
    return ok and val == c


def check_unitarity(w, w2, N, points) -> bool:
    d1, d2 = _nonzero_space(w, N).dim, _nonzero_space(w2, N).dim
    scal = unitarity_scalar(w, w2)
    for u in points:
        lhs = r_matrix_at(w, w2, N, u) * _flip_conjugate(r_matrix_at(w2, w, N, -u), d1, d2)
        if not _scalar_identity(lhs, scal(u)):
            return False
    return True


def check_ybe(w, w2, w3, N, pairs) -> bool:
    dims = [_nonzero_space(x, N).dim for x in (w, w2, w3)]
    for u, v in pairs:
        r12 = embed_operator(r_matrix_at(w, w2, N, u - v), dims, [0, 1])
        r13 = embed_operator(r_matrix_at(w, w3, N, u), dims, [0, 2])
        r23 = embed_operator(r_matrix_at(w2, w3, N, v), dims, [1, 2])
        if r12 * r13 * r23 != r23 * r13 * r12:
            return False
    return True


def _yang_r(N: int, x: fmpq) -> fmpq_mat:
    """R(x) = x - P on U ⊗ U."""
    return eye(N * N) * x - flip_matrix(N, N)


def check_rtt(w, N, z, pairs) -> bool:
    """R^(23)(u-v) T^(2)(v) T^(1)(u) = T^(1)(u) T^(2)(v) R^(23)(u-v) on V ⊗ U ⊗ U."""
    d = _nonzero_space(w, N).dim
    dims = [d, N, N]
    for u, v in pairs:
        t1 = embed_operator(r_matrix_at(w, EPSILON, N, z - u), dims, [0, 1])
        t2 = embed_operator(r_matrix_at(w, EPSILON, N, z - v), dims, [0, 2])
        r = embed_operator(_yang_r(N, u - v), dims, [1, 2])
        if r * t2 * t1 != t1 * t2 * r:
            return False
    return True


def check_single_box_factorization(w, N, z, points) -> bool:
    """R_{w ε}(z-u) is the restriction to V_w ⊗ U of the product
    of single-box evaluation operators R_{εε}^{(p, n+1)}(c_p + z - u), p = n..1."""
    space = _nonzero_space(w, N)
    n = w.n
    check_guard("ambient_dim", N ** (n + 1), "U^{⊗(n+1)}")
    size = N ** (n + 1)
    basis = []  # basis of V ⊗ U inside U^{⊗(n+1)}
    for v in space.basis:
        for a in range(N):
            vec = [fmpq(0)] * size
            for i, x in enumerate(v):
                if x != 0:
                    vec[i * N + a] = x
            basis.append(vec)
    bmat = fmpq_mat([list(r) for r in zip(*basis)])
    piv = [int(i) * N + a for i in space.pivot_indices for a in range(N)]
    perms = {p: perm_action_matrix(transposition(p, n + 1, n + 1), N) for p in range(1, n + 1)}
    c = w.contents
    for u in points:
        prod = eye(size)
        for p in range(n, 0, -1):
            x = c[p - 1] + z - u
            prod = prod * (eye(size) - perms[p] * (1 / x))
        image = prod * bmat
        coords = fmpq_mat([[image[r, k] for k in range(len(basis))] for r in piv])
        if bmat * coords != image:
            return False  # V ⊗ U not preserved
        if coords != r_matrix_at(w, EPSILON, N, z - u):
            return False
    return True


def check_scalar_product(w, w2, N, zs) -> bool:
    """I_{w w2}(z) I^(21)_{w2 w}(-z) is a (possibly zero) multiple of the identity."""
    d1, d2 = _nonzero_space(w, N).dim, _nonzero_space(w2, N).dim
    for z in zs:
        m = intertwiner_leading(w, w2, N, z).I * _flip_conjugate(intertwiner_leading(w2, w, N, -z).I, d1, d2)
        if not is_scalar_multiple_of_identity(m)[0]:
            return False
    return True


def check_intertwining(w, w2, N, z_pairs, s_max: int = 3) -> bool:
    """I_{w w2}(z - z') maps the opposite-coproduct module to V_w(z) ⊗ V_w2(z')."""
    for z, z2 in z_pairs:
        I = intertwiner_leading(w, w2, N, z - z2).I
        direct = tensor_module_generators([(w, z), (w2, z2)], N, s_max)
        opp = tensor_module_generators([(w, z), (w2, z2)], N, s_max, opposite=True)
        for key, g in direct.generators.items():
            if I * opp.generators[key] != g * I:
                return False
    return True


def flip_on_tensor_square(dims: Sequence[int]) -> fmpq_mat:
    """P_W on W ⊗ W for W = V_1 ⊗ ... ⊗ V_k."""
    d = int(np.prod(dims))
    return flip_matrix(d, d)


def _integer_matrix(m: fmpq_mat) -> tuple[np.ndarray, int]:
    """(M, q) with m = M / q, M an integer array."""
    rows = m.tolist()
    q = 1
    for r in rows:
        for x in r:
            q = lcm(q, int(x.q))
    M = np.array([[int(x * q) for x in r] for r in rows], dtype=object)
    if M.size and int(np.abs(M).max()) < _I64_LIMIT:
        M = M.astype(np.int64)
    return M, q


def _apply_on_sites(A: np.ndarray, M: np.ndarray, sites: Sequence[int]) -> np.ndarray:
    """Contract M with the tensor axes ``sites`` of A (last axis is a column index)."""
    k = A.ndim
    front = list(sites) + [a for a in range(k) if a not in sites]
    At = np.transpose(A, front)
    sub = At.shape[: len(sites)]
    flat = At.reshape(int(np.prod(sub)), -1)
    if A.dtype != object and M.dtype != object:
        bound = int(np.abs(flat).max(initial=0)) * int(np.abs(M).max(initial=0)) * M.shape[1]
        if bound >= _I64_LIMIT:
            flat, M = flat.astype(object), M.astype(object)
    elif A.dtype == object or M.dtype == object:
        flat, M = flat.astype(object), M.astype(object)
    out = (M @ flat).reshape(At.shape)
    return np.transpose(out, np.argsort(front))


def _square_leading_tensor(parts, N: int) -> tuple[np.ndarray, int, int] | None:
    """(A, q, D): the leading coefficient on W ⊗ W is A / q, an array of shape (D^2, D^2)."""
    parts = _parse_parts(parts)
    k = len(parts)
    dims = [_nonzero_space(w, N).dim for w, _ in parts]
    D = int(np.prod(dims))
    check_guard("ambient_dim", D * D, "W ⊗ W")
    full = dims + dims
    factors = []
    sign = 1
    for j in range(k):
        for i in range(k - 1, -1, -1):
            (wi, zi), (wj, zj) = parts[i], parts[j]
            data = intertwiner_leading(wi, wj, N, zi - zj)
            if not data.invertible:
                return None
            # R(z - u) ~ (-u)^(-a) I
            if data.a % 2:
                sign = -sign
            factors.append((_integer_matrix(data.I), (i, j + k)))
    A = np.eye(D * D, dtype=np.int64).reshape(full + [D * D]) * sign
    q = 1
    for (M, qm), sites in reversed(factors):
        A = _apply_on_sites(A, M, sites)
        q *= qm
        g = int(np.gcd.reduce(np.abs(A).ravel())) if A.dtype != object else 0
        if g > 1:
            g = gcd(g, q)
            A, q = A // g, q // g
    return A.reshape(D * D, D * D), q, D


def leading_coefficient_on_square(parts: Iterable, N: int) -> fmpq_mat | None:
    """Leading coefficient at u = 0 of prod_{j asc} prod_{i desc} R^{(i, j+k)}(z_i - z_j - u).

    Returns None unless every factor's intertwiner is invertible (then the
    product of leading terms is the leading term of the product).
    """
    out = _square_leading_tensor(parts, N)
    if out is None:
        return None
    A, q, _ = out
    return fmpq_mat([[fmpq(int(x), q) for x in r] for r in A.tolist()])


def check_flip_proportionality(parts_list, N) -> tuple[bool, int]:
    """Leading coefficient on W ⊗ W is a nonzero multiple of the flip whenever it is defined."""
    checked = 0
    for parts in parts_list:
        out = _square_leading_tensor(parts, N)
        if out is None:
            continue
        A, _, D = out
        cols = np.arange(D * D)
        rows = flip_index_map(D, D)
        diag = A[rows, cols]
        c = diag[0]
        if c == 0 or np.count_nonzero(A) != D * D or not np.all(diag == c):
            return False, checked
        checked += 1
    return True, checked


def identity_report(w, w2, w3, N: int, samples: int = 5, seed: int = 0) -> dict[str, bool]:
    """Run every identity check; keys name the identity, values are verdicts."""
    rng = random.Random(seed)
    pts = sample_rationals(samples, rng)
    pairs = []
    while len(pairs) < samples:
        u, v = sample_rationals(2, rng)
        pairs.append((u, v))
    zs = sample_rationals(max(samples, 5), rng)  # one per integer difference at least
    ints = [fmpq(x) for x in (-2, -1, 0, 1, 2)]
    shapes = (w, w2, w3)

    def safe_pairs(shape, z):
        out = []
        while len(out) < samples:
            u, v = sample_rationals(2, rng, avoid=[z])
            out.append((u, v))
        return out

    rep: dict[str, bool] = {}
    rep["unitarity"] = all(check_unitarity(a, b, N, pts) for a, b in ((w, w2), (w2, w3), (w, w3)))
    rep["yang_baxter"] = check_ybe(w, w2, w3, N, pairs)
    rep["rtt"] = all(check_rtt(s, N, z, safe_pairs(s, z)) for s, z in zip(shapes, (ints[2], zs[0], ints[3])))
    rep["single_box_factorization"] = all(
        check_single_box_factorization(s, N, z, sample_rationals(samples, rng, avoid=[z]))
        for s, z in zip(shapes, (ints[2], zs[1], ints[1]))
    )
    rep["scalar_product"] = check_scalar_product(w, w2, N, ints + zs[:samples])
    zp = [(zs[k], zs[k] - d) for k, d in enumerate(ints)] + [(zs[k], zs[(k + 1) % len(zs)]) for k in range(samples)]
    rep["intertwining"] = check_intertwining(w, w2, N, zp[: max(samples, 5) + len(ints)])
    parts_list = [[(w, zs[0]), (w2, zs[0] - d)] for d in ints] + [[(w, zs[k]), (w2, pts[k])] for k in range(samples)]
    ok, checked = check_flip_proportionality(parts_list, N)
    rep["flip_proportionality"] = ok and checked >= 1
    return rep


def verify_identities(w, w2, w3, N: int, samples: int = 5, seed: int = 0) -> bool:
    return all(identity_report(w, w2, w3, N, samples, seed).values())


__all__ = [
    "BlockOperator",
    "ElementaryModule",
    "IntertwinerData",
    "IrreducibilityReport",
    "ModuleSpace",
    "TensorModule",
    "burnside_closure_dimensions",
    "burnside_irreducible",
    "elementary_generators",
    "flip_index_map",
    "flip_matrix",
    "group_ring_action_matrix",
    "identity_report",
    "intertwiner_leading",
    "irreducibility_criterion",
    "module_space",
    "perm_action_matrix",
    "r_matrix",
    "r_matrix_at",
    "tensor_module_generators",
    "verify_identities",
]
