"""The fusion element F_omega, the pair functions G and F, and h_omega.

``F_omega`` is the value at the origin of the ordered product of factors

    f_pq(c_p + z_p, c_q + z_q),   f_pq(u, v) = 1 - (p q)/(u - v),

over pairs p < q in lexicographic order, restricted to the subspace where
z_p = z_q for p, q in one column.  We restrict further to the line
``z_p = a_p t`` (``a`` constant on columns, distinct across columns), build
the product with polynomial coefficients in ``t`` over a common denominator,
and read off the value at ``t = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np
from flint import fmpq, fmpq_poly

from .diagrams import (
    EPSILON,
    SkewShape,
    ShapeError,
    conjugate,
    durfee_rank_definition,
    shape_from_boxes,
)
from .guards import check_guard
from .scalars import LaurentLeading, RationalFunction, laurent_leading_at, rational
from .symgroup import (
    FractionElement,
    GroupRingElement,
    all_permutations,
    Permutation,
    compose,
    embed_shifted,
    identity,
    transposition,
    transposition_factor,
)

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


@dataclass(frozen=True)
class FusionContext:
    shape: SkewShape
    contents: tuple[int, ...]
    column_of: tuple[int, ...]
    direction: tuple[int, ...]

    @classmethod
    def build(cls, shape: SkewShape, direction: str | Sequence[int] = "column") -> "FusionContext":
        if shape.is_empty:
            raise ShapeError("empty diagram")
        cols = shape.column_of
        if direction == "column":
            a = tuple(cols)
        elif direction == "prime":
            a = tuple(_PRIMES[j - 1] for j in cols)
        else:
            a = tuple(int(x) for x in direction)
            if len(a) != len(cols):
                raise ValueError("direction has the wrong length")
        by_col: dict[int, int] = {}
        for j, x in zip(cols, a):
            if by_col.setdefault(j, x) != x:
                raise ValueError("direction must be constant on columns")
        if len(set(by_col.values())) != len(by_col):
            raise ValueError("direction must separate distinct columns")
        return cls(shape, shape.contents, cols, a)


def _lex_pairs(n: int):
    for p in range(1, n + 1):
        for q in range(p + 1, n + 1):
            yield p, q


def fusion_fraction(ctx: FusionContext) -> FractionElement:
    """The ordered product along the line, as X(t)/D(t)."""
    c, a = ctx.contents, ctx.direction
    n = len(c)
    x = FractionElement.one(n)
    for p, q in _lex_pairs(n):
        den = fmpq_poly([c[p - 1] - c[q - 1], a[p - 1] - a[q - 1]])
        if den.is_zero():
            raise ArithmeticError(f"pair ({p},{q}) is singular along the chosen direction")
        x = x.right_mul_factor(p, q, den)
    return x


@lru_cache(maxsize=None)
def _perm_tables(n: int):
    """All of S_n, and for each transposition the index map h -> h∘(p q)."""
    perms = all_permutations(n)
    index = {g: k for k, g in enumerate(perms)}
    right = {}
    for p, q in _lex_pairs(n):
        tau = transposition(p, q, n)
        right[(p, q)] = np.array([index[tuple(g[x - 1] for x in tau)] for g in perms], dtype=np.int64)
    return perms, index, right


def fusion_value_truncated(ctx: FusionContext) -> GroupRingElement:
    """Value at t = 0 of the product along the line, by truncated expansion.

    Write the product as X(t)/D(t) with D(t) = t^m D0(t), m the number of
    pairs in one column.  Only the coefficients of t^0..t^m of X matter:
    the lower ones must vanish and X_m/D0(0) is the value.
    """
    c, a = ctx.contents, ctx.direction
    n = len(c)
    perms, index, right = _perm_tables(n)
    factors = []
    for p, q in _lex_pairs(n):
        cc, aa = c[p - 1] - c[q - 1], a[p - 1] - a[q - 1]
        if cc == 0 and aa == 0:
            raise ArithmeticError(f"pair ({p},{q}) is singular along the chosen direction")
        factors.append((p, q, cc, aa))
    m = sum(1 for f in factors if f[2] == 0)
    bound = 1
    for _, _, cc, aa in factors:
        bound *= abs(cc) + abs(aa) + 1
    dtype = np.int64 if bound < 2**62 else object
    X = np.zeros((len(perms), m + 1), dtype=dtype)
    X[index[identity(n)], 0] = 1
    d0 = 1
    for p, q, cc, aa in factors:
        swapped = X[right[(p, q)]]
        new = cc * X - swapped
        new[:, 1:] += aa * X[:, :-1]
        X = new
        d0 *= cc if cc else aa
    if X[:, :m].any():
        raise ArithmeticError("pole at 0")
    col = X[:, m]
    nz = np.nonzero(col)[0]
    return GroupRingElement._raw(n, {perms[k]: fmpq(int(col[k]), d0) for k in nz.tolist()}, "Q")


@lru_cache(maxsize=8192)
def _fusion_cached(shape: SkewShape, direction: tuple[int, ...] | str) -> GroupRingElement:
    ctx = FusionContext.build(shape, direction)
    try:
        return fusion_value_truncated(ctx)
    except ArithmeticError as e:  # would contradict regularity on the column subspace
        raise AssertionError(f"fusion limit for {shape} is singular: {e}") from None


def fusion_element(shape: SkewShape, direction: str | Sequence[int] = "column") -> GroupRingElement:
    """F_omega in Q·S_n."""
    if shape.is_empty:
        raise ShapeError("empty diagram")
    check_guard("fusion_n", shape.n, "fusion element")
    key = direction if isinstance(direction, str) else tuple(direction)
    return _fusion_cached(shape, key)


def fusion_product_at(shape: SkewShape, z: Sequence) -> GroupRingElement:
    """The ordered product evaluated at a point ``(z_1, ..., z_n)``."""
    if shape.is_empty:
        raise ShapeError("empty diagram")
    c = shape.contents
    n = len(c)
    if len(z) != n:
        raise ValueError(f"expected {n} values")
    zq = [rational(v) for v in z]
    x = GroupRingElement.one(n)
    for p, q in _lex_pairs(n):
        d = c[p - 1] - c[q - 1] + zq[p - 1] - zq[q - 1]
        if d == 0:
            raise ZeroDivisionError(f"singular pair ({p},{q}): vanishing denominator")
        x = x * transposition_factor(p, q, d, n)
    return x


# tableau combinatorics used by the divisibility statements


def number_of_box(shape: SkewShape) -> dict[tuple[int, int], int]:
    return {b: k for k, b in enumerate(shape.column_tableau, start=1)}


def same_column_adjacent(shape: SkewShape) -> list[int]:
    """All r such that r and r+1 stand in one column of the column tableau."""
    cols = shape.column_of
    return [r for r in range(1, len(cols)) if cols[r - 1] == cols[r]]


def row_adjacent_pairs(shape: SkewShape) -> list[tuple[int, int]]:
    """Pairs p < q standing next to each other in one row."""
    num = number_of_box(shape)
    return sorted((num[(i, j)], num[(i, j + 1)]) for (i, j) in num if (i, j + 1) in num)


def bottom_of_column(shape: SkewShape, p: int) -> int:
    cols = shape.column_of
    r = p
    while r < len(cols) and cols[r] == cols[p - 1]:
        r += 1
    return r


def remove_first(shape: SkewShape, l: int) -> SkewShape:
    """Shape left after removing 1..l from the column tableau."""
    return shape_from_boxes(shape.column_tableau[l:])


def keep_first(shape: SkewShape, m: int) -> SkewShape:
    """Shape left after removing m+1..n from the column tableau."""
    return shape_from_boxes(shape.column_tableau[:m])


def row_pair_product(shape: SkewShape, p: int, q: int) -> GroupRingElement:
    """prod_{s = r, ..., p} ( prod_{t = r+1, ..., q} f_st(c_s, c_t) ), leftmost s = r."""
    c = shape.contents
    n = len(c)
    r = bottom_of_column(shape, p)
    x = GroupRingElement.one(n)
    for s in range(r, p - 1, -1):
        for t in range(r + 1, q + 1):
            x = x * transposition_factor(s, t, c[s - 1] - c[t - 1], n)
    return x


# pair functions


def _check_pair(w: SkewShape, w2: SkewShape):
    if w.is_empty or w2.is_empty:
        raise ShapeError("empty diagram")
    check_guard("pair_n", w.n + w2.n, "pair function in S_{n+n'}")


def _pair_factors(w: SkewShape, w2: SkewShape, outer_desc: bool, inner_desc: bool):
    c, c2 = w.contents, w2.contents
    n, n2 = len(c), len(c2)
    ps = range(n, 0, -1) if outer_desc else range(1, n + 1)
    for p in ps:
        qs = range(n2, 0, -1) if inner_desc else range(1, n2 + 1)
        for q in qs:
            # f_{p,q+n}(c_p + u, c'_q) = 1 - (p, q+n)/(u + c_p - c'_q)
            yield p, q + n, fmpq_poly([c[p - 1] - c2[q - 1], 1])


def pair_function_G_fraction(w: SkewShape, w2: SkewShape) -> FractionElement:
    _check_pair(w, w2)
    x = FractionElement.one(w.n + w2.n)
    for p, q, den in _pair_factors(w, w2, outer_desc=True, inner_desc=False):
        x = x.right_mul_factor(p, q, den)
    return x


def pair_function_G(w: SkewShape, w2: SkewShape) -> GroupRingElement:
    """G_{w w2}(u) in S_{n+n'} with rational-function coefficients."""
    return pair_function_G_fraction(w, w2).to_group_ring()


def F_pair(w: SkewShape, w2: SkewShape, ordering: str = "left") -> FractionElement:
    """F_{w w2}(u) written in one of three equivalent orders.

    * ``"inner"``: F_w · (p ascending, q ascending) · F_w2^∨
    * ``"left"``:  (p descending, q ascending) · F_w F_w2^∨  = G · F_w F_w2^∨
    * ``"right"``: F_w F_w2^∨ · (p ascending, q descending)
    """
    _check_pair(w, w2)
    n, n2 = w.n, w2.n
    total = n + n2
    Fw = embed_shifted(fusion_element(w), 0, total)
    Fv = embed_shifted(fusion_element(w2), n, total)
    if ordering == "left":
        return pair_function_G_fraction(w, w2) * (Fw * Fv)
    if ordering == "inner":
        x = FractionElement.from_rational(Fw)
        for p, q, den in _pair_factors(w, w2, outer_desc=False, inner_desc=False):
            x = x.right_mul_factor(p, q, den)
        return x * Fv
    if ordering == "right":
        x = FractionElement.from_rational(Fw * Fv)
        for p, q, den in _pair_factors(w, w2, outer_desc=False, inner_desc=True):
            x = x.right_mul_factor(p, q, den)
        return x
    raise ValueError(f"unknown ordering {ordering!r}")


def swap_blocks(n: int, n2: int) -> Permutation:
    """The permutation (1..n2, n2+1..n2+n) -> (n+1..n+n2, 1..n)."""
    return tuple([n + i for i in range(1, n2 + 1)] + list(range(1, n + 1)))


def unitarity_scalar(w: SkewShape, w2: SkewShape) -> RationalFunction:
    """prod_{p,q} (1 - 1/(u + c_p - c'_q)^2)."""
    num, den = fmpq_poly([1]), fmpq_poly([1])
    for cp in w.contents:
        for cq in w2.contents:
            x = fmpq_poly([cp - cq, 1])
            num *= (x - 1) * (x + 1)
            den *= x * x
    return RationalFunction(num, den)


def G_unitarity_product(w: SkewShape, w2: SkewShape) -> FractionElement:
    """G_{w w2}(u) · G^∨_{w2 w}(-u)."""
    g1 = pair_function_G_fraction(w, w2)
    g2 = pair_function_G_fraction(w2, w).conjugate_by(swap_blocks(w.n, w2.n)).negate_variable()
    return g1 * g2


def check_G_unitarity(w: SkewShape, w2: SkewShape) -> bool:
    prod = G_unitarity_product(w, w2)
    one = identity(w.n + w2.n)
    if set(prod.nums) - {one}:
        return False
    return RationalFunction(prod.nums.get(one, fmpq_poly([])), prod.den) == unitarity_scalar(w, w2)


# h_omega and c(omega)


def h_function(shape: SkewShape) -> RationalFunction:
    """h(u) = (-1/u)^n prod_{p<q} (1 - 1/(u - c_p + c_q)^2)."""
    if shape.is_empty:
        raise ShapeError("empty diagram")
    c = shape.contents
    n = len(c)
    num = fmpq_poly([(-1) ** n])
    den = fmpq_poly([0, 1]) ** n
    for p in range(n):
        for q in range(p + 1, n):
            x = fmpq_poly([c[q] - c[p], 1])
            num *= (x - 1) * (x + 1)
            den *= x * x
    return RationalFunction(num, den)


def c_and_order(shape: SkewShape) -> tuple[int, fmpq]:
    """(pole order of h at 0, leading coefficient c(omega))."""
    lead = laurent_leading_at(h_function(shape), 0)
    order = -lead.order
    d = durfee_rank_definition(shape).rank
    if order != d:
        raise AssertionError(f"pole order {order} of h differs from Durfee rank {d} for {shape}")
    return order, lead.coefficient


def h_partition_product_raw(lam: Sequence[int], mu: Sequence[int]) -> RationalFunction:
    k = len(lam)
    mu = [mu[i] if i < len(mu) else 0 for i in range(k)]
    u = lambda s: fmpq_poly([s, 1])  # noqa: E731  u + s
    num, den = fmpq_poly([1]), fmpq_poly([1])
    for i in range(k):
        num *= u(-lam[i] + mu[i])
        den *= u(0)
    for i in range(k):
        for j in range(i + 1, k):
            d = j - i
            num *= u(lam[i] - mu[j] + d) * u(mu[i] - lam[j] + d)
            den *= u(lam[i] - lam[j] + d) * u(mu[i] - mu[j] + d)
    return RationalFunction(num, den)


def h_partition_product(shape: SkewShape) -> RationalFunction:
    """prod_i (u - lam_i + mu_i)/u times the double product over i < j.

    Rows beyond the length of lambda contribute factors equal to 1.
    """
    if shape.is_empty:
        raise ShapeError("empty diagram")
    return h_partition_product_raw(shape.lam, shape.mu)


def h_conjugate_relation(shape: SkewShape) -> tuple[LaurentLeading, LaurentLeading]:
    """Leading terms at 0 of h_{w*}(u) and of (-1)^n h_w(-u)."""
    n = shape.n
    a = laurent_leading_at(h_function(conjugate(shape)), 0)
    b = laurent_leading_at(h_function(shape).substitute_linear(-1, 0) * ((-1) ** n), 0)
    return a, b


# leading term of F_{ww}(u) at the origin


def shuffle_permutation(n: int) -> Permutation:
    """(1, n+1)(2, n+2)...(n, 2n)."""
    return tuple(list(range(n + 1, 2 * n + 1)) + list(range(1, n + 1)))


@dataclass(frozen=True)
class LeadingTermReport:
    order: int
    leading: GroupRingElement
    expected: GroupRingElement
    durfee: int
    c: fmpq

    @property
    def ok(self) -> bool:
        return self.order == -self.durfee and self.leading == self.expected


def theorem_3_5_data(shape: SkewShape) -> LeadingTermReport:
    n = shape.n
    F = fusion_element(shape)
    Fw = embed_shifted(F, 0, 2 * n)
    Fv = embed_shifted(F, n, 2 * n)
    FF = F_pair(shape, shape, "left")
    order, lead = FF.leading_at_zero()
    d, c = c_and_order(shape)
    expected = (Fw * Fv).left_mul_perm(shuffle_permutation(n)).scale(c)
    return LeadingTermReport(order, lead, expected, d, c)


def verify_theorem_3_5(shape: SkewShape) -> bool:
    """Leading term of F_{ww}(u) at 0 is c(w)·(1,n+1)...(n,2n)·F_w F_w^∨·u^{-d(w)}."""
    return theorem_3_5_data(shape).ok


def fusion_of_epsilon() -> GroupRingElement:
    return fusion_element(EPSILON)
