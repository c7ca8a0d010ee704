"""Verification sweeps over finite families of shapes.

Each sweep returns a :class:`SuiteResult`.  Sweeps never stop at the first
failure; they collect up to ``MAX_REPORTED`` failure descriptions and keep
counting, so a report always says how much was checked.
"""

from __future__ import annotations

import itertools
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from flint import fmpq

from .diagrams import (
    EPSILON,
    SkewShape,
    column,
    conjugate,
    durfee_rank_definition,
    durfee_rank_formula,
    enumerate_skew_shapes,
    iter_shapes_up_to,
    jacobi_trudi_count,
    parse_shape,
    rotate180,
    row,
    ssyt_count,
)
from .fusion import (
    F_pair,
    bottom_of_column,
    c_and_order,
    check_G_unitarity,
    fusion_element,
    h_conjugate_relation,
    h_function,
    h_partition_product,
    keep_first,
    remove_first,
    row_adjacent_pairs,
    row_pair_product,
    same_column_adjacent,
    theorem_3_5_data,
)
from .guards import guard_overrides
from .scalars import is_integer
from .symgroup import (
    GroupRingElement,
    alpha_involution,
    embed_shifted,
    identity,
    left_divisibility_test,
    right_divisibility_test,
    transposition,
)
from .yangian import (
    burnside_irreducible,
    flip_index_map,
    identity_report,
    intertwiner_leading,
    irreducibility_criterion,
    module_space,
)

MAX_REPORTED = 20

WORKED_EXAMPLE = "9,9,9,7,7,3,3,3,3/5,5,3,3,3,3,2"


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failure_count: int = 0
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.failure_count == 0 and self.checked > 0

    def check(self, cond: bool, label: Callable[[], str] | str) -> bool:
        self.checked += 1
        if not cond:
            self.failure_count += 1
            if len(self.failures) < MAX_REPORTED:
                self.failures.append(label() if callable(label) else label)
        return cond

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {self.failure_count} failures, {self.elapsed:.1f}s"


class _timed:
    def __init__(self, res: SuiteResult):
        self.res = res

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.res

    def __exit__(self, *exc):
        self.res.elapsed = time.perf_counter() - self.t0
        return False


# Durfee rank


def durfee_suite(max_boxes: int = 8, max_rows: int = 8, max_cols: int = 8) -> SuiteResult:
    """definition = formula = conjugate = rotation, rank >= 1, plus the worked example."""
    res = SuiteResult("durfee")
    with _timed(res):
        shapes = enumerate_skew_shapes(max_boxes, max_rows, max_cols)
        rank = {s: durfee_rank_definition(s).rank for s in shapes}
        for s, d in rank.items():
            res.check(d >= 1, lambda: f"{s}: rank {d} < 1")
            f = durfee_rank_formula(s)
            res.check(f == d, lambda: f"{s}: formula {f} != definition {d}")
            for name, t in (("conjugate", conjugate(s)), ("rotation", rotate180(s))):
                dt = rank.get(t)
                if dt is None:
                    dt = durfee_rank_definition(t).rank
                res.check(dt == d, lambda: f"{s}: {name} rank {dt} != {d}")
        rep = durfee_rank_definition(parse_shape(WORKED_EXAMPLE))
        res.check(
            (rep.rank, rep.convex_diagonal_boxes, rep.concave_diagonal_boxes, rep.ell) == (6, 9, 3, 8),
            lambda: f"worked example gives {rep}",
        )
        res.details["shapes"] = len(shapes)
    return res


# fusion structure


def fusion_checks(shape: SkewShape, res: SuiteResult) -> None:
    n = shape.n
    F = fusion_element(shape)
    tag = str(shape)
    res.check(F.coefficient_at(identity(n)) == 1, lambda: f"{tag}: identity coefficient is not 1")
    res.check(alpha_involution(F) == F, lambda: f"{tag}: not alpha-invariant")
    for r in same_column_adjacent(shape):
        d = GroupRingElement.one(n) - GroupRingElement.basis(transposition(r, r + 1, n))
        res.check(left_divisibility_test(F, d), lambda: f"{tag}: not left-divisible by 1-({r},{r + 1})")
        res.check(right_divisibility_test(F, d), lambda: f"{tag}: not right-divisible by 1-({r},{r + 1})")
    for l in range(1, n):
        d = embed_shifted(fusion_element(remove_first(shape, l)), l, n)
        res.check(left_divisibility_test(F, d), lambda: f"{tag}: not left-divisible by sigma_{l}(F_phi)")
        res.check(right_divisibility_test(F, d), lambda: f"{tag}: not right-divisible by sigma_{l}(F_phi)")
    for m in range(1, n):
        d = embed_shifted(fusion_element(keep_first(shape, m)), 0, n)
        res.check(left_divisibility_test(F, d), lambda: f"{tag}: not left-divisible by F_psi, m={m}")
        res.check(right_divisibility_test(F, d), lambda: f"{tag}: not right-divisible by F_psi, m={m}")
    for p, q in row_adjacent_pairs(shape):
        d = row_pair_product(shape, p, q)
        r = bottom_of_column(shape, p)
        res.check(left_divisibility_test(F, d), lambda: f"{tag}: not left-divisible by the row product p={p} q={q} r={r}")
    F2 = fusion_element(shape, "prime")
    res.check(F2 == F, lambda: f"{tag}: limit depends on the direction")


def fusion_suite(max_boxes: int = 5) -> SuiteResult:
    res = SuiteResult("fusion")
    with _timed(res):
        shapes = list(iter_shapes_up_to(max_boxes))
        for s in shapes:
            fusion_checks(s, res)
        res.details["shapes"] = len(shapes)
    return res


# h_omega via linear factors
#
# Every factor of h_omega and of the partition product is u + r with r an
# integer, so both are K * prod (u + r)^e_r.  Net exponents make the
# representation canonical, which turns all four statements into integer
# bookkeeping.


@dataclass(frozen=True)
class LinearFactored:
    constant: fmpq
    exps: tuple[tuple[int, int], ...]  # sorted (root shift r, net exponent), e != 0

    @classmethod
    def build(cls, constant, counter: Counter) -> "LinearFactored":
        return cls(fmpq(constant), tuple(sorted((r, e) for r, e in counter.items() if e)))

    def order_at_zero(self) -> int:
        return dict(self.exps).get(0, 0)

    def leading_at_zero(self) -> tuple[int, fmpq]:
        """(order of u, coefficient) of the leading Laurent term at 0."""
        num, den = 1, 1
        for r, e in self.exps:
            if r:
                if e > 0:
                    num *= r**e
                else:
                    den *= r ** (-e)
        return self.order_at_zero(), self.constant * fmpq(num, den)

    def negate_variable(self) -> "LinearFactored":
        """f(-u): (-u + r) = -(u - r)."""
        sign = (-1) ** (sum(e for _, e in self.exps) % 2)
        return LinearFactored.build(self.constant * sign, Counter({-r: e for r, e in self.exps}))

    def __mul__(self, other: "LinearFactored") -> "LinearFactored":
        c = Counter(dict(self.exps))
        c.update(dict(other.exps))
        return LinearFactored.build(self.constant * other.constant, c)

    def to_rational_function(self):
        from flint import fmpq_poly

        from .scalars import RationalFunction

        num, den = fmpq_poly([self.constant]), fmpq_poly([1])
        for r, e in self.exps:
            f = fmpq_poly([r, 1]) ** abs(e)
            if e > 0:
                num *= f
            else:
                den *= f
        return RationalFunction(num, den)


@lru_cache(maxsize=None)
def _h_factored_cached(contents: tuple[int, ...]) -> LinearFactored:
    n = len(contents)
    diffs = Counter(cq - cp for cp, cq in itertools.combinations(contents, 2))
    e: Counter = Counter({0: -n})
    for d, m in diffs.items():
        e[d - 1] += m
        e[d + 1] += m
        e[d] -= 2 * m
    return LinearFactored.build((-1) ** n, e)


def h_factored(contents: Sequence[int]) -> LinearFactored:
    """h(u) = (-1/u)^n prod_{p<q} (u+d-1)(u+d+1)/(u+d)^2, d = c_q - c_p."""
    return _h_factored_cached(tuple(contents))


def partition_product_factored(lam: Sequence[int], mu: Sequence[int]) -> LinearFactored:
    k = len(lam)
    mu = [mu[i] if i < len(mu) else 0 for i in range(k)]
    e: Counter = Counter()
    for i in range(k):
        e[-lam[i] + mu[i]] += 1
        e[0] -= 1
    for i in range(k):
        for j in range(i + 1, k):
            d = j - i
            e[lam[i] - mu[j] + d] += 1
            e[mu[i] - lam[j] + d] += 1
            e[lam[i] - lam[j] + d] -= 1
            e[mu[i] - mu[j] + d] -= 1
    return LinearFactored.build(1, e)


def one_minus_u_power(n: int) -> LinearFactored:
    # (1 - u)^n = (-1)^n (u - 1)^n
    return LinearFactored.build((-1) ** n, Counter({-1: n}))


def h_checks(shape: SkewShape, res: SuiteResult, rank: int | None = None, symbolic: bool = False) -> None:
    """Pole order, conjugate relation, sign relation for c, partition product."""
    n = shape.n
    tag = str(shape)
    d = durfee_rank_definition(shape).rank if rank is None else rank
    conj = conjugate(shape)
    h = h_factored(shape.contents)
    hc = h_factored(conj.contents)
    order, c = h.leading_at_zero()
    res.check(order == -d, lambda: f"{tag}: pole order {-order} != d = {d}")
    # leading terms of h_{w*}(u) and (-1)^n h_w(-u) agree
    o1, c1 = hc.leading_at_zero()
    o2, c2 = h.negate_variable().leading_at_zero()
    c2 *= (-1) ** n
    res.check((o1, c1) == (o2, c2), lambda: f"{tag}: conjugate relation fails: {(o1, c1)} vs {(o2, c2)}")
    res.check(c1 == c * (-1) ** ((n + d) % 2), lambda: f"{tag}: c(w*) = {c1} but c(w) = {c}, n + d = {n + d}")
    lhs = partition_product_factored(shape.lam, shape.mu)
    rhs = hc * one_minus_u_power(n)
    res.check(lhs == rhs, lambda: f"{tag}: partition product differs from h_(w*)(u)(1-u)^n")
    if symbolic:
        # cross-check the factored fast path against the polynomial implementation
        res.check(h.to_rational_function() == h_function(shape), lambda: f"{tag}: factored h differs")
        res.check(lhs.to_rational_function() == h_partition_product(shape), lambda: f"{tag}: factored product differs")
        a, b = h_conjugate_relation(shape)
        res.check(a == b, lambda: f"{tag}: symbolic conjugate relation fails")
        order_s, c_s = c_and_order(shape)
        res.check((order_s, c_s) == (d, c), lambda: f"{tag}: symbolic c differs")


def h_suite(max_boxes: int = 8, max_rows: int | None = None, max_cols: int | None = None, symbolic_boxes: int = 4) -> SuiteResult:
    res = SuiteResult("h")
    with _timed(res):
        shapes = enumerate_skew_shapes(max_boxes, max_rows or max_boxes, max_cols or max_boxes)
        for s in shapes:
            h_checks(s, res, symbolic=s.n <= symbolic_boxes)
        res.details["shapes"] = len(shapes)
    return res


# leading term of F_{ww}(u) and pair functions


def leading_suite(max_boxes: int = 3, max_pair_boxes: int = 5) -> SuiteResult:
    """Leading term at 0 of F_ww for n <= max_boxes; orderings and unitarity for n + n' <= max_pair_boxes."""
    res = SuiteResult("leading")
    with _timed(res):
        for s in iter_shapes_up_to(max_boxes):
            rep = theorem_3_5_data(s)
            res.check(rep.order is not None and -rep.order <= rep.durfee, lambda: f"{s}: pole order exceeds d")
            res.check(rep.ok, lambda: f"{s}: leading term of F_ww is not c(w)·shuffle·F F^∨")
        shapes = list(iter_shapes_up_to(max_pair_boxes - 1))
        pairs = [(a, b) for a in shapes for b in shapes if a.n + b.n <= max_pair_boxes]
        for a, b in pairs:
            left = F_pair(a, b, "left")
            res.check(left.same_as(F_pair(a, b, "inner")), lambda: f"({a}, {b}): inner ordering differs")
            res.check(left.same_as(F_pair(a, b, "right")), lambda: f"({a}, {b}): right ordering differs")
            res.check(check_G_unitarity(a, b), lambda: f"({a}, {b}): G unitarity fails")
        res.details["pairs"] = len(pairs)
    return res


# matrix level


def intertwiner_square_checks(shape: SkewShape, N: int, res: SuiteResult) -> None:
    d = durfee_rank_definition(shape).rank
    _, c = c_and_order(shape)
    data = intertwiner_leading(shape, shape, N, 0)
    dim = module_space(shape, N).dim
    res.check(data.a == d, lambda: f"{shape}, N={N}: a = {data.a}, d = {d}")
    res.check(
        data.operator.equals_scaled_permutation(flip_index_map(dim, dim), c),
        lambda: f"{shape}, N={N}: I(0) is not c(w) times the flip",
    )


def intertwiner_suite(max_boxes: int = 4, Ns: Sequence[int] = (2, 3), ambient_dim: int = 6561) -> SuiteResult:
    """a_ww(0) = d(w) and I_ww(0) = c(w) P_w for every shape with nonzero V_w."""
    res = SuiteResult("intertwiner")
    with _timed(res), guard_overrides(ambient_dim=ambient_dim):
        cases = 0
        for s in iter_shapes_up_to(max_boxes):
            for N in Ns:
                if max(s.column_lengths()) > N:
                    continue
                cases += 1
                intertwiner_square_checks(s, N, res)
        res.details["cases"] = cases
    return res


def identity_suite(
    max_boxes: int = 3,
    N: int = 2,
    samples: int = 5,
    seed: int = 0,
    triples: Sequence | None = None,
    ambient_dim: int = 4096,
) -> SuiteResult:
    """Run identity_report on a covering family of shape triples."""
    res = SuiteResult("identities")
    with _timed(res), guard_overrides(ambient_dim=ambient_dim):
        if triples is None:
            triples = covering_triples(max_boxes, N)
        for k, (a, b, c) in enumerate(triples):
            rep = identity_report(a, b, c, N, samples=samples, seed=seed + k)
            for key, ok in rep.items():
                res.check(ok, lambda: f"({a}, {b}, {c}): {key} fails")
        res.details["triples"] = len(triples)
    return res


def covering_triples(max_boxes: int, N: int) -> list[tuple[SkewShape, SkewShape, SkewShape]]:
    """Every admissible shape appears in each of the three slots at least once."""
    shapes = [s for s in iter_shapes_up_to(max_boxes) if max(s.column_lengths()) <= N]
    out = []
    k = len(shapes)
    for i, s in enumerate(shapes):
        out.append((s, shapes[(i + 1) % k], shapes[(i + 2) % k]))
    out.append((EPSILON, EPSILON, EPSILON))
    return out


# Burnside comparison

Z_DIFFERENCES = tuple(fmpq(x) for x in (0, 1, -1, 2, -2)) + (fmpq(1, 2), fmpq(5, 3))


def irreducibility_configurations(N: int = 2, burnside_dim: int = 12, max_power: int = 4) -> list[list[tuple[SkewShape, fmpq]]]:
    """Pairs and triples from {box, row2, col2}; all pairwise z-differences in Z_DIFFERENCES."""
    base = [s for s in (EPSILON, row(2), column(2)) if max(s.column_lengths()) <= N]
    dims = {s: ssyt_count(s, N) for s in base}
    D = set(Z_DIFFERENCES)
    configs = []
    for a, b in itertools.product(base, repeat=2):
        if dims[a] * dims[b] > burnside_dim:
            continue
        for x in Z_DIFFERENCES:
            configs.append([(a, fmpq(0)), (b, -x)])
    for a, b, c in itertools.product(base, repeat=3):
        if dims[a] * dims[b] * dims[c] > burnside_dim:
            continue
        for x, y in itertools.product(Z_DIFFERENCES, repeat=2):
            if x + y in D:
                configs.append([(a, fmpq(0)), (b, -x), (c, -x - y)])
    # equal-z tensor powers
    for s in base:
        for k in range(2, max_power + 1):
            if dims[s] ** k <= burnside_dim:
                configs.append([(s, fmpq(0))] * k)
    return configs


def irreducibility_suite(N: int = 2, configs: Iterable | None = None) -> SuiteResult:
    res = SuiteResult("irreducibility")
    with _timed(res):
        configs = irreducibility_configurations(N) if configs is None else list(configs)
        for parts in configs:
            crit = irreducibility_criterion(parts, N)
            oracle = burnside_irreducible(parts, N)
            label = lambda: "[" + ", ".join(f"({w}, {z})" for w, z in parts) + "]"  # noqa: E731
            res.check(crit.irreducible == oracle, lambda: f"{label()}: criterion {crit.verdict}, oracle {oracle}")
            if len(parts) > 2:
                pairwise = all(
                    irreducibility_criterion([parts[i], parts[j]], N).irreducible
                    for i in range(len(parts))
                    for j in range(i + 1, len(parts))
                )
                res.check(pairwise == crit.irreducible, lambda: f"{label()}: k-wise verdict differs from pairwise")
            if len({z for _, z in parts}) == 1:
                res.check(crit.irreducible, lambda: f"{label()}: equal-z power reducible")
        e = EPSILON
        named = [
            ([(e, fmpq(0)), (e, fmpq(1))], False),
            ([(e, fmpq(0)), (e, fmpq(1, 2))], True),
        ]
        for parts, expected in named:
            crit = irreducibility_criterion(parts, N)
            res.check(crit.irreducible == expected, f"named case {parts[1][1]}: verdict {crit.verdict}")
        res.details["configurations"] = len(configs)
    return res


# dimensions


def dimension_suite(max_boxes: int = 6, max_N: int = 3) -> SuiteResult:
    res = SuiteResult("dimension")
    with _timed(res):
        shapes = list(iter_shapes_up_to(max_boxes))
        for s in shapes:
            tall = max(s.column_lengths())
            for N in range(1, max_N + 1):
                expected = jacobi_trudi_count(s, N)
                got = module_space(s, N).dim
                res.check(got == expected, lambda: f"{s}, N={N}: dim {got} != {expected}")
                res.check((got == 0) == (tall > N), lambda: f"{s}, N={N}: vanishing does not match column length")
        res.details["shapes"] = len(shapes)
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "durfee": durfee_suite,
    "fusion": fusion_suite,
    "h": h_suite,
    "leading": leading_suite,
    "intertwiner": intertwiner_suite,
    "identities": identity_suite,
    "irreducibility": irreducibility_suite,
    "dimension": dimension_suite,
}


def run_suite(name: str, max_boxes: int | None = None, seed: int = 0) -> SuiteResult:
    """Run a suite by name; ``max_boxes`` caps every box bound of that suite."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cap = (lambda k: k if max_boxes is None else min(k, max_boxes))  # noqa: E731
    if name == "durfee":
        m = cap(8)
        return durfee_suite(m, m, m)
    if name == "fusion":
        return fusion_suite(cap(5))
    if name == "h":
        return h_suite(cap(8))
    if name == "leading":
        return leading_suite(cap(3), cap(5))
    if name == "intertwiner":
        return intertwiner_suite(cap(4))
    if name == "identities":
        return identity_suite(cap(3), seed=seed)
    if name == "irreducibility":
        return irreducibility_suite()
    return dimension_suite(cap(6))


__all__ = [
    "SuiteResult",
    "SUITES",
    "LinearFactored",
    "covering_triples",
    "dimension_suite",
    "durfee_suite",
    "fusion_checks",
    "fusion_suite",
    "h_checks",
    "h_factored",
    "h_suite",
    "identity_suite",
    "intertwiner_suite",
    "irreducibility_configurations",
    "irreducibility_suite",
    "leading_suite",
    "partition_product_factored",
    "run_suite",
]
