"""Permutations and the group ring of S_n over an exact field.

A permutation is a tuple of images in one-line notation, ``g[p-1] = g(p)``.
Composition is ``(g∘h)(x) = g(h(x))`` everywhere.

Two element types live here:

* :class:`GroupRingElement` — sparse ``{permutation: coefficient}`` over the
  rationals (``field="Q"``) or over rational functions in one variable
  (``field="RF"``).
* :class:`FractionElement` — a fraction-free form ``X/D`` with polynomial
  numerators per permutation and one common polynomial denominator.  Long
  ordered products of factors ``1 - (p q)/(linear)`` are built in this form
  (no gcds until the end) and converted or expanded afterwards.
"""

from __future__ import annotations

from itertools import permutations as _itperms
from typing import Callable, Iterable, Mapping

from flint import fmpq, fmpq_mat, fmpq_poly

from .guards import check_guard
from .scalars import LaurentLeading, RationalFunction, rational

Permutation = tuple[int, ...]


class DegreeMismatch(ValueError):
    pass


# permutations


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def transposition(p: int, q: int, n: int) -> Permutation:
    if p == q or not (1 <= p <= n and 1 <= q <= n):
        raise ValueError(f"bad transposition ({p} {q}) in S_{n}")
    g = list(range(1, n + 1))
    g[p - 1], g[q - 1] = q, p
    return tuple(g)


def compose(g: Permutation, h: Permutation) -> Permutation:
    """``g∘h``: first apply h, then g."""
    if len(g) != len(h):
        raise DegreeMismatch(f"degree mismatch {len(g)} vs {len(h)}")
    return tuple(g[x - 1] for x in h)


permutation_compose = compose


def inverse(g: Permutation) -> Permutation:
    out = [0] * len(g)
    for i, x in enumerate(g, start=1):
        out[x - 1] = i
    return tuple(out)


def is_permutation(g: Iterable[int]) -> bool:
    g = tuple(g)
    return sorted(g) == list(range(1, len(g) + 1))


def all_permutations(n: int) -> list[Permutation]:
    return [tuple(p) for p in _itperms(range(1, n + 1))]


def shift_permutation(g: Permutation, shift: int, n: int) -> Permutation:
    """Image of g under (p q) -> (p+shift, q+shift) inside S_n."""
    m = len(g)
    if shift < 0 or shift + m > n:
        raise ValueError(f"cannot embed S_{m} with shift {shift} into S_{n}")
    out = list(range(1, n + 1))
    for i, x in enumerate(g):
        out[shift + i] = x + shift
    return tuple(out)


def cycle_string(g: Permutation) -> str:
    seen, parts = set(), []
    for s in range(1, len(g) + 1):
        if s in seen or g[s - 1] == s:
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(x)
            x = g[x - 1]
        parts.append("(" + " ".join(map(str, c)) + ")")
    return "".join(parts) or "id"


# group ring


def _zero_of(field: str):
    return fmpq(0) if field == "Q" else RationalFunction.constant(0)


def _coerce(c, field: str):
    if field == "Q":
        return rational(c)
    return RationalFunction.coerce(c)


def _is_zero(c) -> bool:
    return c == 0 if not isinstance(c, RationalFunction) else c.is_zero()


class GroupRingElement:
    """Finite formal sum of permutations of {1..n}."""

    __slots__ = ("n", "terms", "field")

    def __init__(self, n: int, terms: Mapping[Permutation, object] | None = None, field: str = "Q"):
        if field not in ("Q", "RF"):
            raise ValueError(f"unknown coefficient field {field!r}")
        self.n = n
        self.field = field
        clean: dict[Permutation, object] = {}
        for g, c in (terms or {}).items():
            g = tuple(g)
            if len(g) != n:
                raise DegreeMismatch(f"permutation {g} not in S_{n}")
            c = _coerce(c, field)
            if not _is_zero(c):
                clean[g] = c
        self.terms = clean

    @classmethod
    def _raw(cls, n: int, terms: dict, field: str) -> "GroupRingElement":
        x = cls.__new__(cls)
        x.n, x.terms, x.field = n, terms, field
        return x

    @classmethod
    def one(cls, n: int, field: str = "Q") -> "GroupRingElement":
        return cls._raw(n, {identity(n): _coerce(1, field)}, field)

    @classmethod
    def zero(cls, n: int, field: str = "Q") -> "GroupRingElement":
        return cls._raw(n, {}, field)

    @classmethod
    def basis(cls, g: Permutation, coeff=1, field: str = "Q") -> "GroupRingElement":
        return cls(len(g), {tuple(g): coeff}, field)

    def _check(self, other: "GroupRingElement"):
        if self.n != other.n:
            raise DegreeMismatch(f"degree mismatch {self.n} vs {other.n}")
        if self.field != other.field:
            raise TypeError(f"field mismatch {self.field} vs {other.field}")

    def to_field(self, field: str) -> "GroupRingElement":
        if field == self.field:
            return self
        if field == "RF":
            return GroupRingElement._raw(self.n, {g: RationalFunction.constant(c) for g, c in self.terms.items()}, "RF")
        return GroupRingElement(self.n, {g: c.constant_value() for g, c in self.terms.items()}, "Q")

    # ring operations

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            v = out.get(g)
            v = c if v is None else v + c
            if _is_zero(v):
                out.pop(g, None)
            else:
                out[g] = v
        return GroupRingElement._raw(self.n, out, self.field)

    def __neg__(self):
        return GroupRingElement._raw(self.n, {g: -c for g, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GroupRingElement":
        c = _coerce(c, self.field)
        if _is_zero(c):
            return GroupRingElement.zero(self.n, self.field)
        return GroupRingElement._raw(self.n, {g: c * v for g, v in self.terms.items()}, self.field)

    def __mul__(self, other):
        if not isinstance(other, GroupRingElement):
            return self.scale(other)
        self._check(other)
        out: dict[Permutation, object] = {}
        for g, a in self.terms.items():
            for h, b in other.terms.items():
                k = tuple(g[x - 1] for x in h)
                v = out.get(k)
                out[k] = a * b if v is None else v + a * b
        return GroupRingElement._raw(self.n, {g: c for g, c in out.items() if not _is_zero(c)}, self.field)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient_at(self, g: Permutation):
        g = tuple(g)
        if len(g) != self.n:
            raise DegreeMismatch(f"permutation {g} not in S_{self.n}")
        return self.terms.get(g, _zero_of(self.field))

    def support(self) -> list[Permutation]:
        return sorted(self.terms)

    def map_coefficients(self, f: Callable, field: str | None = None) -> "GroupRingElement":
        return GroupRingElement(self.n, {g: f(c) for g, c in self.terms.items()}, field or self.field)

    def evaluate(self, u) -> "GroupRingElement":
        """Substitute a rational value for the variable (RF -> Q)."""
        if self.field == "Q":
            return self
        return GroupRingElement(self.n, {g: c(u) for g, c in self.terms.items()}, "Q")

    def alpha(self) -> "GroupRingElement":
        return GroupRingElement._raw(self.n, {inverse(g): c for g, c in self.terms.items()}, self.field)

    def conjugate_by(self, h: Permutation) -> "GroupRingElement":
        """``h x h^{-1}``."""
        hi = inverse(h)
        return GroupRingElement._raw(
            self.n, {compose(compose(h, g), hi): c for g, c in self.terms.items()}, self.field
        )

    def right_mul_perm(self, h: Permutation) -> "GroupRingElement":
        return GroupRingElement._raw(self.n, {compose(g, h): c for g, c in self.terms.items()}, self.field)

    def left_mul_perm(self, h: Permutation) -> "GroupRingElement":
        return GroupRingElement._raw(self.n, {compose(h, g): c for g, c in self.terms.items()}, self.field)

    def sorted_terms(self) -> list[tuple[Permutation, object]]:
        return sorted(self.terms.items())

    def __repr__(self):
        return f"GroupRingElement(n={self.n}, {self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for k, (g, c) in enumerate(self.sorted_terms()):
            text = str(c)
            neg = self.field == "Q" and c < 0
            if neg:
                text = str(-c)
            elif self.field == "RF" and not c.is_constant():
                text = f"({text})"
            if k == 0:
                out = ("-" if neg else "") + f"{text}·{cycle_string(g)}"
            else:
                out += (" − " if neg else " + ") + f"{text}·{cycle_string(g)}"
        return out


def alpha_involution(x: GroupRingElement) -> GroupRingElement:
    return x.alpha()


def coefficient_at(x: GroupRingElement, g: Permutation):
    return x.coefficient_at(g)


def group_ring_multiply(x: GroupRingElement, y: GroupRingElement) -> GroupRingElement:
    return x * y


def embed_shifted(x: GroupRingElement, shift: int, n: int) -> GroupRingElement:
    """sigma_shift: (p q) -> (p+shift, q+shift), from S_m into S_n."""
    if shift < 0 or shift + x.n > n:
        raise ValueError(f"cannot embed S_{x.n} with shift {shift} into S_{n}")
    return GroupRingElement._raw(n, {shift_permutation(g, shift, n): c for g, c in x.terms.items()}, x.field)


def transposition_factor(p: int, q: int, denom, n: int) -> GroupRingElement:
    """``1 - (p q)/denom``; ``denom`` is a rational or a RationalFunction."""
    field = "RF" if isinstance(denom, RationalFunction) else "Q"
    d = _coerce(denom, field)
    if _is_zero(d):
        raise ZeroDivisionError(f"zero denominator in factor f_{p}{q}")
    one = _coerce(1, field)
    return GroupRingElement(n, {identity(n): one, transposition(p, q, n): -(one / d)}, field)


# divisibility


def _regular_matrix(d: GroupRingElement, perms: list[Permutation], index: dict) -> fmpq_mat:
    """Columns are the vectors d·g for g in S_n."""
    n_fact = len(perms)
    entries = [[fmpq(0)] * n_fact for _ in range(n_fact)]
    for col, g in enumerate(perms):
        for h, c in d.terms.items():
            entries[index[tuple(h[x - 1] for x in g)]][col] = c
    return fmpq_mat(entries)


def left_divisibility_test(x: GroupRingElement, d: GroupRingElement) -> bool:
    """True iff x = d·y for some y in Q·S_n (x lies in the left ideal d·Q S_n)."""
    if x.n != d.n:
        raise DegreeMismatch(f"degree mismatch {x.n} vs {d.n}")
    if x.field != "Q" or d.field != "Q":
        raise TypeError("divisibility is decided over the rationals")
    check_guard("divisibility_n", x.n, "regular representation of S_n")
    if x.is_zero():
        return True
    if d.is_zero():
        return False
    perms = all_permutations(x.n)
    index = {g: i for i, g in enumerate(perms)}
    m = _regular_matrix(d, perms, index)
    r = m.rank()
    col = [[x.terms.get(g, fmpq(0))] for g in perms]
    aug = fmpq_mat([list(row) + c for row, c in zip(m.tolist(), col)])
    return aug.rank() == r


def right_divisibility_test(x: GroupRingElement, d: GroupRingElement) -> bool:
    """True iff x = y·d, via the anti-involution alpha."""
    return left_divisibility_test(x.alpha(), d.alpha())


# fraction-free products


def _poly_neg_var(p: fmpq_poly) -> fmpq_poly:
    return fmpq_poly([c if k % 2 == 0 else -c for k, c in enumerate(p.coeffs())])


def _low_order(p: fmpq_poly) -> int:
    """Multiplicity of the root 0 (p nonzero)."""
    k = 0
    while p[k] == 0:
        k += 1
    return k


class FractionElement:
    """Group ring element ``sum_g X_g(u) g / D(u)`` with polynomial X_g, D."""

    __slots__ = ("n", "nums", "den")

    def __init__(self, n: int, nums: dict[Permutation, fmpq_poly], den: fmpq_poly):
        self.n = n
        self.nums = {g: p for g, p in nums.items() if not p.is_zero()}
        self.den = den

    @classmethod
    def from_rational(cls, x: GroupRingElement) -> "FractionElement":
        if x.field != "Q":
            raise TypeError("expected a rational group ring element")
        return cls(x.n, {g: fmpq_poly([c]) for g, c in x.terms.items()}, fmpq_poly([1]))

    @classmethod
    def one(cls, n: int) -> "FractionElement":
        return cls(n, {identity(n): fmpq_poly([1])}, fmpq_poly([1]))

    def right_mul_factor(self, p: int, q: int, den: fmpq_poly) -> "FractionElement":
        """``self · (1 - (p q)/den)``."""
        tau = transposition(p, q, self.n)
        out: dict[Permutation, fmpq_poly] = {}
        for g, a in self.nums.items():
            out[g] = out.get(g, fmpq_poly([])) + den * a
            k = tuple(g[x - 1] for x in tau)
            out[k] = out.get(k, fmpq_poly([])) - a
        return FractionElement(self.n, out, self.den * den)

    def left_mul_factor(self, p: int, q: int, den: fmpq_poly) -> "FractionElement":
        """``(1 - (p q)/den) · self``."""
        tau = transposition(p, q, self.n)
        out: dict[Permutation, fmpq_poly] = {}
        for g, a in self.nums.items():
            out[g] = out.get(g, fmpq_poly([])) + den * a
            k = tuple(tau[x - 1] for x in g)
            out[k] = out.get(k, fmpq_poly([])) - a
        return FractionElement(self.n, out, self.den * den)

    def __mul__(self, other) -> "FractionElement":
        if isinstance(other, GroupRingElement):
            other = FractionElement.from_rational(other)
        if self.n != other.n:
            raise DegreeMismatch(f"degree mismatch {self.n} vs {other.n}")
        out: dict[Permutation, fmpq_poly] = {}
        for g, a in self.nums.items():
            for h, b in other.nums.items():
                k = tuple(g[x - 1] for x in h)
                v = out.get(k)
                out[k] = a * b if v is None else v + a * b
        return FractionElement(self.n, out, self.den * other.den)

    def __rmul__(self, other) -> "FractionElement":
        if isinstance(other, GroupRingElement):
            return FractionElement.from_rational(other) * self
        return NotImplemented

    def negate_variable(self) -> "FractionElement":
        """Substitute u -> -u."""
        return FractionElement(self.n, {g: _poly_neg_var(p) for g, p in self.nums.items()}, _poly_neg_var(self.den))

    def conjugate_by(self, h: Permutation) -> "FractionElement":
        hi = inverse(h)
        return FractionElement(self.n, {compose(compose(h, g), hi): p for g, p in self.nums.items()}, self.den)

    def same_as(self, other: "FractionElement") -> bool:
        """Exact equality of the represented functions (cross-multiplied)."""
        if self.n != other.n:
            return False
        keys = set(self.nums) | set(other.nums)
        z = fmpq_poly([])
        return all(self.nums.get(g, z) * other.den == other.nums.get(g, z) * self.den for g in keys)

    def to_group_ring(self) -> GroupRingElement:
        return GroupRingElement(self.n, {g: RationalFunction(p, self.den) for g, p in self.nums.items()}, "RF")

    def leading_at_zero(self) -> tuple[int | None, GroupRingElement]:
        """Laurent leading term at 0: (order, coefficient element).

        The order is the minimum over coefficients; the coefficient element
        collects each coefficient's term of exactly that order.
        """
        if not self.nums:
            return None, GroupRingElement.zero(self.n)
        m = _low_order(self.den)
        d0 = self.den[m]
        j = min(_low_order(p) for p in self.nums.values())
        coeffs = {g: p[j] / d0 for g, p in self.nums.items()}
        return j - m, GroupRingElement(self.n, coeffs, "Q")

    def value_at_zero(self) -> GroupRingElement:
        """Value at 0; raises if any coefficient has a pole there."""
        order, lead = self.leading_at_zero()
        if order is None:
            return lead
        if order < 0:
            raise ArithmeticError(f"pole of order {-order} at 0")
        if order > 0:
            return GroupRingElement.zero(self.n)
        return lead

    def evaluate(self, u) -> GroupRingElement:
        u = rational(u)
        d = self.den(u)
        if d == 0:
            raise ZeroDivisionError(f"pole at {u}")
        return GroupRingElement(self.n, {g: p(u) / d for g, p in self.nums.items()}, "Q")


def leading_term_rf(x: GroupRingElement, a=0) -> tuple[int | None, GroupRingElement]:
    """Coefficient-wise Laurent leading term of an RF element at ``u = a``."""
    from .scalars import laurent_leading_at

    lead: dict[Permutation, LaurentLeading] = {g: laurent_leading_at(c, a) for g, c in x.terms.items()}
    if not lead:
        return None, GroupRingElement.zero(x.n)
    k = min(v.order for v in lead.values())
    return k, GroupRingElement(x.n, {g: v.coefficient for g, v in lead.items() if v.order == k}, "Q")

