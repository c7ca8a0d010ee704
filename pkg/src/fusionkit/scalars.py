"""Exact scalars: rationals, univariate polynomials and rational functions.

Rationals and polynomials are FLINT's ``fmpq`` and ``fmpq_poly``.  The
rational function type is ours: a reduced fraction with monic denominator,
so equality is syntactic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from flint import fmpq, fmpq_poly, fmpz

Rational = fmpq
Polynomial = fmpq_poly

RationalLike = Union[int, str, Fraction, fmpq, fmpz]

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def rational(x: RationalLike) -> fmpq:
    """Coerce ``x`` to an exact rational; strings use the ``"p/q"`` syntax."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, fmpz)):
        return fmpq(x)
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            p, q = s.split("/", 1)
            q_int = int(q)
            if q_int == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return fmpq(int(p), q_int)
        return fmpq(int(s))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def rational_str(x: fmpq) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` for integers)."""
    x = rational(x)
    if x.q == 1:
        return str(x.p)
    return f"{x.p}/{x.q}"


def is_integer(x: fmpq) -> bool:
    return rational(x).q == 1


def poly(coeffs: Iterable[RationalLike]) -> fmpq_poly:
    """Polynomial from coefficients listed by increasing degree."""
    return fmpq_poly([rational(c) for c in coeffs])


def polynomial_gcd(p: fmpq_poly, q: fmpq_poly) -> fmpq_poly:
    """Monic gcd; ``gcd(0, 0) = 0``."""
    if p.is_zero() and q.is_zero():
        return _ZERO_POLY
    g = p.gcd(q)
    lc = g.leading_coefficient()
    return g / lc if lc != 1 else g


class RationalFunction:
    """Reduced quotient ``num/den`` of polynomials in one variable ``u``.

    Invariants: ``gcd(num, den) = 1``, ``den`` monic, zero is ``0/1``.
    Instances are immutable and hashable.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: fmpq_poly | RationalLike = 0, den: fmpq_poly | RationalLike = 1, *, _reduced: bool = False):
        if not isinstance(num, fmpq_poly):
            num = fmpq_poly([rational(num)])
        if not isinstance(den, fmpq_poly):
            den = fmpq_poly([rational(den)])
        if not _reduced:
            if den.is_zero():
                raise ZeroDivisionError("division by zero polynomial")
            if num.is_zero():
                num, den = _ZERO_POLY, _ONE_POLY
            else:
                if den.degree() > 0:
                    g = num.gcd(den)
                    if g.degree() > 0:
                        num = num / g
                        den = den / g
                lc = den.leading_coefficient()
                if lc != 1:
                    num = num / lc
                    den = den / lc
        self.num = num
        self.den = den
        self._hash = None

    # construction helpers

    @classmethod
    def constant(cls, c: RationalLike) -> "RationalFunction":
        c = rational(c)
        if c == 0:
            return cls(_ZERO_POLY, _ONE_POLY, _reduced=True)
        return cls(fmpq_poly([c]), _ONE_POLY, _reduced=True)

    @classmethod
    def variable(cls) -> "RationalFunction":
        return cls(fmpq_poly([0, 1]), _ONE_POLY, _reduced=True)

    @classmethod
    def linear(cls, a: RationalLike, b: RationalLike = 0) -> "RationalFunction":
        """The polynomial ``a*u + b``."""
        return cls(fmpq_poly([rational(b), rational(a)]))

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, fmpq_poly):
            return cls(x, _ONE_POLY, _reduced=True)
        return cls.constant(x)

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.den.degree() == 0 and self.num.degree() <= 0

    def constant_value(self) -> fmpq:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if self.num.is_zero():
            return fmpq(0)
        return self.num.coeffs()[0]

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RationalFunction.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, fmpq, fmpz, Fraction)):
            c = rational(other)
            if c == 0:
                return RationalFunction.constant(0)
            return RationalFunction(self.num * c, self.den, _reduced=True)
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        if self.num.is_zero() or other.num.is_zero():
            return RationalFunction.constant(0)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, fmpq, fmpz, Fraction)):
            c = rational(other)
            if c == 0:
                raise ZeroDivisionError("division by zero polynomial")
            return RationalFunction(self.num / c, self.den, _reduced=True)
        return self * RationalFunction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return RationalFunction.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num**k, self.den**k, _reduced=True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = RationalFunction.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.coeffs()), tuple(self.den.coeffs())))
        return self._hash

    # evaluation and substitution

    def __call__(self, a: RationalLike) -> fmpq:
        a = rational(a)
        d = self.den(a)
        if d == 0:
            raise ZeroDivisionError(f"pole at u={a}")
        return self.num(a) / d

    def substitute_linear(self, a: RationalLike, b: RationalLike) -> "RationalFunction":
        """Return ``f(a*u + b)``."""
        lin = fmpq_poly([rational(b), rational(a)])
        return RationalFunction(self.num(lin), self.den(lin))

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == _ONE_POLY:
            return _poly_str(self.num)
        num, den = _poly_str(self.num), _poly_str(self.den)
        if " " in num:
            num = f"({num})"
        if " " in den or "*" in den or "^" in den:
            den = f"({den})"
        return f"{num}/{den}"


def _poly_str(p: fmpq_poly, var: str = "u") -> str:
    """Human-readable form, highest degree first: ``u^2 - 2*u + 1/2``."""
    if p.is_zero():
        return "0"
    terms = []
    coeffs = p.coeffs()
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = -c if c < 0 else c
        if k == 0:
            body = rational_str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{rational_str(mag)}*{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append((" - " if c < 0 else " + ") + body)
    return "".join(terms)


def ratfun_normalize(num: fmpq_poly, den: fmpq_poly) -> RationalFunction:
    return RationalFunction(num, den)


@dataclass(frozen=True)
class LaurentLeading:
    """Leading term ``coefficient * (u - a)**order`` of a local expansion.

    The expansion of the zero function is represented by ``order=None``.
    """

    order: int | None
    coefficient: fmpq

    @property
    def is_zero(self) -> bool:
        return self.order is None

    @property
    def pole_order(self) -> int:
        return 0 if self.order is None else max(0, -self.order)


LAURENT_ZERO = LaurentLeading(None, fmpq(0))


def _strip_root(p: fmpq_poly, a: fmpq) -> tuple[int, fmpq_poly]:
    """Divide out ``(u - a)`` as often as possible; return (multiplicity, quotient)."""
    lin = fmpq_poly([-a, 1])
    k = 0
    while p(a) == 0:
        p, r = divmod(p, lin)
        assert r.is_zero()
        k += 1
    return k, p


def laurent_leading_at(f: RationalFunction, a: RationalLike) -> LaurentLeading:
    """Leading term of ``f = sum_{m >= k} c_m (u - a)**m``."""
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return LAURENT_ZERO
    a = rational(a)
    kn, qn = _strip_root(f.num, a)
    kd, qd = _strip_root(f.den, a)
    return LaurentLeading(kn - kd, qn(a) / qd(a))


def series_coefficients_at_infinity(f: RationalFunction, k_max: int) -> list[fmpq]:
    """Coefficients ``c_0..c_{k_max}`` of ``f = sum_s c_s u**(-s)``."""
    f = RationalFunction.coerce(f)
    if f.is_zero():
        return [fmpq(0)] * (k_max + 1)
    deg_n, deg_d = f.num.degree(), f.den.degree()
    if deg_n > deg_d:
        raise ValueError("pole at infinity")
    # u = 1/x turns num/den into x**(deg_d - deg_n) * rev(num)/rev(den)
    a = list(reversed(f.num.coeffs()))
    b = list(reversed(f.den.coeffs()))
    shift = deg_d - deg_n
    b0 = b[0]
    out = [fmpq(0)] * (k_max + 1)
    q: list[fmpq] = []
    for s in range(k_max + 1 - shift if k_max + 1 > shift else 0):
        acc = a[s] if s < len(a) else fmpq(0)
        for i in range(1, min(s, len(b) - 1) + 1):
            acc -= b[i] * q[s - i]
        q.append(acc / b0)
    for s, c in enumerate(q):
        out[s + shift] = c
    return out


def prod_ratfun(factors: Sequence[RationalFunction]) -> RationalFunction:
    out = RationalFunction.constant(1)
    for f in factors:
        out = out * f
    return out
