"""Partitions, skew Young diagrams, contents and the Durfee rank.

Boxes are pairs ``(i, j)`` (row, column), both 1-based.  Shapes are kept in
translation normal form: row 1 is non-empty, the leftmost occupied column is
column 1, trailing empty rows are dropped, and an empty row in the middle is
written as ``lambda_i = mu_i = mu_{i-1}``.  The normal form makes ``(lambda,
mu)`` a canonical key for the box set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ShapeError(ValueError):
    pass


def _partition(parts: Iterable[int]) -> tuple[int, ...]:
    p = [int(x) for x in parts]
    if any(x < 0 for x in p):
        raise ShapeError(f"negative part in {p}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise ShapeError(f"{p} is not non-increasing")
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        object.__setattr__(self, "parts", _partition(parts))

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def size(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(sum(1 for x in self.parts if x >= j) for j in range(1, self.parts[0] + 1))


def _normal_form(boxes: frozenset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical ``(lambda, mu)`` for a box set that is a skew diagram."""
    if not boxes:
        return (), ()
    i0 = min(i for i, _ in boxes)
    j0 = min(j for _, j in boxes)
    rows: dict[int, list[int]] = {}
    for i, j in boxes:
        rows.setdefault(i - i0 + 1, []).append(j - j0 + 1)
    k = max(rows)
    lam, mu = [], []
    for i in range(1, k + 1):
        cols = rows.get(i)
        if cols is None:
            v = mu[-1]
            lam.append(v)
            mu.append(v)
            continue
        lo, hi = min(cols), max(cols)
        if hi - lo + 1 != len(cols):
            raise ShapeError(f"row {i} is not contiguous")
        lam.append(hi)
        mu.append(lo - 1)
    for seq in (lam, mu):
        if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
            raise ShapeError("box set is not a skew Young diagram")
    return _partition(lam), _partition(mu)


class SkewShape:
    """A skew diagram lambda/mu in translation normal form.

    Treat instances as immutable; derived data (box set, column tableau,
    contents) is computed on first use.
    """

    __slots__ = ("lam", "mu", "_boxes", "_tableau")

    def __init__(self, lam: tuple[int, ...], mu: tuple[int, ...]):
        self.lam = lam
        self.mu = mu
        self._boxes = None
        self._tableau = None

    def __repr__(self):
        return f"SkewShape(lam={self.lam}, mu={self.mu})"

    @property
    def boxes(self) -> frozenset:
        if self._boxes is None:
            lam, mu = self.lam, self.mu
            self._boxes = frozenset(
                (i + 1, j) for i in range(len(lam)) for j in range((mu[i] if i < len(mu) else 0) + 1, lam[i] + 1)
            )
        return self._boxes

    def __eq__(self, other):
        return isinstance(other, SkewShape) and self.lam == other.lam and self.mu == other.mu

    def __hash__(self):
        return hash((self.lam, self.mu))

    def __lt__(self, other):
        return (self.n, self.lam, self.mu) < (other.n, other.lam, other.mu)

    @property
    def n(self) -> int:
        return sum(self.lam) - sum(self.mu)

    @property
    def is_empty(self) -> bool:
        return not self.lam

    def __str__(self):
        s = ",".join(map(str, self.lam))
        return s + ("/" + ",".join(map(str, self.mu)) if self.mu else "")

    @property
    def column_tableau(self) -> tuple[tuple[int, int], ...]:
        """Boxes ordered columns left to right, downwards within a column."""
        if self._tableau is None:
            self._tableau = tuple(sorted(self.boxes, key=lambda b: (b[1], b[0])))
        return self._tableau

    @property
    def contents(self) -> tuple[int, ...]:
        return tuple(j - i for i, j in self.column_tableau)

    @property
    def column_of(self) -> tuple[int, ...]:
        return tuple(j for _, j in self.column_tableau)

    def column_lengths(self) -> list[int]:
        cols: dict[int, int] = {}
        for _, j in self.boxes:
            cols[j] = cols.get(j, 0) + 1
        return [cols[j] for j in sorted(cols)]

    def row_lengths(self) -> list[int]:
        return [self.lam[i] - (self.mu[i] if i < len(self.mu) else 0) for i in range(len(self.lam))]


def shape_from_boxes(boxes: Iterable[tuple[int, int]]) -> SkewShape:
    bs = frozenset((int(i), int(j)) for i, j in boxes)
    lam, mu = _normal_form(bs)
    return _make(lam, mu)


def _make(lam: tuple[int, ...], mu: tuple[int, ...]) -> SkewShape:
    return SkewShape(lam, mu)


def _normalize_rows(lam: Sequence[int], mu: Sequence[int]) -> SkewShape:
    """Normal form of a valid (lambda, mu) pair given row by row."""
    k = len(lam)
    mu = [mu[i] if i < len(mu) else 0 for i in range(k)]
    if k and mu[-1] == 0 and all(l > m for l, m in zip(lam, mu)):
        # already normal apart from trailing zeros of mu
        while mu and mu[-1] == 0:
            mu.pop()
        return SkewShape(tuple(lam), tuple(mu))
    nonempty = [i for i in range(k) if lam[i] > mu[i]]
    if not nonempty:
        return SkewShape((), ())
    top, bot = nonempty[0], nonempty[-1]
    shift = mu[bot]
    nl, nm = [], []
    for i in range(top, bot + 1):
        if lam[i] > mu[i]:
            nl.append(lam[i] - shift)
            nm.append(mu[i] - shift)
        else:
            nl.append(nm[-1])
            nm.append(nm[-1])
    while nm and nm[-1] == 0:
        nm.pop()
    return SkewShape(tuple(nl), tuple(nm))


def skew_shape_new(lam: Sequence[int] | Partition, mu: Sequence[int] | Partition = ()) -> SkewShape:
    """Validate ``lambda ⊇ mu`` and return the shape in translation normal form."""
    lp = lam.parts if isinstance(lam, Partition) else _partition(lam)
    mp = mu.parts if isinstance(mu, Partition) else _partition(mu)
    if len(mp) > len(lp) or any(mp[i] > lp[i] for i in range(len(mp))):
        raise ShapeError("mu not contained in lambda")
    return _normalize_rows(lp, mp)


def parse_shape(text: str) -> SkewShape:
    """Parse ``"9,9,9,7/5,5"``; an omitted ``/mu`` means mu is empty."""
    s = text.strip()
    lam_s, _, mu_s = s.partition("/")

    def parts(t: str) -> list[int]:
        t = t.strip()
        if not t:
            return []
        try:
            return [int(x) for x in t.split(",")]
        except ValueError:
            raise ShapeError(f"malformed shape {text!r}") from None

    return skew_shape_new(parts(lam_s), parts(mu_s))


EPSILON = _make((1,), ())


def row(k: int) -> SkewShape:
    return _make((k,), ())


def column(k: int) -> SkewShape:
    return _make((1,) * k, ())


def contents_column_order(shape: SkewShape) -> tuple[int, ...]:
    if shape.is_empty:
        raise ShapeError("empty diagram")
    return shape.contents


def nonempty_rows(shape: SkewShape) -> int:
    mu = shape.mu
    return sum(1 for i, l in enumerate(shape.lam) if l > (mu[i] if i < len(mu) else 0))


def _conj(parts: tuple[int, ...]) -> list[int]:
    if not parts:
        return []
    out = []
    k = len(parts)
    for j in range(1, parts[0] + 1):
        while parts[k - 1] < j:
            k -= 1
        out.append(k)
    return out


def conjugate(shape: SkewShape) -> SkewShape:
    """lambda*/mu*; the box set is transposed."""
    if shape.is_empty:
        return shape
    return _normalize_rows(_conj(shape.lam), _conj(shape.mu))


def rotate180(shape: SkewShape) -> SkewShape:
    """Box set rotated by 180 degrees, (i, j) -> (k - i + 1, l - j + 1)."""
    if shape.is_empty:
        return shape
    k, L = len(shape.lam), shape.lam[0]
    mu = [shape.mu[i] if i < len(shape.mu) else 0 for i in range(k)]
    return _normalize_rows([L - mu[i] for i in reversed(range(k))], [L - shape.lam[i] for i in reversed(range(k))])


# Durfee rank


@dataclass(frozen=True)
class DurfeeReport:
    rank: int
    convex_diagonal_boxes: int
    concave_diagonal_boxes: int
    ell: int


def _diagonal_sizes(shape: SkewShape) -> dict[int, int]:
    sizes: dict[int, int] = {}
    for i, j in shape.boxes:
        sizes[j - i] = sizes.get(j - i, 0) + 1
    return sizes


def _rows(shape: SkewShape) -> tuple[list[int], list[int]]:
    lam = list(shape.lam)
    mu = list(shape.mu) + [0] * (len(lam) - len(shape.mu))
    return lam, mu


def left_convex_boxes(shape: SkewShape) -> list[tuple[int, int]]:
    b = shape.boxes
    return sorted(x for x in b if (x[0] - 1, x[1]) not in b and (x[0], x[1] - 1) not in b)


def left_concave_boxes(shape: SkewShape) -> list[tuple[int, int]]:
    b = shape.boxes
    return sorted(
        x
        for x in b
        if (x[0] - 1, x[1]) in b and (x[0], x[1] - 1) in b and (x[0] - 1, x[1] - 1) not in b
    )


def durfee_rank_definition(shape: SkewShape) -> DurfeeReport:
    """Count boxes on diagonals through left-convex / left-concave boxes.

    Works on row intervals ``(mu_i, lambda_i]``; a box (i, j) is in the shape
    iff ``mu_i < j <= lambda_i``.
    """
    lam, mu = _rows(shape)
    k = len(lam)
    sizes: dict[int, int] = {}
    convex: set[int] = set()
    concave: set[int] = set()
    ell = 0
    for i in range(k):
        lo, hi = mu[i], lam[i]
        if hi > lo:
            ell += 1
        ulo, uhi = (mu[i - 1], lam[i - 1]) if i else (0, 0)
        for j in range(lo + 1, hi + 1):
            c = j - i
            sizes[c] = sizes.get(c, 0) + 1
            up = ulo < j <= uhi
            left = j - 1 > lo
            if not up and not left:
                convex.add(c)
            elif up and left and not (ulo < j - 1 <= uhi):
                concave.add(c)
    d = sum(sizes[c] for c in convex)
    dp = sum(sizes[c] for c in concave)
    return DurfeeReport(d - dp, d, dp, ell)


def durfee_rank_formula(shape: SkewShape) -> int:
    """ell(omega) minus the number of pairs i < j with lambda_j - j = mu_i - i."""
    lam, mu = shape.lam, shape.mu
    k = len(lam)
    mu_i = [mu[i] if i < len(mu) else 0 for i in range(k)]
    pairs = sum(1 for i in range(k) for j in range(i + 1, k) if lam[j] - (j + 1) == mu_i[i] - (i + 1))
    return nonempty_rows(shape) - pairs


def durfee_row_terms(shape: SkewShape) -> list[tuple[int, int]]:
    """Per non-empty row: (d_i, d'_i), the box counts of the diagonal through
    the row's leftmost box and of the diagonal just below it."""
    sizes = _diagonal_sizes(shape)
    out = []
    for i in range(len(shape.lam)):
        m = shape.mu[i] if i < len(shape.mu) else 0
        if shape.lam[i] > m:
            c = (m + 1) - (i + 1)
            out.append((sizes.get(c, 0), sizes.get(c - 1, 0)))
    return out


# Enumeration


def enumerate_skew_shapes(max_boxes: int, max_rows: int, max_cols: int) -> list[SkewShape]:
    """All non-empty shapes with at most ``max_boxes`` boxes inside a
    ``max_rows x max_cols`` box, one per translation class.

    Generates normal forms directly, row by row; the order is deterministic
    (by box count, then by ``(lambda, mu)``).
    """
    out: list[tuple[tuple[int, ...], tuple[int, ...]]] = []

    def rec(lam: list[int], mu: list[int], used: int):
        # emit when the last row is non-empty and some row reaches column 1
        if lam and lam[-1] > mu[-1] and mu[-1] == 0:
            m = len(mu)
            while m and mu[m - 1] == 0:
                m -= 1
            out.append((used, tuple(lam), tuple(mu[:m])))
        if len(lam) >= max_rows:
            return
        pl, pm = lam[-1], mu[-1]
        for m in range(0, pm + 1):
            for l in range(m + 1, min(pl, m + max_boxes - used) + 1):
                lam.append(l)
                mu.append(m)
                rec(lam, mu, used + l - m)
                lam.pop()
                mu.pop()
        if pm > 0 and lam[-1] > mu[-1]:
            # a run of empty rows in the middle, canonically (pm, pm)
            depth = 0
            while len(lam) < max_rows - 1:
                lam.append(pm)
                mu.append(pm)
                depth += 1
                for m in range(0, pm + 1):
                    for l in range(max(m + 1, 1), min(pm, m + max_boxes - used) + 1):
                        lam.append(l)
                        mu.append(m)
                        rec(lam, mu, used + l - m)
                        lam.pop()
                        mu.pop()
            for _ in range(depth):
                lam.pop()
                mu.pop()

    for l in range(1, max_cols + 1):
        for m in range(0, l):
            if l - m <= max_boxes:
                rec([l], [m], l - m)
    out.sort()
    return [SkewShape(lam, mu) for _, lam, mu in out]


def brute_force_shapes(max_boxes: int, max_rows: int, max_cols: int) -> set[frozenset]:
    """Independent oracle: every (lambda, mu) inside the bounding box, reduced
    to translation classes of box sets."""
    from itertools import combinations_with_replacement

    def partitions_in_box(rows: int, cols: int):
        for c in combinations_with_replacement(range(cols, -1, -1), rows):
            yield c

    seen = set()
    for lam in partitions_in_box(max_rows, max_cols):
        for mu in partitions_in_box(max_rows, max_cols):
            if any(m > l for m, l in zip(mu, lam)):
                continue
            n = sum(lam) - sum(mu)
            if n == 0 or n > max_boxes:
                continue
            boxes = [(i + 1, j) for i in range(max_rows) for j in range(mu[i] + 1, lam[i] + 1)]
            i0 = min(b[0] for b in boxes)
            j0 = min(b[1] for b in boxes)
            seen.add(frozenset((i - i0, j - j0) for i, j in boxes))
    return seen


# Dimension oracle


def ssyt_count(shape: SkewShape, N: int) -> int:
    """Column-strict fillings of ``shape`` with entries in 1..N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    order = sorted(shape.boxes)  # row by row, left to right
    filling: dict[tuple[int, int], int] = {}

    def rec(k: int) -> int:
        if k == len(order):
            return 1
        i, j = order[k]
        lo = 1
        left = filling.get((i, j - 1))
        if left is not None:
            lo = left
        up = filling.get((i - 1, j))
        if up is not None:
            lo = max(lo, up + 1)
        total = 0
        for v in range(lo, N + 1):
            filling[(i, j)] = v
            total += rec(k + 1)
        filling.pop((i, j), None)
        return total

    return rec(0)


def jacobi_trudi_count(shape: SkewShape, N: int) -> int:
    """Second oracle: det[h_{lambda_i - mu_j - i + j}] at x_1 = ... = x_N = 1."""
    from math import comb

    from flint import fmpz_mat

    k = len(shape.lam)
    if k == 0:
        return 1
    mu = [shape.mu[i] if i < len(shape.mu) else 0 for i in range(k)]

    def h(r: int) -> int:
        return 0 if r < 0 else comb(N + r - 1, r)

    m = fmpz_mat(k, k, [h(shape.lam[i] - mu[j] - i + j) for i in range(k) for j in range(k)])
    return int(m.det())


def iter_shapes_up_to(n: int) -> Iterator[SkewShape]:
    yield from enumerate_skew_shapes(n, n, n)
