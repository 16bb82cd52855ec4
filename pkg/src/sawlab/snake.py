"""Conditional closing probabilities and the quantities behind the snake argument.

A walk whose NE vertex is its start can be extended by a second walk from
the same apex; together they form a longer walk split at its NE vertex.
Everything here is computed by exhaustive enumeration of those extensions.
"""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath

from .enumeration import (
    below_apex,
    closing_probability,
    completions,
    enumerate_class,
    search_directions,
)
from .errors import AmbiguousComparison, EmptyDomain, HypothesisUnmet, InvalidParams, NotExtendable
from .exact import GUARD_BAND, power_cmp, rational, to_mpf
from .lattice import Point, Walk, path_from_directions
from .surgery import polygons

Path = tuple[Point, ...]


def _as_first(gamma) -> Path:
    """Vertex tuple of a walk that starts at its NE vertex, moved to the origin."""
    verts = gamma.vertices if isinstance(gamma, Walk) else tuple(gamma)
    x0, y0 = verts[0]
    out = tuple((x - x0, y - y0) for x, y in verts)
    if any(not below_apex(*p) for p in out[1:]):
        raise InvalidParams("walk does not start at its NE vertex")
    return out


@lru_cache(maxsize=200_000)
def completion_counts(first: Path, length: int) -> tuple[int, int]:
    """(number of second parts, number of them giving a closing walk)."""
    ex, ey = first[-1]
    total = closing = 0
    for phi in completions(first, length):
        total += 1
        fx, fy = phi[-1]
        closing += abs(fx - ex) + abs(fy - ey) == 1
    return total, closing


def conditional_closing_q(n: int, m: int, gamma) -> Fraction:
    """Probability that a uniform walk of length ``m`` with first part ``gamma`` closes."""
    first = _as_first(gamma)
    if len(first) - 1 != n:
        raise InvalidParams(f"first part has length {len(first) - 1}, expected {n}")
    if m <= n:
        raise InvalidParams("need m > n")
    total, closing = completion_counts(first, m - n)
    if total == 0:
        raise NotExtendable("no second part of the required length")
    return Fraction(closing, total)


def _first_part(dirs: str) -> tuple[Path, bool]:
    """First part of the two-part split of a walk given by directions, and whether it closes."""
    pts = path_from_directions((0, 0), dirs)
    ax, ay = max(pts, key=lambda p: (p[1], p[0]))
    pts = [(x - ax, y - ay) for x, y in pts]
    j = pts.index((0, 0))
    head = tuple(pts[j::-1])
    tail = tuple(pts[j:])
    if len(head) > 1 and head[1] == (-1, 0):
        first = head
    elif len(tail) > 1 and tail[1] == (-1, 0):
        first = tail
    else:
        first = head if len(head) == 1 else tail
    (sx, sy), (ex, ey) = pts[0], pts[-1]
    return first, abs(sx - ex) + abs(sy - ey) == 1


@lru_cache(maxsize=None)
def _split_table(m: int) -> dict[Path, tuple[int, int]]:
    _, dirs, _ = search_directions("rooted", m)
    table: dict = defaultdict(lambda: [0, 0])
    for d in dirs:
        first, closes = _first_part(d)
        row = table[first]
        row[0] += 1
        row[1] += closes
    return {k: (a, b) for k, (a, b) in table.items()}


def q_by_filtering(n: int, m: int) -> dict[Path, Fraction]:
    """Conditional closing probability for every first part of length ``n``,
    obtained by splitting every walk of length ``m`` at its NE vertex."""
    return {
        first: Fraction(c, t)
        for first, (t, c) in _split_table(m).items()
        if len(first) - 1 == n
    }


@lru_cache(maxsize=None)
def first_length_profile(m: int) -> dict[int, tuple[int, int]]:
    """For walks of length ``m`` with NE at the origin: first-part length -> (count, closing)."""
    prof: dict = defaultdict(lambda: [0, 0])
    for first, (t, c) in _split_table(m).items():
        row = prof[len(first) - 1]
        row[0] += t
        row[1] += c
    return {i: (prof[i][0], prof[i][1]) for i in range(m + 1)}


def first_parts(n: int, m: int) -> list[Walk]:
    res = enumerate_class("first_nm", n, m=m)
    return [Walk.parse(s) for s in res.members]


def phi_hat(n: int, m: int, alpha) -> list[Walk]:
    """First parts of length ``n`` whose closing probability at length ``m`` exceeds ``m**-alpha``."""
    a = rational(alpha)
    out = []
    for g in first_parts(n, m):
        q = conditional_closing_q(n, m, g)
        if q and power_cmp([(q, 1)], [(m, -a)]) > 0:
            out.append(g)
    return out


def in_phi_hat(prefix: Path, m: int, alpha) -> bool:
    total, closing = completion_counts(prefix, m - (len(prefix) - 1))
    if total == 0 or closing == 0:
        return False
    return power_cmp([(Fraction(closing, total), 1)], [(m, -rational(alpha))]) > 0


@dataclass(frozen=True)
class SnakeParams:
    n: int
    ell: int
    alpha: Fraction
    beta: Fraction = Fraction(1)
    eta: Fraction = Fraction(0)
    d: int = 2

    def __post_init__(self):
        for name in ("alpha", "beta", "eta"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if not 0 <= self.ell <= self.n:
            raise InvalidParams("need 0 <= ell <= n")
        if self.alpha < 0 or self.eta < 0 or self.beta <= 0:
            raise InvalidParams("need alpha, eta >= 0 and beta > 0")
        if self.d != 2:
            raise InvalidParams("only the square lattice is implemented")

    @property
    def delta(self) -> Fraction:
        return self.beta - self.eta - self.alpha


def charming_indices(gamma, params: SnakeParams) -> list[int]:
    """Indices k (same parity as ell) where the prefix up to k closes often enough.

    Index k is charming when a walk of length ``k + n - ell`` with first part
    ``gamma[0..k]`` closes with probability above ``n**-alpha``.
    """
    path = _as_first(gamma)
    ell, n = params.ell, params.n
    if len(path) - 1 != ell:
        raise InvalidParams(f"expected a first part of length {ell}")
    out = []
    for k in range(ell % 2, ell + 1, 2):
        total, closing = completion_counts(path[: k + 1], n - ell)
        if total and closing:
            if power_cmp([(Fraction(closing, total), 1)], [(n, -params.alpha)]) > 0:
                out.append(k)
    return out


def charming_snake_test(gamma, params: SnakeParams) -> bool:
    """At least ``n**(beta-eta)/4`` charming indices within ``n**beta`` of ``ell``."""
    n, ell = params.n, params.ell
    window = [
        k
        for k in charming_indices(gamma, params)
        if k == ell or power_cmp([(ell - k, 1)], [(n, params.beta)]) <= 0
    ]
    if not window:
        return False
    return power_cmp([(4 * len(window), 1)], [(n, params.beta - params.eta)]) >= 0


def cs_probability(params: SnakeParams) -> Fraction:
    """Fraction of polygons of length n + 1 whose traversal prefix up to ell is a charming snake."""
    polys = polygons(params.n + 1)
    if not polys:
        raise EmptyDomain(f"no polygons of length {params.n + 1}")
    hits = Counter()
    for p in polys:
        hits[p.traversal[: params.ell + 1]] += 1
    good = sum(c for prefix, c in hits.items() if charming_snake_test(prefix, params))
    return Fraction(good, len(polys))


def theorem_constants(d: int = 2) -> tuple[Fraction, float]:
    """(exponent e with c = 2**e, K) for the snake theorem."""
    e = Fraction(1, 5 * (4 * d + 1))
    k = 20 * (4 * d + 1) * math.log2(4 * d)
    return e, k


@dataclass(frozen=True)
class SnakeReport:
    n: int
    ell: int
    delta: str
    lhs: str
    rhs: float
    rhs_check: float
    hypothesis_met: bool
    n_threshold: float
    n_large_enough: bool

    def to_dict(self) -> dict:
        return asdict(self)


def snake_hypothesis_eval(params: SnakeParams) -> SnakeReport:
    """Compare the charming-snake probability with the theorem's threshold.

    The right side ``c**(-n**delta / 2)`` is computed twice, once as a power
    in high precision and once through ``exp`` in double precision.
    """
    delta = params.delta
    if delta <= 0:
        raise InvalidParams("need beta - eta - alpha > 0")
    e, k_const = theorem_constants(params.d)
    lhs = cs_probability(params)
    with mpmath.workdps(50):
        c = mpmath.mpf(2) ** to_mpf(e)
        rhs = c ** (-(mpmath.mpf(params.n) ** to_mpf(delta)) / 2)
        diff = to_mpf(lhs) - rhs
        if abs(diff) <= GUARD_BAND:
            raise AmbiguousComparison("probability agrees with the threshold to within the guard band")
        met = bool(diff >= 0)
        rhs_f = float(rhs)
    rhs_check = math.exp(-(params.n ** float(delta)) * math.log(2) * float(e) / 2)
    threshold = k_const ** (1 / float(delta))
    return SnakeReport(
        params.n,
        params.ell,
        str(delta),
        str(lhs),
        rhs_f,
        rhs_check,
        met,
        threshold,
        params.n >= threshold,
    )


def x_statistic(poly_or_prefix, ell: int, m_prime: int, alpha) -> int:
    """Number of k <= ell with ``gamma[0..k]`` in the high-closing set at length ``m' + k - 1``."""
    path = poly_or_prefix.traversal if hasattr(poly_or_prefix, "traversal") else poly_or_prefix
    path = _as_first(path[: ell + 1])
    if m_prime < 1:
        raise InvalidParams("need m' >= 1")
    return sum(in_phi_hat(path[: k + 1], m_prime + k - 1, alpha) for k in range(ell + 1))


# typicality


@dataclass(frozen=True)
class TypicalityParams:
    """Exponents for the typicality checks.

    ``alpha1`` and ``delta1`` feed the rare-closing index count.
    ``i`` optionally pins the dyadic scale.
    """

    chi: Fraction
    eps1: Fraction
    eps2: Fraction
    a: Fraction = Fraction(0)
    i: Optional[int] = None
    alpha1: Fraction = Fraction(1)
    delta1: Fraction = Fraction(1, 2)

    def __post_init__(self):
        for name in ("chi", "eps1", "eps2", "a", "alpha1", "delta1"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.chi < 0 or self.a < 0:
            raise InvalidParams("need chi >= 0 and a >= 0")
        if not 0 < self.eps1 <= self.eps2:
            raise InvalidParams("need 0 < eps1 <= eps2")
        if self.i is not None and self.i < 0:
            raise InvalidParams("scale index must be non-negative")


@dataclass(frozen=True)
class TypicalPairReport:
    k: int
    j: int
    count: int
    closing: int
    in_E: bool
    dyadic: bool
    cpt_lhs: str
    cpt_ok: bool
    bad_index_set: tuple[int, ...]
    bad_index_bound: float
    closecard_hypothesis: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _dyadic(k: int, j: int, scale: Optional[int] = None) -> bool:
    scales = [scale] if scale is not None else range(0, k.bit_length() + 1)
    for i in scales:
        if 2**i <= k <= 2**i + 2 ** (i - 2) and 2 ** (i + 4) <= j <= 2 ** (i + 5):
            return True
    return False


def typical_pair_checks(k: int, j: int, params: TypicalityParams) -> TypicalPairReport:
    """Evaluate the typicality conditions for the pair (k, j).

    ``in_E`` compares the number of walks of length ``j - 1`` whose first
    part has length ``k`` against ``(j-1)**(1/2 + chi + eps1)`` times the
    number of those that close.  ``cpt_ok`` checks that a uniform polygon
    of length ``j`` rarely has a traversal prefix of length ``k`` outside the
    high-closing set with exponent ``1/2 + (a+1) chi + eps2``.
    ``bad_index_set`` is the rare-closing index set at ``n = j - 1``.
    """
    chi, eps1, eps2, a = params.chi, params.eps1, params.eps2, params.a
    if not 0 <= k < j:
        raise InvalidParams("need 0 <= k < j")
    count, closing = first_length_profile(j - 1).get(k, (0, 0))
    expo = Fraction(1, 2) + chi + eps1
    in_e = closing > 0 and power_cmp([(count, 1)], [(j - 1, expo), (closing, 1)]) < 0

    alpha = Fraction(1, 2) + (a + 1) * chi + eps2
    polys = polygons(j)
    if not polys:
        raise EmptyDomain(f"no polygons of length {j}")
    outside = Counter()
    for p in polys:
        outside[p.traversal[: k + 1]] += 1
    bad = sum(c for pre, c in outside.items() if not in_phi_hat(pre, j - 1, alpha))
    lhs = Fraction(bad, len(polys))
    ok = lhs == 0 or power_cmp([(lhs, 1)], [(j, -(a * chi + eps2 - eps1))]) <= 0
    card = closecard(j - 1, params.alpha1, params.delta1)
    return TypicalPairReport(
        k, j, count, closing, bool(in_e), _dyadic(k, j, params.i), str(lhs), bool(ok),
        card.violating, card.bound, card.hypothesis_met,
    )


@dataclass(frozen=True)
class CloseCardReport:
    n: int
    hypothesis_met: bool
    violating: tuple[int, ...]
    bound: float
    within_bound: bool

    def to_dict(self) -> dict:
        return asdict(self)


def closecard(n: int, alpha1, delta1, strict: bool = False) -> CloseCardReport:
    """First-part lengths whose walks close unusually rarely.

    Index i violates when the walks of length ``n`` with first part of length
    i outnumber the closing ones by a factor of at least ``n**(alpha'+delta')``.
    The count of violators is compared with ``2 n**(1 - delta')``.  With
    ``strict`` an unmet closing hypothesis raises instead of being reported.
    """
    a, d = rational(alpha1), rational(delta1)
    met = power_cmp([(closing_probability(n), 1)], [(n, -a)]) >= 0 if closing_probability(n) else False
    if strict and not met:
        raise HypothesisUnmet(f"closing probability at n={n} is below n**-{a}")
    viol = []
    for i, (t, c) in sorted(first_length_profile(n).items()):
        if t == 0 or c == 0 or power_cmp([(t, 1)], [(n, a + d), (c, 1)]) >= 0:
            viol.append(i)
    bound = 2 * n ** (1 - float(d))
    within = power_cmp([(len(viol), 1)], [(2, 1), (n, 1 - d)]) <= 0 if viol else True
    return CloseCardReport(n, bool(met), tuple(viol), bound, bool(within))
