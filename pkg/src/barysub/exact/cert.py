"""Exact certification that the two-step mean log growth stays positive and decreasing.

On each of the pieces LOW=[0,1/5], MID=[1/5,2/7], HIGH=[2/7,1/2] every
``z_j`` is a single homography, so with the scaled growth factors
``g_i = sqrt(6) G(i, .)`` (linear with integer coefficients) each entry
``A[i][j] = g_i(z_j(x)) g_j(x)`` is a polynomial of degree at most one and

    R(x) = prod_{i,j} G(i, z_j(x)) G(j, x) = 6**-36 * prod_{i,j} A[i][j](x).

Positivity of the mean log growth is positivity of ``R - 1``, decided by
Sturm root counts and exact evaluation at rational points.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from ..flat import branch_for
from .poly import RationalPolynomial, product
from .sturm import isolate_real_roots, refine_root, sturm_count_roots, sturm_sequence

SCALE = Fraction(1, 6**36)
ROOT_WIDTH = Fraction(1, 10**7)

# sqrt(6) * G(i, t) = c0 + c1 t
SCALED_GROWTH: dict[int, tuple[int, int]] = {
    1: (2, 2),
    2: (2, -1),
    3: (3, -3),
    4: (4, -2),
    5: (4, -2),
    6: (3, 0),
}


class IntervalId(enum.Enum):
    LOW = (Fraction(0), Fraction(1, 5))
    MID = (Fraction(1, 5), Fraction(2, 7))
    HIGH = (Fraction(2, 7), Fraction(1, 2))

    @property
    def lo(self) -> Fraction:
        return self.value[0]

    @property
    def hi(self) -> Fraction:
        return self.value[1]

    @property
    def interior(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @classmethod
    def containing(cls, x) -> "IntervalId":
        """Piece whose homographies are active at ``x`` (breakpoints go right)."""
        x = Fraction(x)
        if x < Fraction(1, 5):
            return cls.LOW
        if x < Fraction(2, 7):
            return cls.MID
        return cls.HIGH


def _growth_poly(i: int) -> RationalPolynomial:
    return RationalPolynomial.linear(*SCALED_GROWTH[i])


@lru_cache(maxsize=None)
def build_growth_matrix(interval: IntervalId) -> tuple[tuple[RationalPolynomial, ...], ...]:
    """6x6 matrix ``A[i-1][j-1] = g_i(z_j(x)) g_j(x)`` with denominators cleared."""
    rows = []
    for i in range(1, 7):
        c0, c1 = SCALED_GROWTH[i]
        row = []
        for j in range(1, 7):
            br = branch_for(j, interval.interior)
            num = RationalPolynomial.linear(br.a, br.b)
            den = RationalPolynomial.linear(br.c, br.d)
            # g_i(num/den) * den = c0 den + c1 num, then the g_j factor absorbs den
            entry = (den * c0 + num * c1) * _growth_poly(j)
            row.append(entry.exact_div(den))
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def growth_product(interval: IntervalId) -> RationalPolynomial:
    """``prod_{i,j} A[i][j]`` as an integer polynomial (no 6**-36 scale)."""
    return product(e for row in build_growth_matrix(interval) for e in row)


@lru_cache(maxsize=None)
def expand_R_polynomial(interval: IntervalId) -> RationalPolynomial:
    """Exact ``R(x) - 1`` on ``interval``."""
    return growth_product(interval) * SCALE - 1


def R_exact(x) -> Fraction:
    """``R(x)`` at a rational point of [0, 1/2], using the piece active there."""
    x = Fraction(x)
    return expand_R_polynomial(IntervalId.containing(x))(x) + 1


def derivative_bound() -> tuple[Fraction, IntervalId, int, int, Fraction]:
    """Largest ``|A'/A|`` over all entries and pieces, with where it occurs.

    Each entry is linear and positive on its piece, so the supremum of
    ``|c1 / (c0 + c1 x)|`` is attained at an endpoint.
    """
    best = None
    for iv in IntervalId:
        for i, row in enumerate(build_growth_matrix(iv), 1):
            for j, a in enumerate(row, 1):
                da = a.derivative()
                for x in (iv.lo, iv.hi):
                    val = abs(da(x) / a(x))
                    if best is None or val > best[0]:
                        best = (val, iv, i, j, x)
    return best


# -- reports ---------------------------------------------------------------

@dataclass
class RootBracket:
    lo: Fraction
    hi: Fraction

    @property
    def approx(self) -> float:
        return float((self.lo + self.hi) / 2)

    def to_json(self) -> dict:
        return {"lo": _frac_str(self.lo), "hi": _frac_str(self.hi), "approx": self.approx}


@dataclass
class IntervalReport:
    interval: IntervalId
    degree: int
    root_count: int
    endpoint_values: dict[str, Fraction]
    interior_value: Fraction
    nearest_external_roots: dict[str, RootBracket | None]
    verdict: bool
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "interval": self.interval.name,
            "bounds": [_frac_str(self.interval.lo), _frac_str(self.interval.hi)],
            "degree": self.degree,
            "root_count": self.root_count,
            "endpoint_values": {k: _frac_str(v) for k, v in self.endpoint_values.items()},
            "endpoint_values_approx": {k: float(v) for k, v in self.endpoint_values.items()},
            "interior_value": _frac_str(self.interior_value),
            "nearest_external_roots": {
                k: (v.to_json() if v is not None else None) for k, v in self.nearest_external_roots.items()
            },
            "verdict": self.verdict,
            **self.extra,
        }


@dataclass
class CertReport:
    kind: str
    intervals: list[IntervalReport]
    checks: dict[str, bool] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return all(r.verdict for r in self.intervals) and all(self.checks.values())

    def interval(self, iv: IntervalId) -> IntervalReport:
        return next(r for r in self.intervals if r.interval is iv)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "intervals": [r.to_json() for r in self.intervals],
            "checks": self.checks,
            "verdict": self.verdict,
        }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _roots_outside(p: RationalPolynomial, iv: IntervalId) -> dict[str, RootBracket | None]:
    """Closest real roots of ``p`` strictly left of ``lo`` and strictly right of ``hi``."""
    left = right = None
    for lo, hi in isolate_real_roots(p):
        lo, hi = refine_root(p, lo, hi, ROOT_WIDTH)
        if hi < iv.lo:
            left = RootBracket(lo, hi)
        elif lo > iv.hi and right is None:
            right = RootBracket(lo, hi)
    return {"left": left, "right": right}


def certify_interval_positive(iv: IntervalId) -> IntervalReport:
    p = expand_R_polynomial(iv)
    seq = sturm_sequence(p)
    count = sturm_count_roots(None, iv.lo, iv.hi, seq)
    ends = {"lo": p(iv.lo), "hi": p(iv.hi)}
    inner = p(iv.interior)
    ok = count == 0 and all(v > 0 for v in ends.values()) and inner > 0
    return IntervalReport(iv, p.degree, count, ends, inner, _roots_outside(p, iv), ok)


def certify_F_positive() -> CertReport:
    """``R - 1 > 0`` on each piece: no root in ``(lo, hi]``, positive at ``lo`` and inside."""
    return CertReport("F_positive", [certify_interval_positive(iv) for iv in IntervalId])


def certify_F_monotone() -> CertReport:
    """``R`` (hence the mean log growth) strictly decreasing on [0, 1/2].

    Per piece the derivative has no root in the open interval and is
    negative at an interior point; across pieces the exact chain
    ``R(0) > R(1/5) > R(2/7) > R(1/2) > 1`` ties the pieces together.
    """
    reports = []
    for iv in IntervalId:
        p = expand_R_polynomial(iv)
        dp = p.derivative()
        seq = sturm_sequence(dp)
        count = sturm_count_roots(None, iv.lo, iv.hi, seq)
        if dp(iv.hi) == 0:
            count -= 1
        ends = {"lo": dp(iv.lo), "hi": dp(iv.hi)}
        inner = dp(iv.interior)
        ok = count == 0 and inner < 0
        reports.append(
            IntervalReport(iv, dp.degree, count, ends, inner, _roots_outside(dp, iv), ok)
        )
    r0 = R_exact(0)
    r15 = R_exact(Fraction(1, 5))
    r27 = R_exact(Fraction(2, 7))
    r12 = R_exact(Fraction(1, 2))
    low, mid, high = (expand_R_polynomial(iv) for iv in IntervalId)
    checks = {
        "continuous_at_1/5": low(Fraction(1, 5)) == mid(Fraction(1, 5)),
        "continuous_at_2/7": mid(Fraction(2, 7)) == high(Fraction(2, 7)),
        "R(0)>R(1/5)": r0 > r15,
        "R(1/5)>R(2/7)": r15 > r27,
        "R(2/7)>R(1/2)": r27 > r12,
        "R(1/2)>1": r12 > 1,
    }
    return CertReport("F_monotone", reports, checks)
