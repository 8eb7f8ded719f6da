"""Real root counting and isolation with Sturm sequences over the integers.

Polynomials are handled as integer coefficient lists (lowest degree first)
obtained from ``RationalPolynomial.integer_primitive``; positive rescaling
changes neither roots nor signs, so all work stays in exact integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

from ..errors import ZeroPolynomial
from .poly import RationalPolynomial

IntPoly = list[int]


def _trim(p: IntPoly) -> IntPoly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _primitive(p: IntPoly) -> IntPoly:
    """Divide by the positive content; signs are preserved."""
    if not p:
        return p
    g = reduce(math.gcd, p)
    return [c // g for c in p] if g > 1 else list(p)


def _derivative(p: IntPoly) -> IntPoly:
    return _trim([k * c for k, c in enumerate(p)][1:])


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder ``lc(b)**(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    if delta <= 0:
        return r
    for _ in range(delta):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for j, bc in enumerate(b):
            r[shift + j] -= lr * bc
        r.pop()
        _trim(r)
    return r


def _int_gcd(a: IntPoly, b: IntPoly) -> IntPoly:
    a, b = _primitive(list(a)), _primitive(list(b))
    while b:
        a, b = b, _primitive(_prem(a, b))
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _int_exact_div(a: IntPoly, b: IntPoly) -> IntPoly:
    q, r = divmod(RationalPolynomial(a), RationalPolynomial(b))
    if not r.is_zero():
        raise ArithmeticError("inexact division")
    return q.integer_primitive()[1]


def to_int_poly(p: RationalPolynomial | Sequence[int]) -> IntPoly:
    if isinstance(p, RationalPolynomial):
        return p.integer_primitive()[1]
    return _trim([int(c) for c in p])


def square_free_part(p: RationalPolynomial | Sequence[int]) -> IntPoly:
    """Primitive integer polynomial with the same distinct roots and simple multiplicities."""
    ip = to_int_poly(p)
    if not ip:
        raise ZeroPolynomial("zero polynomial has no square-free part")
    if len(ip) <= 2:
        return ip
    g = _int_gcd(ip, _derivative(ip))
    if len(g) <= 1:
        return ip
    return _int_exact_div(ip, g)


def sturm_sequence(p: RationalPolynomial | Sequence[int]) -> list[IntPoly]:
    """Sturm chain of the square-free part: ``p0, p0', -rem, ...`` up to a constant.

    Each remainder is produced as a pseudo-remainder, its sign corrected to a
    positive multiple of the true remainder, negated, and reduced to its
    primitive part.
    """
    p0 = square_free_part(p)
    seq = [p0]
    p1 = _derivative(p0)
    if not p1:
        return seq
    seq.append(_primitive(p1))
    while len(seq[-1]) > 1:
        a, b = seq[-2], seq[-1]
        r = _prem(a, b)
        if not r:
            break
        if b[-1] < 0 and (len(a) - len(b) + 1) % 2 == 1:
            r = [-c for c in r]
        seq.append(_primitive([-c for c in r]))
    return seq


def sign_at(p: IntPoly, x: Fraction) -> int:
    """Sign of ``p(x)``, evaluated exactly as ``sum c_k n^k d^(deg-k)`` with ``x = n/d``."""
    if not p:
        return 0
    x = Fraction(x)
    n, d = x.numerator, x.denominator
    acc = p[-1]
    dpow = d
    for c in reversed(p[:-1]):
        acc = acc * n + c * dpow
        dpow *= d
    return (acc > 0) - (acc < 0)


def sign_variations(seq: Sequence[IntPoly], x: Fraction) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sturm_count_roots(p: RationalPolynomial | Sequence[int], a, b, seq: list[IntPoly] | None = None) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if not a < b:
        raise ValueError("need a < b")
    if seq is None:
        if not to_int_poly(p):
            raise ZeroPolynomial("cannot count roots of the zero polynomial")
        seq = sturm_sequence(p)
    return sign_variations(seq, a) - sign_variations(seq, b)


def cauchy_bound(p: IntPoly) -> Fraction:
    """Every real root lies strictly inside ``(-B, B)``."""
    lead = abs(p[-1])
    return 1 + Fraction(max(abs(c) for c in p[:-1]), lead) if len(p) > 1 else Fraction(1)


def isolate_real_roots(p: RationalPolynomial | Sequence[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]``, each holding exactly one real root, in increasing order."""
    seq = sturm_sequence(p)
    sq = seq[0]
    if len(sq) <= 1:
        return []
    bound = cauchy_bound(sq)
    out: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, sturm_count_roots(None, -bound, bound, seq))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        left = sturm_count_roots(None, lo, mid, seq)
        stack.append((mid, hi, n - left))
        stack.append((lo, mid, left))
    out.sort()
    return out


def refine_root(p: RationalPolynomial | Sequence[int], lo, hi, width=Fraction(1, 10**7)) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval ``(lo, hi]`` of a simple root by bisection.

    Returns a degenerate interval ``(r, r)`` when a rational root is hit.
    """
    sq = square_free_part(p)
    lo, hi, width = Fraction(lo), Fraction(hi), Fraction(width)
    s_hi = sign_at(sq, hi)
    if s_hi == 0:
        return hi, hi
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign_at(sq, mid)
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi
