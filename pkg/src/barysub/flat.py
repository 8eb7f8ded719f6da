"""The six maps of the flat-triangle iterated function system on [0, 1/2].

Each ``z_i`` sends the shape ratio of a flat triangle to that of its ``i``-th
barycentric child.  On every piece of its domain ``z_i`` is a homography
``(a + b x) / (c + d x)``; ``HOMOGRAPHIES`` holds those pieces exactly so the
certification code and the preimage counter can work over the rationals.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import DepthTooLarge

MAX_DEPTH = 8

_SQRT_2_3 = math.sqrt(2.0 / 3.0)
_SQRT_1_6 = math.sqrt(1.0 / 6.0)
_SQRT_3_2 = math.sqrt(1.5)

HALF = Fraction(1, 2)
BREAK_Z2 = Fraction(2, 7)
BREAK_Z3 = Fraction(1, 5)


class Branch(NamedTuple):
    """``x -> (a + b x) / (c + d x)`` on ``[lo, hi)``, or ``[lo, hi]`` when ``hi == 1/2``."""

    lo: Fraction
    hi: Fraction
    a: int
    b: int
    c: int
    d: int

    def contains(self, x: Fraction) -> bool:
        return self.lo <= x and (x < self.hi or (x == self.hi == HALF))

    def __call__(self, x):
        return (self.a + self.b * x) / (self.c + self.d * x)


_Z = Fraction(0)
HOMOGRAPHIES: dict[int, tuple[Branch, ...]] = {
    1: (Branch(_Z, HALF, 0, 3, 2, 2),),
    2: (Branch(_Z, BREAK_Z2, 0, 3, 2, -1), Branch(BREAK_Z2, HALF, 2, -4, 2, -1)),
    3: (Branch(_Z, BREAK_Z3, 1, 1, 3, -3), Branch(BREAK_Z3, HALF, 2, -4, 3, -3)),
    4: (Branch(_Z, HALF, 1, 1, 4, -2),),
    5: (Branch(_Z, HALF, 1, -2, 4, -2),),
    6: (Branch(_Z, HALF, 1, -2, 3, 0),),
}


def branch_for(i: int, x) -> Branch:
    """The homography piece of ``z_i`` active at ``x`` (strict ``x < break`` picks the first)."""
    for br in HOMOGRAPHIES[i]:
        if x < br.hi or br.hi == HALF:
            return br
    raise AssertionError("unreachable")


def z_map(i: int, x: float) -> float:
    """Shape ratio of child ``i`` of the flat triangle with ratio ``x``."""
    if i == 1:
        return 3.0 * x / (2.0 + 2.0 * x)
    if i == 2:
        return 3.0 * x / (2.0 - x) if x < 2.0 / 7.0 else (2.0 - 4.0 * x) / (2.0 - x)
    if i == 3:
        return (1.0 + x) / (3.0 - 3.0 * x) if x < 0.2 else (2.0 - 4.0 * x) / (3.0 - 3.0 * x)
    if i == 4:
        return (1.0 + x) / (4.0 - 2.0 * x)
    if i == 5:
        return (1.0 - 2.0 * x) / (4.0 - 2.0 * x)
    if i == 6:
        return (1.0 - 2.0 * x) / 3.0
    raise ValueError(f"map index must be in 1..6, got {i}")


def z_map_array(i: int, x: np.ndarray) -> np.ndarray:
    """Vectorized ``z_map`` for one index over an array of ratios."""
    x = np.asarray(x, dtype=float)
    if i == 1:
        return 3.0 * x / (2.0 + 2.0 * x)
    if i == 2:
        return np.where(x < 2.0 / 7.0, 3.0 * x / (2.0 - x), (2.0 - 4.0 * x) / (2.0 - x))
    if i == 3:
        return np.where(x < 0.2, (1.0 + x) / (3.0 - 3.0 * x), (2.0 - 4.0 * x) / (3.0 - 3.0 * x))
    if i == 4:
        return (1.0 + x) / (4.0 - 2.0 * x)
    if i == 5:
        return (1.0 - 2.0 * x) / (4.0 - 2.0 * x)
    if i == 6:
        return (1.0 - 2.0 * x) / 3.0
    raise ValueError(f"map index must be in 1..6, got {i}")


def z_step_array(x: np.ndarray, rolls: np.ndarray) -> np.ndarray:
    """Apply ``z_{rolls[k]}`` to ``x[k]`` elementwise."""
    out = np.empty_like(np.asarray(x, dtype=float))
    for i in range(1, 7):
        mask = rolls == i
        if mask.any():
            out[mask] = z_map_array(i, x[mask])
    return out


def z_derivative_abs(i: int, x):
    """``|z_i'|(x)``; at the breakpoints both one-sided values agree in magnitude."""
    if i == 1:
        return 1.5 / (1.0 + x) ** 2
    if i == 2:
        return 6.0 / (2.0 - x) ** 2
    if i == 3:
        return (2.0 / 3.0) / (1.0 - x) ** 2
    if i in (4, 5):
        return 1.5 / (2.0 - x) ** 2
    if i == 6:
        return 2.0 / 3.0 + 0.0 * x
    raise ValueError(f"map index must be in 1..6, got {i}")


def growth_G(i: int, x):
    """Perimeter growth factor of child ``i`` of the flat triangle ``x`` (times sqrt 6)."""
    if i == 1:
        return _SQRT_2_3 * (1.0 + x)
    if i == 2:
        return _SQRT_1_6 * (2.0 - x)
    if i == 3:
        return _SQRT_3_2 * (1.0 - x)
    if i in (4, 5):
        return _SQRT_2_3 * (2.0 - x)
    if i == 6:
        return _SQRT_3_2 + 0.0 * x
    raise ValueError(f"map index must be in 1..6, got {i}")


def mean_log_growth(x: float, depth: int) -> float:
    """Average over all ``6**depth`` index words of the summed ``ln G`` along the word.

    Depth 1 is the one-step mean of ``ln G``; depth 2 is ``ln(R(x)) / 36``.
    """
    if depth < 1:
        raise ValueError("depth must be a positive integer")
    if depth > MAX_DEPTH:
        raise DepthTooLarge(f"depth {depth} exceeds {MAX_DEPTH} (6**{depth} words)")

    def total(z: float, d: int) -> float:
        # sum over words of length d of the summed log growth, started at z
        weight = 6 ** (d - 1)
        acc = 0.0
        for i in range(1, 7):
            acc += weight * math.log(growth_G(i, z))
            if d > 1:
                acc += total(z_map(i, z), d - 1)
        return acc

    return total(float(x), depth) / 6**depth


def product_R(x: float) -> float:
    """``prod_{i,j} G(i, z_j(x)) G(j, x)``, equal to ``exp(36 * mean_log_growth(x, 2))``."""
    prod = 1.0
    for i, j in itertools.product(range(1, 7), repeat=2):
        prod *= growth_G(i, z_map(j, x)) * growth_G(j, x)
    return prod


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


def preimages(x) -> list[tuple[int, Fraction]]:
    """All pairs ``(i, y)`` with ``z_i(y) == x``, solved exactly per homography piece.

    Floats are taken at their exact binary value; pass ``Fraction(1, 3)`` or
    ``"1/3"`` for ratios that are not dyadic.
    """
    x = _as_fraction(x)
    if not (0 <= x <= HALF):
        raise ValueError(f"{x} is outside [0, 1/2]")
    out = []
    for i, branches in HOMOGRAPHIES.items():
        for br in branches:
            # x (c + d y) = a + b y  =>  y (x d - b) = a - x c
            lhs = x * br.d - br.b
            rhs = br.a - x * br.c
            if lhs == 0:
                if rhs == 0:
                    raise AssertionError("degenerate homography")
                continue
            y = rhs / lhs
            if br.contains(y) and br.c + br.d * y != 0:
                out.append((i, y))
    return out


def preimage_count(x) -> int:
    """Number of pairs ``(i, y)`` in ``{1..6} x [0, 1/2]`` with ``z_i(y) == x``."""
    return len(preimages(x))
