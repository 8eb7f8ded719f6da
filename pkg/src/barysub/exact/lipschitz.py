"""Grid checks: the derivative-bound positivity test and Lipschitz products of composed maps.

These evaluate in floating point on a mesh; the exactness lives in
``cert``.  ``S_n = {0, 1, ..., n} / (2n)`` is the mesh of [0, 1/2].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..flat import mean_log_growth, z_derivative_abs, z_map_array

# |d/dx log R| <= 36 * 14/3 on every piece (see cert.derivative_bound)
DERIVATIVE_BOUND = Fraction(14, 3)
# per-factor slack for M^3: slope bound 805 over half a mesh step 1/(2n), rounded up
ORDER3_SLACK = 202


@dataclass
class GridCert:
    N: int
    min_value: float
    argmin: float
    margin: float

    @property
    def verdict(self) -> bool:
        return self.margin > 0

    def to_json(self) -> dict:
        return {
            "kind": "F_grid",
            "N": self.N,
            "min_value": self.min_value,
            "argmin": self.argmin,
            "margin": self.margin,
            "verdict": self.verdict,
        }


def grid_points(N: int) -> list[float]:
    """``i/N`` inside [0, 1/2], plus 1/2 itself."""
    pts = [i / N for i in range(N // 2 + 1)]
    if pts[-1] != 0.5:
        pts.append(0.5)
    return pts


def grid_certify_F(N: int) -> GridCert:
    """``min_i F(i/N) - 14/(6N) > 0`` proves the two-step mean log growth positive."""
    if N < 1:
        raise ValueError("N must be >= 1")
    values = [(mean_log_growth(x, 2), x) for x in grid_points(N)]
    fmin, xmin = min(values)
    return GridCert(N, fmin, xmin, fmin - float(DERIVATIVE_BOUND) / (2 * N))


@dataclass
class LipschitzResult:
    order: int
    grid_n: int
    product: float
    bound: str  # "lower" or "upper" on the true product of Lipschitz constants

    @property
    def verdict(self) -> bool:
        """True iff the grid product is below one."""
        return self.product < 1.0

    def to_json(self) -> dict:
        return {
            "kind": "lipschitz",
            "order": self.order,
            "grid_n": self.grid_n,
            "product": self.product,
            "bound": self.bound,
            "verdict": self.verdict,
        }


def mesh(n: int) -> np.ndarray:
    return np.arange(n + 1) / (2.0 * n)


def composed_derivative(word: tuple[int, ...], x: np.ndarray) -> np.ndarray:
    """``|(z_{w_1} o ... o z_{w_k})'|`` on ``x`` by the chain rule (innermost map last)."""
    out = np.ones_like(x)
    z = x
    for i in reversed(word):
        out = out * z_derivative_abs(i, z)
        z = z_map_array(i, z)
    return out


def lipschitz_criterion(order: int, grid_n: int) -> LipschitzResult:
    """Product over all index words of length ``order`` of grid-supremum Lipschitz constants.

    Orders 1 and 2 use the raw grid suprema, which under-estimate the true
    constants, so a product above one refutes the contraction criterion.
    Order 3 adds ``202/grid_n`` to every factor, which over-estimates, so a
    product below one establishes it.
    """
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    if grid_n < 1:
        raise ValueError("grid_n must be >= 1")
    x = mesh(grid_n)
    slack = ORDER3_SLACK / grid_n if order == 3 else 0.0
    prod = 1.0
    for word in itertools.product(range(1, 7), repeat=order):
        prod *= float(composed_derivative(word, x).max()) + slack
    return LipschitzResult(order, grid_n, prod, "upper" if order == 3 else "lower")


def order2_reference_replay() -> float:
    """Replay of the reference order-2 product value 92.067225.

    The reference computation evaluates its three-map routine (first map fixed
    to ``z_1``, slack ``202/10000`` included) over index codes 0..35 on the
    mesh {0, 1/2}; this reproduces that arithmetic, not the order-2 product
    over pairs that ``lipschitz_criterion(2, 1)`` computes.
    """
    x = np.array([0.0, 0.5])
    prod = 1.0
    for code in range(36):
        k, l = divmod(code, 6)
        prod *= float(composed_derivative((1, k + 1, l + 1), x).max()) + 202 / 10000
    return prod
