"""Monte Carlo engines for the planar and flat subdivision chains.

All runs are driven by ``DieStream``; the die roll ``k`` (1..6) selects child
``k`` in the fixed index order of ``triangle.subdivision_vertices``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import FlatTrace, SizeMismatch
from .flat import z_derivative_abs, z_map, z_step_array
from .rng import DieStream, derive_seeds
from .triangle import ShapePoint, child_step, flat_child_step

_CHUNK = 1 << 16


@dataclass
class ChainTrace:
    """Recorded run; index ``n`` holds the state after ``n`` steps.

    ``rolls[0]`` is 0 (no roll precedes the start).  ``log_y`` follows
    ``ln(Y_n)`` exactly in the log domain, so it stays finite after ``y``
    underflows to 0.0.  Flat traces leave the planar fields as ``None``.
    """

    seed: int | None
    kind: str
    rolls: np.ndarray
    x: np.ndarray
    y: np.ndarray | None = None
    log_y: np.ndarray | None = None
    J: np.ndarray | None = None
    angle: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.x)

    @property
    def steps(self) -> int:
        return len(self.x) - 1


@dataclass
class CoupledTrace:
    planar: ChainTrace
    flat: ChainTrace
    gap: np.ndarray = field(repr=False)


@dataclass
class Histogram:
    """Equal-width histogram on [0, 1/2]; bins are half-open except the last."""

    edges: np.ndarray
    counts: np.ndarray

    @property
    def bins(self) -> int:
        return len(self.counts)

    @property
    def masses(self) -> np.ndarray:
        return self.counts / self.counts.sum()

    @property
    def midpoints(self) -> np.ndarray:
        return (self.edges[:-1] + self.edges[1:]) / 2.0

    def midpoint_sample(self) -> "EmpiricalMeasure":
        """Each visit replaced by its bin midpoint."""
        return EmpiricalMeasure(np.repeat(self.midpoints, self.counts))


@dataclass
class EmpiricalMeasure:
    samples: np.ndarray

    def __post_init__(self):
        s = np.sort(np.asarray(self.samples, dtype=float))
        if s.size and (s[0] < 0.0 or s[-1] > 0.5):
            raise ValueError("samples must lie in [0, 1/2]")
        self.samples = s

    def __len__(self) -> int:
        return len(self.samples)


def _flat_path(start: float, rolls: Sequence[int]) -> np.ndarray:
    xs = np.empty(len(rolls) + 1)
    z = float(start)
    xs[0] = z
    for n, i in enumerate(rolls, 1):
        z = z_map(i, z)
        xs[n] = z
    return xs


def _planar_path(start: ShapePoint, rolls: Sequence[int]):
    steps = len(rolls)
    xs = np.empty(steps + 1)
    ys = np.empty(steps + 1)
    lys = np.empty(steps + 1)
    x, y = start.x, start.y
    ly = math.log(y) if y > 0.0 else -math.inf
    xs[0], ys[0], lys[0] = x, y, ly
    for n, i in enumerate(rolls, 1):
        if y == 0.0 and ly > -math.inf:
            # y underflowed; keep following ln(y) through the flat limit
            x, dly = flat_child_step(x, i)
        else:
            x, y, dly = child_step(x, y, i)
        ly += dly
        xs[n], ys[n], lys[n] = x, y, ly
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        J = np.where(ys > 0.0, 4.0 * (xs * xs + ys * ys - xs + 1.0) / ys, np.inf)
    angle = np.arctan2(ys, ys * ys - xs * (1.0 - xs))
    return xs, ys, lys, J, angle


def _with_start_roll(rolls: np.ndarray) -> np.ndarray:
    return np.concatenate(([0], rolls)).astype(np.int8)


def run_flat_chain(seed: int, start: float, steps: int) -> ChainTrace:
    """``Z_0 = start``, ``Z_{n+1} = z_{roll}(Z_n)``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    if not 0.0 <= start <= 0.5:
        raise ValueError("start must lie in [0, 1/2]")
    rolls = DieStream(seed).rolls(steps)
    return ChainTrace(seed, "flat", _with_start_roll(rolls), _flat_path(start, rolls.tolist()))


def run_triangle_chain(seed: int, start: ShapePoint, steps: int) -> ChainTrace:
    """Planar chain: each step keeps the child picked by the die."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rolls = DieStream(seed).rolls(steps)
    xs, ys, lys, J, angle = _planar_path(start, rolls.tolist())
    return ChainTrace(seed, "triangle", _with_start_roll(rolls), xs, ys, lys, J, angle)


def run_coupled_chain(seed: int, start_xy: ShapePoint, start_z: float, steps: int) -> CoupledTrace:
    """Planar and flat chains driven by one die; ``gap[n] = |X_n - Z_n|``."""
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    rolls = DieStream(seed).rolls(steps)
    rl = rolls.tolist()
    xs, ys, lys, J, angle = _planar_path(start_xy, rl)
    zs = _flat_path(start_z, rl)
    all_rolls = _with_start_roll(rolls)
    planar = ChainTrace(seed, "triangle", all_rolls, xs, ys, lys, J, angle)
    flat = ChainTrace(seed, "flat", all_rolls, zs)
    return CoupledTrace(planar, flat, np.abs(xs - zs))


def iter_flat_chunks(stream: DieStream, start: float, steps: int, chunk: int = _CHUNK):
    """Yield flat-chain states ``Z_0..Z_steps`` in arrays, without keeping history."""
    z = float(start)
    yield np.array([z])
    left = steps
    while left > 0:
        k = min(chunk, left)
        xs = _flat_path(z, stream.rolls(k).tolist())[1:]
        z = float(xs[-1])
        left -= k
        yield xs


def estimate_invariant_measure(seed: int, steps: int, bins: int = 100) -> Histogram:
    """Histogram of every state of one flat run started uniformly on [0, 1/2]."""
    if bins < 1 or steps < bins:
        raise ValueError("need steps >= bins >= 1")
    stream = DieStream(seed)
    start = stream.uniform(0.0, 0.5)
    edges = np.linspace(0.0, 0.5, bins + 1)
    counts = np.zeros(bins, dtype=np.int64)
    for xs in iter_flat_chunks(stream, start, steps):
        counts += np.histogram(xs, bins=edges)[0]
    return Histogram(edges, counts)


def estimate_rate_L(seed: int, steps: int, start: float | None = None) -> float:
    """Running mean of ``-ln(|z'|(Z_{n-1}))/2 = ln G`` along one flat run.

    Without ``start`` the run begins at a uniform point of [0, 1/2] drawn
    from the same stream before any roll.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    stream = DieStream(seed)
    z = stream.uniform(0.0, 0.5) if start is None else float(start)
    total = 0.0
    left = steps
    while left > 0:
        k = min(_CHUNK, left)
        for i in stream.rolls(k).tolist():
            total -= math.log(z_derivative_abs(i, z)) / 2.0
            z = z_map(i, z)
        left -= k
    return total / steps


def lyapunov_slope_Y(trace: ChainTrace) -> float:
    """Least-squares slope of ``ln(Y_n)`` against ``n`` over the second half."""
    if trace.kind != "triangle" or trace.log_y is None:
        raise ValueError("need a planar trace")
    if len(trace) < 100:
        raise ValueError("trace must hold at least 100 states")
    if not np.all(np.isfinite(trace.log_y)):
        raise FlatTrace("ln(Y_n) undefined on a flat state")
    n = np.arange(len(trace), dtype=float)
    half = len(trace) // 2
    slope, _ = np.polyfit(n[half:], trace.log_y[half:], 1)
    return float(slope)


def w1_empirical(p: EmpiricalMeasure, q: EmpiricalMeasure) -> float:
    """W1 between equal-size samples: mean gap between order statistics."""
    if not isinstance(p, EmpiricalMeasure):
        p = EmpiricalMeasure(p)
    if not isinstance(q, EmpiricalMeasure):
        q = EmpiricalMeasure(q)
    if len(p) != len(q):
        raise SizeMismatch(f"{len(p)} vs {len(q)} samples")
    if len(p) == 0:
        return 0.0
    return float(np.mean(np.abs(p.samples - q.samples)))


def limit_set_coverage(trace: ChainTrace, bins: int, burn_in: float = 0.5) -> float:
    """Fraction of the ``bins`` equal cells of [0, 1/2] visited after the burn-in fraction."""
    if len(trace) == 0:
        raise ValueError("empty trace")
    xs = trace.x[int(len(trace) * burn_in):]
    cells = np.minimum((xs * (2 * bins)).astype(np.int64), bins - 1)
    return len(np.unique(cells)) / bins


def angle_exceedance(traces: Iterable[ChainTrace], n: int, threshold: float) -> float:
    """Fraction of planar traces whose largest angle at step ``n`` exceeds ``threshold``."""
    angles = []
    for t in traces:
        if t.angle is None or len(t) <= n:
            raise ValueError("need planar traces longer than n")
        angles.append(t.angle[n])
    if not angles:
        raise ValueError("no traces")
    return float(np.mean(np.asarray(angles) > threshold))


def flat_ensemble(seed: int, start: float, m: int, n: int) -> np.ndarray:
    """States ``Z_n`` of ``m`` independent flat chains sharing one start."""
    stream = DieStream(seed)
    z = np.full(m, float(start))
    for _ in range(n):
        z = z_step_array(z, stream.rolls(m))
    return z


def map_seeds(fn: Callable[[int], object], seed: int, runs: int, workers: int = 1) -> list:
    """Apply ``fn`` to ``runs`` seeds derived from ``seed``; results follow seed order.

    The seed of run ``k`` is ``derive_seed(seed, k)`` regardless of
    ``workers``, so results do not depend on the degree of parallelism.
    """
    seeds = derive_seeds(seed, runs)
    if workers <= 1:
        return [fn(s) for s in seeds]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, seeds))
