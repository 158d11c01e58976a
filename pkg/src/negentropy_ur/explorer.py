"""Family sweeps, seeded random Fock superpositions and the even-cat frontier."""

from __future__ import annotations

import hashlib
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import ConvergenceError, CurveConstructionError, DomainError
from .measures import UncertaintyReport, uncertainty_report
from .states import Family, construct_state

THREADS_ENV = "NEGENTROPY_UR_THREADS"
RATIO_FLOOR = 1e-9
# below alpha ~ 0.25 the even cat's B ~ alpha^8 sits at round-off level
DEFAULT_CAT_ALPHAS = np.concatenate([[0.0], np.linspace(0.25, 5.0, 191)])

SWEEP_PARAMETER = {
    Family.FOCK: "n",
    Family.LAPLACE: "lam",
    Family.PHOTON_ADDED_COHERENT: "alpha",
    Family.PHOTON_ADDED_SQUEEZED: "xi",
    Family.CAT: "alpha",
    Family.PHOTON_ADDED_THERMAL: "n_bar",
}


def worker_count(workers=None):
    """Resolve a worker count; ``None`` reads NEGENTROPY_UR_THREADS (0 = auto)."""
    if workers is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            workers = int(raw)
        except ValueError:
            raise DomainError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if workers < 0:
        raise DomainError("worker count must be >= 0")
    return workers or os.cpu_count() or 1


def _map(fn, items, workers):
    workers = worker_count(workers)
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class ScatterRow:
    index: int
    seed: int
    digest: str
    b_bound: float
    n_total: float
    ratio: Optional[float]
    above_cat_reference: bool
    entropy_error_estimate: float
    error: Optional[str] = None

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True)
class SweepRow:
    param: float
    report: Optional[UncertaintyReport]
    error: Optional[str] = None

    def flat(self):
        out = {"param": self.param}
        if self.report is not None:
            out.update(self.report.as_dict())
        out["error"] = self.error
        return out


def _stream(master_seed, index):
    if not 0 <= master_seed < 2 ** 64:
        raise DomainError("master seed must be a 64-bit unsigned integer")
    if index < 0:
        raise DomainError("index must be non-negative")
    # Philox counter: the sample index sits in the top word, draws advance
    # the bottom word, so streams never overlap
    bits = np.random.Philox(key=int(master_seed), counter=[0, 0, 0, int(index)])
    return np.random.Generator(bits)


def sample_random_state(master_seed, index, dim):
    """Fock superposition with i.i.d. complex-normal coefficients keyed by
    ``(master_seed, index)``."""
    if dim < 2:
        raise DomainError("dim must be >= 2")
    draws = _stream(master_seed, index).standard_normal(2 * dim)
    return construct_state("fock_superposition",
                           coefficients=draws[:dim] + 1j * draws[dim:])


def coefficient_digest(state):
    raw = np.asarray(state.coefficients, dtype=np.complex128).tobytes()
    return hashlib.sha256(raw).hexdigest()[:16]


class CatReferenceCurve:
    """Piecewise-linear N(B) along even cat states, increasing alpha."""

    def __init__(self, alphas, b_values, n_values):
        self.alphas = np.asarray(alphas, dtype=float)
        self.b = np.asarray(b_values, dtype=float)
        self.n = np.asarray(n_values, dtype=float)
        if np.any(np.diff(self.b) <= 0):
            raise CurveConstructionError(
                "B is not strictly increasing along the alpha grid; refine the grid")

    def covers(self, b):
        return self.b[0] <= b <= self.b[-1]

    def __call__(self, b):
        return np.interp(b, self.b, self.n)

    def rows(self):
        return list(zip(self.alphas, self.b, self.n))


def cat_reference_curve(alphas=DEFAULT_CAT_ALPHAS, config=None, workers=None):
    alphas = np.asarray(alphas, dtype=float)
    if alphas.size < 2 or np.any(np.diff(alphas) <= 0):
        raise DomainError("alpha grid must be strictly increasing with >= 2 points")
    reports = _map(lambda a: uncertainty_report(construct_state("cat", alpha=a, theta=0.0), config),
                   alphas, workers)
    return CatReferenceCurve(alphas, [r.b_bound for r in reports],
                             [r.n_total for r in reports])


def _scatter_row(index, master_seed, state, config, curve):
    digest = coefficient_digest(state)
    try:
        report = uncertainty_report(state, config)
    except ConvergenceError as exc:
        return ScatterRow(index, master_seed, digest, float("nan"), float("nan"),
                          None, False, float("nan"), error=str(exc))
    b, n = report.b_bound, report.n_total
    ratio = n / b if b >= RATIO_FLOOR else None
    above = bool(curve is not None and curve.covers(b)
                 and n > curve(b) + report.tolerance)
    return ScatterRow(index, master_seed, digest, b, n, ratio, above,
                      report.entropy_error_estimate)


def scatter(master_seed, count, dim, config=None, cat_curve=None, workers=None,
            sampler=sample_random_state):
    """Evaluate ``count`` random states; rows come back ordered by index.

    ``cat_curve`` sets the frontier flags (no flags when ``None``).  A row whose
    quadrature fails is returned with ``error`` set instead of aborting.
    """
    if count < 1:
        raise DomainError("count must be >= 1")

    def job(index):
        return _scatter_row(index, master_seed, sampler(master_seed, index, dim),
                            config, cat_curve)
    return _map(job, range(count), workers)


def _check_grid(grid):
    grid = [float(g) for g in grid]
    if not grid:
        raise DomainError("parameter grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("parameter grid must be strictly increasing")
    return grid


def family_sweep(family, grid, config=None, workers=None, **fixed):
    """One report per grid value of the family's sweep parameter.

    Extra keyword arguments fix the remaining parameters (``theta`` for cats).
    """
    family = Family(family)
    if family not in SWEEP_PARAMETER:
        raise DomainError(f"{family} has no scalar sweep parameter")
    name = SWEEP_PARAMETER[family]
    grid = _check_grid(grid)
    # construct every state up front so domain errors surface before any work
    states = [construct_state(family, **{name: v}, **fixed)
              for v in grid]

    def job(item):
        value, state = item
        try:
            return SweepRow(value, uncertainty_report(state, config))
        except ConvergenceError as exc:
            return SweepRow(value, None, str(exc))
    return _map(job, list(zip(grid, states)), workers)
