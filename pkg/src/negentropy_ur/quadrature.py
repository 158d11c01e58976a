"""Composite Gauss-Legendre integration of densities over widening windows.

Every integral is taken over ``[center - W, center + W]`` with
``W = range_multiplier * scale``.  The window (and the node count, so the
node density is unchanged) is doubled until the result moves by less than
``doubling_tolerance``; the settled window is then evaluated once more with
twice the nodes as a discretization check.  Power-law tails additionally receive an analytic
correction for the mass beyond the window, fitted to the density at the
window edges.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError
from .evaluators import Amplitude, TailClass

PANEL_ORDER = 20
_TINY = 1e-300
_FT_BLOCK = 512


@dataclass(frozen=True)
class IntegrationConfig:
    """Quadrature policy.

    Attributes
    ----------
    base_nodes : int
        Nodes on the initial window; doubled along with the window.
    range_multiplier : float
        Initial half-width of the window in units of the density's scale.
    doubling_tolerance : float
        Widening stops once successive estimates differ by less than this.
    max_doublings : int
        Give up (``ConvergenceError``) after this many doublings.
    refine : bool
        Re-evaluate the settled window with twice the nodes; the change is
        folded into the reported error and the refined value is returned.
    """

    base_nodes: int = 2000
    range_multiplier: float = 12.0
    doubling_tolerance: float = 1e-9
    max_doublings: int = 8
    refine: bool = True

    def __post_init__(self):
        if self.base_nodes < 16:
            raise ValueError("base_nodes must be >= 16")
        if not self.range_multiplier > 0:
            raise ValueError("range_multiplier must be positive")
        if not self.doubling_tolerance > 0:
            raise ValueError("doubling_tolerance must be positive")
        if self.max_doublings < 1:
            raise ValueError("max_doublings must be >= 1")


DEFAULT_CONFIG = IntegrationConfig()


class Estimate(NamedTuple):
    value: float
    error: float


class DensitySummary(NamedTuple):
    """Moments and entropy of one density from a single widening pass."""

    norm: float
    mean: float
    variance: float
    entropy: float
    entropy_error: float
    doublings: int


@lru_cache(maxsize=None)
def _legendre(order):
    t, w = np.polynomial.legendre.leggauss(order)
    t.setflags(write=False)
    w.setflags(write=False)
    return t, w


def panel_grid(center, half_width, n_nodes, order=PANEL_ORDER):
    """Gauss-Legendre nodes and weights on ``[center - hw, center + hw]``.

    The panel count is even, so ``center`` is always a panel boundary (this
    matters for densities with a kink there).
    """
    n_panels = max(2, math.ceil(n_nodes / order))
    n_panels += n_panels % 2
    t, w = _legendre(order)
    h = 2.0 * half_width / n_panels
    mids = center - half_width + h * (np.arange(n_panels) + 0.5)
    x = (mids[:, None] + 0.5 * h * t[None, :]).ravel()
    weights = np.tile(0.5 * h * w, n_panels)
    return x, weights


def _neg_p_log_p(p):
    out = np.zeros_like(p)
    mask = p > _TINY
    out[mask] = -p[mask] * np.log(p[mask])
    return out


def _tail_corrections(density, half_width, orders, with_entropy):
    """Mass beyond the window for ``p ~ C |x - c|^-a`` on each side.

    Returns central-moment corrections for each entry of ``orders`` followed
    (optionally) by the entropy correction.
    """
    a = density.tail_class.exponent
    c = density.center
    w = half_width
    edge = density(np.array([c - w, c + w]))
    out = []
    for k in orders:
        if a <= k + 1:
            raise ConvergenceError(
                f"moment of order {k} diverges for a tail ~|x|^-{a:g}")
        total = 0.0
        for sign, p_edge in ((-1.0, edge[0]), (1.0, edge[1])):
            coeff = p_edge * w ** a
            total += sign ** k * coeff * w ** (k + 1 - a) / (a - k - 1)
        out.append(total)
    if with_entropy:
        total = 0.0
        for p_edge in edge:
            if p_edge <= _TINY:
                continue
            coeff = p_edge * w ** a
            tail = w ** (1 - a)
            total += (-coeff * math.log(coeff) * tail / (a - 1)
                      + coeff * a * tail * (math.log(w) / (a - 1) + 1 / (a - 1) ** 2))
        out.append(total)
    return np.array(out)


def _widening(density, orders, with_entropy, config):
    """Central moments of ``orders`` (about ``density.center``) and optionally
    the entropy, widening the window until every component settles."""
    config = config or DEFAULT_CONFIG
    c = density.center
    power_tail = density.tail_class.kind == "power_law"

    def estimate(level, refine=1):
        hw = config.range_multiplier * density.scale * 2 ** level
        x, w = panel_grid(c, hw, config.base_nodes * 2 ** level * refine)
        p = np.asarray(density(x), dtype=float)
        wp = w * p
        u = x - c
        rows = [np.sum(wp * u ** k) if k else np.sum(wp) for k in orders]
        if with_entropy:
            rows.append(np.dot(w, _neg_p_log_p(p)))
        values = np.array(rows, dtype=float)
        if power_tail:
            values = values + _tail_corrections(density, hw, orders, with_entropy)
        return values

    previous = estimate(0)
    for level in range(1, config.max_doublings + 1):
        current = estimate(level)
        increment = np.abs(current - previous)
        scale = np.maximum(1.0, np.abs(current))
        if with_entropy:
            scale[-1] = 1.0
        if np.all(increment <= config.doubling_tolerance * scale):
            if config.refine:
                refined = estimate(level, refine=2)
                increment = np.maximum(increment, np.abs(refined - current))
                current = refined
            return current, increment, level
        previous = current
    raise ConvergenceError(
        f"no convergence after {config.max_doublings} doublings "
        f"(tail class {density.tail_class})",
        estimates=(previous, current))


def moment(density, order, config=None):
    """Raw moment ``int x^order p(x) dx``; ``order`` in {0, 1, 2, 4}."""
    if order not in (0, 1, 2, 4):
        raise ValueError("order must be one of 0, 1, 2, 4")
    orders = tuple(range(order + 1))
    central, _, _ = _widening(density, orders, False, config)
    c = density.center
    return float(sum(math.comb(order, j) * c ** (order - j) * central[j]
                     for j in orders))


def entropy_estimate(density, config=None):
    """Differential entropy in nats plus an error estimate (the larger of the
    last widening increment and the node-refinement change)."""
    values, increments, _ = _widening(density, (), True, config)
    return Estimate(float(values[0]), float(increments[0]))


def differential_entropy(density, config=None):
    """``-int p ln p`` in nats, with ``0 ln 0 = 0`` at density zeros."""
    return entropy_estimate(density, config).value


def summarize(density, config=None):
    """Normalization, mean, variance and entropy in one widening pass."""
    values, increments, level = _widening(density, (0, 1, 2), True, config)
    norm, m1, m2, h = values
    mean = density.center + m1 / norm
    variance = m2 / norm - (m1 / norm) ** 2
    return DensitySummary(float(norm), float(mean), float(variance),
                          float(h), float(increments[-1]), level)


def amplitude_window(amplitude, config=None):
    """Nodes, weights, samples and norm on the smallest doubled window on
    which ``int |psi|^2`` has settled."""
    config = config or DEFAULT_CONFIG
    c = amplitude.center
    previous = None
    for level in range(config.max_doublings + 1):
        hw = config.range_multiplier * amplitude.scale * 2 ** level
        x, w = panel_grid(c, hw, config.base_nodes * 2 ** level)
        psi = np.asarray(amplitude(x), dtype=complex)
        norm = float(np.dot(w, np.abs(psi) ** 2))
        if previous is not None and abs(norm - previous) <= config.doubling_tolerance:
            return x, w, psi, norm
        previous = norm
    raise ConvergenceError("amplitude norm did not settle", estimates=(previous, norm))


def fourier_transform(amplitude, config=None, momentum_center=0.0, momentum_scale=None):
    """Momentum amplitude ``(2 pi)^-1/2 int psi(x) exp(-i p x) dx``.

    The transform is evaluated by direct quadrature at whatever points the
    returned evaluator is called with, and rescaled so that it has unit norm.

    Parameters
    ----------
    amplitude : Amplitude
        Position-space wavefunction.
    momentum_center, momentum_scale : float, optional
        Support hints attached to the result; the scale defaults to
        ``1 / (2 * amplitude.scale)``.
    """
    x, w, psi, norm = amplitude_window(amplitude, config)
    wpsi = w * psi / math.sqrt(2.0 * math.pi * norm)

    def evaluate(p):
        p = np.asarray(p, dtype=float)
        flat = p.ravel()
        out = np.empty(flat.shape, dtype=complex)
        for start in range(0, flat.size, _FT_BLOCK):
            block = flat[start:start + _FT_BLOCK]
            out[start:start + _FT_BLOCK] = np.exp(-1j * np.outer(block, x)) @ wpsi
        return out.reshape(p.shape)

    scale = momentum_scale if momentum_scale else 0.5 / amplitude.scale
    # a kink in psi leaves a power-law momentum tail; callers that know it
    # pass the tail class through a new Amplitude
    return Amplitude(evaluate, momentum_center, scale, TailClass("gaussian"))
