"""Negentropy, quantum neg-entropy N, the bound B = ln(2 sigma_x sigma_p) and
the purity-corrected bound, assembled into one report per state."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .quadrature import summarize
from .special import EUR_BOUND, GAUSSIAN_ENTROPY_OFFSET
from .states import (Family, analytic_moments, momentum_density,
                     position_density, thermal_fock_probabilities)

log = logging.getLogger(__name__)

#: lower bound on the reported entropy error, keeps identity checks meaningful
#: when the widening increment vanishes to round-off
ERROR_FLOOR = 1e-12
_NORM_AUDIT = 1e-6


@dataclass(frozen=True)
class UncertaintyReport:
    sigma_x: float
    sigma_p: float
    h_x: float
    h_p: float
    j_x: float
    j_p: float
    n_total: float
    b_bound: float
    eur_residual: float
    purity: Optional[float] = None
    b_corrected: Optional[float] = None
    entropy_error_estimate: float = ERROR_FLOOR

    @property
    def tolerance(self):
        return 10.0 * self.entropy_error_estimate

    def as_dict(self):
        return asdict(self)

    def violations(self):
        """Names of invariants this report breaks (empty when consistent)."""
        tol = self.tolerance
        bad = []
        if self.j_x < -tol or self.j_p < -tol:
            bad.append("negentropy_nonnegative")
        if abs((self.b_bound - self.n_total) - self.eur_residual) > tol:
            bad.append("identity")
        if self.eur_residual < -tol:
            bad.append("eur")
        return bad


def gaussian_reference_entropy(sigma):
    """Entropy ``ln(sqrt(2 pi e) sigma)`` of a normal density of width sigma."""
    sigma = float(sigma)
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma!r}")
    return GAUSSIAN_ENTROPY_OFFSET + math.log(sigma)


def negentropy(density, config=None):
    """``H_G(sigma) - H`` for a density, both from quadrature."""
    s = summarize(density, config)
    return gaussian_reference_entropy(math.sqrt(s.variance)) - s.entropy


def _audit(summary, label):
    if abs(summary.norm - 1.0) > _NORM_AUDIT:
        log.warning("%s integrates to %.12g", label, summary.norm)


def uncertainty_report(state, config=None):
    """Full :class:`UncertaintyReport` for a :class:`StateSpec`.

    Standard deviations come from closed forms when the family has them and
    from the quadrature otherwise.  Purity fields are filled only for the
    photon-added thermal state.
    """
    x_density = position_density(state)
    sx = summarize(x_density, config)
    _audit(sx, f"{state.label()} position density")
    if state.family in (Family.FOCK, Family.PHOTON_ADDED_THERMAL):
        sp = sx
    else:
        sp = summarize(momentum_density(state), config)
        _audit(sp, f"{state.label()} momentum density")

    sigmas = analytic_moments(state)
    if sigmas is None:
        sigmas = math.sqrt(sx.variance), math.sqrt(sp.variance)
    sigma_x, sigma_p = sigmas

    j_x = gaussian_reference_entropy(sigma_x) - sx.entropy
    j_p = gaussian_reference_entropy(sigma_p) - sp.entropy
    b = math.log(2.0 * sigma_x * sigma_p)
    purity = b_corrected = None
    if state.family is Family.PHOTON_ADDED_THERMAL:
        purity = purity_photon_added_thermal(state["n_bar"])
        b_corrected = b + math.log(purity)
    return UncertaintyReport(
        sigma_x=sigma_x, sigma_p=sigma_p, h_x=sx.entropy, h_p=sp.entropy,
        j_x=j_x, j_p=j_p, n_total=j_x + j_p, b_bound=b,
        eur_residual=sx.entropy + sp.entropy - EUR_BOUND,
        purity=purity, b_corrected=b_corrected,
        entropy_error_estimate=max(sx.entropy_error + sp.entropy_error, ERROR_FLOOR))


def purity_photon_added_thermal(n_bar):
    """Purity ``Tr rho^2`` of the normalized photon-added thermal state."""
    if not float(n_bar) >= 0:
        raise DomainError(f"n_bar must be non-negative, got {n_bar!r}")
    p = thermal_fock_probabilities(n_bar)
    # smallest terms first
    return float(np.sum(np.sort(p * p)))


def purity_corrected_bound(report):
    """``B + ln(mu)``; a conjectured bound, reported rather than enforced."""
    if report.purity is None:
        raise ValueError("report carries no purity")
    return report.b_bound + math.log(report.purity)
