"""Single-mode state families and their quadrature densities.

All quantities are in dimensionless quadrature units with ``a = (x + ip)/sqrt(2)``.
Families and their parameters:

=========================  ======================================
family                     parameters
=========================  ======================================
``fock``                   ``n`` (int >= 0)
``laplace``                ``lam`` (> 0)
``photon_added_coherent``  ``alpha`` (real >= 0)
``photon_added_squeezed``  ``xi`` (> 0)
``cat``                    ``alpha`` (real >= 0), ``theta`` (rad)
``photon_added_thermal``   ``n_bar`` (>= 0)
``fock_superposition``     ``coefficients`` (complex sequence)
=========================  ======================================

Momentum densities of every Fock-expandable family go through the rule
``sum c_n psi_n(x)  ->  sum c_n (-i)^n psi_n(p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional

import numpy as np
from scipy.special import gammaln

from .errors import DegenerateStateError, DomainError, UnsupportedFamilyError
from .evaluators import (EXPONENTIAL_TAIL, GAUSSIAN_TAIL, Amplitude,
                         DensityEvaluator, power_law)
from .quadrature import amplitude_window
from .special import cached_table, eigenfunction

_PI_QUARTER = math.pi ** -0.25
TRUNCATION_MASS = 1e-12
# internal truncation for the momentum path; amplitude errors ~sqrt(mass)
# feed linearly into moments, so this sits far below TRUNCATION_MASS
_MOMENTUM_MASS = 1e-26
_SERIES_CUTOFF = 1e-16


class Family(str, Enum):
    FOCK = "fock"
    LAPLACE = "laplace"
    PHOTON_ADDED_COHERENT = "photon_added_coherent"
    PHOTON_ADDED_SQUEEZED = "photon_added_squeezed"
    CAT = "cat"
    PHOTON_ADDED_THERMAL = "photon_added_thermal"
    FOCK_SUPERPOSITION = "fock_superposition"

    def __str__(self):
        return self.value


PARAMETERS = {
    Family.FOCK: ("n",),
    Family.LAPLACE: ("lam",),
    Family.PHOTON_ADDED_COHERENT: ("alpha",),
    Family.PHOTON_ADDED_SQUEEZED: ("xi",),
    Family.CAT: ("alpha", "theta"),
    Family.PHOTON_ADDED_THERMAL: ("n_bar",),
    Family.FOCK_SUPERPOSITION: ("coefficients",),
}

#: families whose state vector has a (possibly infinite) Fock expansion
PURE_FAMILIES = frozenset(Family) - {Family.PHOTON_ADDED_THERMAL}


@dataclass(frozen=True)
class StateSpec:
    """A validated, normalized single-mode state."""

    family: Family
    params: Mapping[str, float] = field(default_factory=dict)
    coefficients: Optional[tuple] = None

    def __getitem__(self, name):
        return self.params[name]

    def label(self):
        if self.family is Family.FOCK_SUPERPOSITION:
            return f"{self.family}(dim={len(self.coefficients)})"
        inner = ", ".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.family}({inner})"


def _positive(name, value):
    value = float(value)
    if not (math.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be positive and finite, got {value!r}")
    return value


def _non_negative(name, value):
    value = float(value)
    if not (math.isfinite(value) and value >= 0):
        raise DomainError(f"{name} must be non-negative and finite, got {value!r}")
    return value


def construct_state(family, **params):
    """Validate parameters and build a normalized :class:`StateSpec`.

    >>> construct_state("fock", n=1).params["n"]
    1
    """
    try:
        family = Family(family)
    except ValueError:
        raise DomainError(f"unknown family {family!r}") from None
    unknown = set(params) - set(PARAMETERS[family]) - ({"theta"} if family is Family.CAT else set())
    if unknown:
        raise DomainError(f"unexpected parameters for {family}: {sorted(unknown)}")

    if family is Family.FOCK:
        n = params.get("n")
        if n is None or int(n) != n or n < 0:
            raise DomainError(f"n must be a non-negative integer, got {n!r}")
        return StateSpec(family, MappingProxyType({"n": int(n)}))
    if family is Family.LAPLACE:
        return StateSpec(family, MappingProxyType({"lam": _positive("lam", params.get("lam"))}))
    if family is Family.PHOTON_ADDED_COHERENT:
        alpha = _non_negative("alpha", params.get("alpha", 0.0))
        return StateSpec(family, MappingProxyType({"alpha": alpha}))
    if family is Family.PHOTON_ADDED_SQUEEZED:
        return StateSpec(family, MappingProxyType({"xi": _positive("xi", params.get("xi"))}))
    if family is Family.CAT:
        alpha = _non_negative("alpha", params.get("alpha", 0.0))
        theta = float(params.get("theta", 0.0))
        if not math.isfinite(theta):
            raise DomainError("theta must be finite")
        theta = math.fmod(theta, 2 * math.pi)
        if theta < 0:
            theta += 2 * math.pi
        if 2.0 * (1.0 + math.exp(-2 * alpha ** 2) * math.cos(theta)) <= 1e-12:
            raise DegenerateStateError(
                f"cat state with alpha={alpha:g}, theta={theta:g} has vanishing norm")
        return StateSpec(family, MappingProxyType({"alpha": alpha, "theta": theta}))
    if family is Family.PHOTON_ADDED_THERMAL:
        return StateSpec(family, MappingProxyType({"n_bar": _non_negative("n_bar", params.get("n_bar"))}))

    coefficients = params.get("coefficients")
    if coefficients is None:
        raise DomainError("fock_superposition needs coefficients")
    c = np.asarray(coefficients, dtype=complex).ravel()
    if c.size == 0 or not np.all(np.isfinite(c)):
        raise DomainError("coefficients must be a non-empty finite sequence")
    norm = np.linalg.norm(c)
    if norm == 0:
        raise DomainError("coefficients are all zero")
    c = c / norm
    return StateSpec(family, MappingProxyType({"dim": c.size}), tuple(complex(v) for v in c))


# -- Fock expansions -------------------------------------------------------

class FockExpansion(NamedTuple):
    coefficients: np.ndarray
    discarded_mass: float


def _coherent_amplitudes(alpha, size):
    """<m|alpha> for real alpha >= 0 and m < size."""
    m = np.arange(size)
    if alpha == 0:
        out = np.zeros(size)
        out[0] = 1.0
        return out
    log_t = -0.5 * alpha ** 2 + m * math.log(alpha) - 0.5 * gammaln(m + 1)
    return np.exp(log_t)


def _analytic_size(alpha):
    # Poisson mass beyond alpha^2 + 12 alpha + 40 is far below 1e-30
    return int(math.ceil(alpha ** 2 + 12 * alpha + 40))


def _analytic_coefficients(state, size):
    fam = state.family
    if fam is Family.FOCK:
        c = np.zeros(size, dtype=complex)
        if state["n"] < size:
            c[state["n"]] = 1.0
        return c
    if fam is Family.FOCK_SUPERPOSITION:
        c = np.zeros(size, dtype=complex)
        src = np.asarray(state.coefficients)
        c[: min(size, src.size)] = src[:size]
        return c
    if fam is Family.PHOTON_ADDED_COHERENT:
        alpha = state["alpha"]
        shifted = _coherent_amplitudes(alpha, size)
        c = np.zeros(size, dtype=complex)
        n = np.arange(1, size)
        c[1:] = np.sqrt(n) * shifted[:-1] / math.sqrt(1 + alpha ** 2)
        return c
    if fam is Family.CAT:
        alpha, theta = state["alpha"], state["theta"]
        t = _coherent_amplitudes(alpha, size)
        parity = np.where(np.arange(size) % 2 == 0, 1.0, -1.0)
        norm = 1.0 / math.sqrt(2 * (1 + math.exp(-2 * alpha ** 2) * math.cos(theta)))
        c = norm * t * (1.0 + np.exp(1j * theta) * parity)
        if theta == 0.0:
            c[1::2] = 0.0
        elif theta == math.pi:
            c[0::2] = 0.0
        return c
    raise UnsupportedFamilyError(f"no closed-form Fock expansion for {fam}")


def _full_size(state):
    fam = state.family
    if fam is Family.FOCK:
        return state["n"] + 1
    if fam is Family.FOCK_SUPERPOSITION:
        return len(state.coefficients)
    return _analytic_size(state["alpha"])


def fock_expansion(state, cutoff):
    """Coefficients ``<n|psi>`` for ``n <= cutoff`` and the probability mass
    left out by the truncation."""
    if state.family is Family.PHOTON_ADDED_THERMAL:
        raise UnsupportedFamilyError("photon_added_thermal is a mixed state")
    if int(cutoff) != cutoff or cutoff < 0:
        raise DomainError("cutoff must be a non-negative integer")
    cutoff = int(cutoff)
    if state.family in (Family.LAPLACE, Family.PHOTON_ADDED_SQUEEZED):
        return _numerical_expansion(state, cutoff)
    size = max(_full_size(state), cutoff + 1)
    full = _analytic_coefficients(state, size)
    tail = np.abs(full[cutoff + 1:]) ** 2
    return FockExpansion(full[: cutoff + 1], float(np.sum(tail[::-1])))


def _numerical_expansion(state, cutoff):
    x, w, psi, _ = amplitude_window(position_amplitude(state), None)
    table = cached_table(cutoff, x)
    c = (table.values * (w * psi)).sum(axis=1).astype(complex)
    discarded = max(0.0, 1.0 - float(np.sum(np.abs(c) ** 2)))
    return FockExpansion(c, discarded)


def adaptive_cutoff(state, mass=TRUNCATION_MASS):
    """Smallest cutoff whose discarded probability is below ``mass``."""
    if state.family is Family.FOCK:
        return state["n"]
    if state.family is Family.FOCK_SUPERPOSITION:
        return len(state.coefficients) - 1
    full = _analytic_coefficients(state, _full_size(state))
    # tail[k] = mass strictly above index k
    probs = np.abs(full) ** 2
    tail = np.concatenate([np.cumsum(probs[::-1])[::-1][1:], [0.0]])
    return int(np.argmax(tail < mass))


def _expansion(state):
    return fock_expansion(state, adaptive_cutoff(state, _MOMENTUM_MASS)).coefficients


def ladder_moments(coefficients):
    """Exact ``(<x>, var x, <p>, var p)`` of ``sum c_n |n>``."""
    c = np.asarray(coefficients, dtype=complex)
    n = np.arange(c.size)
    a1 = np.sum(np.conj(c[:-1]) * c[1:] * np.sqrt(n[1:])) if c.size > 1 else 0.0
    a2 = (np.sum(np.conj(c[:-2]) * c[2:] * np.sqrt(n[2:] * n[1:-1]))
          if c.size > 2 else 0.0)
    occupation = float(np.sum(n * np.abs(c) ** 2))
    mean_x = math.sqrt(2) * float(np.real(a1))
    mean_p = math.sqrt(2) * float(np.imag(a1))
    x2 = float(np.real(a2)) + occupation + 0.5
    p2 = -float(np.real(a2)) + occupation + 0.5
    return mean_x, x2 - mean_x ** 2, mean_p, p2 - mean_p ** 2


# -- amplitudes and densities ------------------------------------------------

def _hints(state):
    """(center_x, scale_x, center_p, scale_p)."""
    fam = state.family
    if fam is Family.LAPLACE:
        lam = state["lam"]
        return 0.0, math.sqrt(2) / lam, 0.0, lam / 2
    if fam is Family.PHOTON_ADDED_SQUEEZED:
        xi = state["xi"]
        return 0.0, math.sqrt(1.5) * xi, 0.0, math.sqrt(1.5) / xi
    if fam is Family.PHOTON_ADDED_THERMAL:
        s = math.sqrt(2 * state["n_bar"] + 1.5)
        return 0.0, s, 0.0, s
    mx, vx, mp, vp = ladder_moments(_expansion(state))
    return mx, math.sqrt(max(vx, 1e-6)), mp, math.sqrt(max(vp, 1e-6))


def position_amplitude(state):
    """Position wavefunction of a pure state as an :class:`Amplitude`."""
    fam = state.family
    center, scale, _, _ = _hints(state)
    tail = GAUSSIAN_TAIL

    if fam is Family.FOCK:
        n = state["n"]

        def amp(x):
            return eigenfunction(n, x) + 0j
    elif fam is Family.LAPLACE:
        lam = state["lam"]
        tail = EXPONENTIAL_TAIL

        def amp(x):
            return math.sqrt(lam / 2) * np.exp(-0.5 * lam * np.abs(x)) + 0j
    elif fam is Family.PHOTON_ADDED_COHERENT:
        xbar = math.sqrt(2) * state["alpha"]
        norm = _PI_QUARTER / math.sqrt(xbar ** 2 + 2)

        def amp(x):
            return norm * np.exp(-0.5 * (x - xbar) ** 2) * (2 * x - xbar) + 0j
    elif fam is Family.PHOTON_ADDED_SQUEEZED:
        xi = state["xi"]
        norm = math.sqrt(2) * _PI_QUARTER / xi ** 1.5

        def amp(x):
            return norm * x * np.exp(-0.5 * x * x / xi ** 2) + 0j
    elif fam is Family.CAT:
        alpha, theta = state["alpha"], state["theta"]
        xbar = math.sqrt(2) * alpha
        norm = _PI_QUARTER / math.sqrt(2 * (1 + math.exp(-2 * alpha ** 2) * math.cos(theta)))
        phase = np.exp(1j * theta)

        def amp(x):
            return norm * (np.exp(-0.5 * (x - xbar) ** 2)
                           + phase * np.exp(-0.5 * (x + xbar) ** 2))
    elif fam is Family.FOCK_SUPERPOSITION:
        c = np.asarray(state.coefficients)

        def amp(x):
            return cached_table(c.size - 1, x).combine(c)
    else:
        raise UnsupportedFamilyError(f"{fam} has no wavefunction")
    return Amplitude(amp, center, scale, tail)


def momentum_amplitude(state):
    """Momentum wavefunction by the Fock-phase rule.

    Uses the adaptive truncation for cat and photon-added coherent states;
    Laplace and squeezed states use their closed-form transforms.
    """
    fam = state.family
    _, _, center, scale = _hints(state)
    if fam is Family.LAPLACE:
        lam = state["lam"]

        def amp(p):
            return 2 * lam ** 1.5 / (math.sqrt(math.pi) * (4 * p * p + lam ** 2)) + 0j
        return Amplitude(amp, 0.0, lam / 2, power_law(4))
    if fam is Family.PHOTON_ADDED_SQUEEZED:
        xi = state["xi"]
        inv = 1.0 / xi
        norm = math.sqrt(2) * _PI_QUARTER / inv ** 1.5

        def amp(p):
            return -1j * norm * p * np.exp(-0.5 * p * p / inv ** 2)
        return Amplitude(amp, 0.0, scale, GAUSSIAN_TAIL)
    if fam not in PURE_FAMILIES:
        raise UnsupportedFamilyError(f"{fam} has no wavefunction")

    c = _expansion(state)
    rotated = c * (-1j) ** np.arange(c.size)

    def amp(p):
        return cached_table(c.size - 1, p).combine(rotated)
    return Amplitude(amp, center, scale, GAUSSIAN_TAIL)


def _thermal_density(n_bar):
    s = 1 + 2 * n_bar
    norm = 1.0 / (math.sqrt(math.pi) * s ** 2.5)

    def density(x):
        return norm * (n_bar * s + 2 * (1 + n_bar) * x * x) * np.exp(-x * x / s)
    return density


def position_density(state):
    """Position-quadrature probability density ``<x|rho|x>``."""
    if state.family is Family.PHOTON_ADDED_THERMAL:
        center, scale, _, _ = _hints(state)
        return DensityEvaluator(_thermal_density(state["n_bar"]), center, scale, GAUSSIAN_TAIL)
    return position_amplitude(state).density()


def momentum_density(state):
    """Momentum-quadrature probability density."""
    if state.family is Family.PHOTON_ADDED_THERMAL:
        # phase-invariant: both quadratures share one density
        return position_density(state)
    if state.family is Family.FOCK:
        dens = position_density(state)
        return DensityEvaluator(dens.evaluate, 0.0, dens.scale, dens.tail_class)
    return momentum_amplitude(state).density()


def analytic_moments(state):
    """Closed-form ``(sigma_x, sigma_p)`` where available, else ``None``."""
    fam = state.family
    if fam is Family.FOCK:
        s = math.sqrt(state["n"] + 0.5)
        return s, s
    if fam is Family.LAPLACE:
        lam = state["lam"]
        return math.sqrt(2) / lam, lam / 2
    if fam is Family.PHOTON_ADDED_COHERENT:
        x2 = 2 * state["alpha"] ** 2
        sx = math.sqrt((x2 ** 2 + 12) / (2 * (x2 + 2) ** 2))
        sp = math.sqrt((x2 + 6) / (2 * x2 + 4))
        return sx, sp
    if fam is Family.PHOTON_ADDED_SQUEEZED:
        xi = state["xi"]
        return math.sqrt(1.5) * xi, math.sqrt(1.5) / xi
    return None


def thermal_fock_probabilities(n_bar):
    """Diagonal ``p_n`` (index = photon number) of the photon-added thermal
    state, truncated once terms fall below 1e-16 past the peak."""
    n_bar = _non_negative("n_bar", n_bar)
    if n_bar == 0:
        return np.array([0.0, 1.0])
    ratio = n_bar / (n_bar + 1)
    probs = [0.0]
    k = 0
    prefactor = 1.0 / (n_bar + 1) ** 2
    term_ratio_power = 1.0
    while True:
        term = (k + 1) * term_ratio_power * prefactor
        probs.append(term)
        # terms grow until k ~ n_bar, then decay geometrically
        if term < _SERIES_CUTOFF and k > n_bar:
            break
        k += 1
        term_ratio_power *= ratio
    return np.array(probs)
