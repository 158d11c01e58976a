import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from negentropy_ur.errors import DegenerateStateError, DomainError, UnsupportedFamilyError
from negentropy_ur.quadrature import fourier_transform, moment, panel_grid
from negentropy_ur.special import eigenfunction
from negentropy_ur.states import (Family, adaptive_cutoff, analytic_moments,
                                  construct_state, fock_expansion, ladder_moments,
                                  momentum_amplitude, momentum_density,
                                  position_amplitude, position_density,
                                  thermal_fock_probabilities)

PURE = [
    ("fock", {"n": 0}), ("fock", {"n": 4}),
    ("laplace", {"lam": 0.8}), ("laplace", {"lam": 3.0}),
    ("photon_added_coherent", {"alpha": 0.0}), ("photon_added_coherent", {"alpha": 1.3}),
    ("photon_added_squeezed", {"xi": 0.6}), ("photon_added_squeezed", {"xi": 2.0}),
    ("cat", {"alpha": 0.5, "theta": 0.0}), ("cat", {"alpha": 1.5, "theta": math.pi}),
    ("cat", {"alpha": 2.0, "theta": 0.7}),
    ("fock_superposition", {"coefficients": [1, 1j, -0.5, 0.3 + 0.2j]}),
]
EVEN = [p for p in PURE if p[0] in ("fock", "laplace", "photon_added_squeezed")
        or (p[0] == "cat" and p[1]["theta"] in (0.0, math.pi))
        or (p[0] == "photon_added_coherent" and p[1]["alpha"] == 0)]


def total(density, half=40.0, nodes=8000):
    x, w = panel_grid(0.0, half, nodes)
    return float(np.dot(w, density(x)))


# -- construction ------------------------------------------------------------

def test_construct_validates_parameters():
    with pytest.raises(DomainError):
        construct_state("fock", n=-1)
    with pytest.raises(DomainError):
        construct_state("fock", n=1.5)
    with pytest.raises(DomainError):
        construct_state("laplace", lam=0)
    with pytest.raises(DomainError):
        construct_state("photon_added_squeezed", xi=-1)
    with pytest.raises(DomainError):
        construct_state("photon_added_thermal", n_bar=-0.1)
    with pytest.raises(DomainError):
        construct_state("photon_added_coherent", alpha=float("nan"))
    with pytest.raises(DomainError):
        construct_state("fock", n=1, lam=2)
    with pytest.raises(DomainError):
        construct_state("squeezed_vacuum", xi=1)


def test_odd_cat_at_zero_amplitude_is_degenerate():
    with pytest.raises(DegenerateStateError):
        construct_state("cat", alpha=0.0, theta=math.pi)
    assert issubclass(DegenerateStateError, DomainError)


def test_theta_reduced_modulo_two_pi():
    assert construct_state("cat", alpha=1, theta=-math.pi / 2)["theta"] == pytest.approx(1.5 * math.pi)


def test_superposition_is_normalized():
    s = construct_state("fock_superposition", coefficients=[3, 4j])
    np.testing.assert_allclose(s.coefficients, [0.6, 0.8j])
    assert s["dim"] == 2
    with pytest.raises(DomainError):
        construct_state("fock_superposition", coefficients=[0, 0])
    with pytest.raises(DomainError):
        construct_state("fock_superposition", coefficients=[])


def test_state_is_immutable():
    s = construct_state("laplace", lam=1.0)
    with pytest.raises(TypeError):
        s.params["lam"] = 2.0
    assert s.label() == "laplace(lam=1)"
    assert s.family is Family.LAPLACE


# -- position densities --------------------------------------------------------

def test_position_density_examples():
    assert position_density(construct_state("fock", n=1))(1.0) == pytest.approx(2 / math.sqrt(math.pi) / math.e, rel=1e-14)
    assert position_density(construct_state("laplace", lam=2.0))(0.0) == pytest.approx(1.0, rel=1e-14)
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(position_density(construct_state("photon_added_thermal", n_bar=0))(x),
                               position_density(construct_state("fock", n=1))(x), atol=1e-15)


def test_squeezed_reduces_to_fock_one():
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(position_density(construct_state("photon_added_squeezed", xi=1.0))(x),
                               position_density(construct_state("fock", n=1))(x), atol=1e-14)


def test_photon_added_coherent_at_zero_is_fock_one():
    x = np.linspace(-4, 4, 17)
    np.testing.assert_allclose(position_density(construct_state("photon_added_coherent", alpha=0.0))(x),
                               position_density(construct_state("fock", n=1))(x), atol=1e-14)


@pytest.mark.parametrize("family, params", PURE + [("photon_added_thermal", {"n_bar": 3.0})])
def test_position_density_normalized(family, params):
    assert total(position_density(construct_state(family, **params))) == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("family, params", PURE + [("photon_added_thermal", {"n_bar": 3.0})])
def test_momentum_density_normalized(family, params):
    state = construct_state(family, **params)
    half = 400.0 if family == "laplace" else 40.0
    dens = momentum_density(state)
    tail = params["lam"] ** 3 / (6 * math.pi * half**3) if family == "laplace" else 0.0
    assert total(dens, half, 20000) + tail == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("family, params", EVEN)
def test_parity_symmetric_families(family, params):
    state = construct_state(family, **params)
    x = np.linspace(0.1, 5, 25)
    for dens in (position_density(state), momentum_density(state)):
        np.testing.assert_allclose(dens(x), dens(-x), rtol=1e-12, atol=1e-300)


# -- momentum densities -------------------------------------------------------

def test_momentum_density_examples():
    lam = 2.0
    dens = momentum_density(construct_state("laplace", lam=lam))
    p = np.array([0.0, 0.5, 2.0])
    np.testing.assert_allclose(dens(p), 4 * lam**3 / (math.pi * (4 * p * p + lam**2) ** 2), rtol=1e-13)
    np.testing.assert_allclose(momentum_density(construct_state("photon_added_squeezed", xi=2.0))(p),
                               position_density(construct_state("photon_added_squeezed", xi=0.5))(p),
                               rtol=1e-12)


@given(alpha=st.floats(0.0, 3.0), p=st.floats(-4.0, 4.0))
@settings(max_examples=60, deadline=None)
def test_photon_added_coherent_momentum_closed_form(alpha, p):
    xb = math.sqrt(2) * alpha
    expected = (4 * p * p + xb * xb) * math.exp(-p * p) / (math.sqrt(math.pi) * (xb * xb + 2))
    got = float(momentum_density(construct_state("photon_added_coherent", alpha=alpha))(np.array([p]))[0])
    assert got == pytest.approx(expected, rel=1e-9, abs=1e-14)


@given(alpha=st.floats(0.1, 4.0), theta=st.floats(0.0, 2 * math.pi), p=st.floats(-4.0, 4.0))
@settings(max_examples=60, deadline=None)
def test_cat_momentum_closed_form(alpha, theta, p):
    xb = math.sqrt(2) * alpha
    norm = 1 + math.exp(-xb * xb) * math.cos(theta)
    if norm < 1e-6:
        return
    expected = math.exp(-p * p) * (1 + math.cos(2 * xb * p + theta)) / (math.sqrt(math.pi) * norm)
    got = float(momentum_density(construct_state("cat", alpha=alpha, theta=theta))(np.array([p]))[0])
    assert got == pytest.approx(expected, rel=1e-8, abs=1e-12)


@pytest.mark.parametrize("family, params", PURE)
def test_fock_phase_rule_matches_fourier_transform(family, params):
    state = construct_state(family, **params)
    amp = momentum_amplitude(state)
    direct = fourier_transform(position_amplitude(state), momentum_center=amp.center,
                               momentum_scale=amp.scale)
    p = np.linspace(amp.center - 4 * amp.scale, amp.center + 4 * amp.scale, 50)
    np.testing.assert_allclose(np.abs(amp(p)) ** 2, np.abs(direct(p)) ** 2, atol=1e-6)


# -- Fock expansions and moments ---------------------------------------------

def test_fock_expansion_examples():
    c, lost = fock_expansion(construct_state("fock", n=2), 4)
    np.testing.assert_allclose(c, [0, 0, 1, 0, 0])
    assert lost == 0
    c, lost = fock_expansion(construct_state("fock", n=5), 2)
    assert lost == pytest.approx(1.0)
    c, _ = fock_expansion(construct_state("cat", alpha=1.0, theta=0.0), 6)
    assert np.all(c[1::2] == 0)
    c, _ = fock_expansion(construct_state("photon_added_coherent", alpha=0.0), 3)
    np.testing.assert_allclose(c, [0, 1, 0, 0])
    with pytest.raises(UnsupportedFamilyError):
        fock_expansion(construct_state("photon_added_thermal", n_bar=1.0), 3)
    with pytest.raises(DomainError):
        fock_expansion(construct_state("fock", n=1), -1)


@pytest.mark.parametrize("family, params", [("photon_added_coherent", {"alpha": 1.1}),
                                            ("cat", {"alpha": 1.4, "theta": 0.9})])
def test_analytic_expansion_matches_numerical_overlaps(family, params):
    state = construct_state(family, **params)
    c, _ = fock_expansion(state, 20)
    x, w = panel_grid(0.0, 20.0, 8000)
    psi = position_amplitude(state)(x)
    overlaps = np.array([np.dot(w, eigenfunction(n, x) * psi) for n in range(21)])
    np.testing.assert_allclose(overlaps, c, atol=1e-10)


@pytest.mark.parametrize("family, params, vanishing", [("laplace", {"lam": 1.0}, 1),
                                                      ("photon_added_squeezed", {"xi": 1.5}, 0)])
def test_numerical_expansion_accounts_for_mass(family, params, vanishing):
    c, lost = fock_expansion(construct_state(family, **params), 60)
    assert np.sum(np.abs(c) ** 2) + lost == pytest.approx(1.0, abs=1e-9)
    # even wavefunctions have no odd Fock content and vice versa
    assert np.all(np.abs(c[vanishing::2]) < 1e-10)


def test_adaptive_cutoff_discards_little():
    state = construct_state("photon_added_coherent", alpha=2.0)
    k = adaptive_cutoff(state, 1e-12)
    assert fock_expansion(state, k).discarded_mass < 1e-12
    assert fock_expansion(state, k - 1).discarded_mass >= 1e-12


def test_analytic_moments_examples():
    assert analytic_moments(construct_state("fock", n=3)) == pytest.approx((math.sqrt(3.5),) * 2)
    assert analytic_moments(construct_state("laplace", lam=2.0)) == pytest.approx((1 / math.sqrt(2), 1.0))
    assert analytic_moments(construct_state("cat", alpha=1.0)) is None


@pytest.mark.parametrize("family, params", [p for p in PURE if p[0] not in (
    "laplace", "photon_added_squeezed")])
def test_ladder_moments_match_quadrature(family, params):
    state = construct_state(family, **params)
    c, _ = fock_expansion(state, adaptive_cutoff(state, 1e-26))
    mx, vx, mp, vp = ladder_moments(c)
    x_dens, p_dens = position_density(state), momentum_density(state)
    assert moment(x_dens, 1) == pytest.approx(mx, abs=1e-8)
    assert moment(x_dens, 2) - mx**2 == pytest.approx(vx, abs=1e-8)
    assert moment(p_dens, 1) == pytest.approx(mp, abs=1e-8)
    assert moment(p_dens, 2) - mp**2 == pytest.approx(vp, abs=1e-8)


@pytest.mark.parametrize("family, params", [p for p in PURE if p[0] in (
    "fock", "laplace", "photon_added_coherent", "photon_added_squeezed")])
def test_analytic_moments_match_quadrature(family, params):
    state = construct_state(family, **params)
    sx, sp = analytic_moments(state)
    x_dens, p_dens = position_density(state), momentum_density(state)
    assert math.sqrt(moment(x_dens, 2) - moment(x_dens, 1) ** 2) == pytest.approx(sx, abs=1e-8)
    assert math.sqrt(moment(p_dens, 2) - moment(p_dens, 1) ** 2) == pytest.approx(sp, abs=1e-8)


@pytest.mark.parametrize("n_bar", [0.0, 0.5, 1.0, 4.0])
def test_thermal_variance(n_bar):
    dens = position_density(construct_state("photon_added_thermal", n_bar=n_bar))
    assert moment(dens, 2) == pytest.approx(2 * n_bar + 1.5, abs=1e-8)


@pytest.mark.parametrize("n_bar", [0.3, 1.0, 6.0])
def test_thermal_density_is_fock_mixture(n_bar):
    p = thermal_fock_probabilities(n_bar)
    x = np.linspace(-6, 6, 31)
    mix = sum(pn * eigenfunction(n, x) ** 2 for n, pn in enumerate(p))
    np.testing.assert_allclose(position_density(construct_state("photon_added_thermal", n_bar=n_bar))(x),
                               mix, atol=1e-13)


def test_thermal_fock_probabilities():
    np.testing.assert_allclose(thermal_fock_probabilities(0.0), [0, 1])
    p = thermal_fock_probabilities(1.0)
    assert p[0] == 0
    np.testing.assert_allclose(p[1:4], [1 / 4, 2 / 8, 3 / 16])
    assert p.sum() == pytest.approx(1.0, abs=1e-14)
    assert float(np.dot(np.arange(p.size), p)) == pytest.approx(2 * 1.0 + 1, abs=1e-12)
