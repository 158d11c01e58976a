"""Closed-form and published-value regression checks behind ``verify``.

Each check compares one computed quantity with a literature value at a fixed
tolerance.  Quantities the literature quotes to three digits are checked at
that precision; exact closed forms are checked tightly.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .explorer import cat_reference_curve, family_sweep, scatter
from .measures import uncertainty_report
from .quadrature import differential_entropy, moment
from .special import EULER_MASCHERONI as GAMMA
from .states import construct_state, momentum_density, position_density


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def _close(name, value, expected, tol):
    err = abs(value - expected)
    return Check(name, bool(err <= tol),
                 f"got {value:.10g}, expected {expected:.10g} (|diff| {err:.2e} <= {tol:g})")


def _holds(name, ok, detail):
    return Check(name, bool(ok), detail)


def _strictly(values, decreasing=False):
    d = np.diff(values)
    return bool(np.all(d < 0) if decreasing else np.all(d > 0))


def run_regression(config=None):
    checks = []
    add = checks.append

    # number states
    fock3 = uncertainty_report(construct_state("fock", n=3), config)
    add(_close("fock n=3 sigma_x", fock3.sigma_x, math.sqrt(3.5), 1e-12))
    x2 = moment(position_density(construct_state("fock", n=2)), 2, config)
    add(_close("fock n=2 <x^2> (quadrature)", x2, 2.5, 1e-8))
    sweep = family_sweep("fock", range(11), config)
    b = np.array([r.report.b_bound for r in sweep])
    n = np.array([r.report.n_total for r in sweep])
    add(_holds("fock n=0..10 B, N and B-N increasing",
               _strictly(b) and _strictly(n) and _strictly(b - n),
               f"B-N from {b[0] - n[0]:.4f} to {b[-1] - n[-1]:.4f}"))

    # Laplace profile
    lap = construct_state("laplace", lam=2.0)
    add(_close("laplace lam=2 H(X)", differential_entropy(position_density(lap), config),
               1 - math.log(1.0), 1e-7))
    add(_close("laplace lam=2 H(P)", differential_entropy(momentum_density(lap), config),
               math.log(8 * math.pi) - 2, 1e-7))
    add(_close("laplace lam=2 sigma_p (quadrature)",
               math.sqrt(moment(momentum_density(lap), 2, config)), 1.0, 1e-6))
    for lam in (0.5, 1.0, 4.0):
        r = uncertainty_report(construct_state("laplace", lam=lam), config)
        add(_close(f"laplace lam={lam:g} B", r.b_bound, 0.346, 1e-3))
        add(_close(f"laplace lam={lam:g} N", r.n_total, 0.267, 1e-3))
    add(_close("laplace N closed form", r.n_total, 1 + math.log(math.e / (4 * math.sqrt(2))), 1e-7))

    # photon-added states
    fock1 = uncertainty_report(construct_state("fock", n=1), config)
    add(_close("fock n=1 B", fock1.b_bound, math.log(3), 1e-12))
    add(_close("fock n=1 N", fock1.n_total, 2 - 2 * GAMMA - 2 * math.atanh(1 / 7), 1e-7))
    add(_close("fock n=1 N (quoted)", fock1.n_total, 0.56, 5e-3))
    add(_close("fock n=1 H(X)", fock1.h_x, 0.5 * math.log(4 * math.pi / math.e) + GAMMA, 1e-7))
    for xi in (0.5, 2.0):
        r = uncertainty_report(construct_state("photon_added_squeezed", xi=xi), config)
        add(_close(f"squeezed xi={xi:g} H(X)", r.h_x,
                   0.5 * math.log(4 * math.pi * xi ** 2 / math.e) + GAMMA, 1e-7))
        add(_close(f"squeezed xi={xi:g} H(P)", r.h_p,
                   0.5 * math.log(4 * math.pi / (xi ** 2 * math.e)) + GAMMA, 1e-7))
        add(_close(f"squeezed xi={xi:g} B", r.b_bound, math.log(3), 1e-12))
    pac = construct_state("photon_added_coherent", alpha=1.0)
    xb2 = 2.0
    add(_close("photon-added coherent alpha=1 sigma_x (quadrature)",
               math.sqrt(moment(position_density(pac), 2, config)
                         - moment(position_density(pac), 1, config) ** 2),
               math.sqrt((xb2 ** 2 + 12) / (2 * (xb2 + 2) ** 2)), 1e-8))
    add(_close("photon-added coherent alpha=1 sigma_p (quadrature)",
               math.sqrt(moment(momentum_density(pac), 2, config)),
               math.sqrt((xb2 + 6) / (2 * xb2 + 4)), 1e-8))
    rows = family_sweep("photon_added_coherent", np.arange(0, 5.01, 0.5), config)
    b = np.array([r.report.b_bound for r in rows])
    n = np.array([r.report.n_total for r in rows])
    add(_holds("photon-added coherent N, B decreasing with N < B",
               _strictly(b, True) and _strictly(n, True) and bool(np.all(n < b)),
               f"N from {n[0]:.4f} to {n[-1]:.2e}, B from {b[0]:.4f} to {b[-1]:.2e}"))

    # cat state, large-alpha forms
    alpha = 4.0
    cat = uncertainty_report(construct_state("cat", alpha=alpha, theta=0.0), config)
    add(_close("cat alpha=4 sigma_x", cat.sigma_x, math.sqrt(0.5 + 2 * alpha ** 2), 1e-2))
    add(_close("cat alpha=4 sigma_p", cat.sigma_p, 1 / math.sqrt(2), 1e-2))
    add(_close("cat alpha=4 H(X)", cat.h_x, 0.5 * math.log(4 * math.pi * math.e), 1e-2))
    add(_close("cat alpha=4 H(P)", cat.h_p, 0.5 * math.log(math.pi * math.e), 1e-2))
    add(_close("cat alpha=4 B", cat.b_bound, 0.5 * math.log(1 + 4 * alpha ** 2), 1e-2))
    add(_close("cat alpha=4 N", cat.n_total, 0.5 * math.log(0.25 + alpha ** 2), 2e-2))
    add(_close("cat alpha=4 B-N", cat.b_bound - cat.n_total, math.log(2), 2e-2))

    # photon-added thermal
    gaps = []
    for n_bar in (1, 2, 5, 10, 20):
        r = uncertainty_report(construct_state("photon_added_thermal", n_bar=n_bar), config)
        gaps.append(r.b_corrected - r.n_total)
    add(_holds("photon-added thermal (B + ln mu) - N decreasing in n_bar",
               _strictly(gaps, True), " ".join(f"{g:+.4f}" for g in gaps)))

    # random states against the cat frontier
    curve = cat_reference_curve(config=config)
    rows = scatter(42, 2000, 11, config, cat_curve=curve)
    ok = [r for r in rows if not r.failed]
    worst = max(r.n_total - r.b_bound for r in ok)
    add(_holds("random states satisfy 0 <= N <= B",
               len(ok) == len(rows) and all(r.n_total >= -r.entropy_error_estimate * 10 for r in ok)
               and all(r.n_total <= r.b_bound + 10 * r.entropy_error_estimate for r in ok),
               f"{len(ok)}/{len(rows)} rows, max N-B {worst:.3f}"))
    above = [r for r in ok if r.above_cat_reference and r.b_bound < 1.5]
    add(_holds("some random state beats the cat curve at B < 1.5", bool(above),
               f"{len(above)} rows flagged; min B over batch {min(r.b_bound for r in ok):.3f}"))
    return checks
