"""Callable densities and amplitudes carrying support hints for quadrature."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class TailClass:
    """How fast a density decays away from its center.

    ``kind`` is one of ``"gaussian"``, ``"exponential"`` or ``"power_law"``;
    for power laws ``exponent`` is ``a`` in ``p(x) ~ |x|^-a``.
    """

    kind: str
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("gaussian", "exponential", "power_law"):
            raise ValueError(f"unknown tail class {self.kind!r}")
        if self.kind == "power_law" and (self.exponent is None or self.exponent <= 1):
            raise ValueError("power-law tails need an exponent > 1")

    def __str__(self):
        if self.kind == "power_law":
            return f"power_law({self.exponent:g})"
        return self.kind


GAUSSIAN_TAIL = TailClass("gaussian")
EXPONENTIAL_TAIL = TailClass("exponential")


def power_law(exponent):
    return TailClass("power_law", float(exponent))


@dataclass(frozen=True)
class DensityEvaluator:
    """A probability density on the real line plus hints about where it lives."""

    evaluate: Callable[[np.ndarray], np.ndarray]
    center: float
    scale: float
    tail_class: TailClass = GAUSSIAN_TAIL

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class Amplitude:
    """A complex wavefunction; ``tail_class`` describes ``|psi|^2``."""

    evaluate: Callable[[np.ndarray], np.ndarray]
    center: float
    scale: float
    tail_class: TailClass = GAUSSIAN_TAIL

    def __call__(self, x):
        return self.evaluate(np.asarray(x, dtype=float))

    def density(self):
        amp = self.evaluate
        return DensityEvaluator(lambda x: np.abs(amp(x)) ** 2,
                                self.center, self.scale, self.tail_class)
