"""Entropic uncertainty, negentropy and non-Gaussianity of single-mode
continuous-variable states."""

__version__ = "0.1.0"

from .errors import (ConvergenceError, CurveConstructionError,  # noqa: E402
                     DegenerateStateError, DomainError, UnsupportedFamilyError)
from .measures import (UncertaintyReport, gaussian_reference_entropy,  # noqa: E402
                       negentropy, purity_corrected_bound,
                       purity_photon_added_thermal, uncertainty_report)
from .quadrature import IntegrationConfig  # noqa: E402
from .states import Family, StateSpec, construct_state  # noqa: E402

__all__ = [
    "ConvergenceError", "CurveConstructionError", "DegenerateStateError",
    "DomainError", "UnsupportedFamilyError", "UncertaintyReport",
    "gaussian_reference_entropy", "negentropy", "purity_corrected_bound",
    "purity_photon_added_thermal", "uncertainty_report", "IntegrationConfig",
    "Family", "StateSpec", "construct_state",
]
