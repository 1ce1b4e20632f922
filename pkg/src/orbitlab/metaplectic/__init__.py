"""Double-cover invariants of semisimple symplectic maps."""

from .core import (EllipticSymplecticData, LagrangianSignature, LiftGenerator,
                   canonical_lift, check_phase_identity, check_phi_identity, delta_fn,
                   orientation_of_inf, orientation_of_lift, orientation_ratio, phi_fn,
                   rho_lagrangian)
from .cyclotomic import Cyclo, CycloQuotient
from .stabilizer import (GammaAlpha, LiftedElliptic, delta_on_cover, gamma_alpha_data,
                         identity_lift, iota, n_alpha, orientation_sign,
                         rho_on_stabilizer_cover, rho_via_lagrangian)

__all__ = [
    "Cyclo", "CycloQuotient", "EllipticSymplecticData", "LagrangianSignature",
    "LiftGenerator", "canonical_lift", "check_phase_identity", "check_phi_identity",
    "delta_fn", "orientation_of_inf", "orientation_of_lift", "orientation_ratio",
    "phi_fn", "rho_lagrangian",
    "GammaAlpha", "LiftedElliptic", "delta_on_cover", "gamma_alpha_data",
    "identity_lift", "iota", "n_alpha", "orientation_sign",
    "rho_on_stabilizer_cover", "rho_via_lagrangian",
]
