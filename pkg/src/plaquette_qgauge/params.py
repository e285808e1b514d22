"""Physical parameters of the single-plaquette SU(2) model.

The model is controlled by three positive constants: hbar, the inner-product
scale beta2 (the square of the metric scaling factor), and the gauge coupling
coupling_g.  Every physical output depends on them only through the two
dimensionless combinations

    t        = hbar * beta2            (quantum-fluctuation scale)
    nu_tilde = 1 / (coupling_g**2 * hbar**2 * beta2)

so sweeps are usually specified in (t, nu_tilde) directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class ModelParams:
    """Immutable parameter set; derived combinations are exposed as properties.

    coupling_g = math.inf is allowed and encodes the free theory (nu = 0).
    """

    hbar: float
    beta2: float
    coupling_g: float

    def __post_init__(self):
        if not (self.hbar > 0 and math.isfinite(self.hbar)):
            raise ValueError(f"hbar must be positive and finite, got {self.hbar}")
        if not (self.beta2 > 0 and math.isfinite(self.beta2)):
            raise ValueError(f"beta2 must be positive and finite, got {self.beta2}")
        if not self.coupling_g > 0:
            raise ValueError(f"coupling_g must be positive, got {self.coupling_g}")

    @property
    def nu(self) -> float:
        """Inverse squared coupling, the strength of the potential term."""
        return 1.0 / (self.coupling_g * self.coupling_g)

    @property
    def nu_tilde(self) -> float:
        """Dimensionless coupling nu / (hbar^2 beta2)."""
        return self.nu / self.hbar2_beta2

    @property
    def t(self) -> float:
        """The combination hbar * beta2 entering all state overlaps."""
        return self.hbar * self.beta2

    @property
    def hbar2_beta2(self) -> float:
        """Energy unit hbar^2 * beta2 of the spectrum."""
        return self.hbar * self.hbar * self.beta2

    @classmethod
    def from_reduced(cls, hbar_beta2: float, nu_tilde: float = 0.0) -> "ModelParams":
        """Build a representative parameter set with the given (t, nu_tilde).

        Uses hbar = t, beta2 = 1; any other representative gives identical
        physical outputs.
        """
        if not hbar_beta2 > 0:
            raise ValueError(f"hbar_beta2 must be positive, got {hbar_beta2}")
        if nu_tilde < 0:
            raise ValueError(f"nu_tilde must be non-negative, got {nu_tilde}")
        if nu_tilde == 0.0:
            g = math.inf
        else:
            g = 1.0 / math.sqrt(nu_tilde * hbar_beta2 * hbar_beta2)
        return cls(hbar=hbar_beta2, beta2=1.0, coupling_g=g)
