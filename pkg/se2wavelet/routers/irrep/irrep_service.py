import logging
from typing import Optional

import numpy as np
from scipy import special

from se2wavelet.config import get_settings
from se2wavelet.exceptions import DegenerateInputError, ResolutionError
from se2wavelet.routers.circle.circle_model import CircleFunction, circle_grid
from se2wavelet.routers.circle.circle_service import CircleService
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.irrep.irrep_model import IrrepParams, UncertaintyTerms

logger: logging.Logger = logging.getLogger("irrep")

MAX_REQUIRED_SAMPLES = 4096


def required_samples(lambda_omega: float, tolerance: Optional[float] = None) -> int:
    """
    Smallest even grid size n >= 8 that resolves exp(lambda_omega * cos(phi)).

    The Fourier coefficients of that function are I_m(lambda_omega); the grid is large
    enough once I_{n/2} / I_0 drops below the tolerance.
    """
    if tolerance is None:
        tolerance = get_settings().RESOLUTION_TOLERANCE
    a = abs(float(lambda_omega))
    if a == 0.0:
        return 8
    orders = np.arange(0, MAX_REQUIRED_SAMPLES // 2 + 1)
    ratios = special.ive(orders, a) / special.ive(0, a)
    below = np.nonzero(ratios[4:] <= tolerance)[0]
    if below.size == 0:
        return MAX_REQUIRED_SAMPLES
    return int(2 * (below[0] + 4))


class IrrepService:
    """
    The representation Pi^Omega(q, theta) u(phi) = exp(-i Omega q . omega(phi)) u(phi - theta)
    and its Lie algebra operators.
    """

    def __init__(self) -> None:
        self.circle_service: CircleService = CircleService()

    def apply_irrep(self, p: IrrepParams, g: GroupElement, u: CircleFunction) -> CircleFunction:
        phi = u.phi
        phase = np.exp(-1j * p.omega * (g.q1 * np.cos(phi) + g.q2 * np.sin(phi)))
        return CircleFunction(values=phase * self.circle_service.rotate(u, g.theta).values)

    def dpi_x1(self, p: IrrepParams, u: CircleFunction) -> CircleFunction:
        """Multiplication by i Omega sin(phi)"""
        return CircleFunction(values=1j * p.omega * np.sin(u.phi) * u.values)

    def dpi_x2(self, u: CircleFunction) -> CircleFunction:
        return self.circle_service.spectral_derivative(u)

    def dpi_x3(self, p: IrrepParams, u: CircleFunction) -> CircleFunction:
        """[dpi_x1, dpi_x2]: multiplication by -i Omega cos(phi)"""
        return CircleFunction(values=-1j * p.omega * np.cos(u.phi) * u.values)

    def uncertainty_terms(self, p: IrrepParams, u: CircleFunction) -> UncertaintyTerms:
        if self.circle_service.norm(u) == 0.0:
            raise DegenerateInputError("Uncertainty functional is undefined for the zero vector")
        commutator = self.circle_service.inner_product(self.dpi_x3(p, u), u)
        return UncertaintyTerms(
            x1_norm=self.circle_service.norm(self.dpi_x1(p, u)),
            x2_norm=self.circle_service.norm(self.dpi_x2(u)),
            commutator_term=0.5 * abs(commutator),
        )

    def uncertainty_gap(self, p: IrrepParams, u: CircleFunction) -> float:
        """||X1 u|| ||X2 u|| - |<X3 u, u>| / 2; vanishes on minimal uncertainty states"""
        return self.uncertainty_terms(p, u).gap

    def minimal_wavelet(self, lam: float, p: IrrepParams, n_samples: Optional[int] = None) -> CircleFunction:
        """
        u(phi) = exp(lam*Omega*cos(phi)) / sqrt(j0(-2i*lam*Omega)), in compensated form
        exp(a*(cos(phi) - 1)) / sqrt(2*pi*I0e(2a)) with a = lam*Omega.

        Raises:
            ResolutionError: lam < 0, lam*Omega above the cap, or a grid too coarse to resolve u
        """
        settings = get_settings()
        n = n_samples if n_samples is not None else settings.CIRCLE_SAMPLES
        if lam < 0.0:
            raise ResolutionError(f"lambda must be >= 0, got {lam} (negative values reflect the wavelet)")
        a = lam * p.omega
        if a > settings.MINIMAL_WAVELET_CAP:
            raise ResolutionError(
                f"lambda*Omega = {a:.6g} exceeds the cap {settings.MINIMAL_WAVELET_CAP:.6g}"
            )
        needed = required_samples(a)
        if n < needed:
            raise ResolutionError(
                f"lambda*Omega = {a:.6g} needs at least {needed} circle samples, got {n}"
            )
        phi = circle_grid(n)
        normalizer = np.sqrt(CircleService.j0_imag_scaled(2.0 * a))
        logger.debug(f"Minimal wavelet lambda={lam} omega={p.omega} n={n}")
        return CircleFunction(values=np.exp(a * (np.cos(phi) - 1.0)) / normalizer)

    def minimal_uncertainty_residual(self, lam: float, p: IrrepParams, u: CircleFunction) -> float:
        """||(d/dphi + lam*Omega*sin(phi)) u|| / ||u||"""
        norm = self.circle_service.norm(u)
        if norm == 0.0:
            raise DegenerateInputError("Residual is undefined for the zero vector")
        residual = self.dpi_x2(u).values + lam * p.omega * np.sin(u.phi) * u.values
        return self.circle_service.norm(CircleFunction(values=residual)) / norm


irrep_service = IrrepService()
