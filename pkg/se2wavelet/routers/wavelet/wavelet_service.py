import logging
from typing import Callable, Tuple

import numpy as np

from se2wavelet.config import get_settings
from se2wavelet.exceptions import GridIncompatibilityError, NormalizationError, NotInRangeError, RepresentationError
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI
from se2wavelet.routers.circle.circle_service import CircleService
from se2wavelet.routers.cr.cr_service import ring_cr_residual
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.irrep.irrep_service import IrrepService
from se2wavelet.routers.wavelet.wavelet_model import (
    GridSpec,
    WaveletField,
    check_theta_alignment,
    ring_densities_from_provenance,
)
from se2wavelet.utils.advanced_performance import tracker
from se2wavelet.workers.grid_worker import parallel_map

logger: logging.Logger = logging.getLogger("wavelet")


def render_ring_densities(omega: float, densities: np.ndarray, grid: GridSpec) -> np.ndarray:
    """
    F(q, theta_l) = int d_l(phi) exp(i omega q . omega(phi)) dphi on the spatial grid,
    one theta slice per job. Returns shape (m, m, n_theta).
    """
    n = densities.shape[1]
    phi = TWO_PI * np.arange(n) / n
    x = grid.axis
    e1 = np.exp(1j * omega * np.outer(x, np.cos(phi)))
    e2 = np.exp(1j * omega * np.outer(np.sin(phi), x))
    weight = TWO_PI / n

    def render_slice(l: int) -> np.ndarray:
        return e1 @ (densities[l][:, None] * e2) * weight

    slices = parallel_map(render_slice, range(densities.shape[0]))
    return np.stack(slices, axis=2)


class WaveletService:
    """Analysis operator A^Omega Phi(q, theta) = <Phi, Pi^Omega(q, theta) u0> and its kernel"""

    def __init__(self) -> None:
        self.circle_service: CircleService = CircleService()
        self.irrep_service: IrrepService = IrrepService()

    def check_normalized(self, u0: CircleFunction) -> None:
        norm = self.circle_service.norm(u0)
        tolerance = get_settings().NORMALIZATION_TOLERANCE
        if abs(norm - 1.0) > tolerance:
            raise NormalizationError(f"Mother wavelet must have unit norm, got {norm:.15g}")

    @staticmethod
    def _require_rings(F: WaveletField) -> np.ndarray:
        if F.ring_densities is None:
            raise RepresentationError(
                "Field has no ring densities; spatial samples alone do not determine its H_Omega data"
            )
        return F.ring_densities

    @tracker.measure_time
    def analyze(self, p: IrrepParams, u0: CircleFunction, phi: CircleFunction, grid: GridSpec,
                render: bool = True) -> WaveletField:
        """
        A^Omega Phi(q, theta) = int Phi(phi) conj(u0(phi - theta)) exp(i Omega q . omega(phi)) dphi.

        The field always carries its ring densities and provenance; render=False skips the
        spatial rendering.
        """
        densities = ring_densities_from_provenance(u0, phi, grid.n_theta)
        values = render_ring_densities(p.omega, densities, grid) if render else None
        logger.debug(f"Analyzed n={phi.n_samples} on {grid.m}x{grid.m}x{grid.n_theta}, render={render}")
        return WaveletField(omega=p.omega, grid=grid, values=values, ring_densities=densities, u0=u0, phi=phi)

    def render(self, F: WaveletField) -> WaveletField:
        """Same field with spatial samples filled in from its ring densities"""
        if F.values is not None:
            return F
        values = render_ring_densities(F.omega, self._require_rings(F), F.grid)
        return WaveletField(omega=F.omega, grid=F.grid, values=values, ring_densities=F.ring_densities,
                            u0=F.u0, phi=F.phi, valid_mask=F.valid_mask)

    def render_field(self, fn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
                     omega: float, grid: GridSpec) -> WaveletField:
        """Samples of an analytic fn(q1, q2, theta) on the grid, without ring data"""
        q1, q2, theta = np.meshgrid(grid.axis, grid.axis, grid.theta, indexing="ij")
        values = np.broadcast_to(fn(q1, q2, theta), (grid.m, grid.m, grid.n_theta))
        return WaveletField(omega=omega, grid=grid, values=values)

    def evaluate(self, p: IrrepParams, u0: CircleFunction, phi: CircleFunction, g: GroupElement) -> complex:
        """A^Omega Phi at a single, not necessarily grid-aligned, group element"""
        return self.circle_service.inner_product(phi, self.irrep_service.apply_irrep(p, g, u0))

    def kernel(self, p: IrrepParams, u0: CircleFunction, g: GroupElement, g2: GroupElement) -> complex:
        """K(g, g2) = <Pi(g) u0, Pi(g2) u0> = A^Omega[Pi(g) u0](g2)"""
        self.check_normalized(u0)
        return self.circle_service.inner_product(
            self.irrep_service.apply_irrep(p, g, u0),
            self.irrep_service.apply_irrep(p, g2, u0),
        )

    def kernel_field(self, p: IrrepParams, u0: CircleFunction, g: GroupElement, grid: GridSpec,
                     render: bool = False) -> WaveletField:
        """K_g as a field: the analysis of Pi(g) u0"""
        self.check_normalized(u0)
        return self.analyze(p, u0, self.irrep_service.apply_irrep(p, g, u0), grid, render=render)

    def field_inner(self, F: WaveletField, G: WaveletField) -> complex:
        """
        H_Omega(SE(2)) scalar product: int dtheta <d^F_theta, d^G_theta>_{L2(S1)}

        With provenance on both sides the theta integral runs over every rotation of the
        circle grid, where it factorizes into <Phi_F, Phi_G> <u0_G, u0_F> whatever n_theta is.
        Otherwise it is the trapezoidal sum over the n_theta slices.
        """
        a, b = self._require_rings(F), self._require_rings(G)
        if a.shape != b.shape or F.omega != G.omega:
            raise GridIncompatibilityError(
                f"Fields differ: omega {F.omega} vs {G.omega}, ring data {a.shape} vs {b.shape}"
            )
        if F.has_provenance and G.has_provenance:
            return (self.circle_service.inner_product(F.phi, G.phi)
                    * self.circle_service.inner_product(G.u0, F.u0))
        n_theta, n = a.shape
        return complex(np.sum(a * np.conj(b)) * (TWO_PI / n) * (TWO_PI / n_theta))

    def field_norm(self, F: WaveletField) -> float:
        return float(np.sqrt(max(self.field_inner(F, F).real, 0.0)))

    def reproduce_check(self, p: IrrepParams, u0: CircleFunction, phi: CircleFunction, g: GroupElement,
                        grid: GridSpec) -> Tuple[complex, complex]:
        """(<A Phi, K_g> in H_Omega(SE(2)), A Phi(g))"""
        self.check_normalized(u0)
        field = self.analyze(p, u0, phi, grid, render=False)
        kernel = self.kernel_field(p, u0, g, grid)
        return self.field_inner(field, kernel), self.evaluate(p, u0, phi, g)

    def weak_reconstruct(self, F: WaveletField) -> CircleFunction:
        """Phi(phi) = int u0(phi - theta) d_theta(phi) dtheta"""
        if F.u0 is None:
            raise RepresentationError("Weak reconstruction needs the mother wavelet of the field")
        densities = self._require_rings(F)
        self.check_normalized(F.u0)
        if F.phi is not None:
            # full-grid theta integral: sum over all rotations of |u0(phi - theta)|^2 is ||u0||^2 at every phi
            return CircleFunction(values=F.phi.values * self.circle_service.norm(F.u0) ** 2)
        n_theta, n = densities.shape
        step = check_theta_alignment(n, n_theta)
        shifted = np.stack([np.roll(F.u0.values, l * step) for l in range(n_theta)])
        return CircleFunction(values=np.sum(shifted * densities, axis=0) * (TWO_PI / n_theta))

    def bargmann_se2(self, lam: float, p: IrrepParams, phi: CircleFunction, grid: GridSpec,
                     render: bool = True) -> WaveletField:
        """Analysis with the minimal uncertainty wavelet u^{lam, Omega}"""
        u0 = self.irrep_service.minimal_wavelet(lam, p, phi.n_samples)
        return self.analyze(p, u0, phi, grid, render=render)

    def surjective_invert(self, F: WaveletField, lam: float) -> CircleFunction:
        """
        Recover Phi from a field in the range of the SE(2)-Bargmann transform, by a
        pointwise least-squares fit of d_l = u(phi - theta_l) Phi over every theta slice.

        Raises:
            NotInRangeError: the ring-side CR residual exceeds CR_TOLERANCE
        """
        densities = self._require_rings(F)
        tolerance = get_settings().CR_TOLERANCE
        residual = ring_cr_residual(F, lam)
        if residual > tolerance:
            raise NotInRangeError(
                f"Field is not in the range of the transform for lambda={lam}: CR residual {residual:.3e} > {tolerance:.1e}"
            )
        n_theta, n = densities.shape
        step = check_theta_alignment(n, n_theta)
        u = self.irrep_service.minimal_wavelet(lam, IrrepParams(omega=F.omega), n).values.real
        shifted = np.stack([np.roll(u, l * step) for l in range(n_theta)])
        return CircleFunction(values=np.sum(shifted * densities, axis=0) / np.sum(shifted ** 2, axis=0))


wavelet_service = WaveletService()
