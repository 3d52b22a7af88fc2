import logging
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from se2wavelet.config import get_settings
from se2wavelet.exceptions import GridIncompatibilityError, SE2Exception, TailEnergyError
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI, circle_grid
from se2wavelet.routers.circle.circle_service import CircleService
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_model import PlaneFunction, RingComponent, RingDistribution, plane_axis
from se2wavelet.utils.advanced_performance import tracker
from se2wavelet.workers.grid_worker import parallel_map

logger: logging.Logger = logging.getLogger("plane")


def ring_exponentials(omega: float, phi: np.ndarray, x: np.ndarray):
    """E1[j, a] = exp(-i omega x_a cos(phi_j)), E2[j, b] = exp(-i omega x_b sin(phi_j))"""
    e1 = np.exp(-1j * omega * np.outer(np.cos(phi), x))
    e2 = np.exp(-1j * omega * np.outer(np.sin(phi), x))
    return e1, e2


def boundary_decay(f: PlaneFunction) -> float:
    """Largest boundary sample relative to the largest sample (0 for the zero function)"""
    peak = float(np.max(np.abs(f.values)))
    if peak == 0.0:
        return 0.0
    v = np.abs(f.values)
    edge = max(v[0, :].max(), v[-1, :].max(), v[:, 0].max(), v[:, -1].max())
    return float(edge) / peak


def relative_l2_error(approx: PlaneFunction, reference: PlaneFunction) -> float:
    ref = float(np.linalg.norm(reference.values))
    diff = float(np.linalg.norm(approx.values - reference.values))
    return diff / ref if ref > 0.0 else diff


class PlaneService:
    """Unitary Fourier analysis of plane functions, one frequency ring at a time"""

    def __init__(self) -> None:
        self.circle_service: CircleService = CircleService()

    def ring_restrict(self, f: PlaneFunction, p: IrrepParams, n_samples: Optional[int] = None) -> RingDistribution:
        """
        Restriction of the unitary Fourier transform to the circle |k| = omega:
        density[j] = (1/2pi) sum_x f(x) exp(-i omega omega(phi_j) . x) Delta^2

        A boundary that has not decayed is reported in metadata["warnings"], not raised.
        """
        n = n_samples if n_samples is not None else get_settings().CIRCLE_SAMPLES
        phi = circle_grid(n)
        e1, e2 = ring_exponentials(p.omega, phi, f.axis)
        density = np.sum((e1 @ f.values) * e2, axis=1) * (f.spacing ** 2 / TWO_PI)

        metadata = {"m": f.m, "extent": f.extent, "warnings": []}
        decay = boundary_decay(f)
        tolerance = get_settings().TRUNCATION_TOLERANCE
        if decay > tolerance:
            message = f"boundary samples reach {decay:.3e} of the peak (tolerance {tolerance:.1e}); ring values are truncated"
            metadata["warnings"].append(message)
            logger.warning(f"⚠️ {message}")
        return RingDistribution(omega=p.omega, density=CircleFunction(values=density), metadata=metadata)

    def synthesize(self, ring: RingDistribution, points: Sequence[Sequence[float]]) -> np.ndarray:
        """P_Omega at arbitrary points: (1/2pi) int d(phi) exp(i omega omega(phi) . x) dphi"""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        phi = ring.density.phi
        phase = np.exp(1j * ring.omega * (np.outer(pts[:, 0], np.cos(phi)) + np.outer(pts[:, 1], np.sin(phi))))
        return phase @ ring.density.values / ring.density.n_samples

    def render(self, ring: RingDistribution, m: int, extent: float) -> PlaneFunction:
        """Sample the ring synthesis on an m x m grid"""
        d = ring.density.values
        e1, e2 = ring_exponentials(ring.omega, ring.density.phi, plane_axis(m, extent))
        values = np.conj(e1).T @ (d[:, None] * np.conj(e2)) / ring.density.n_samples
        return PlaneFunction(extent=extent, values=values)

    @tracker.measure_time
    def project(self, f: PlaneFunction, p: IrrepParams, n_samples: Optional[int] = None) -> PlaneFunction:
        """Rendering of P_Omega f = (2pi)^-2 f * j0(Omega |.|), computed by ring synthesis"""
        return self.render(self.ring_restrict(f, p, n_samples), f.m, f.extent)

    def h_omega_norm(self, r: RingDistribution) -> float:
        return self.circle_service.norm(r.density)

    def h_omega_pairing(self, rendered: PlaneFunction, g: PlaneFunction) -> complex:
        """
        sum P(x) conj(g(x)) Delta^2 for a rendered P in H_Omega and a decaying g.
        Equals <d, g_hat restricted to the ring> in L2(S^1).
        """
        if rendered.m != g.m or rendered.extent != g.extent:
            raise GridIncompatibilityError(
                f"Plane grids differ: m={rendered.m}, L={rendered.extent} vs m={g.m}, L={g.extent}"
            )
        return complex(np.sum(rendered.values * np.conj(g.values)) * rendered.spacing ** 2)

    def convolve_bessel(self, f: PlaneFunction, p: IrrepParams, points: Sequence[Sequence[float]]) -> np.ndarray:
        """Brute force (2pi)^-2 sum_y f(y) j0(Omega |x - y|) Delta^2 at each point"""
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        y1, y2 = f.coordinates()
        out = np.empty(pts.shape[0], dtype=complex)
        for i, (x1, x2) in enumerate(pts):
            radius = np.hypot(x1 - y1, x2 - y2)
            kernel = self.circle_service.j0(p.omega * radius)
            out[i] = np.sum(f.values * kernel) * f.spacing ** 2 / TWO_PI ** 2
        return out

    def ring_components(self, f: PlaneFunction, omega_max: float, n_nodes: int,
                        n_samples: Optional[int] = None) -> List[RingComponent]:
        """Rings at the Gauss-Legendre nodes of [0, omega_max]"""
        if omega_max <= 0.0 or n_nodes < 1:
            raise SE2Exception(f"need omega_max > 0 and n_nodes >= 1, got {omega_max}, {n_nodes}")
        nodes, weights = leggauss(n_nodes)
        omegas = 0.5 * omega_max * (nodes + 1.0)
        scaled = 0.5 * omega_max * weights

        def restrict(i: int) -> RingComponent:
            ring = self.ring_restrict(f, IrrepParams(omega=omegas[i]), n_samples)
            return RingComponent(weight=float(scaled[i]), ring=ring)

        return parallel_map(restrict, range(n_nodes))

    def plancherel_sum(self, components: List[RingComponent]) -> float:
        """sum_i w_i Omega_i ||f_Omega_i||^2"""
        return float(sum(c.weight * c.omega * self.h_omega_norm(c.ring) ** 2 for c in components))

    @tracker.measure_time
    def reconstruct(self, f: PlaneFunction, omega_max: float, n_nodes: int,
                    n_samples: Optional[int] = None) -> PlaneFunction:
        """
        f = int_0^omega_max P_Omega f Omega dOmega by Gauss-Legendre quadrature.

        Raises:
            TailEnergyError: more than TAIL_TOLERANCE of the energy lies beyond omega_max
        """
        energy = f.norm() ** 2
        if energy == 0.0:
            return PlaneFunction.zeros(f.m, f.extent)

        components = self.ring_components(f, omega_max, n_nodes, n_samples)
        deficit = (energy - self.plancherel_sum(components)) / energy
        tolerance = get_settings().TAIL_TOLERANCE
        if deficit > tolerance:
            raise TailEnergyError(
                f"{deficit:.3e} of the energy lies outside |k| <= {omega_max} (tolerance {tolerance:.1e}); raise --omega-max"
            )
        logger.info(f"Reconstructing from {n_nodes} rings up to omega={omega_max}, energy deficit {deficit:.3e}")

        renders = parallel_map(lambda c: self.render(c.ring, f.m, f.extent).values * (c.weight * c.omega), components)
        total = np.zeros((f.m, f.m), dtype=complex)
        for values in renders:
            total += values
        return PlaneFunction(extent=f.extent, values=total)

    def translate(self, ring: RingDistribution, g: GroupElement) -> RingDistribution:
        """Quasi-regular action f -> f(g^-1 x) on ring data: d(phi) -> exp(-i omega omega(phi) . q) d(phi - theta)"""
        phi = ring.density.phi
        phase = np.exp(-1j * ring.omega * (g.q1 * np.cos(phi) + g.q2 * np.sin(phi)))
        rotated = self.circle_service.rotate(ring.density, g.theta)
        return RingDistribution(omega=ring.omega, density=CircleFunction(values=phase * rotated.values),
                                metadata=dict(ring.metadata))


plane_service = PlaneService()
