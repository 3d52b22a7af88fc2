import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from se2wavelet.config import get_settings
from se2wavelet.exceptions import NormalizationError, TruncationError
from se2wavelet.routers.bargmann.bargmann_model import BargmannParams
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI
from se2wavelet.routers.circle.circle_service import CircleService
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.irrep.irrep_service import IrrepService
from se2wavelet.routers.plane.plane_model import PlaneFunction, RingDistribution
from se2wavelet.routers.plane.plane_service import PlaneService
from se2wavelet.routers.wavelet.wavelet_service import WaveletService

logger: logging.Logger = logging.getLogger("bargmann")

Point = Sequence[float]
PhaseSpacePoint = Tuple[Point, Point]


def relative_difference(observed: complex, reference: complex) -> float:
    diff = abs(observed - reference)
    scale = abs(reference)
    return diff / scale if scale > 0.0 else diff


class BargmannService:
    """
    Classical Bargmann transform Bf(q, p) = exp(sigma^2 |p|^2 / 2) <f, tau(q) mu(p) g0>
    and its restriction to frequency rings.
    """

    def __init__(self) -> None:
        self.circle_service: CircleService = CircleService()
        self.irrep_service: IrrepService = IrrepService()
        self.plane_service: PlaneService = PlaneService()
        self.wavelet_service: WaveletService = WaveletService()

    def gaussian_window(self, b: BargmannParams, m: int, extent: float, center: Point = (0.0, 0.0)) -> PlaneFunction:
        """g0(x - c) with g0(x) = exp(-|x|^2 / (2 sigma^2)) / (sigma sqrt(pi))"""
        c1, c2 = float(center[0]), float(center[1])
        scale = 1.0 / (b.sigma * math.sqrt(math.pi))
        return PlaneFunction.from_function(
            lambda x1, x2: scale * np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / (2.0 * b.sigma ** 2)),
            m, extent,
        )

    def _check_window(self, b: BargmannParams, f: PlaneFunction, q: Point) -> None:
        half_width = get_settings().BARGMANN_WINDOW_SIGMAS * b.sigma
        low, high = -f.extent, f.extent - f.spacing
        for value in q:
            if value - half_width < low or value + half_width > high:
                raise TruncationError(
                    f"Gaussian window at q = ({q[0]}, {q[1]}) with half-width {half_width} leaves the grid [{low}, {high}]"
                )

    def bargmann_classical(self, b: BargmannParams, f: PlaneFunction, q: Point, p: Point) -> complex:
        """
        exp(sigma^2 |p|^2 / 2) sum_x f(x) exp(-i p . (x - q)) g0(x - q) Delta^2

        Raises:
            TruncationError: the window around q is not inside the grid
        """
        self._check_window(b, f, q)
        x1, x2 = f.coordinates()
        y1, y2 = x1 - q[0], x2 - q[1]
        window = np.exp(-(y1 ** 2 + y2 ** 2) / (2.0 * b.sigma ** 2)) / (b.sigma * math.sqrt(math.pi))
        phase = np.exp(-1j * (p[0] * y1 + p[1] * y2))
        overlap = np.sum(f.values * phase * window) * f.spacing ** 2
        return complex(math.exp(0.5 * b.sigma ** 2 * (p[0] ** 2 + p[1] ** 2)) * overlap)

    def holomorphy_residual(self, b: BargmannParams, f: PlaneFunction, points: Sequence[PhaseSpacePoint],
                            h: float, component: Optional[int] = None) -> float:
        """
        Relative discrete norm of (d/dp_j + i sigma^2 d/dq_j) Bf over the points, by central
        differences with step h; j = 1, 2 or both when component is None.
        """
        components = [component] if component is not None else [1, 2]
        residuals: List[complex] = []
        values: List[complex] = []
        for q, p in points:
            q0 = np.asarray(q, dtype=float)
            p0 = np.asarray(p, dtype=float)
            values.append(self.bargmann_classical(b, f, q0, p0))
            for j in components:
                e = np.zeros(2)
                e[j - 1] = h
                d_p = (self.bargmann_classical(b, f, q0, p0 + e) - self.bargmann_classical(b, f, q0, p0 - e)) / (2.0 * h)
                d_q = (self.bargmann_classical(b, f, q0 + e, p0) - self.bargmann_classical(b, f, q0 - e, p0)) / (2.0 * h)
                residuals.append(d_p + 1j * b.sigma ** 2 * d_q)
        residual = float(np.linalg.norm(residuals))
        reference = float(np.linalg.norm(values))
        return residual / reference if reference > 0.0 else residual

    def bargmann_of_ring(self, b: BargmannParams, r: RingDistribution, q: Point, p: Point) -> complex:
        """
        B(P_Omega f)(q, p) as one circle quadrature:
        (sigma/sqrt(pi)) int d(phi) exp(i Omega q . omega(phi)) exp(sigma^2 Omega (p . omega(phi) - Omega/2)) dphi
        """
        phi = r.density.phi
        cos_phi, sin_phi = np.cos(phi), np.sin(phi)
        s2 = b.sigma ** 2
        exponent = 1j * r.omega * (q[0] * cos_phi + q[1] * sin_phi) \
            + s2 * r.omega * (p[0] * cos_phi + p[1] * sin_phi - 0.5 * r.omega)
        integral = np.sum(r.density.values * np.exp(exponent)) * (TWO_PI / r.density.n_samples)
        return complex(b.sigma / math.sqrt(math.pi) * integral)

    def restriction_prefactor(self, b: BargmannParams, omega: float, p_norm: float) -> float:
        """exp(-sigma^2 Omega^2 / 2) (sigma/sqrt(pi)) sqrt(j0(-2i lambda Omega)), lambda = sigma^2 |p|"""
        lam = b.complex_structure(p_norm)
        j0 = self.circle_service.j0(-2j * lam * omega)
        # j0(-2is) = 2 pi I0(2s): real and positive
        if not (j0.real > 0.0 and abs(j0.imag) <= 1e-12 * j0.real):
            raise NormalizationError(f"j0(-2i*{lam * omega}) = {j0} is not real positive")
        return math.exp(-0.5 * b.sigma ** 2 * omega ** 2) * b.sigma / math.sqrt(math.pi) * math.sqrt(j0.real)

    def restriction_theorem_check(self, b: BargmannParams, p: IrrepParams, phi: CircleFunction,
                                  points: Sequence[PhaseSpacePoint]) -> pd.DataFrame:
        """
        Compare B(T_Omega)(q, p), with ring density Phi, against the prefactor times the
        SE(2)-Bargmann transform B^{sigma^2|p|} Phi at (q, theta_p). One row per point.
        """
        ring = RingDistribution(omega=p.omega, density=phi)
        rows = []
        for q, pv in points:
            p_norm = math.hypot(pv[0], pv[1])
            lam = b.complex_structure(p_norm)
            theta_p = math.atan2(pv[1], pv[0])
            u = self.irrep_service.minimal_wavelet(lam, p, phi.n_samples)
            transform = self.wavelet_service.evaluate(p, u, phi, GroupElement(q1=q[0], q2=q[1], theta=theta_p))
            lhs = self.bargmann_of_ring(b, ring, q, pv)
            rhs = self.restriction_prefactor(b, p.omega, p_norm) * transform
            rows.append({
                "q1": float(q[0]), "q2": float(q[1]), "p1": float(pv[0]), "p2": float(pv[1]),
                "lhs_re": lhs.real, "lhs_im": lhs.imag, "rhs_re": rhs.real, "rhs_im": rhs.imag,
                "rel_error": relative_difference(lhs, rhs),
            })
        table = pd.DataFrame(rows, columns=["q1", "q2", "p1", "p2", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "rel_error"])
        if len(table):
            logger.info(f"Restriction identity: max relative error {table['rel_error'].max():.3e} over {len(table)} points")
        return table

    def ring_cross_check(self, b: BargmannParams, f: PlaneFunction, p: IrrepParams,
                         points: Sequence[PhaseSpacePoint], n_samples: Optional[int] = None) -> pd.DataFrame:
        """bargmann_of_ring(ring_restrict(f)) against bargmann_classical of the rendered P_Omega f"""
        ring = self.plane_service.ring_restrict(f, p, n_samples)
        rendered = self.plane_service.render(ring, f.m, f.extent)
        rows = []
        for q, pv in points:
            ring_value = self.bargmann_of_ring(b, ring, q, pv)
            plane_value = self.bargmann_classical(b, rendered, q, pv)
            rows.append({"q1": float(q[0]), "q2": float(q[1]), "p1": float(pv[0]), "p2": float(pv[1]),
                         "rel_error": relative_difference(ring_value, plane_value)})
        return pd.DataFrame(rows, columns=["q1", "q2", "p1", "p2", "rel_error"])


bargmann_service = BargmannService()
