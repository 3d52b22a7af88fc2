import logging
from enum import Enum
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from se2wavelet.exceptions import GridIncompatibilityError, RepresentationError, TruncationError
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI
from se2wavelet.routers.circle.circle_service import spectral_derivative_axis
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_model import PlaneFunction
from se2wavelet.routers.plane.plane_service import PlaneService
from se2wavelet.routers.wavelet.wavelet_model import WaveletField, check_theta_alignment, theta_grid

logger: logging.Logger = logging.getLogger("cr")

# h must be an integer number of grid cells up to this slack
STEP_TOLERANCE = 1e-9


class Generator(str, Enum):
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"


def provenance_theta_derivative(u0: CircleFunction, phi: CircleFunction, n_theta: int) -> np.ndarray:
    """
    d/dtheta of d_theta(phi) = conj(u0(phi - theta)) Phi(phi), i.e. -conj(u0'(phi - theta)) Phi(phi).
    u0' is spectral on the circle grid, so the result does not depend on how fine the theta grid is.
    """
    step = check_theta_alignment(u0.n_samples, n_theta)
    conj_du0 = np.conj(spectral_derivative_axis(u0.values))
    shifted = np.stack([np.roll(conj_du0, l * step) for l in range(n_theta)])
    return -shifted * phi.values[None, :]


def ring_cr_densities(F: WaveletField, lam: float) -> np.ndarray:
    """
    Ring densities of (X2 + i lam X1) F. X1 brings down i Omega sin(phi - theta) inside the
    ring integral and X2 is d/dtheta, so the density is d_theta' - lam Omega sin(phi - theta) d.
    """
    if F.ring_densities is None:
        raise RepresentationError("The ring-side CR residual needs the ring densities of the field")
    d = F.ring_densities
    n_theta, n = d.shape
    phi = TWO_PI * np.arange(n) / n
    theta = theta_grid(n_theta)
    if F.has_provenance:
        d_theta = provenance_theta_derivative(F.u0, F.phi, n_theta)
    else:
        d_theta = spectral_derivative_axis(d, axis=0)
    return d_theta - lam * F.omega * np.sin(phi[None, :] - theta[:, None]) * d


def ring_cr_residual(F: WaveletField, lam: float) -> float:
    """||(X2 + i lam X1) F|| / ||F|| in H_Omega(SE(2)), from ring data only"""
    total = float(np.linalg.norm(F.ring_densities)) if F.ring_densities is not None else 0.0
    residual = float(np.linalg.norm(ring_cr_densities(F, lam)))
    if total == 0.0:
        return residual
    return residual / total


class CRService:
    """Left-invariant vector fields on sampled SE(2) fields and the CR operator X2 + i lam X1"""

    def __init__(self) -> None:
        self.plane_service: PlaneService = PlaneService()

    @staticmethod
    def _cells(F: WaveletField, h: float) -> int:
        spacing = F.grid.spacing
        cells = h / spacing
        s = int(np.rint(cells))
        if s < 1 or abs(cells - s) > STEP_TOLERANCE * max(1.0, cells):
            raise GridIncompatibilityError(
                f"Step h = {h} must be a positive integer multiple of the grid spacing {spacing}"
            )
        if 2 * s >= F.grid.m:
            raise GridIncompatibilityError(f"Step h = {h} leaves no interior on a {F.grid.m}-point grid")
        return s

    def apply_field(self, F: WaveletField, which: Generator, h: float) -> WaveletField:
        """
        X1 = -sin(theta) d1 + cos(theta) d2, X2 = d/dtheta, X3 = cos(theta) d1 + sin(theta) d2.

        Spatial partials are central differences with step h; d/dtheta is spectral.
        Points whose stencil leaves the valid region are masked out and set to zero.
        """
        which = Generator(which)
        if F.values is None:
            raise RepresentationError("Differential operators need rendered field samples")
        s = self._cells(F, h)
        v = F.values
        m = F.grid.m
        old = F.mask()

        if which == Generator.X2:
            out = spectral_derivative_axis(v, axis=2)
            valid = old.copy()
        else:
            d1 = np.zeros_like(v)
            d2 = np.zeros_like(v)
            d1[s:m - s] = (v[2 * s:] - v[:m - 2 * s]) / (2.0 * h)
            d2[:, s:m - s] = (v[:, 2 * s:] - v[:, :m - 2 * s]) / (2.0 * h)
            ok1 = np.zeros((m, m), dtype=bool)
            ok2 = np.zeros((m, m), dtype=bool)
            ok1[s:m - s] = old[2 * s:] & old[:m - 2 * s]
            ok2[:, s:m - s] = old[:, 2 * s:] & old[:, :m - 2 * s]
            valid = ok1 & ok2
            theta = F.grid.theta[None, None, :]
            if which == Generator.X1:
                out = -np.sin(theta) * d1 + np.cos(theta) * d2
            else:
                out = np.cos(theta) * d1 + np.sin(theta) * d2

        out = np.where(valid[:, :, None], out, 0.0)
        return WaveletField(omega=F.omega, grid=F.grid, values=out, valid_mask=valid)

    def cr_residual(self, F: WaveletField, lam: float, h: float, mask: Optional[np.ndarray] = None) -> float:
        """
        Relative discrete L2 norm of (X2 + i lam X1) F over the valid interior,
        normalized by the norm of F over the same points.
        """
        x1 = self.apply_field(F, Generator.X1, h)
        x2 = self.apply_field(F, Generator.X2, h)
        valid = x1.mask() & x2.mask()
        if mask is not None:
            valid = valid & mask
        z = (x2.values + 1j * lam * x1.values)[valid]
        reference = float(np.linalg.norm(F.values[valid]))
        residual = float(np.linalg.norm(z))
        if reference == 0.0:
            return residual
        return residual / reference

    def cr_convergence(self, F: WaveletField, lam: float, steps: Sequence[float]) -> pd.DataFrame:
        """
        Residual at each step (largest first) on the interior valid for the largest step,
        with the ratio residual(previous h) / residual(h).
        """
        ordered = sorted(steps, reverse=True)
        common = self.apply_field(F, Generator.X1, ordered[0]).mask()
        residuals = [self.cr_residual(F, lam, h, mask=common) for h in ordered]
        ratios = [np.nan] + [prev / cur if cur > 0.0 else np.inf
                             for prev, cur in zip(residuals[:-1], residuals[1:])]
        table = pd.DataFrame({"h": ordered, "residual": residuals, "ratio": ratios})
        logger.info(f"CR convergence lambda={lam}:\n{table.to_string(index=False)}")
        return table

    def group_fourier(self, f: WaveletField, p: IrrepParams, u: CircleFunction) -> CircleFunction:
        """
        (F f(Omega) u)(phi) = int dtheta f_hat^Omega(phi, theta) u(phi - theta), the hat being the
        unitary Fourier transform in q restricted to the ring |k| = Omega.

        Raises:
            TruncationError: a theta slice has not decayed at the spatial boundary
        """
        if f.values is None:
            raise RepresentationError("The group Fourier transform needs rendered samples")
        n = u.n_samples
        n_theta = f.grid.n_theta
        step = check_theta_alignment(n, n_theta)
        rings = np.empty((n_theta, n), dtype=complex)
        for l in range(n_theta):
            plane = PlaneFunction(extent=f.grid.extent, values=f.values[:, :, l])
            ring = self.plane_service.ring_restrict(plane, p, n)
            if ring.warnings:
                raise TruncationError(f"theta slice {l}: {ring.warnings[0]}")
            rings[l] = ring.density.values
        shifted = np.stack([np.roll(u.values, l * step) for l in range(n_theta)])
        return CircleFunction(values=np.sum(rings * shifted, axis=0) * (TWO_PI / n_theta))


cr_service = CRService()
