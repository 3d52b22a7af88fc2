import logging
from typing import Union

import numpy as np
from scipy import special

from se2wavelet.exceptions import GridIncompatibilityError
from se2wavelet.routers.circle.circle_model import CircleFunction, TWO_PI

logger: logging.Logger = logging.getLogger("circle")

ComplexLike = Union[complex, float, np.ndarray]

# Rotations closer than this (in grid cells) to an integer shift are done by index shift
GRID_SHIFT_TOLERANCE = 1e-9


def mode_numbers(n: int) -> np.ndarray:
    """Integer Fourier mode numbers in numpy FFT order (Nyquist reported as -n/2)"""
    return np.fft.fftfreq(n, d=1.0 / n)


def spectral_derivative_axis(values: np.ndarray, axis: int = -1) -> np.ndarray:
    """
    Periodic spectral derivative along one axis of a uniformly sampled [0, 2*pi) grid.

    Mode m is multiplied by i*m; the Nyquist mode is zeroed so real data stays real.
    """
    n = values.shape[axis]
    multiplier = 1j * mode_numbers(n)
    if n % 2 == 0:
        multiplier[n // 2] = 0.0
    shape = [1] * values.ndim
    shape[axis] = n
    coeffs = np.fft.fft(values, axis=axis)
    return np.fft.ifft(coeffs * multiplier.reshape(shape), axis=axis)


def shift_axis(values: np.ndarray, theta: float, axis: int = -1) -> np.ndarray:
    """
    Sample-wise phi -> u(phi - theta) along one periodic axis.

    Grid-aligned angles are an exact index shift; other angles use trigonometric interpolation.
    """
    n = values.shape[axis]
    theta = float(np.mod(theta, TWO_PI))
    cells = theta * n / TWO_PI
    k = int(np.rint(cells))
    if abs(cells - k) <= GRID_SHIFT_TOLERANCE:
        return np.roll(values, k % n, axis=axis)

    m = mode_numbers(n)
    factor = np.exp(-1j * m * theta)
    if n % 2 == 0:
        # symmetric split of the Nyquist mode
        factor[n // 2] = np.cos(0.5 * n * theta)
    shape = [1] * values.ndim
    shape[axis] = n
    coeffs = np.fft.fft(values, axis=axis)
    return np.fft.ifft(coeffs * factor.reshape(shape), axis=axis)


class CircleService:
    """Spectral numerics on the circle: quadrature, rotation, differentiation and j0"""

    @staticmethod
    def _check_same_grid(u: CircleFunction, v: CircleFunction) -> None:
        if u.n_samples != v.n_samples:
            raise GridIncompatibilityError(
                f"Circle grids differ: {u.n_samples} vs {v.n_samples} samples"
            )

    def inner_product(self, u: CircleFunction, v: CircleFunction) -> complex:
        """
        <u, v> = int_0^{2pi} u(phi) conj(v(phi)) dphi by the trapezoidal rule.
        """
        self._check_same_grid(u, v)
        return complex(np.sum(u.values * np.conj(v.values)) * (TWO_PI / u.n_samples))

    def norm(self, u: CircleFunction) -> float:
        return float(np.sqrt(max(self.inner_product(u, u).real, 0.0)))

    def rotate(self, u: CircleFunction, theta: float) -> CircleFunction:
        """phi -> u(phi - theta)"""
        return CircleFunction(values=shift_axis(u.values, theta))

    def spectral_derivative(self, u: CircleFunction) -> CircleFunction:
        """d/dphi with the Nyquist mode mapped to zero"""
        return CircleFunction(values=spectral_derivative_axis(u.values))

    @staticmethod
    def j0(z: ComplexLike) -> ComplexLike:
        """
        j0(z) = int_0^{2pi} exp(i z cos(phi)) dphi = 2*pi*J0(z) for complex z.
        """
        result = TWO_PI * special.jv(0, np.asarray(z, dtype=complex))
        if np.ndim(result) == 0:
            return complex(result)
        return result

    @staticmethod
    def j0_imag_scaled(s: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
        """
        exp(-|s|) * j0(-i s) for real s, i.e. 2*pi*I0(s)*exp(-|s|).

        This is the overflow-free normalizer of exp(s cos(phi)) type integrands.
        """
        result = TWO_PI * special.i0e(np.asarray(s, dtype=float))
        if np.ndim(result) == 0:
            return float(result)
        return result


circle_service = CircleService()
