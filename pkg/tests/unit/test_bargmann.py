import math

import numpy as np
import pytest
from pydantic import ValidationError

from se2wavelet.exceptions import TruncationError
from se2wavelet.routers.bargmann.bargmann_model import BargmannParams
from se2wavelet.routers.bargmann.bargmann_service import bargmann_service, relative_difference
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.plane.plane_model import PlaneFunction, RingDistribution

pytestmark = pytest.mark.unit

UNIT = BargmannParams(sigma=1.0)


@pytest.fixture
def window() -> PlaneFunction:
    return bargmann_service.gaussian_window(UNIT, 128, 8.0)


def test_sigma_must_be_positive():
    with pytest.raises(ValidationError):
        BargmannParams(sigma=0.0)
    assert BargmannParams(sigma=0.5).complex_structure(2.0) == pytest.approx(0.5)


def test_window_is_normalized(window):
    assert window.norm() == pytest.approx(1.0, rel=1e-12)


def test_bargmann_classical_examples(window):
    assert bargmann_service.bargmann_classical(UNIT, window, (0.0, 0.0), (0.0, 0.0)) == pytest.approx(1.0, abs=1e-12)
    value = bargmann_service.bargmann_classical(UNIT, window, (1.0, 0.0), (0.0, 0.0))
    assert value == pytest.approx(0.77880078, abs=1e-8)

    zero = PlaneFunction.zeros(128, 8.0)
    assert bargmann_service.bargmann_classical(UNIT, zero, (0.5, 0.5), (1.0, -1.0)) == 0.0


def test_bargmann_classical_of_window_closed_form(window):
    # B g0(q, p) = exp(sigma^2 |p|^2 / 4 - |q|^2 / (4 sigma^2) + i q . p / 2)
    for q, p in [((0.3, -0.2), (0.5, 0.1)), ((-1.0, 0.4), (0.0, 0.7))]:
        qq, pp = np.array(q), np.array(p)
        expected = np.exp(pp @ pp / 4 - qq @ qq / 4 + 0.5j * (qq @ pp))
        assert abs(bargmann_service.bargmann_classical(UNIT, window, q, p) - expected) < 1e-12


def test_bargmann_classical_window_must_fit(window):
    with pytest.raises(TruncationError):
        bargmann_service.bargmann_classical(UNIT, window, (7.0, 0.0), (0.0, 0.0))
    with pytest.raises(TruncationError):
        bargmann_service.bargmann_classical(BargmannParams(sigma=2.0), window, (0.0, -1.0), (0.0, 0.0))


def test_holomorphy_residual_is_second_order():
    f = bargmann_service.gaussian_window(UNIT, 64, 8.0, center=(0.4, -0.3))
    points = [((0.3, -0.2), (0.5, 0.1)), ((-0.5, 0.6), (-0.2, 0.4))]
    coarse = bargmann_service.holomorphy_residual(UNIT, f, points, 0.2)
    fine = bargmann_service.holomorphy_residual(UNIT, f, points, 0.1)
    assert 3.6 <= coarse / fine <= 4.4
    assert fine < 1e-2


def test_holomorphy_residual_components_are_symmetric():
    f = bargmann_service.gaussian_window(UNIT, 64, 8.0)
    points = [((0.3, 0.3), (0.2, 0.2))]
    first = bargmann_service.holomorphy_residual(UNIT, f, points, 0.1, component=1)
    second = bargmann_service.holomorphy_residual(UNIT, f, points, 0.1, component=2)
    assert first == pytest.approx(second, rel=1e-8)


def test_holomorphy_residual_of_zero_function():
    zero = PlaneFunction.zeros(64, 8.0)
    assert bargmann_service.holomorphy_residual(UNIT, zero, [((0.0, 0.0), (0.0, 0.0))], 0.1) == 0.0


def test_bargmann_of_ring_constant_density():
    density = CircleFunction.constant(math.exp(-0.5), 256)
    ring = RingDistribution(omega=1.0, density=density)
    value = bargmann_service.bargmann_of_ring(UNIT, ring, (0.0, 0.0), (0.0, 0.0))
    assert value == pytest.approx(2 * math.sqrt(math.pi) * math.exp(-1.0), rel=1e-12)


def test_restriction_prefactor_at_zero_momentum():
    for omega in (0.5, 1.0, 2.0):
        expected = math.exp(-omega ** 2 / 2) * math.sqrt(2.0)
        assert bargmann_service.restriction_prefactor(UNIT, omega, 0.0) == pytest.approx(expected, rel=1e-14)


def test_restriction_theorem_holds(rng, random_circle):
    p = IrrepParams(omega=2.0)
    phi = random_circle(256)
    points = []
    for _ in range(20):
        q = rng.uniform(-2.0, 2.0, size=2)
        radius, angle = rng.uniform(0.0, 2.0), rng.uniform(0.0, 2 * math.pi)
        points.append((q, (radius * math.cos(angle), radius * math.sin(angle))))
    table = bargmann_service.restriction_theorem_check(UNIT, p, phi, points)
    assert len(table) == 20
    assert list(table.columns)[-1] == "rel_error"
    assert table["rel_error"].max() <= 1e-8


def test_restriction_theorem_other_widths(rng, random_circle):
    p = IrrepParams(omega=1.5)
    phi = random_circle(256)
    points = [((0.2, -0.1), (0.0, 0.0)), ((1.0, 1.0), (-0.6, 0.8))]
    for sigma in (0.5, 1.3):
        table = bargmann_service.restriction_theorem_check(BargmannParams(sigma=sigma), p, phi, points)
        assert table["rel_error"].max() <= 1e-8


def test_restriction_theorem_zero_density():
    table = bargmann_service.restriction_theorem_check(UNIT, IrrepParams(omega=1.0), CircleFunction.zeros(64),
                                                       [((0.0, 0.0), (0.5, 0.5))])
    assert table["rel_error"].iloc[0] == 0.0
    assert table["lhs_re"].iloc[0] == 0.0


def test_ring_cross_check():
    f = PlaneFunction.from_function(
        lambda x1, x2: np.exp(-((x1 - 0.3) ** 2 + (x2 + 0.2) ** 2) / 2.0) * np.exp(0.5j * x1), 128, 8.0)
    points = [((0.0, 0.0), (0.0, 0.0)), ((0.5, -0.5), (0.4, 0.3)), ((-1.0, 0.2), (-0.3, 0.0))]
    table = bargmann_service.ring_cross_check(UNIT, f, IrrepParams(omega=1.0), points, 256)
    assert len(table) == 3
    assert table["rel_error"].max() <= 1e-5


def test_relative_difference():
    assert relative_difference(1.0 + 1e-9, 1.0) == pytest.approx(1e-9)
    assert relative_difference(1e-3, 0.0) == 1e-3
