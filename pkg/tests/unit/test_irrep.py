import math

import numpy as np
import pytest
from pydantic import ValidationError

from se2wavelet.exceptions import DegenerateInputError, ResolutionError
from se2wavelet.routers.circle.circle_model import CircleFunction, circle_grid
from se2wavelet.routers.circle.circle_service import circle_service
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.group.group_service import group_service
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.irrep.irrep_service import irrep_service, required_samples

pytestmark = pytest.mark.unit

N = 256


def test_omega_must_be_positive():
    with pytest.raises(ValidationError):
        IrrepParams(omega=0.0)
    with pytest.raises(ValidationError):
        IrrepParams(omega=-1.0)


def test_apply_irrep_examples(omega_two, random_circle):
    u = random_circle(N)
    assert np.array_equal(irrep_service.apply_irrep(omega_two, GroupElement.identity(), u).values, u.values)

    one = CircleFunction.constant(1.0, N)
    rotated = irrep_service.apply_irrep(omega_two, GroupElement(theta=1.1), one)
    assert np.allclose(rotated.values, 1.0, atol=1e-14)


def test_apply_irrep_is_a_homomorphism(rng, omega_two, random_circle):
    u = random_circle(N)
    for _ in range(20):
        g1, g2 = GroupElement.random(rng), GroupElement.random(rng)
        lhs = irrep_service.apply_irrep(omega_two, g1, irrep_service.apply_irrep(omega_two, g2, u))
        rhs = irrep_service.apply_irrep(omega_two, group_service.compose(g1, g2), u)
        assert np.max(np.abs(lhs.values - rhs.values)) < 1e-10


def test_apply_irrep_is_unitary(rng, omega_two, random_circle):
    u = random_circle(N)
    norm = circle_service.norm(u)
    for _ in range(10):
        moved = irrep_service.apply_irrep(omega_two, GroupElement.random(rng), u)
        assert circle_service.norm(moved) == pytest.approx(norm, rel=1e-12)


def test_generator_examples():
    p = IrrepParams(omega=3.0)
    phi = circle_grid(N)
    one = CircleFunction.constant(1.0, N)
    zero = CircleFunction.zeros(N)

    assert np.allclose(irrep_service.dpi_x1(p, one).values, 3j * np.sin(phi))
    assert np.allclose(irrep_service.dpi_x3(p, one).values, -3j * np.cos(phi))
    assert np.max(np.abs(irrep_service.dpi_x1(p, zero).values)) == 0.0
    assert np.max(np.abs(irrep_service.dpi_x3(p, zero).values)) == 0.0

    sin = CircleFunction.from_function(np.sin, N)
    assert np.allclose(irrep_service.dpi_x2(sin).values, np.cos(phi), atol=1e-12)


def test_dpi_x1_is_skew_adjoint(omega_two, random_circle):
    for _ in range(20):
        u = random_circle(N)
        pairing = circle_service.inner_product(irrep_service.dpi_x1(omega_two, u), u)
        assert abs(pairing.real) <= 1e-12 * omega_two.omega * circle_service.norm(u) ** 2


def test_commutator_identity(omega_two, random_circle):
    for _ in range(20):
        u = random_circle(N)
        x1x2 = irrep_service.dpi_x1(omega_two, irrep_service.dpi_x2(u)).values
        x2x1 = irrep_service.dpi_x2(irrep_service.dpi_x1(omega_two, u)).values
        x3 = irrep_service.dpi_x3(omega_two, u).values
        assert np.max(np.abs(x1x2 - x2x1 - x3)) <= 1e-10 * np.max(np.abs(u.values))


def test_uncertainty_gap_examples():
    p = IrrepParams(omega=3.0)
    assert abs(irrep_service.uncertainty_gap(p, irrep_service.minimal_wavelet(0.7, p, N))) < 1e-10
    assert abs(irrep_service.uncertainty_gap(p, CircleFunction.constant(0.4, N))) < 1e-12

    one = IrrepParams(omega=1.0)
    u = CircleFunction.from_function(lambda phi: 1 + 0.5 * np.exp(1j * phi), 4096)
    gap = irrep_service.uncertainty_gap(one, u)
    # by hand: ||X1 u||^2 = 5*pi/4, ||X2 u||^2 = pi/2, <X3 u, u> = -i*pi
    expected = math.sqrt(5 * math.pi / 4) * math.sqrt(math.pi / 2) - math.pi / 2
    assert gap > 0.0
    assert gap == pytest.approx(expected, rel=1e-10)


def test_uncertainty_gap_rejects_zero_vector(omega_two):
    with pytest.raises(DegenerateInputError):
        irrep_service.uncertainty_gap(omega_two, CircleFunction.zeros(N))


def test_minimal_wavelet_lambda_zero_is_constant(omega_two):
    u = irrep_service.minimal_wavelet(0.0, omega_two, N)
    assert np.allclose(u.values, 1.0 / math.sqrt(2 * math.pi), atol=1e-15)


@pytest.mark.parametrize("lam,omega", [(0.5, 1.0), (1.0, 2.0), (0.2, 10.0)])
def test_minimal_wavelet_is_normalized(lam, omega):
    u = irrep_service.minimal_wavelet(lam, IrrepParams(omega=omega), N)
    assert circle_service.norm(u) == pytest.approx(1.0, abs=1e-12)


def test_minimal_wavelet_solves_its_ode():
    p = IrrepParams(omega=3.0)
    u = irrep_service.minimal_wavelet(2.0, p, 512)
    assert irrep_service.minimal_uncertainty_residual(2.0, p, u) <= 1e-10
    assert irrep_service.minimal_uncertainty_residual(0.5, p, u) > 1e-2


def test_minimal_wavelet_equality_case_matches_bessel_ratio():
    from scipy import special

    p = IrrepParams(omega=2.0)
    for lam in (0.5, 2.0, 5.0):
        a = lam * p.omega
        terms = irrep_service.uncertainty_terms(p, irrep_service.minimal_wavelet(lam, p, 512))
        closed = 0.5 * p.omega * special.ive(1, 2 * a) / special.ive(0, 2 * a)
        assert terms.product == pytest.approx(closed, rel=1e-9)
        assert terms.gap <= 1e-9 * p.omega


def test_minimal_wavelet_caps(omega_two):
    with pytest.raises(ResolutionError):
        irrep_service.minimal_wavelet(-0.1, omega_two, N)
    with pytest.raises(ResolutionError):
        irrep_service.minimal_wavelet(20.0, omega_two, 4096)
    with pytest.raises(ResolutionError) as excinfo:
        irrep_service.minimal_wavelet(10.0, omega_two, 16)
    assert str(required_samples(20.0)) in excinfo.value.detail


def test_required_samples_grows_with_concentration():
    assert required_samples(0.0) == 8
    sizes = [required_samples(a) for a in (1.0, 6.0, 30.0)]
    assert sizes == sorted(sizes)
    assert all(n % 2 == 0 for n in sizes)
    assert sizes[-1] <= 256
