import logging
import math
from typing import Any, Callable, Dict, List, Tuple

import numpy as np

from se2wavelet.api.schemas import VerificationReport
from se2wavelet.exceptions import NotInRangeError, SE2Exception
from se2wavelet.routers.bargmann.bargmann_model import BargmannParams
from se2wavelet.routers.bargmann.bargmann_service import BargmannService
from se2wavelet.routers.circle.circle_model import CircleFunction
from se2wavelet.routers.circle.circle_service import CircleService
from se2wavelet.routers.cr.cr_service import CRService
from se2wavelet.routers.group.group_model import GroupElement
from se2wavelet.routers.group.group_service import GroupService
from se2wavelet.routers.irrep.irrep_model import IrrepParams
from se2wavelet.routers.irrep.irrep_service import IrrepService
from se2wavelet.routers.plane.plane_model import PlaneFunction
from se2wavelet.routers.plane.plane_service import PlaneService, relative_l2_error
from se2wavelet.routers.verify.verify_model import SUITES, SuiteResult, VerifyOptions
from se2wavelet.routers.wavelet.wavelet_model import GridSpec
from se2wavelet.routers.wavelet.wavelet_service import WaveletService
from se2wavelet.utils.advanced_performance import TimedBlock

logger: logging.Logger = logging.getLogger("verify")

SIGNALS = 10
GROUP_SAMPLES = 20
MAX_MODE = 8

# Direct-integral setup: unit Gaussian on [-8, 8)^2
PLANE_M = 128
PLANE_EXTENT = 8.0
GL_NODES = 48
OMEGA_MAX = 8.0

# Finite-difference CR setup: Delta = 0.05
CR_M = 64
CR_EXTENT = 1.6
CR_STEPS = (0.2, 0.1, 0.05)
CR_LAMBDA = 0.5

HOLOMORPHY_STEPS = (0.2, 0.1, 0.05)
ORDER_TWO_RATIO = 4.0
ORDER_TWO_SLACK = 0.4


def gaussian_bump(center: Tuple[float, float] = (0.0, 0.0),
                  frequency: Tuple[float, float] = (0.0, 0.0)) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    c1, c2 = center
    k1, k2 = frequency
    return lambda x1, x2: np.exp(-((x1 - c1) ** 2 + (x2 - c2) ** 2) / 2.0) * np.exp(1j * (k1 * x1 + k2 * x2))


class VerifyService:
    """Seeded numerical checks of the transform's identities, one suite per family"""

    def __init__(self) -> None:
        self.circle_service: CircleService = CircleService()
        self.irrep_service: IrrepService = IrrepService()
        self.plane_service: PlaneService = PlaneService()
        self.wavelet_service: WaveletService = WaveletService()
        self.cr_service: CRService = CRService()
        self.group_service: GroupService = GroupService()
        self.bargmann_service: BargmannService = BargmannService()
        self.suites: Dict[str, Callable[[VerifyOptions], SuiteResult]] = {
            "parseval": self.parseval,
            "reproducing": self.reproducing,
            "uncertainty": self.uncertainty,
            "cr": self.cr,
            "reconstruction": self.reconstruction,
            "bargmann": self.bargmann,
            "surjectivity": self.surjectivity,
            "weak": self.weak,
        }

    def run(self, suite: str, options: VerifyOptions) -> SuiteResult:
        """
        Run one suite or "all" (every suite in a fixed order).

        Raises:
            SE2Exception: unknown suite name
        """
        names = SUITES if suite == "all" else [suite]
        unknown = [name for name in names if name not in self.suites]
        if unknown:
            raise SE2Exception(f"Unknown suite '{suite}'. Available: {', '.join(SUITES + ['all'])}")
        result = SuiteResult()
        for name in names:
            logger.info(f"▶️ Running suite '{name}' (seed={options.seed})")
            suite_result = self.suites[name](options)
            failed = [r.check_name for r in suite_result.reports if not r.passed]
            if failed:
                logger.warning(f"❌ Suite '{name}' failed: {', '.join(failed)}")
            else:
                logger.info(f"✅ Suite '{name}' passed {len(suite_result.reports)} checks")
            result.extend(suite_result)
        return result

    @staticmethod
    def _rng(options: VerifyOptions) -> np.random.Generator:
        return np.random.default_rng(options.seed)

    @staticmethod
    def _ms(block: TimedBlock, options: VerifyOptions) -> int:
        return block.elapsed_ms if options.timings else 0

    def _ring_grid(self, options: VerifyOptions) -> GridSpec:
        # ring-only fields never touch the spatial grid
        return GridSpec(m=16, extent=1.0, n_theta=options.n_theta)

    def _signals(self, rng: np.random.Generator, options: VerifyOptions, count: int = SIGNALS) -> List[CircleFunction]:
        return [CircleFunction.band_limited(rng, options.n_samples, MAX_MODE) for _ in range(count)]

    def parseval(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        p = IrrepParams(omega=options.omega)
        grid = self._ring_grid(options)
        result = SuiteResult()
        signals = self._signals(rng, options)
        for lambda_omega in (0.0, 1.0, 4.0):
            with TimedBlock("verify.parseval") as block:
                u0 = self.irrep_service.minimal_wavelet(lambda_omega / p.omega, p, options.n_samples)
                worst = 0.0
                for phi in signals:
                    field = self.wavelet_service.analyze(p, u0, phi, grid, render=False)
                    expected = self.circle_service.norm(u0) * self.circle_service.norm(phi)
                    worst = max(worst, abs(self.wavelet_service.field_norm(field) - expected) / expected)
            result.reports.append(VerificationReport.bound(
                "parseval", worst, 1e-10,
                {"lambda_omega": lambda_omega, "omega": p.omega, "n": options.n_samples,
                 "n_theta": options.n_theta, "signals": len(signals), "seed": options.seed},
                self._ms(block, options),
            ))
        return result

    def reproducing(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        p = IrrepParams(omega=options.omega)
        grid = self._ring_grid(options)
        lam = 0.5
        params = {"lambda": lam, "omega": p.omega, "n": options.n_samples, "n_theta": options.n_theta,
                  "points": GROUP_SAMPLES, "seed": options.seed}
        result = SuiteResult()
        u0 = self.irrep_service.minimal_wavelet(lam, p, options.n_samples)

        with TimedBlock("verify.reproducing") as block:
            worst = 0.0
            for _ in range(GROUP_SAMPLES):
                g = GroupElement.random(rng)
                phi = CircleFunction.band_limited(rng, options.n_samples, MAX_MODE)
                lhs, rhs = self.wavelet_service.reproduce_check(p, u0, phi, g, grid)
                worst = max(worst, abs(lhs - rhs) / (1.0 + abs(rhs)))
        result.reports.append(VerificationReport.bound("reproducing_identity", worst, 1e-9, params,
                                                       self._ms(block, options)))

        with TimedBlock("verify.kernel") as block:
            diagonal = 0.0
            invariance = 0.0
            for _ in range(GROUP_SAMPLES):
                g, g2, h = (GroupElement.random(rng) for _ in range(3))
                diagonal = max(diagonal, abs(self.wavelet_service.kernel(p, u0, g, g) - 1.0))
                moved = self.wavelet_service.kernel(
                    p, u0, self.group_service.compose(h, g), self.group_service.compose(h, g2)
                )
                invariance = max(invariance, abs(moved - self.wavelet_service.kernel(p, u0, g, g2)))
        result.reports.append(VerificationReport.bound("kernel_diagonal", diagonal, 1e-10, params,
                                                       self._ms(block, options)))
        result.reports.append(VerificationReport.bound("kernel_left_invariance", invariance, 1e-10, params,
                                                       self._ms(block, options)))
        return result

    def uncertainty(self, options: VerifyOptions) -> SuiteResult:
        p = IrrepParams(omega=options.omega)
        n = max(512, options.n_samples)
        result = SuiteResult()
        for lambda_omega in (1.0, 4.0, 6.0, 10.0):
            lam = lambda_omega / p.omega
            params = {"lambda_omega": lambda_omega, "omega": p.omega, "n": n}
            with TimedBlock("verify.uncertainty") as block:
                u = self.irrep_service.minimal_wavelet(lam, p, n)
                norm = self.circle_service.norm(u)
                ode = self.irrep_service.minimal_uncertainty_residual(lam, p, u)
                gap = self.irrep_service.uncertainty_gap(p, u)
            ms = self._ms(block, options)
            result.reports.append(VerificationReport.difference("minimal_wavelet_norm", norm, 1.0, 1e-12, params, ms))
            result.reports.append(VerificationReport.bound("minimal_wavelet_ode", ode, 1e-10, params, ms))
            result.reports.append(VerificationReport.bound("uncertainty_equality", abs(gap), 1e-9 * p.omega, params, ms))
        return result

    def cr(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        p = IrrepParams(omega=options.omega)
        grid = GridSpec(m=CR_M, extent=CR_EXTENT, n_theta=options.n_theta)
        params: Dict[str, Any] = {"lambda": CR_LAMBDA, "omega": p.omega, "grid": f"{CR_M}x{CR_M}x{options.n_theta}",
                                  "extent": CR_EXTENT, "seed": options.seed}
        result = SuiteResult()
        phi = CircleFunction.band_limited(rng, options.n_samples, MAX_MODE)

        with TimedBlock("verify.cr") as block:
            field = self.wavelet_service.bargmann_se2(CR_LAMBDA, p, phi, grid)
            table = self.cr_service.cr_convergence(field, CR_LAMBDA, CR_STEPS)
        result.tables["cr"] = table
        for h, ratio in zip(table["h"].iloc[1:], table["ratio"].iloc[1:]):
            result.reports.append(VerificationReport.difference(
                "cr_convergence_ratio", ratio, ORDER_TWO_RATIO, ORDER_TWO_SLACK, {**params, "h": float(h)},
                self._ms(block, options),
            ))

        with TimedBlock("verify.cr_negative") as block:
            bump = CircleFunction.from_function(lambda t: 1.0 + np.cos(2.0 * t), options.n_samples)
            u0 = bump.scaled(1.0 / self.circle_service.norm(bump))
            control = self.wavelet_service.analyze(p, u0, phi, grid)
            finest = min(CR_STEPS)
            common = self.cr_service.apply_field(field, "X1", max(CR_STEPS)).mask()
            control_residual = self.cr_service.cr_residual(control, CR_LAMBDA, finest, mask=common)
        minimal_residual = float(table["residual"].iloc[-1])
        result.reports.append(VerificationReport.bound(
            "cr_negative_control", minimal_residual / control_residual, 0.01, {**params, "h": finest},
            self._ms(block, options),
        ))
        return result

    def reconstruction(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        n = options.n_samples
        result = SuiteResult()
        f = PlaneFunction.from_function(gaussian_bump(), PLANE_M, PLANE_EXTENT)
        params = {"m": PLANE_M, "extent": PLANE_EXTENT, "nodes": GL_NODES, "omega_max": OMEGA_MAX, "n": n}

        with TimedBlock("verify.reconstruct") as block:
            recon = self.plane_service.reconstruct(f, OMEGA_MAX, GL_NODES, n)
            error = relative_l2_error(recon, f)
        result.reports.append(VerificationReport.bound("direct_integral_reconstruction", error, 1e-6, params,
                                                       self._ms(block, options)))

        with TimedBlock("verify.plancherel") as block:
            components = self.plane_service.ring_components(f, OMEGA_MAX, GL_NODES, n)
            energy = f.norm() ** 2
            plancherel = self.plane_service.plancherel_sum(components)
        result.reports.append(VerificationReport.bound("plancherel", abs(plancherel - energy) / energy, 1e-6, params,
                                                       self._ms(block, options)))

        with TimedBlock("verify.gaussian_ring") as block:
            worst = 0.0
            for omega in (0.5, 1.0, 2.0, 4.0):
                ring = self.plane_service.ring_restrict(f, IrrepParams(omega=omega), n)
                worst = max(worst, float(np.max(np.abs(ring.density.values - math.exp(-omega ** 2 / 2.0)))))
        result.reports.append(VerificationReport.bound("gaussian_ring_density", worst, 1e-8, params,
                                                       self._ms(block, options)))

        p = IrrepParams(omega=1.0)
        center = tuple(rng.uniform(-1.0, 1.0, size=2))
        frequency = tuple(rng.uniform(-1.0, 1.0, size=2))
        bump = PlaneFunction.from_function(gaussian_bump(center, frequency), PLANE_M, PLANE_EXTENT)
        with TimedBlock("verify.projector") as block:
            points = rng.uniform(-2.0, 2.0, size=(SIGNALS, 2))
            ring = self.plane_service.ring_restrict(bump, p, n)
            synthesized = self.plane_service.synthesize(ring, points)
            convolved = self.plane_service.convolve_bessel(bump, p, points)
            projector_error = float(np.max(np.abs(synthesized - convolved)) / np.max(np.abs(convolved)))
        result.reports.append(VerificationReport.bound(
            "projector_bessel_convolution", projector_error, 1e-6, {**params, "omega": p.omega, "points": SIGNALS},
            self._ms(block, options),
        ))

        with TimedBlock("verify.projector_idempotence") as block:
            g = PlaneFunction.from_function(gaussian_bump((0.5, -0.5), (0.3, 0.7)), PLANE_M, PLANE_EXTENT)
            rendered = self.plane_service.render(ring, PLANE_M, PLANE_EXTENT)
            lhs = self.plane_service.h_omega_pairing(rendered, g)
            rhs = self.circle_service.inner_product(ring.density, self.plane_service.ring_restrict(g, p, n).density)
            idempotence = abs(lhs - rhs) / abs(rhs) if rhs != 0 else abs(lhs)
        result.reports.append(VerificationReport.bound("projector_idempotence", idempotence, 1e-8,
                                                       {**params, "omega": p.omega}, self._ms(block, options)))
        return result

    def bargmann(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        b = BargmannParams(sigma=options.sigma)
        p = IrrepParams(omega=options.omega)
        result = SuiteResult()
        phi = CircleFunction.band_limited(rng, options.n_samples, MAX_MODE)

        with TimedBlock("verify.restriction") as block:
            points = []
            for _ in range(GROUP_SAMPLES):
                q = rng.uniform(-2.0, 2.0, size=2)
                radius, angle = rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0 * math.pi)
                points.append((q, np.array([radius * math.cos(angle), radius * math.sin(angle)])))
            table = self.bargmann_service.restriction_theorem_check(b, p, phi, points)
        result.tables["bargmann"] = table
        result.reports.append(VerificationReport.bound(
            "bargmann_restriction", float(table["rel_error"].max()), 1e-8,
            {"sigma": b.sigma, "omega": p.omega, "points": GROUP_SAMPLES, "seed": options.seed},
            self._ms(block, options),
        ))

        window = self.bargmann_service.gaussian_window(b, PLANE_M, PLANE_EXTENT)
        with TimedBlock("verify.holomorphy") as block:
            phase_points = [(rng.uniform(-1.0, 1.0, size=2), rng.uniform(-1.0, 1.0, size=2)) for _ in range(4)]
            residuals = [self.bargmann_service.holomorphy_residual(b, window, phase_points, h) for h in HOLOMORPHY_STEPS]
        for h, prev, cur in zip(HOLOMORPHY_STEPS[1:], residuals[:-1], residuals[1:]):
            result.reports.append(VerificationReport.difference(
                "holomorphy_convergence_ratio", prev / cur, ORDER_TWO_RATIO, ORDER_TWO_SLACK,
                {"sigma": b.sigma, "h": h, "m": PLANE_M, "extent": PLANE_EXTENT}, self._ms(block, options),
            ))

        with TimedBlock("verify.bargmann_cross_check") as block:
            f = PlaneFunction.from_function(gaussian_bump(), PLANE_M, PLANE_EXTENT)
            ring_p = IrrepParams(omega=1.0)
            cross_points = [(rng.uniform(-1.0, 1.0, size=2), rng.uniform(-1.0, 1.0, size=2)) for _ in range(SIGNALS)]
            cross = self.bargmann_service.ring_cross_check(b, f, ring_p, cross_points, options.n_samples)
        result.reports.append(VerificationReport.bound(
            "bargmann_ring_cross_check", float(cross["rel_error"].max()), 1e-5,
            {"sigma": b.sigma, "omega": ring_p.omega, "points": SIGNALS, "m": PLANE_M, "extent": PLANE_EXTENT},
            self._ms(block, options),
        ))
        return result

    def surjectivity(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        p = IrrepParams(omega=options.omega)
        grid = self._ring_grid(options)
        lam = 1.0 / p.omega
        params = {"lambda_omega": 1.0, "omega": p.omega, "n": options.n_samples, "n_theta": options.n_theta,
                  "signals": SIGNALS, "seed": options.seed}
        result = SuiteResult()

        with TimedBlock("verify.surjectivity") as block:
            roundtrip = 0.0
            reanalysis = 0.0
            for phi in self._signals(rng, options):
                field = self.wavelet_service.bargmann_se2(lam, p, phi, grid, render=False)
                recovered = self.wavelet_service.surjective_invert(field, lam)
                diff = self.circle_service.norm(recovered - phi) / self.circle_service.norm(phi)
                roundtrip = max(roundtrip, diff)
                again = self.wavelet_service.bargmann_se2(lam, p, recovered, grid, render=False)
                scale = float(np.max(np.abs(field.ring_densities)))
                reanalysis = max(reanalysis, float(np.max(np.abs(again.ring_densities - field.ring_densities))) / scale)
        ms = self._ms(block, options)
        result.reports.append(VerificationReport.bound("surjective_roundtrip", roundtrip, 1e-9, params, ms))
        result.reports.append(VerificationReport.bound("surjective_reanalysis", reanalysis, 1e-8, params, ms))

        with TimedBlock("verify.range_rejection") as block:
            bump = CircleFunction.from_function(lambda t: 1.0 + np.cos(2.0 * t), options.n_samples)
            u0 = bump.scaled(1.0 / self.circle_service.norm(bump))
            outside = self.wavelet_service.analyze(p, u0, self._signals(rng, options, 1)[0], grid, render=False)
            try:
                self.wavelet_service.surjective_invert(outside, lam)
                rejected = 0.0
            except NotInRangeError:
                rejected = 1.0
        result.reports.append(VerificationReport.difference("surjective_range_rejection", rejected, 1.0, 0.0, params,
                                                            self._ms(block, options)))
        return result

    def weak(self, options: VerifyOptions) -> SuiteResult:
        rng = self._rng(options)
        p = IrrepParams(omega=options.omega)
        grid = self._ring_grid(options)
        lam = 2.0 / p.omega
        params = {"lambda_omega": 2.0, "omega": p.omega, "n": options.n_samples, "n_theta": options.n_theta,
                  "signals": SIGNALS, "seed": options.seed}
        result = SuiteResult()
        u0 = self.irrep_service.minimal_wavelet(lam, p, options.n_samples)
        with TimedBlock("verify.weak") as block:
            worst = 0.0
            for phi in self._signals(rng, options):
                field = self.wavelet_service.analyze(p, u0, phi, grid, render=False)
                recovered = self.wavelet_service.weak_reconstruct(field)
                worst = max(worst, self.circle_service.norm(recovered - phi) / self.circle_service.norm(phi))
        result.reports.append(VerificationReport.bound("weak_reconstruction", worst, 1e-9, params,
                                                       self._ms(block, options)))
        return result


verify_service = VerifyService()
