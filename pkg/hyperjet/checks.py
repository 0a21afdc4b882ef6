"""
This module defines the acceptance checks run by hyperjet_verify. Each check compares two independent routes to the
same quantity and registers itself in the CHECKS dictionary which contains, for each criterion name, the function,
the base tolerance and a short description.

A check function takes a CheckContext and returns a CheckResult. All random samples are drawn from a generator
seeded with the run seed and the criterion number, so a check gives the same samples whether it runs alone or as
part of the full suite.
"""
import math
import sys
from dataclasses import dataclass, field
from importlib import resources
from importlib.metadata import version, PackageNotFoundError
from typing import Optional
import numpy as np
from hyperjet.version import __version__
from hyperjet.logging import logger
from hyperjet.errors import HyperjetError, DiscretenessError
from hyperjet.mobius import PointPair, apply, random_disk_point, random_mobius
from hyperjet.fuchsian import DEDUP_TOL, AMBIGUITY_FLOOR, GroupBall, enumerate_ball, pair_series, shell_magnitudes
from hyperjet.jetext import NDifferential, QuadratureSpec, JetSpec, extend, extend_values, extension_function, \
    eval_series_at_zero, pullback, cr_residual, recurrence_residual, box0_residual, associated_coefficient
from hyperjet.specfun import c_alpha, moment_sum, eigenvalue, norm_ratio, norm_ratio_limit, log_gamma, gamma_fn
from hyperjet.bergman import KernelBasis, KernelFamily, hardy_growth_rate, hardy_partial, kernel_matrix
from hyperjet.data import read_generator_set

CHECKS = {}

PASS = "pass"
FAIL = "fail"
WARN = "warn"

VERSION_PACKAGES = ["numpy", "scipy", "mpmath", "pandas", "hjson", "pyyaml"]


def default_generators_path() -> str:
    """Path of the genus 2 regular octagon generators shipped with the package."""
    return str(resources.files("hyperjet").joinpath("resources", "octagon.hjson"))


def register_check(name: str, tolerance: float, description: str = ""):
    """
    Register a check function in the CHECKS dictionary
    :param name: the criterion name, e.g. "A1"
    :param tolerance: the base tolerance, multiplied by the tolerance scale of the run
    :param description: a description of the check
    """
    def decorator(func):
        CHECKS[name] = {
            "func": func,
            "tolerance": tolerance,
            "description": description,
        }
        return func
    return decorator


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    measured: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "measured": self.measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass
class RunReport:
    """The results of a verification run together with the package versions and the effective config."""
    checks: list[CheckResult] = field(default_factory=list)
    versions: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if any(c.status == FAIL for c in self.checks):
            return FAIL
        if any(c.status == WARN for c in self.checks):
            return WARN
        return PASS

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "checks": [c.to_dict() for c in self.checks],
            "versions": self.versions,
            "config": self.config,
        }


def package_versions() -> dict:
    versions = {"hyperjet": __version__, "python": sys.version.split()[0]}
    for p in VERSION_PACKAGES:
        try:
            versions[p] = version(p)
        except PackageNotFoundError:
            versions[p] = None
    return versions


@dataclass
class CheckContext:
    """
    Settings shared by all checks of one run.
    fd_step is the finite difference step of A6, fd_step_box the coarse step of A7 (which also uses half of it).
    inject maps the name of a perturbation hook to its size, e.g. {"norm_ratio": 1e-3}.
    """
    seed: int = 0
    tolerance_scale: float = 1.0
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)
    jet: JetSpec = field(default_factory=JetSpec)
    fd_step: float = 1e-4
    fd_step_box: float = 1e-3
    dedup_tol: float = DEDUP_TOL
    ambiguity_floor: float = AMBIGUITY_FLOOR
    generators_path: Optional[str] = None
    inject: dict = field(default_factory=dict)
    _balls: dict = field(default_factory=dict, repr=False)

    def rng(self, criterion: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, criterion])

    def tolerance(self, name: str) -> float:
        return CHECKS[name]["tolerance"] * self.tolerance_scale

    def ball(self, L: int) -> GroupBall:
        if L not in self._balls:
            path = self.generators_path or default_generators_path()
            self._balls[L] = enumerate_ball(read_generator_set(path), L, self.dedup_tol, self.ambiguity_floor)
        return self._balls[L]


def _result(name: str, measured: float, tolerance: float, detail: str = "", ok: Optional[bool] = None) -> CheckResult:
    if ok is None:
        ok = math.isfinite(measured) and measured <= tolerance
    return CheckResult(name, PASS if ok else FAIL, float(measured), tolerance, detail)


def _random_coeffs(rng: np.random.Generator, n: int) -> np.ndarray:
    """Coefficients with real and imaginary parts uniform in [-1, 1]."""
    return rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)


def _random_points(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    return np.array([random_disk_point(rng, radius) for _ in range(n)])


@register_check("A1", 1e-10, "Quadrature extension against the Taylor expansion at z = 0")
def check_series_at_zero(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(1)
    ws = _random_points(rng, 20, 0.8)
    worst = 0.0
    for N in range(1, 6):
        psi = NDifferential.power_series(N, _random_coeffs(rng, 9))
        quad = extend_values(psi, 0.0, ws, ctx.quad)
        series = np.array([eval_series_at_zero(psi, w, 40).value for w in ws])
        worst = max(worst, float(np.max(np.abs(quad - series))))
    return _result("A1", worst, ctx.tolerance("A1"), "max |extend - series| over N=1..5, 20 points")


@register_check("A2", 1e-11, "Extension of monomials against the beta moment closed form")
def check_monomials(ctx: CheckContext) -> CheckResult:
    ws = np.array([0.5, 0.3 + 0.4j, -0.7j, -0.25 + 0.1j])
    worst = 0.0
    for N in range(1, 7):
        for k in range(0, 9):
            psi = NDifferential.power_series(N, [0.0] * k + [1.0])
            factor = math.exp(log_gamma(2 * N) + log_gamma(N + k) - log_gamma(N) - log_gamma(2 * N + k))
            expected = factor * ws ** (N + k)
            worst = max(worst, float(np.max(np.abs(extend_values(psi, 0.0, ws, ctx.quad) - expected))))
    return _result("A2", worst, ctx.tolerance("A2"), "N=1..6, k=0..8")


@register_check("A3", 1e-10, "Moebius equivariance of the extension")
def check_equivariance(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(3)
    worst = 0.0
    for _ in range(100):
        gamma = random_mobius(rng, max_beta=1.0)
        N = int(rng.integers(1, 5))
        psi = NDifferential.power_series(N, _random_coeffs(rng, 5))
        p = PointPair(random_disk_point(rng, 0.6), random_disk_point(rng, 0.6))
        lhs = extend(pullback(gamma, psi), p, ctx.quad)
        rhs = extend(psi, p.moved(gamma), ctx.quad)
        worst = max(worst, abs(lhs - rhs))
    return _result("A3", worst, ctx.tolerance("A3"), "100 samples, absolute error")


@register_check("A4", 1e-8, "Ladder sum of the weighted norm against the closed form c_{N,alpha}")
def check_norm_identity(ctx: CheckContext) -> CheckResult:
    eps = float(ctx.inject.get("norm_ratio", 0.0))
    worst = 0.0
    where = ""
    for N in range(1, 7):
        for alpha in (-0.5, 0.0, 1.0, 2.0):
            ladder = moment_sum(N, alpha, 10**4, extrapolate=True).value * (1.0 + eps)
            diff = abs(ladder - c_alpha(N, alpha).value)
            if diff > worst:
                worst, where = diff, f"N={N}, alpha={alpha}"
    gauss = abs(c_alpha(1, 0.0).value - 1.0)
    tol = ctx.tolerance("A4")
    ok = worst <= tol and gauss <= 1e-12 * ctx.tolerance_scale
    return _result("A4", worst, tol, f"worst at {where}; |c(1,0) - 1| = {gauss:.3e}", ok)


@register_check("A5", 1e-9, "Termwise extension of the Poincare series against the pair series")
def check_pair_series(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(5)
    ball = ctx.ball(3)
    N = 4
    one = NDifferential.power_series(N, [1.0])
    worst = 0.0
    for _ in range(5):
        p = PointPair(random_disk_point(rng, 0.5), random_disk_point(rng, 0.5))
        termwise = sum(extend(pullback(g, one), p, ctx.quad) for g in ball.elements)
        direct = pair_series(ball, N, p).value
        worst = max(worst, abs(termwise - direct))
    return _result("A5", worst, ctx.tolerance("A5"), f"octagon ball L=3 with {len(ball)} elements, N=4, 5 pairs")


@register_check("A6", 1e-6, "Holomorphy of the extension and the recurrence of its jets")
def check_dbar_structure(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(6)
    cr = 0.0
    for _ in range(20):
        N = int(rng.integers(1, 4))
        f = extension_function(NDifferential.power_series(N, _random_coeffs(rng, 3)), ctx.quad)
        p = PointPair(random_disk_point(rng, 0.5), random_disk_point(rng, 0.5))
        cr = max(cr, cr_residual(f, p, h=ctx.fd_step))
    rec = 0.0
    zs = _random_points(rng, 5, 0.5)
    for N in range(1, 4):
        f = extension_function(NDifferential.power_series(N, _random_coeffs(rng, 4)), ctx.quad)
        for z in zs:
            for n in range(1, N + 4):
                rec = max(rec, recurrence_residual(f, z, n, ctx.jet, h=ctx.fd_step))
    return _result("A6", max(cr, rec), ctx.tolerance("A6"), f"cr residual {cr:.3e}, recurrence residual {rec:.3e}")


@register_check("A7", 1e-4, "Associated coefficients of the extension are eigensections of the Laplacian")
def check_eigenvalues(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(7)
    zs = _random_points(rng, 5, 0.5)
    h_coarse, h_fine = ctx.fd_step_box, 0.5 * ctx.fd_step_box
    worst = {h_coarse: 0.0, h_fine: 0.0}
    for N in range(1, 4):
        f = extension_function(NDifferential.power_series(N, _random_coeffs(rng, 4)), ctx.quad)
        for m in range(0, 4):
            n = N + m
            lam = eigenvalue(N, m)
            u = associated_coefficient(f, n, ctx.jet)
            for z in zs:
                scale = 1.0 + abs(lam) * abs(u(np.array([z]))[0])
                for h in worst:
                    worst[h] = max(worst[h], box0_residual(u, n, z, h=h, lam=lam) / scale)
    coarse, fine = worst[h_coarse], worst[h_fine]
    detail = f"scaled residual {coarse:.3e} with h={h_coarse:.1e}, {fine:.3e} with h={h_fine:.1e}"
    tol = ctx.tolerance("A7")
    if not max(coarse, fine) <= tol:
        return _result("A7", max(coarse, fine), tol, detail, False)
    if fine >= coarse:
        logger.warning(f"A7: halving the step did not decrease the residual: {detail}")
        return CheckResult("A7", WARN, fine, tol, detail + "; no decrease under refinement")
    return _result("A7", fine, tol, detail, True)


@register_check("A8", 0.05, "Divergence of the Hardy norm of the extension")
def check_hardy_divergence(ctx: CheckContext) -> CheckResult:
    worst = 0.0
    parts = []
    ok = True
    for N in range(1, 5):
        slopes = hardy_growth_rate(N, [10**3, 10**4, 10**5])
        ratios = [hardy_partial(N, M) / math.log(M) for M in (10**3, 10**4, 10**5)]
        ok = ok and all(s > 0 for s in slopes) and all(r > 0 for r in ratios)
        spread = abs(slopes[1] - slopes[0]) / abs(slopes[1])
        limit_dev = abs(slopes[1] - math.pi * norm_ratio_limit(N)) / (math.pi * norm_ratio_limit(N))
        m1, m2 = 10**4, 2 * 10**4
        drift = abs(m2 * norm_ratio(N, m2) - m1 * norm_ratio(N, m1)) / (m1 * norm_ratio(N, m1))
        ok = ok and drift <= 0.01 * ctx.tolerance_scale
        worst = max(worst, spread, limit_dev)
        parts.append(f"N={N}: slopes {slopes[0]:.6g} {slopes[1]:.6g}, S/ln M {ratios[-1]:.6g}, m-drift {drift:.2e}")
    tol = ctx.tolerance("A8")
    return _result("A8", worst, tol, "; ".join(parts), ok and worst <= tol)


@register_check("A9", 1e-12, "Hermitian symmetry, positivity and constant term of the truncated kernel")
def check_kernel(ctx: CheckContext) -> CheckResult:
    rng = ctx.rng(9)
    alpha, genus = 0.0, 2
    pairs = [PointPair(random_disk_point(rng, 0.7), random_disk_point(rng, 0.7)) for _ in range(8)]
    empty = kernel_matrix(KernelBasis((), genus), alpha, pairs[:1], ctx.quad)
    const_ok = empty[0, 0] == gamma_fn(alpha + 2) / (math.pi ** 2 * (4 * genus - 4))
    families = (
        KernelFamily(NDifferential.power_series(2, _random_coeffs(rng, 3)), 1.0),
        KernelFamily(NDifferential.power_series(2, _random_coeffs(rng, 3)), 2.0),
        KernelFamily(NDifferential.power_series(3, _random_coeffs(rng, 3)), 0.5),
    )
    mat = kernel_matrix(KernelBasis(families, genus), alpha, pairs, ctx.quad)
    asym = float(np.max(np.abs(mat - mat.conj().T)))
    min_eig = float(np.min(np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))))
    tol = ctx.tolerance("A9")
    ok = const_ok and asym <= tol and min_eig > -1e-10 * ctx.tolerance_scale
    return _result("A9", asym, tol, f"constant term exact: {const_ok}, min eigenvalue {min_eig:.3e}", ok)


@register_check("A10", 1e-9, "Relations, shell growth and shell decay for the octagon group")
def check_group(ctx: CheckContext) -> CheckResult:
    path = ctx.generators_path or default_generators_path()
    gens = read_generator_set(path)
    residual = max(gens.relation_residuals(), default=0.0)
    try:
        ball = ctx.ball(5)
    except DiscretenessError as ex:
        return CheckResult("A10", FAIL, residual, ctx.tolerance("A10"), f"ambiguous dedup: {ex}")
    sizes = ball.shell_sizes()
    growing = all(b > a for a, b in zip(sizes[:-1], sizes[1:]))
    decay = True
    worst_ratio = 0.0
    for N in (2, 3, 4):
        mags = shell_magnitudes(ball, N, 0.0)
        ratios = mags[3:] / mags[2:-1]
        worst_ratio = max(worst_ratio, float(np.max(ratios)))
        decay = decay and bool(np.all(ratios < 1.0))
    tol = ctx.tolerance("A10")
    ok = residual <= tol and growing and decay
    return _result("A10", residual, tol, f"shell sizes {sizes}, largest shell sum ratio from shell 2 on {worst_ratio:.3e}",
                   ok)


def run_checks(ctx: CheckContext, names: Optional[list[str]] = None) -> list[CheckResult]:
    """
    Run the named checks (all registered checks if names is None) in registry order. A check which raises a
    HyperjetError fails with the error message as detail.
    """
    selected = list(CHECKS) if names is None else [n for n in CHECKS if n in names]
    results = []
    for name in selected:
        logger.info(f"Running check {name}: {CHECKS[name]['description']}")
        try:
            res = CHECKS[name]["func"](ctx)
        except HyperjetError as ex:
            res = CheckResult(name, FAIL, math.nan, ctx.tolerance(name), f"{type(ex).__name__}: {ex}")
        logger.info(f"Check {name}: {res.status} (measured {res.measured:.3e}, tolerance {res.tolerance:.1e})")
        results.append(res)
    return results
