"""
The jet extension operator and the tools to check it.

An N-differential psi(tau) (dtau)^N on the disk is extended to the function

    I(psi)(z, w) = (w - z)^N  integral_0^1 psi(z + s (w - z)) beta_N(ds)

on the bidisk, beta_N being the beta distribution with parameters (N, N). The integral is computed with a fixed
Gauss-Legendre rule on [0, 1] applied to the integrand including the beta density.

Jets are the Taylor coefficients f_n(z) of f(z, w) in the fiber coordinate t = (w - z)/(1 - conj(z) w); they are
extracted by the trapezoidal rule on a circle |t| = r. The residual functions evaluate the differential identities
satisfied by the jets with central finite differences.

Function arguments called f(z, w), u(z) or psi(tau) must accept numpy arrays and work elementwise.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union
import numpy as np
from hyperjet.logging import logger
from hyperjet.errors import ConfigError, DomainError, OverflowGuardError, StepSizeError
from hyperjet.mobius import MobiusTransform, PointPair, apply, derivative, bracket, disk_point, w_from_t, \
    metric_coefficient
from hyperjet.fuchsian import GroupBall, poincare_density_values
from hyperjet.specfun import log_beta, log_gamma

DIAGONAL_CUTOFF = 1e-12
OVERFLOW_GUARD = 1e150
MIN_STEP = 1e-8


@lru_cache(maxsize=32)
def _gauss_legendre_unit(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    s, wts = 0.5 * (x + 1.0), 0.5 * w
    s.flags.writeable = False
    wts.flags.writeable = False
    return s, wts


@dataclass(frozen=True)
class QuadratureSpec:
    """Gauss-Legendre rule on [0, 1] with the given number of nodes."""
    nodes: int = 64

    def __post_init__(self):
        if int(self.nodes) != self.nodes or self.nodes < 4:
            raise ConfigError(f"The number of quadrature nodes must be an integer >= 4, got {self.nodes}")

    def rule(self) -> tuple[np.ndarray, np.ndarray]:
        """Nodes and weights on [0, 1]."""
        return _gauss_legendre_unit(int(self.nodes))


@dataclass(frozen=True)
class JetSpec:
    """
    Circle |t| = radius and number of trapezoidal nodes for jet extraction. With radius None the radius
    0.5 (1 - |z|) is used; any radius is reduced so that the image circle in w keeps the distance
    0.1 (1 - |z|) from the unit circle.
    """
    radius: Optional[float] = None
    nodes: int = 256

    def __post_init__(self):
        if self.radius is not None and not 0 < self.radius < 1:
            raise ConfigError(f"The jet radius must lie in (0, 1), got {self.radius}")
        if int(self.nodes) != self.nodes or self.nodes < 8:
            raise ConfigError(f"The number of jet nodes must be an integer >= 8, got {self.nodes}")

    def radius_at(self, z: complex) -> float:
        a = abs(z)
        r = 0.5 * (1.0 - a) if self.radius is None else self.radius
        wmax = 1.0 - 0.1 * (1.0 - a)
        return min(r, (wmax - a) / (1.0 - wmax * a))


@dataclass(frozen=True)
class PowerSeries:
    """psi(tau) = sum_k coeffs[k] tau^k"""
    coeffs: tuple[complex, ...]

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coeffs)
        if not coeffs:
            raise ConfigError("A power series needs at least one coefficient")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, tau):
        return np.polynomial.polynomial.polyval(tau, np.array(self.coeffs))


@dataclass(frozen=True)
class PoincareDensity:
    """The truncated Poincare series sum_g g'(tau)^N over a ball; N is the order of the differential."""
    ball: GroupBall


@dataclass(frozen=True)
class Evaluator:
    """An arbitrary vectorized function of tau."""
    func: Callable
    label: str = "evaluator"


Body = Union[PowerSeries, PoincareDensity, Evaluator]


@dataclass(frozen=True)
class NDifferential:
    """
    A holomorphic N-differential psi(tau) (dtau)^N on the disk.
    """
    order: int
    body: Body

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 0:
            raise ConfigError(f"The order of a differential must be an integer >= 0, got {self.order}")
        object.__setattr__(self, "order", int(self.order))

    @classmethod
    def power_series(cls, order: int, coeffs) -> "NDifferential":
        return cls(order, PowerSeries(tuple(coeffs)))

    @classmethod
    def poincare(cls, ball: GroupBall, order: int) -> "NDifferential":
        return cls(order, PoincareDensity(ball))

    @classmethod
    def from_function(cls, order: int, func: Callable, label: str = "evaluator") -> "NDifferential":
        return cls(order, Evaluator(func, label))

    @property
    def convergent(self) -> bool:
        return not isinstance(self.body, PoincareDensity) or self.order >= 2

    def __call__(self, tau):
        if isinstance(self.body, PowerSeries):
            return self.body(tau)
        if isinstance(self.body, PoincareDensity):
            return poincare_density_values(self.body.ball, self.order, tau)
        return self.body.func(tau)


def pullback(gamma: MobiusTransform, psi: NDifferential) -> NDifferential:
    """gamma^* psi = psi(gamma tau) gamma'(tau)^N (dtau)^N"""
    N = psi.order

    def pulled(tau):
        return psi(apply(gamma, tau)) * derivative(gamma, tau) ** N
    return NDifferential.from_function(N, pulled, label="pullback")


def extend_values(psi: NDifferential, z, w, q: QuadratureSpec = QuadratureSpec()):
    """
    Vectorized extension operator: I(psi) at the points (z, w), where z and w are broadcast against each other.
    :param psi: the differential
    :param z: first coordinates
    :param w: second coordinates
    :param q: the quadrature rule
    :return: complex array (or scalar) of values
    """
    N = psi.order
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    z, w = np.broadcast_arrays(z, w)
    if N == 0:
        return psi(z) * np.ones_like(w)
    s, wts = q.rule()
    dz = w - z
    logbeta = (N - 1) * (np.log(s) + np.log1p(-s)) - log_beta(N, N)
    vals = psi(z[..., None] + s * dz[..., None])
    integral = vals @ (np.exp(logbeta) * wts)
    safe = np.where(np.abs(dz) < DIAGONAL_CUTOFF, 1.0, dz)
    res = np.exp(N * np.log(safe)) * integral
    return np.where(np.abs(dz) < DIAGONAL_CUTOFF, 0.0, res)


def extend(psi: NDifferential, p: PointPair, q: QuadratureSpec = QuadratureSpec()) -> complex:
    """
    Value of the jet extension I(psi) at the point pair p.
    """
    if not psi.convergent:
        logger.warning(f"Poincare density of order {psi.order} is not convergent, extending the truncated sum")
    return complex(extend_values(psi, p.z, p.w, q))


def extension_function(psi: NDifferential, q: QuadratureSpec = QuadratureSpec()) -> Callable:
    """The extension I(psi) as a vectorized function f(z, w)."""
    if not psi.convergent:
        logger.warning(f"Poincare density of order {psi.order} is not convergent, extending the truncated sum")

    def f(z, w):
        return extend_values(psi, z, w, q)
    return f


def extend_bracket(psi: NDifferential, p: PointPair, waypoints=(), q: QuadratureSpec = QuadratureSpec()) -> complex:
    """
    I(psi) from the path integral (1/B(N, N)) int_z^w psi(tau) (dtau)^N / [w, tau, z]^(N-1) along the polyline
    z -> waypoints -> w, one Gauss-Legendre rule per leg.
    """
    N = psi.order
    if N == 0:
        return complex(psi(p.z))
    if abs(p.w - p.z) < DIAGONAL_CUTOFF:
        return 0j
    s, wts = q.rule()
    path = [p.z] + [disk_point(x) for x in waypoints] + [p.w]
    total = 0j
    for a, b in zip(path[:-1], path[1:]):
        tau = a + s * (b - a)
        integrand = psi(tau) * bracket(p.w, tau, p.z) ** (1 - N)
        total += (b - a) * np.sum(wts * integrand)
    return complex(total * math.exp(-log_beta(N, N)))


def _power_series_coeffs(psi: NDifferential) -> tuple[complex, ...]:
    if not isinstance(psi.body, PowerSeries):
        raise DomainError(f"The Taylor expansion at 0 needs a power series differential, got {type(psi.body).__name__}")
    return psi.body.coeffs


def taylor_at_zero(psi: NDifferential, M: int) -> np.ndarray:
    """
    Taylor coefficients f_{N+m}(0), m = 0..M, of I(psi)(0, w) in w:
    f_{N+m}(0) = Gamma(2N)/Gamma(N) * Gamma(N+m)/Gamma(2N+m) * c_m.
    """
    coeffs = _power_series_coeffs(psi)
    N = psi.order
    c = np.zeros(M + 1, dtype=complex)
    k = min(len(coeffs), M + 1)
    c[:k] = coeffs[:k]
    if N == 0:
        return np.concatenate([c[:1], np.zeros(M, dtype=complex)])
    m = np.arange(M + 1)
    factor = np.exp(log_gamma(2 * N) - log_gamma(N) + log_gamma(N + m) - log_gamma(2 * N + m))
    return factor * c


@dataclass(frozen=True)
class TruncatedValue:
    """A partial sum and the modulus of its last term."""
    value: complex
    last_term: float


def eval_series_at_zero(psi: NDifferential, w, M: int) -> TruncatedValue:
    """
    The expansion sum_{m <= M} f_{N+m}(0) w^{N+m} of I(psi)(0, w).
    """
    w = disk_point(w)
    f = taylor_at_zero(psi, M)
    terms = f * w ** (psi.order + np.arange(M + 1))
    return TruncatedValue(complex(np.sum(terms)), float(abs(terms[-1])))


def jets(f: Callable, z, n_max: int, j: JetSpec = JetSpec()) -> np.ndarray:
    """
    The jets f_0(z) .. f_{n_max}(z) of f(z, w) in the fiber coordinate t, all from one FFT of the samples
    f(z, w(t)) on the circle |t| = r.
    """
    z = disk_point(z)
    if not 0 <= n_max < j.nodes // 2:
        raise DomainError(f"Jet index {n_max} out of range for {j.nodes} nodes")
    r = j.radius_at(z)
    t = r * np.exp(2j * np.pi * np.arange(j.nodes) / j.nodes)
    vals = np.asarray(f(np.full(j.nodes, z), w_from_t(z, t)), dtype=complex)
    if not np.all(np.isfinite(vals)) or np.max(np.abs(vals)) > OVERFLOW_GUARD:
        raise OverflowGuardError(f"Function values on the jet circle at z={z}, r={r} exceed {OVERFLOW_GUARD:.0e}")
    coeffs = np.fft.fft(vals)[:n_max + 1] / j.nodes
    return coeffs / r ** np.arange(n_max + 1)


def jet_extract(f: Callable, z, n: int, j: JetSpec = JetSpec()) -> complex:
    """The n-th jet f_n(z) = (1/n!) d^n/dt^n f(z, w(t)) at t = 0."""
    return complex(jets(f, z, n, j)[n])


def _check_step(h: float):
    if h < MIN_STEP:
        raise StepSizeError(f"Finite difference step {h} is below {MIN_STEP}")


def _dbar(vals, h: float):
    """d/dzbar from the values at z+h, z-h, z+ih, z-ih."""
    return 0.5 * ((vals[0] - vals[1]) / (2 * h) + 1j * (vals[2] - vals[3]) / (2 * h))


def cr_residual(f: Callable, p: PointPair, h: float = 1e-4) -> float:
    """
    Largest of |df/dzbar| and |df/dwbar| at p, by central differences.
    """
    _check_step(h)
    offs = np.array([h, -h, 1j * h, -1j * h])
    zs = np.concatenate([p.z + offs, np.full(4, p.z)])
    ws = np.concatenate([np.full(4, p.w), p.w + offs])
    vals = np.asarray(f(zs, ws), dtype=complex)
    return float(max(abs(_dbar(vals[:4], h)), abs(_dbar(vals[4:], h))))


def recurrence_residual(f: Callable, z, n: int, j: JetSpec = JetSpec(), h: float = 1e-4) -> float:
    """
    Modulus of df_n/dzbar + n z f_n/(1-|z|^2) + (n-1) f_{n-1}/(1-|z|^2), which vanishes for the jets of a
    holomorphic f. df_n/dzbar is taken by central differences of the jets.
    """
    _check_step(h)
    z = disk_point(z)
    offs = [h, -h, 1j * h, -1j * h]
    fn = [jets(f, z + o, n, j)[n] for o in offs]
    center = jets(f, z, n, j)
    prev = center[n - 1] if n >= 1 else 0.0
    q = 1.0 - abs(z) ** 2
    return float(abs(_dbar(fn, h) + n * z * center[n] / q + (n - 1) * prev / q))


def box0_residual(u: Callable, n: int, z, h: float = 1e-3, lam: float = 0.0) -> float:
    """
    |box u - lam u| at z, where box u = -(1/g)(u_{z zbar} + dlog(h)/dz u_zbar) for sections of the n-th power of
    the canonical bundle, h = g^-n and g = 2/(1-|z|^2)^2. Derivatives by the five point stencil.
    :param u: the coefficient function, vectorized in z
    :param n: the tensor power
    :param z: the point
    :param h: the step
    :param lam: the eigenvalue to test
    """
    _check_step(h)
    z = disk_point(z)
    pts = np.array([z + h, z - h, z + 1j * h, z - 1j * h, z])
    v = np.asarray(u(pts), dtype=complex)
    u_zbar = _dbar(v, h)
    u_zzbar = (v[0] + v[1] + v[2] + v[3] - 4 * v[4]) / (4 * h * h)
    dlog_h = -n * 2.0 * np.conj(z) / (1.0 - abs(z) ** 2)
    box = -(u_zzbar + dlog_h * u_zbar) / metric_coefficient(z)
    return float(abs(box - lam * v[4]))


def associated_coefficient(f: Callable, n: int, j: JetSpec = JetSpec()) -> Callable:
    """
    The n-th jet of f in the unit frame sqrt(2) dz/(1-|z|^2): u(z) = f_n(z) (sqrt(2)/(1-|z|^2))^n.
    """
    def u(zs):
        zs = np.asarray(zs, dtype=complex)
        vals = np.array([jets(f, complex(zz), n, j)[n] for zz in zs.ravel()])
        frame = (math.sqrt(2.0) / (1.0 - np.abs(zs.ravel()) ** 2)) ** n
        return (vals * frame).reshape(zs.shape)
    return u


def truncated_series(f: Callable, z, w, n: int, j: JetSpec = JetSpec()) -> complex:
    """F_n(z, w) = sum_{k <= n} f_k(z) t^k"""
    t = (w - z) / (1.0 - np.conj(z) * w)
    return complex(np.sum(jets(f, z, n, j) * t ** np.arange(n + 1)))


def truncation_dbar(f: Callable, z, w, n: int, j: JetSpec = JetSpec()) -> complex:
    """
    Closed form of dF_n/dzbar = n f_n(z) t^(n+1)/(1-|z|^2) for the jets of a holomorphic f.
    """
    t = (w - z) / (1.0 - np.conj(z) * w)
    return complex(n * jet_extract(f, z, n, j) * t ** (n + 1) / (1.0 - abs(z) ** 2))
