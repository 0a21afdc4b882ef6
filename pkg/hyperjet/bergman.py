"""
Weighted Bergman norms of functions on the bidisk quotient, expressed through the norms of their associated
differentials, the Hardy divergence diagnostic, surface norms of differentials by user supplied quadrature, and the
truncated weighted Bergman kernel.

The area form is 4 dlambda/(1-|tau|^2)^2, so a surface of genus g has area pi (4g - 4).
"""
import math
from dataclasses import dataclass
import numpy as np
from hyperjet.logging import logger
from hyperjet.errors import ConfigError, DomainError
from hyperjet.mobius import PointPair, check_in_disk
from hyperjet.jetext import NDifferential, QuadratureSpec, extend_values
from hyperjet.specfun import c_alpha, fiber_weight, norm_ratio, norm_ratio_ladder, gamma_fn, check_alpha, check_order


@dataclass(frozen=True)
class DifferentialNormList:
    """Pairs (n, |phi_n|^2) with strictly increasing n."""
    entries: tuple[tuple[int, float], ...] = ()

    def __post_init__(self):
        entries = tuple((int(n), float(v)) for n, v in self.entries)
        for i, (n, v) in enumerate(entries):
            if n < 0:
                raise ConfigError(f"Entry {i}: index n={n} is negative")
            if not math.isfinite(v) or v < 0:
                raise ConfigError(f"Entry {i}: squared norm {v} is not a finite non-negative number")
            if i > 0 and n <= entries[i - 1][0]:
                raise ConfigError(f"Entry {i}: indices must be strictly increasing, got {entries[i - 1][0]} then {n}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_ladder(cls, N: int, psi_sq_norm: float, M: int) -> "DifferentialNormList":
        """The norms |phi_{N+m}|^2 = norm_ratio(N, m) |psi|^2 of the extension of psi, m = 0..M."""
        ladder = norm_ratio_ladder(N, M) * psi_sq_norm
        return cls(tuple((N + m, v) for m, v in enumerate(ladder)))

    def indices(self) -> np.ndarray:
        return np.array([n for n, _ in self.entries], dtype=float)

    def sq_norms(self) -> np.ndarray:
        return np.array([v for _, v in self.entries], dtype=float)


def weighted_norm(d: DifferentialNormList, alpha: float) -> float:
    """
    |f|^2_alpha = pi sum_n Gamma(n+1)/Gamma(n+2+alpha) |phi_n|^2
    """
    check_alpha(alpha)
    if not d.entries:
        return 0.0
    return float(math.pi * math.fsum(fiber_weight(d.indices(), alpha) * d.sq_norms()))


def i_image_norm(N: int, alpha: float, psi_sq_norm: float) -> float:
    """Squared alpha-norm of I(psi): pi |psi|^2 c_{N,alpha}."""
    return math.pi * psi_sq_norm * c_alpha(N, alpha).value


def hardy_partial(N: int, M: int) -> float:
    """
    pi sum_{m <= M} norm_ratio(N, m), the partial sums of the Hardy norm of I(psi) for |psi| = 1. They grow like
    pi norm_ratio_limit(N) ln M.
    """
    check_order(N)
    if M < 0:
        raise ConfigError(f"hardy_partial requires M >= 0, got {M}")
    return math.pi * math.fsum(norm_ratio_ladder(N, M))


def hardy_growth_rate(N: int, Ms) -> list[float]:
    """
    Slopes (S(M_{i+1}) - S(M_i)) / ln(M_{i+1}/M_i) of the Hardy partial sums S between consecutive cut offs.
    """
    Ms = sorted(int(m) for m in Ms)
    if len(Ms) < 2:
        raise DomainError("hardy_growth_rate needs at least two cut offs")
    if Ms[0] < 1:
        raise ConfigError(f"All cut offs must be >= 1, got {Ms[0]}")
    if len(set(Ms)) < len(Ms):
        raise ConfigError(f"The cut offs must be distinct, got {Ms}")
    ladder = norm_ratio_ladder(N, Ms[-1])
    partials = math.pi * np.cumsum(ladder)
    return [float((partials[b] - partials[a]) / math.log(b / a)) for a, b in zip(Ms[:-1], Ms[1:])]


def truncation_defect(N: int, m: int, psi_sq_norm: float = 1.0) -> float:
    """
    Squared alpha=1 norm of dbar F_n for the truncation F_n of I(psi) at n = N + m:
    pi n^2 / (2 (n + 3/2)(n + 5/2)) |phi_n|^2. Tends to 0 like 1/n.
    """
    n = N + m
    return math.pi * n * n / (2.0 * (n + 1.5) * (n + 2.5)) * norm_ratio(N, m) * psi_sq_norm


@dataclass(frozen=True, eq=False)
class SurfaceQuadrature:
    """
    Sample points tau with positive weights approximating integrals against the Euclidean area dlambda over a
    region of the disk.
    """
    points: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        points = np.asarray(self.points, dtype=complex).ravel()
        weights = np.asarray(self.weights, dtype=float).ravel()
        if points.shape != weights.shape:
            raise ConfigError(f"{points.size} sample points but {weights.size} weights")
        if not np.all(weights > 0) or not np.isfinite(np.sum(weights)):
            raise ConfigError("Quadrature weights must be positive and finite")
        check_in_disk(points)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def polar_disk(cls, rho: float, n_radial: int = 32, n_angular: int = 64) -> "SurfaceQuadrature":
        """Gauss-Legendre in the radius times the trapezoidal rule in the angle on the disk |tau| <= rho."""
        x, w = np.polynomial.legendre.leggauss(n_radial)
        r = 0.5 * rho * (x + 1.0)
        wr = 0.5 * rho * w * r
        theta = 2 * np.pi * np.arange(n_angular) / n_angular
        points = (r[:, None] * np.exp(1j * theta)[None, :]).ravel()
        weights = np.repeat(wr * 2 * np.pi / n_angular, n_angular)
        return cls(points, weights)

    @property
    def hyperbolic_area(self) -> float:
        return float(np.sum(4.0 * self.weights / (1.0 - np.abs(self.points) ** 2) ** 2))


def _norm_density(N: int, tau: np.ndarray) -> np.ndarray:
    """|(dtau)^N|^2_g times the area density 4/(1-|tau|^2)^2."""
    q = 1.0 - np.abs(tau) ** 2
    return (q * q / 2.0) ** N * 4.0 / (q * q)


def surface_inner(psi1: NDifferential, psi2: NDifferential, q: SurfaceQuadrature) -> complex:
    """<psi1, psi2> = int psi1 conj(psi2) |(dtau)^N|^2_g omega_g over the quadrature region."""
    if psi1.order != psi2.order:
        raise DomainError(f"Inner product of differentials of different orders {psi1.order} and {psi2.order}")
    vals = psi1(q.points) * np.conj(psi2(q.points))
    return complex(np.sum(vals * _norm_density(psi1.order, q.points) * q.weights))


def surface_norm(psi: NDifferential, q: SurfaceQuadrature) -> float:
    """
    Squared norm of psi over the quadrature region. Only meaningful as a surface norm if the region is a
    fundamental domain of a group under which psi is invariant.
    """
    return float(np.sum(np.abs(psi(q.points)) ** 2 * _norm_density(psi.order, q.points) * q.weights))


def gram_matrix(families, q: SurfaceQuadrature) -> np.ndarray:
    """Matrix of surface inner products of differentials of equal order, for checking orthogonality."""
    n = len(families)
    gram = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for k in range(i, n):
            gram[i, k] = surface_inner(families[i], families[k], q)
            gram[k, i] = np.conj(gram[i, k])
    return gram


@dataclass(frozen=True)
class KernelFamily:
    psi: NDifferential
    sq_norm: float

    @property
    def order(self) -> int:
        return self.psi.order


@dataclass(frozen=True)
class KernelBasis:
    """
    Differentials psi_{N,j} with their squared norms, assumed mutually orthogonal, on a surface of the given genus.
    """
    families: tuple[KernelFamily, ...]
    genus: int

    def __post_init__(self):
        object.__setattr__(self, "families", tuple(self.families))
        if int(self.genus) != self.genus or self.genus < 2:
            raise ConfigError(f"The genus must be an integer >= 2, got {self.genus}")
        for i, fam in enumerate(self.families):
            if fam.order < 1:
                raise ConfigError(f"Family {i}: order must be >= 1, got {fam.order}")
            if not math.isfinite(fam.sq_norm) or fam.sq_norm <= 0:
                raise DomainError(f"Family {i}: squared norm must be positive, got {fam.sq_norm}")


def kernel_constant(alpha: float, genus: int) -> float:
    """Gamma(alpha+2)/(pi^2 (4g-4)), the contribution of the constant functions."""
    check_alpha(alpha)
    return gamma_fn(alpha + 2) / (math.pi ** 2 * (4 * genus - 4))


def _family_values(basis: KernelBasis, pairs, q: QuadratureSpec) -> np.ndarray:
    """Extension values of the normalized families, shape (families, points)."""
    z = np.array([p.z for p in pairs], dtype=complex)
    w = np.array([p.w for p in pairs], dtype=complex)
    return np.array([extend_values(fam.psi, z, w, q) / math.sqrt(fam.sq_norm) for fam in basis.families]).reshape(
        len(basis.families), len(pairs))


def _family_coefficients(basis: KernelBasis, alpha: float) -> np.ndarray:
    return np.array([1.0 / (math.pi * c_alpha(fam.order, alpha).value) for fam in basis.families])


def kernel_assemble(basis: KernelBasis, alpha: float, p: PointPair, p2: PointPair,
                    q: QuadratureSpec = QuadratureSpec()) -> complex:
    """
    Truncated weighted Bergman kernel
    B((z,w); (z',w')) = Gamma(alpha+2)/(pi^2 (4g-4)) + (1/pi) sum_families I(psi)(z,w) conj(I(psi)(z',w')) / c_{N,alpha}
    with every psi divided by its norm.
    """
    const = kernel_constant(alpha, basis.genus)
    if not basis.families:
        return complex(const)
    vals = _family_values(basis, [p, p2], q)
    coeffs = _family_coefficients(basis, alpha)
    return complex(const + np.sum(coeffs * vals[:, 0] * np.conj(vals[:, 1])))


def kernel_matrix(basis: KernelBasis, alpha: float, pairs, q: QuadratureSpec = QuadratureSpec()) -> np.ndarray:
    """
    The matrix [B(p_i, p_k)] over a list of point pairs, Hermitian positive semidefinite.
    """
    const = kernel_constant(alpha, basis.genus)
    n = len(pairs)
    mat = np.full((n, n), const, dtype=complex)
    if basis.families:
        vals = _family_values(basis, pairs, q)
        coeffs = _family_coefficients(basis, alpha)
        mat += (vals * coeffs[:, None]).T @ np.conj(vals)
    logger.debug(f"Kernel matrix for {n} points and {len(basis.families)} families")
    return mat
