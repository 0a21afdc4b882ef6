"""
Automorphisms of the unit disk and the basic quantities on the bidisk.

A disk automorphism is stored as the SU(1,1) pair (alpha, beta) acting by z -> (alpha z + beta)/(conj(beta) z +
conj(alpha)). Since g and -g act identically, every MobiusTransform is normalized to determinant one and brought into
a sign-canonical form on construction, so equality tests can compare the stored pairs directly.

Points of the disk are plain complex numbers, checked with disk_point(). Most functions also accept numpy arrays
and then work elementwise.
"""
import cmath
import math
from dataclasses import dataclass
import numpy as np
from hyperjet.errors import DomainError, PoleError, DegeneratePairError

# points closer than this to the unit circle are rejected
DISK_TOL = 1e-12
# components below this modulus are skipped when choosing the canonical sign
SIGN_TOL = 1e-9
POLE_TOL = 1e-14


def disk_point(value) -> complex:
    """
    Validate and return a point of the open unit disk.
    :param value: anything convertible to complex
    :return: the point as a complex number
    """
    try:
        z = complex(value)
    except (TypeError, ValueError):
        raise DomainError(f"Not a complex number: {value!r}")
    if not cmath.isfinite(z) or 1.0 - abs(z) < DISK_TOL:
        raise DomainError(f"Point {z} is not inside the open unit disk")
    return z


def check_in_disk(z):
    """
    Check that all entries of a scalar or array lie in the open unit disk, raise DomainError otherwise.
    """
    mod = np.abs(np.asarray(z))
    if not np.all(np.isfinite(mod)) or np.any(1.0 - mod < DISK_TOL):
        raise DomainError(f"Point(s) not inside the open unit disk, max modulus {np.max(mod)}")
    return z


def _canonical_sign(alpha: complex, beta: complex) -> tuple[complex, complex]:
    for c in (alpha, beta):
        if abs(c) > SIGN_TOL:
            angle = cmath.phase(c)
            if -math.pi / 2 < angle <= math.pi / 2:
                return alpha, beta
            return -alpha, -beta
    return alpha, beta


@dataclass(frozen=True)
class MobiusTransform:
    """
    An element of PSU(1,1), stored as the normalized and sign-canonical pair (alpha, beta).
    """
    alpha: complex
    beta: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        beta = complex(self.beta)
        det = abs(alpha) ** 2 - abs(beta) ** 2
        if not math.isfinite(det) or det <= 0:
            raise DomainError(f"Not an element of SU(1,1): alpha={alpha}, beta={beta}, |alpha|^2-|beta|^2={det}")
        scale = math.sqrt(det)
        alpha, beta = _canonical_sign(alpha / scale, beta / scale)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @classmethod
    def identity(cls) -> "MobiusTransform":
        return cls(1.0, 0.0)

    @classmethod
    def rotation(cls, theta: float) -> "MobiusTransform":
        """The rotation z -> exp(i theta) z."""
        return cls(cmath.exp(0.5j * theta), 0.0)

    @classmethod
    def from_point(cls, a) -> "MobiusTransform":
        """The hyperbolic translation mapping 0 to a."""
        a = disk_point(a)
        scale = 1.0 / math.sqrt(1.0 - abs(a) ** 2)
        return cls(scale, a * scale)

    def __call__(self, z):
        return apply(self, z)

    def __matmul__(self, other: "MobiusTransform") -> "MobiusTransform":
        return compose(self, other)

    @property
    def determinant_residual(self) -> float:
        return abs(abs(self.alpha) ** 2 - abs(self.beta) ** 2 - 1.0)

    @property
    def trace(self) -> float:
        """Trace 2 Re(alpha), determined up to sign in PSU(1,1)."""
        return 2.0 * self.alpha.real

    def is_hyperbolic(self) -> bool:
        return abs(self.trace) > 2.0

    def distance(self, other: "MobiusTransform") -> float:
        """
        Max-entry distance between the canonical pairs of two elements, taking the sign ambiguity into account.
        """
        d_plus = max(abs(self.alpha - other.alpha), abs(self.beta - other.beta))
        d_minus = max(abs(self.alpha + other.alpha), abs(self.beta + other.beta))
        return min(d_plus, d_minus)


def apply(g: MobiusTransform, z):
    """
    Apply the automorphism to a point or an array of points.
    :param g: the automorphism
    :param z: complex number or numpy array of points in the disk
    :return: (alpha z + beta) / (conj(beta) z + conj(alpha))
    """
    return (g.alpha * z + g.beta) / (g.beta.conjugate() * z + g.alpha.conjugate())


def derivative(g: MobiusTransform, z):
    """
    The derivative of the automorphism, 1/(conj(beta) z + conj(alpha))^2.
    """
    return 1.0 / (g.beta.conjugate() * z + g.alpha.conjugate()) ** 2


def compose(g: MobiusTransform, h: MobiusTransform) -> MobiusTransform:
    """
    Return g o h, the matrix product of [[a, b], [conj(b), conj(a)]] forms.
    """
    alpha = g.alpha * h.alpha + g.beta * h.beta.conjugate()
    beta = g.alpha * h.beta + g.beta * h.alpha.conjugate()
    return MobiusTransform(alpha, beta)


def inverse(g: MobiusTransform) -> MobiusTransform:
    return MobiusTransform(g.alpha.conjugate(), -g.beta)


@dataclass(frozen=True)
class PointPair:
    """A point (z, w) of the bidisk. The diagonal z = w is allowed."""
    z: complex
    w: complex

    def __post_init__(self):
        object.__setattr__(self, "z", disk_point(self.z))
        object.__setattr__(self, "w", disk_point(self.w))

    def moved(self, g: MobiusTransform) -> "PointPair":
        """The pair (g z, g w)."""
        return PointPair(apply(g, self.z), apply(g, self.w))


def t_coord(p: PointPair) -> complex:
    """The fiber coordinate t = (w - z)/(1 - conj(z) w)."""
    return (p.w - p.z) / (1.0 - p.z.conjugate() * p.w)


def w_from_t(z, t):
    """
    Inverse of t_coord for fixed z: w = (t + z)/(1 + conj(z) t). Works on arrays of t.
    """
    if np.any(np.abs(np.asarray(t)) >= 1.0):
        raise DomainError(f"Fiber coordinate must satisfy |t| < 1, got max modulus {np.max(np.abs(t))}")
    return (t + z) / (1.0 + np.conj(z) * t)


def delta(p: PointPair) -> float:
    """
    The weight 1 - |t|^2 = (1-|z|^2)(1-|w|^2)/|1 - conj(z) w|^2.
    """
    return (1.0 - abs(p.z) ** 2) * (1.0 - abs(p.w) ** 2) / abs(1.0 - p.z.conjugate() * p.w) ** 2


def bracket(w, tau, z):
    """
    Coefficient (w - z)/((w - tau)(tau - z)) of the invariant 1-form [w, tau, z].
    Scalar arguments are checked for the pole tau in {z, w} and for the degenerate pair z = w.
    """
    if np.isscalar(w) and np.isscalar(z) and w == z:
        raise DegeneratePairError(f"The bracket is not defined for z = w = {z}")
    dist = np.minimum(np.abs(np.asarray(tau) - w), np.abs(np.asarray(tau) - z))
    if np.any(dist < POLE_TOL):
        raise PoleError(f"tau coincides with an end point (distance {np.min(dist)})")
    return (w - z) / ((w - tau) * (tau - z))


def metric_coefficient(z):
    """The Poincare metric coefficient g(z) = 2/(1-|z|^2)^2."""
    return 2.0 / (1.0 - np.abs(z) ** 2) ** 2


def omega_norm(z):
    """
    Pointwise squared norm of the (1,1)-form g dz (x) dz-bar, using |dz|^2_g = (1-|z|^2)^2/2. Equals 1.
    """
    return metric_coefficient(z) ** 2 * ((1.0 - np.abs(z) ** 2) ** 2 / 2.0) ** 2


def random_disk_point(rng: np.random.Generator, radius: float = 0.9) -> complex:
    """Uniformly distributed point in the Euclidean disk of the given radius."""
    r = radius * math.sqrt(rng.uniform())
    return complex(r * cmath.exp(2j * math.pi * rng.uniform()))


def random_mobius(rng: np.random.Generator, max_beta: float = 1.0) -> MobiusTransform:
    """Random automorphism with |beta| <= max_beta."""
    beta = max_beta * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform())
    alpha = math.sqrt(1.0 + abs(beta) ** 2) * cmath.exp(2j * math.pi * rng.uniform())
    return MobiusTransform(alpha, beta)
