"""
Special functions: Gamma and Beta in log space, the hypergeometric value 3F2(a1, a2, a3; b1, b2; 1), the
norm-ratio ladder of the associated differentials, the fiber weights of the weighted Bergman norm and the constant
c_{N,alpha}.

All factorial ratios are computed as differences of log-Gamma values or by exact term recurrences, never from
factorials directly, so nothing overflows for large indices.
"""
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
import numpy as np
import mpmath
from scipy import special, integrate
from hyperjet.logging import logger
from hyperjet.errors import ConfigError, DomainError, DivergenceError, SeriesSaturationWarning

# 3F2 stopping rule
REL_STOP = 1e-16
MIN_TERMS = 20
MAX_TERMS = 10**6
BLOCK = 4096


def _scalar_or_array(res):
    return float(res) if np.ndim(res) == 0 else res


def log_gamma(x):
    """
    Natural log of Gamma for positive real arguments.
    :param x: positive real number or numpy array
    :return: log Gamma(x)
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(arr > 0):
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return _scalar_or_array(special.gammaln(arr))


def gamma_fn(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(arr > 0):
        raise DomainError(f"gamma_fn requires x > 0, got {x}")
    return _scalar_or_array(special.gamma(arr))


def log_beta(p, q):
    if not (np.all(np.asarray(p) > 0) and np.all(np.asarray(q) > 0)):
        raise DomainError(f"The Beta function requires positive arguments, got p={p}, q={q}")
    return _scalar_or_array(special.betaln(p, q))


def beta_fn(p, q):
    """Beta(p, q) = Gamma(p) Gamma(q) / Gamma(p + q), evaluated in log space."""
    return _scalar_or_array(np.exp(log_beta(p, q)))


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


@dataclass(frozen=True)
class HypParams:
    """
    Parameters of 3F2(a1, a2, a3; b1, b2; 1).
    """
    a1: float
    a2: float
    a3: float
    b1: float
    b2: float

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "b1", "b2"):
            object.__setattr__(self, name, float(getattr(self, name)))
        for name in ("b1", "b2"):
            if _is_nonpositive_integer(getattr(self, name)):
                raise DomainError(f"Bottom parameter {name}={getattr(self, name)} is a non-positive integer")

    @property
    def margin(self) -> float:
        """Convergence margin s = b1 + b2 - a1 - a2 - a3."""
        return self.b1 + self.b2 - self.a1 - self.a2 - self.a3

    @property
    def terminating(self) -> bool:
        return any(_is_nonpositive_integer(a) for a in (self.a1, self.a2, self.a3))

    def tops(self) -> tuple[float, float, float]:
        return self.a1, self.a2, self.a3


@dataclass(frozen=True)
class SeriesValue:
    """Result of a series evaluation together with its convergence report."""
    value: float
    terms_used: int
    tail_estimate: float
    saturated: bool = False

    def scaled(self, factor: float) -> "SeriesValue":
        return SeriesValue(self.value * factor, self.terms_used, self.tail_estimate * abs(factor), self.saturated)

    def to_json(self) -> dict:
        return {
            "value": self.value,
            "terms_used": self.terms_used,
            "tail_estimate": self.tail_estimate,
            "saturated": self.saturated,
        }


def f32_unit(h: HypParams, tolerance: float = 1e-12, max_terms: int = MAX_TERMS) -> SeriesValue:
    """
    Sum the series of 3F2(a1, a2, a3; b1, b2; 1) directly.

    Terms are generated blockwise from the ratio recurrence. Summation stops at the first k >= 20 with
    |t_k| < 1e-16 |partial sum|, or when a term is exactly zero (terminating series). The tail estimate
    is |t_k| r/(1-r) with r = |t_k/t_{k-1}|, or infinity if r >= 1. If the term cap is hit and the tail estimate
    exceeds the tolerance, the result is flagged as saturated and a warning is logged.

    :param h: the parameters
    :param tolerance: absolute tolerance used for the saturation report
    :param max_terms: term cap
    :return: a SeriesValue
    """
    if h.margin <= 0 and not h.terminating:
        raise DivergenceError(f"3F2 at unit argument diverges for convergence margin s={h.margin} <= 0: {h}")
    a1, a2, a3, b1, b2 = h.a1, h.a2, h.a3, h.b1, h.b2
    blocks = []
    term = 1.0
    partial = 0.0
    k0 = 0
    stop = None
    while k0 < max_terms:
        n = min(BLOCK, max_terms - k0)
        ks = np.arange(k0, k0 + n, dtype=float)
        ratios = (a1 + ks) * (a2 + ks) * (a3 + ks) / ((b1 + ks) * (b2 + ks) * (ks + 1.0))
        terms = np.empty(n)
        terms[0] = term
        terms[1:] = term * np.cumprod(ratios[:-1])
        zeros = np.flatnonzero(terms == 0.0)
        if zeros.size:
            # terminating series: everything from the first zero term on vanishes
            blocks.append(terms[:zeros[0]])
            value = math.fsum(np.concatenate(blocks))
            return SeriesValue(value, max(1, k0 + int(zeros[0])), 0.0)
        partials = partial + np.cumsum(terms)
        idx = np.arange(k0, k0 + n)
        hit = np.flatnonzero((idx >= MIN_TERMS) & (np.abs(terms) < REL_STOP * np.abs(partials)))
        if hit.size:
            stop = int(hit[0])
            blocks.append(terms[:stop + 1])
            break
        blocks.append(terms)
        partial = partials[-1]
        term = terms[-1] * ratios[-1]
        k0 += n
    allterms = np.concatenate(blocks)
    value = math.fsum(allterms)
    last = abs(allterms[-1])
    r = last / abs(allterms[-2]) if len(allterms) > 1 and allterms[-2] != 0 else math.inf
    tail = last * r / (1.0 - r) if r < 1.0 else math.inf
    saturated = False
    if stop is None:
        saturated = tail > tolerance
        if saturated:
            warnings.warn(f"3F2 series for {h} saturated at {max_terms} terms with tail estimate {tail}",
                          SeriesSaturationWarning, stacklevel=2)
    elif r >= 1.0:
        saturated = True
    return SeriesValue(value, len(allterms), tail, saturated)


def hyp3f2_thomae(h: HypParams):
    """
    Thomae's transformation of 3F2 at unit argument:

    3F2(a, b, c; d, e; 1) = G(d) G(e) G(s) / (G(a) G(s+b) G(s+c)) 3F2(d-a, e-a, s; s+b, s+c; 1)

    with s = d + e - a - b - c. The largest top parameter is taken as a, which makes the convergence margin of the
    transformed series equal to that parameter.

    :param h: the parameters
    :return: tuple (log of the Gamma prefactor, transformed HypParams) or None if the Gamma arguments are not all
        positive
    """
    tops = sorted(h.tops(), reverse=True)
    a, b, c = tops
    d, e, s = h.b1, h.b2, h.margin
    args_num = (d, e, s)
    args_den = (a, s + b, s + c)
    if min(args_num + args_den) <= 0:
        return None
    log_pref = sum(special.gammaln(x) for x in args_num) - sum(special.gammaln(x) for x in args_den)
    return float(log_pref), HypParams(d - a, e - a, s, s + b, s + c)


def f32_unit_accelerated(h: HypParams, tolerance: float = 1e-12) -> SeriesValue:
    """
    Evaluate 3F2(...; 1), switching to the Thomae-transformed series whenever that enlarges the convergence margin or
    makes the series terminate.
    """
    if not h.terminating and h.margin > 0:
        transformed = hyp3f2_thomae(h)
        if transformed is not None and (max(h.tops()) > h.margin or transformed[1].terminating):
            log_pref, h2 = transformed
            logger.debug(f"Using Thomae transform {h} -> {h2}, margin {h.margin} -> {h2.margin}")
            return f32_unit(h2, tolerance=tolerance).scaled(math.exp(log_pref))
    return f32_unit(h, tolerance=tolerance)


def f32_unit_mp(h: HypParams, dps: int = 30) -> float:
    """
    Extended precision evaluation through mpmath, used as an independent oracle.
    """
    with mpmath.workdps(dps):
        return float(mpmath.hyp3f2(h.a1, h.a2, h.a3, h.b1, h.b2, 1))


def check_order(N: int, minimum: int = 1):
    if int(N) != N or N < minimum:
        raise DomainError(f"The order N must be an integer >= {minimum}, got {N}")


def check_alpha(alpha: float):
    if not alpha > -1:
        raise DomainError(f"The weight exponent must satisfy alpha > -1, got alpha={alpha}; "
                          f"alpha = -1 is the Hardy case, use hardy_partial for it")


@lru_cache(maxsize=256)
def c_alpha(N: int, alpha: float) -> SeriesValue:
    """
    The constant c_{N,alpha} = Gamma(N+1)/Gamma(N+2+alpha) 3F2(N+1, N, N; 2N, N+2+alpha; 1).
    """
    check_order(N)
    check_alpha(alpha)
    h = HypParams(N + 1, N, N, 2 * N, N + 2 + alpha)
    pref = math.exp(special.gammaln(N + 1) - special.gammaln(N + 2 + alpha))
    return f32_unit_accelerated(h).scaled(pref)


def norm_ratio(N: int, m):
    """
    The ratio |phi_{N+m}|^2 / |psi|^2 = (2N-1)!/((N-1)!)^2 * ((N+m-1)!)^2 / (m! (2N+m-1)!).
    :param N: the order, >= 1
    :param m: integer >= 0 or numpy array of such integers
    """
    check_order(N)
    m = np.asarray(m, dtype=float)
    if np.any(m < 0):
        raise DomainError(f"norm_ratio requires m >= 0, got {m}")
    logr = (special.gammaln(2 * N) - 2 * special.gammaln(N) + 2 * special.gammaln(N + m)
            - special.gammaln(m + 1) - special.gammaln(2 * N + m))
    return _scalar_or_array(np.exp(logr))


def norm_ratio_ladder(N: int, M: int) -> np.ndarray:
    """
    norm_ratio(N, m) for m = 0..M from the exact recurrence r_{m+1} = r_m (N+m)^2/((m+1)(2N+m)).
    """
    check_order(N)
    if int(M) != M or M < 0:
        raise ConfigError(f"The ladder length M must be an integer >= 0, got {M}")
    ms = np.arange(M, dtype=float)
    ratios = (N + ms) ** 2 / ((ms + 1) * (2 * N + ms))
    return np.concatenate([[1.0], np.cumprod(ratios)])


def norm_ratio_limit(N: int) -> float:
    """
    The limit of m * norm_ratio(N, m) for m -> infinity, Gamma(2N)/Gamma(N)^2 = (2N-1)!/((N-1)!)^2.
    """
    check_order(N)
    return math.exp(special.gammaln(2 * N) - 2 * special.gammaln(N))


def fiber_weight(n, alpha: float):
    """
    Weight Gamma(n+1)/Gamma(n+2+alpha) of |phi_n|^2 in the weighted norm.
    """
    check_alpha(alpha)
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise DomainError(f"fiber_weight requires n >= 0, got {n}")
    return _scalar_or_array(np.exp(special.gammaln(n + 1) - special.gammaln(n + 2 + alpha)))


def hardy_weight(n):
    """The alpha -> -1 limit of fiber_weight, identically 1."""
    return _scalar_or_array(np.ones_like(np.asarray(n, dtype=float)))


def _moment_term(N: int, alpha: float, x):
    """fiber_weight(N+x, alpha) * norm_ratio(N, x) continued to real x, stable for very large x."""
    x = np.asarray(x, dtype=float)
    ratio = norm_ratio_limit(N) / (x + 2 * N - 1)
    for j in range(1, N):
        ratio = ratio * (x + j) / (x + j + N - 1)
    return ratio / special.poch(x + N + 1, 1 + alpha)


def _moment_term_logderiv(N: int, alpha: float, x: float) -> float:
    d = -1.0 / (x + 2 * N - 1)
    for j in range(1, N):
        d += 1.0 / (x + j) - 1.0 / (x + j + N - 1)
    return d - (special.digamma(x + N + 2 + alpha) - special.digamma(x + N + 1))


def _moment_tail(N: int, alpha: float, a: int) -> tuple[float, float]:
    """
    Euler-Maclaurin estimate of sum_{m >= a} of the moment terms.
    :return: tuple (tail, magnitude of the last correction used)
    """
    def integrand(y):
        if y > 500:
            return 0.0
        x = a * math.exp(y)
        return float(_moment_term(N, alpha, x)) * x

    integral, _ = integrate.quad(integrand, 0, np.inf, epsabs=0.0, epsrel=1e-12, limit=400)
    t_a = float(_moment_term(N, alpha, a))
    dt_a = t_a * _moment_term_logderiv(N, alpha, a)
    return integral + 0.5 * t_a - dt_a / 12.0, abs(dt_a) / 12.0


def moment_sum(N: int, alpha: float, M: int, extrapolate: bool = False) -> SeriesValue:
    """
    The ladder route to c_{N,alpha}: sum_{m=0..M} fiber_weight(N+m, alpha) * norm_ratio(N, m).

    :param N: order >= 1
    :param alpha: weight exponent > -1
    :param M: last index of the partial sum
    :param extrapolate: if True, add an Euler-Maclaurin estimate of the remaining terms m > M to the value
    :return: SeriesValue; tail_estimate is the estimated remainder for a raw partial sum and the size of the last
        Euler-Maclaurin correction for an extrapolated one
    """
    check_order(N)
    check_alpha(alpha)
    if M < 0:
        raise DomainError(f"moment_sum requires M >= 0, got {M}")
    ms = np.arange(M, dtype=float)
    weights = np.concatenate([[fiber_weight(N, alpha)], fiber_weight(N, alpha) * np.cumprod((N + ms + 1) / (N + ms + 2 + alpha))])
    terms = weights * norm_ratio_ladder(N, M)
    partial = math.fsum(terms)
    tail, correction = _moment_tail(N, alpha, M + 1)
    if extrapolate:
        return SeriesValue(partial + tail, M + 1, correction)
    return SeriesValue(partial, M + 1, tail)


def eigenvalue(N: int, m: int) -> float:
    """E_{N,m} = m(2N+m-1)/2."""
    return m * (2 * N + m - 1) / 2.0


def eigenvalue_sum(N: int, m: int) -> int:
    """E_{N,m} as the sum N + (N+1) + ... + (N+m-1)."""
    return sum(range(N, N + m))
