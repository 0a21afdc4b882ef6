"""
Finitely generated subgroups of PSU(1,1): balls of group elements up to a given word length and the two Poincare
series sum_g g'(tau)^N and sum_g (g z - g w)^N over such a ball.

Words are tuples of non-zero integers, k standing for generator k (1-based) and -k for its inverse. A word is
evaluated as the product of its letters from left to right.
"""
import itertools
import math
from dataclasses import dataclass, field
import numpy as np
from hyperjet.logging import logger
from hyperjet.errors import ConfigError, DiscretenessError, DomainError
from hyperjet.mobius import MobiusTransform, PointPair, compose, inverse, check_in_disk

DEDUP_TOL = 1e-9
AMBIGUITY_FLOOR = 1e-12
RELATION_TOL = 1e-9
# bucket size of the dedup grid, must be larger than DEDUP_TOL
CELL = 1e-6


@dataclass(frozen=True)
class GeneratorSet:
    """
    Generators of the group and optionally relation words which must evaluate to the identity.
    """
    generators: tuple[MobiusTransform, ...]
    relation_words: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relation_words", tuple(tuple(int(x) for x in w) for w in self.relation_words))
        if not self.generators:
            raise ConfigError("A generator set needs at least one generator")
        k = len(self.generators)
        for ridx, word in enumerate(self.relation_words):
            for letter in word:
                if letter == 0 or abs(letter) > k:
                    raise ConfigError(f"Relation {ridx}: letter {letter} does not refer to one of the {k} generators")
        for ridx, residual in enumerate(self.relation_residuals()):
            if residual > RELATION_TOL:
                raise ConfigError(f"Relation {ridx} does not evaluate to the identity: residual {residual:.3e} "
                                  f"> {RELATION_TOL:.0e}")

    def letters(self) -> list[int]:
        """All letters in canonical order 1..k, -1..-k."""
        k = len(self.generators)
        return list(range(1, k + 1)) + list(range(-1, -k - 1, -1))

    def element(self, letter: int) -> MobiusTransform:
        g = self.generators[abs(letter) - 1]
        return g if letter > 0 else inverse(g)

    def evaluate_word(self, word) -> MobiusTransform:
        result = MobiusTransform.identity()
        for letter in word:
            result = compose(result, self.element(letter))
        return result

    def relation_residuals(self) -> list[float]:
        ident = MobiusTransform.identity()
        return [self.evaluate_word(w).distance(ident) for w in self.relation_words]

    def conjugate(self, sigma: MobiusTransform) -> "GeneratorSet":
        """The generators sigma g sigma^-1, with the same relations."""
        sinv = inverse(sigma)
        return GeneratorSet(tuple(compose(compose(sigma, g), sinv) for g in self.generators), self.relation_words)


@dataclass(frozen=True)
class GroupBall:
    """
    Pairwise distinct group elements of word length <= max_word_length, ordered by shell and then by word.
    shell_starts[l] is the index of the first element of shell l.
    """
    elements: tuple[MobiusTransform, ...]
    words: tuple[tuple[int, ...], ...]
    shell_starts: tuple[int, ...]
    max_word_length: int
    alphas: np.ndarray = field(init=False, repr=False, compare=False)
    betas: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphas", np.array([g.alpha for g in self.elements], dtype=complex))
        object.__setattr__(self, "betas", np.array([g.beta for g in self.elements], dtype=complex))

    def __len__(self):
        return len(self.elements)

    def shell_slice(self, level: int) -> slice:
        end = self.shell_starts[level + 1] if level + 1 < len(self.shell_starts) else len(self.elements)
        return slice(self.shell_starts[level], end)

    def shell(self, level: int) -> tuple[MobiusTransform, ...]:
        return self.elements[self.shell_slice(level)]

    def shell_sizes(self) -> list[int]:
        return [len(self.shell(level)) for level in range(self.max_word_length + 1)]

    def non_hyperbolic(self) -> list[int]:
        """Indices of non-identity elements with |trace| <= 2."""
        return [i for i, g in enumerate(self.elements) if i > 0 and not g.is_hyperbolic()]


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with the magnitude sum over the outermost shell as tail indicator."""
    value: complex
    tail: float
    convergent: bool


class _BallIndex:
    """Bucket grid over the canonical (alpha, beta) coordinates for near-duplicate lookup."""

    def __init__(self, tol: float, floor: float):
        self.tol = tol
        self.floor = floor
        self.buckets = {}
        self.elements = []

    @staticmethod
    def _coords(g: MobiusTransform, sign: float = 1.0):
        return (sign * g.alpha.real, sign * g.alpha.imag, sign * g.beta.real, sign * g.beta.imag)

    def _keys(self, g: MobiusTransform):
        keys = set()
        for sign in (1.0, -1.0):
            cells = [{math.floor((c - self.tol) / CELL), math.floor((c + self.tol) / CELL)}
                     for c in self._coords(g, sign)]
            keys.update(itertools.product(*cells))
        return keys

    def find(self, g: MobiusTransform, word=()):
        """Return the index of an element equal to g, None if there is none."""
        for key in self._keys(g):
            for idx in self.buckets.get(key, ()):
                other = self.elements[idx]
                d = g.distance(other)
                if d <= self.floor * max(1.0, abs(g.alpha)):
                    return idx
                if d <= self.tol:
                    raise DiscretenessError(f"Word {list(word)} gives an element at distance {d:.3e} from element "
                                            f"{idx}: neither equal nor separated by more than {self.tol:.0e}")
        return None

    def add(self, g: MobiusTransform) -> int:
        self.elements.append(g)
        idx = len(self.elements) - 1
        key = tuple(math.floor(c / CELL) for c in self._coords(g))
        self.buckets.setdefault(key, []).append(idx)
        return idx


def enumerate_ball(gens: GeneratorSet, L: int, tol: float = DEDUP_TOL, floor: float = AMBIGUITY_FLOOR) -> GroupBall:
    """
    Breadth-first enumeration of all group elements of word length <= L.

    Shell l consists of the products letter * h for h in shell l-1 which are not already present; letters are
    taken in the order 1..k, -1..-k and shell l-1 in word order, the first word reaching an element is kept. Each
    shell is then sorted lexicographically by word in the letter order.

    :param gens: the generators
    :param L: maximal word length >= 0
    :param tol: elements closer than this are considered equal
    :param floor: relative distance below which equality is certain; distances between floor*max(1,|alpha|) and
        tol raise DiscretenessError
    :return: the GroupBall
    """
    if L < 0:
        raise DomainError(f"The word length must be >= 0, got {L}")
    rank = {letter: i for i, letter in enumerate(gens.letters())}
    index = _BallIndex(tol, floor)
    ident = MobiusTransform.identity()
    index.add(ident)
    elements = [ident]
    words = [()]
    shell_starts = [0]
    prev = [(ident, ())]
    for level in range(1, L + 1):
        current = []
        for letter in gens.letters():
            g = gens.element(letter)
            for h, word in prev:
                candidate = compose(g, h)
                newword = (letter,) + word
                if index.find(candidate, newword) is not None:
                    continue
                index.add(candidate)
                current.append((candidate, newword))
        current.sort(key=lambda item: [rank[x] for x in item[1]])
        shell_starts.append(len(elements))
        elements.extend(c for c, _ in current)
        words.extend(w for _, w in current)
        logger.debug(f"Shell {level}: {len(current)} new elements")
        prev = current
    ball = GroupBall(tuple(elements), tuple(words), tuple(shell_starts), L)
    bad = ball.non_hyperbolic()
    if bad:
        logger.warning(f"{len(bad)} non-identity elements of the ball are not hyperbolic, first word "
                       f"{list(ball.words[bad[0]])}")
    return ball


def _derivative_power_terms(alphas: np.ndarray, betas: np.ndarray, N: int, tau) -> np.ndarray:
    """Matrix of g'(tau)^N, one row per element."""
    tau = np.asarray(tau, dtype=complex)
    denom = np.conj(betas)[:, None] * tau.ravel()[None, :] + np.conj(alphas)[:, None]
    return (denom ** (-2 * N)).reshape((len(alphas),) + tau.shape)


def _warn_order(N: int, what: str):
    if N < 2:
        logger.warning(f"{what} of order N={N} does not converge, the value is a truncation artifact")


def poincare_density(ball: GroupBall, N: int, tau) -> SeriesResult:
    """
    sum over the ball of derivative(g, tau)^N at a single point tau.
    """
    _warn_order(N, "Poincare density")
    check_in_disk(tau)
    terms = _derivative_power_terms(ball.alphas, ball.betas, N, complex(tau))
    tail = float(np.sum(np.abs(terms[ball.shell_slice(ball.max_word_length)])))
    return SeriesResult(complex(np.sum(terms)), tail, N >= 2)


def poincare_density_values(ball: GroupBall, N: int, tau) -> np.ndarray:
    """
    Vectorized density over an array of points, accumulated element by element to bound memory.
    """
    tau = np.asarray(tau, dtype=complex)
    acc = np.zeros_like(tau)
    for alpha, beta in zip(ball.alphas, ball.betas):
        acc += (np.conj(beta) * tau + np.conj(alpha)) ** (-2 * N)
    return acc


def shell_magnitudes(ball: GroupBall, N: int, tau) -> np.ndarray:
    """Per shell sums of |derivative(g, tau)|^N."""
    terms = np.abs(_derivative_power_terms(ball.alphas, ball.betas, N, complex(tau)))
    return np.array([np.sum(terms[ball.shell_slice(level)]) for level in range(ball.max_word_length + 1)])


def pair_series(ball: GroupBall, N: int, p: PointPair) -> SeriesResult:
    """
    sum over the ball of (g z - g w)^N.
    """
    _warn_order(N, "Pair series")
    gz = (ball.alphas * p.z + ball.betas) / (np.conj(ball.betas) * p.z + np.conj(ball.alphas))
    gw = (ball.alphas * p.w + ball.betas) / (np.conj(ball.betas) * p.w + np.conj(ball.alphas))
    terms = (gz - gw) ** N
    tail = float(np.sum(np.abs(terms[ball.shell_slice(ball.max_word_length)])))
    return SeriesResult(complex(np.sum(terms)), tail, N >= 2)
