import math
import numpy as np
import pytest
from hyperjet.errors import ConfigError, DiscretenessError, DomainError
from hyperjet.mobius import MobiusTransform, PointPair, apply, derivative, random_disk_point, random_mobius
from hyperjet.fuchsian import GeneratorSet, enumerate_ball, poincare_density, poincare_density_values, \
    pair_series, shell_magnitudes


@pytest.fixture(scope="module")
def ball3(octagon):
    return enumerate_ball(octagon, 3)


def test_octagon_relation(octagon):
    assert len(octagon.generators) == 4
    assert max(octagon.relation_residuals()) < 1e-9
    assert all(g.is_hyperbolic() for g in octagon.generators)


def test_bad_relation(octagon):
    with pytest.raises(ConfigError, match="Relation 0"):
        GeneratorSet(octagon.generators, ((1, 2, -1, -2),))
    with pytest.raises(ConfigError):
        GeneratorSet(octagon.generators, ((1, 5),))
    with pytest.raises(ConfigError):
        GeneratorSet(())


def test_conjugate_keeps_relations(octagon, rng):
    conj = octagon.conjugate(random_mobius(rng, 0.5))
    assert max(conj.relation_residuals()) < 1e-9


def test_small_balls(octagon):
    assert len(enumerate_ball(octagon, 0)) == 1
    ball1 = enumerate_ball(octagon, 1)
    assert len(ball1) == 9
    assert ball1.words[1:5] == ((1,), (2,), (3,), (4,))
    ball2 = enumerate_ball(octagon, 2)
    for g in ball1.elements:
        assert min(g.distance(h) for h in ball2.elements) < 1e-12
    with pytest.raises(DomainError):
        enumerate_ball(octagon, -1)


def test_shell_sizes(ball3):
    assert ball3.shell_sizes() == [1, 8, 56, 392]
    assert len(ball3) == 457
    assert ball3.non_hyperbolic() == []


def test_words_evaluate_to_elements(octagon, ball3):
    for i in (1, 10, 100, 456):
        assert octagon.evaluate_word(ball3.words[i]).distance(ball3.elements[i]) < 1e-12


def test_finite_rotation_group():
    gens = GeneratorSet((MobiusTransform.rotation(math.pi / 2),))
    ball = enumerate_ball(gens, 3)
    assert ball.shell_sizes() == [1, 2, 1, 0]
    assert len(ball.non_hyperbolic()) == 3


def test_ambiguous_dedup():
    gens = GeneratorSet((MobiusTransform.rotation(2 * math.pi * (1 / 7 + 1e-11)),))
    with pytest.raises(DiscretenessError):
        enumerate_ball(gens, 4)


def test_identity_ball(octagon):
    ball = enumerate_ball(octagon, 0)
    assert poincare_density(ball, 3, 0.2 + 0.1j).value == pytest.approx(1.0)
    p = PointPair(0.2, -0.1 + 0.3j)
    assert pair_series(ball, 3, p).value == pytest.approx((p.z - p.w) ** 3)
    assert pair_series(ball, 2, PointPair(0.3, 0.3)).value == 0


def test_density_matches_elementwise_sum(ball3):
    tau = 0.1 - 0.2j
    expected = sum(derivative(g, tau) ** 4 for g in ball3.elements)
    assert poincare_density(ball3, 4, tau).value == pytest.approx(expected, rel=1e-13)
    taus = np.array([tau, 0.0, 0.3j])
    vals = poincare_density_values(ball3, 4, taus)
    assert vals[0] == pytest.approx(expected, rel=1e-13)
    assert vals[1] == pytest.approx(poincare_density(ball3, 4, 0.0).value, rel=1e-13)


def test_pair_series_with_zero_distance(ball3):
    assert pair_series(ball3, 4, PointPair(0.1j, 0.1j)).value == 0


def test_shell_decay(octagon):
    ball = enumerate_ball(octagon, 4)
    mags = shell_magnitudes(ball, 4, 0.0)
    assert mags[4] < mags[3] < mags[2]
    assert poincare_density(ball, 4, 0.0).tail == pytest.approx(mags[4])


def test_non_convergent_order_flag(ball3):
    res = pair_series(ball3, 1, PointPair(0.1, 0.2))
    assert not res.convergent
    assert pair_series(ball3, 2, PointPair(0.1, 0.2)).convergent


def test_pair_series_conjugation_covariance(octagon, rng):
    sigma = MobiusTransform.from_point(0.2 - 0.1j)
    ball = enumerate_ball(octagon, 2)
    conj_ball = enumerate_ball(octagon.conjugate(sigma), 2)
    assert conj_ball.shell_sizes() == ball.shell_sizes()
    for _ in range(3):
        z, w = random_disk_point(rng, 0.3), random_disk_point(rng, 0.3)
        expected = sum((apply(sigma, apply(g, z)) - apply(sigma, apply(g, w))) ** 4 for g in ball.elements)
        moved = PointPair(apply(sigma, z), apply(sigma, w))
        assert abs(pair_series(conj_ball, 4, moved).value - expected) < 1e-10
