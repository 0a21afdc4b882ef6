import cmath
import math
import numpy as np
import pytest
from hyperjet.errors import DomainError, PoleError, DegeneratePairError
from hyperjet.mobius import MobiusTransform, PointPair, apply, derivative, compose, inverse, t_coord, w_from_t, \
    delta, bracket, disk_point, metric_coefficient, omega_norm, random_disk_point, random_mobius


def test_apply_examples():
    ident = MobiusTransform.identity()
    assert apply(ident, 0.3 + 0.1j) == pytest.approx(0.3 + 0.1j)
    g = MobiusTransform(math.sqrt(2), 1.0)
    assert apply(g, 0.0) == pytest.approx(1 / math.sqrt(2), abs=1e-13)
    assert derivative(g, 0.0) == pytest.approx(0.5, abs=1e-13)
    assert derivative(ident, 0.4 - 0.2j) == pytest.approx(1.0)


def test_normalization_and_sign():
    g = MobiusTransform(2 * math.sqrt(2), 2.0)
    assert g.determinant_residual < 1e-14
    assert g.alpha == pytest.approx(math.sqrt(2))
    assert MobiusTransform(-1.0, 0.0) == MobiusTransform.identity()
    minus = MobiusTransform(-g.alpha, -g.beta)
    assert minus.distance(g) < 1e-15


def test_invalid_transform():
    with pytest.raises(DomainError):
        MobiusTransform(1.0, 1.0)
    with pytest.raises(DomainError):
        MobiusTransform(0.5, 1.0)


def test_disk_point():
    assert disk_point("0.5") == 0.5
    with pytest.raises(DomainError):
        disk_point(1.0)
    with pytest.raises(DomainError):
        disk_point(0.8 + 0.8j)
    with pytest.raises(DomainError):
        PointPair(0.0, 2.0)


def test_group_laws(rng):
    for _ in range(20):
        g, h, k = random_mobius(rng), random_mobius(rng), random_mobius(rng)
        z = random_disk_point(rng)
        assert apply(g, apply(inverse(g), z)) == pytest.approx(z, abs=1e-12)
        assert compose(g, inverse(g)).distance(MobiusTransform.identity()) < 1e-12
        assert compose(MobiusTransform.identity(), h).distance(h) < 1e-15
        assert compose(compose(g, h), k).distance(compose(g, compose(h, k))) < 1e-12
        assert (g @ h)(z) == pytest.approx(apply(g, apply(h, z)), abs=1e-12)
        chain = derivative(g, apply(h, z)) * derivative(h, z)
        assert derivative(compose(g, h), z) == pytest.approx(chain, abs=1e-12)


def test_constructors():
    a = 0.3 - 0.4j
    assert MobiusTransform.from_point(a)(0.0) == pytest.approx(a, abs=1e-15)
    rot = MobiusTransform.rotation(0.7)
    assert rot(0.5) == pytest.approx(0.5 * cmath.exp(0.7j))
    assert not rot.is_hyperbolic()
    assert MobiusTransform.from_point(0.5).is_hyperbolic()
    assert MobiusTransform.from_point(0.5).trace == pytest.approx(2 / math.sqrt(0.75))


def test_t_coord_and_delta(rng):
    w = 0.3 + 0.2j
    assert t_coord(PointPair(0.0, w)) == pytest.approx(w)
    assert t_coord(PointPair(w, w)) == 0
    assert delta(PointPair(w, w)) == pytest.approx(1.0)
    assert delta(PointPair(0.0, w)) == pytest.approx(1 - abs(w) ** 2)
    for _ in range(20):
        p = PointPair(random_disk_point(rng), random_disk_point(rng))
        assert w_from_t(p.z, t_coord(p)) == pytest.approx(p.w, abs=1e-13)
        g = random_mobius(rng)
        assert delta(p.moved(g)) == pytest.approx(delta(p), abs=1e-12)
    with pytest.raises(DomainError):
        w_from_t(0.1, 1.0)


def test_bracket(rng):
    assert bracket(0.5, 0.0, -0.5) == pytest.approx(4.0)
    for _ in range(20):
        z, w, tau = random_disk_point(rng), random_disk_point(rng), random_disk_point(rng)
        assert bracket(w, tau, z) == pytest.approx(1 / (w - tau) + 1 / (tau - z), rel=1e-10)
        g = random_mobius(rng)
        moved = bracket(apply(g, w), apply(g, tau), apply(g, z)) * derivative(g, tau)
        assert moved == pytest.approx(bracket(w, tau, z), rel=1e-10)


def test_bracket_errors():
    with pytest.raises(DegeneratePairError):
        bracket(0.3, 0.1, 0.3)
    with pytest.raises(PoleError):
        bracket(0.5, 0.5, -0.5)
    with pytest.raises(PoleError):
        bracket(0.5, np.array([0.0, -0.5]), -0.5)


def test_metric():
    z = np.array([0.0, 0.5, 0.3 + 0.6j])
    np.testing.assert_allclose(metric_coefficient(z), 2 / (1 - np.abs(z) ** 2) ** 2)
    np.testing.assert_allclose(omega_norm(z), 1.0)


def test_long_composition_chain(rng):
    start = MobiusTransform.from_point(0.3 + 0.2j)
    h = start
    for _ in range(500):
        g = random_mobius(rng, 0.8)
        h = compose(h, g)
        assert h.determinant_residual <= 1e-12
        h = compose(h, inverse(g))
        assert h.determinant_residual <= 1e-12
    assert h.distance(start) < 1e-10
