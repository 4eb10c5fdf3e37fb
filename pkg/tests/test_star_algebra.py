import numpy as np
import pytest

from sliceregular.quaternion import I, J, K, ONE, Quaternion, as_rng, random_quaternion
from sliceregular.power_series import QSeries
from sliceregular.star_algebra import (
    pointwise_star,
    quotient_eval,
    regular_conjugate,
    regular_reciprocal,
    star_product,
    symmetrization,
    twist_map,
)


def random_series(rng, degree, scale=1.0):
    return QSeries(rng.standard_normal((degree + 1, 4)) * scale)


def tame_series(rng, degree):
    """Series 1 + sum q^n a_n with |a_n| <= 0.35^n: symmetrization stays away
    from zero on |q| <= 0.5 and the regular reciprocal converges there."""
    arr = rng.standard_normal((degree + 1, 4))
    arr /= np.linalg.norm(arr, axis=1)[:, None]
    arr *= (0.35 ** np.arange(degree + 1))[:, None]
    arr[0] = [1.0, 0.0, 0.0, 0.0]
    return QSeries(arr)


# -- star product -------------------------------------------------------------

def test_star_identity_and_single_terms():
    rng = as_rng(30)
    g = random_series(rng, 6)
    assert star_product(QSeries.one(), g) == g
    assert star_product(g, QSeries.one()) == g

    qi = QSeries([Quaternion(), I])
    qj = QSeries([Quaternion(), J])
    assert star_product(qi, qj) == QSeries([Quaternion(), Quaternion(), K])


def test_star_degree_and_cap():
    rng = as_rng(31)
    f, g = random_series(rng, 4), random_series(rng, 7)
    assert star_product(f, g).degree == 11
    assert star_product(f, g, max_degree=5).degree == 5
    assert star_product(f, g, max_degree=5) == star_product(f, g).truncated(5)


def test_star_associative_and_noncommutative():
    rng = as_rng(32)
    for _ in range(20):
        f, g, h = (random_series(rng, 5) for _ in range(3))
        left = star_product(star_product(f, g), h)
        right = star_product(f, star_product(g, h))
        assert np.max(np.abs(left.array - right.array)) <= 1e-12 * (
            1 + np.max(np.abs(left.array))
        )
    assert star_product(QSeries([I]), QSeries([J])) != star_product(QSeries([J]), QSeries([I]))


def test_product_conjugate_reverses():
    rng = as_rng(33)
    for _ in range(10):
        f, g = random_series(rng, 5), random_series(rng, 4)
        lhs = regular_conjugate(star_product(f, g))
        rhs = star_product(regular_conjugate(g), regular_conjugate(f))
        assert np.max(np.abs(lhs.array - rhs.array)) <= 1e-12 * (1 + np.max(np.abs(lhs.array)))


# -- pointwise form -----------------------------------------------------------

def test_pointwise_star_zero_case():
    f = QSeries([-0.5, 1.0])  # f(q) = q - 1/2 vanishes exactly at q = 1/2
    g = QSeries([Quaternion(1, 2, 3, 4)])
    assert pointwise_star(f, g, Quaternion(0.5)) == Quaternion()


def test_pointwise_star_real_constant():
    rng = as_rng(34)
    g = random_series(rng, 5)
    q = random_quaternion(rng, 0.5)
    assert pointwise_star(QSeries([2.5]), g, q).isclose(g.evaluate(q) * 2.5, 1e-12)


def test_pointwise_star_matches_convolution():
    rng = as_rng(35)
    checked = 0
    while checked < 50:
        f, g = random_series(rng, 6), random_series(rng, 6)
        q = random_quaternion(rng, 0.4)
        if f.evaluate(q).modulus() <= 1e-6:
            continue
        lhs = pointwise_star(f, g, q)
        rhs = star_product(f, g).evaluate(q)
        assert lhs.isclose(rhs, 1e-9 * (1 + rhs.modulus()))
        checked += 1


def test_pointwise_star_argument_stays_on_sphere():
    rng = as_rng(36)
    for _ in range(50):
        f = random_series(rng, 6)
        q = random_quaternion(rng, 0.7)
        fq = f.evaluate(q)
        if fq.modulus() <= 1e-9:
            continue
        t = fq.inverse() * q * fq
        assert abs(t.modulus() - q.modulus()) <= 1e-12 * (1 + q.modulus())
        assert abs(t.real - q.real) <= 1e-12 * (1 + abs(q.real))


# -- conjugate and symmetrization ----------------------------------------------

def test_regular_conjugate_examples():
    f = QSeries.from_real([1.0, -2.0, 0.25])
    assert regular_conjugate(f) == f
    assert regular_conjugate(QSeries([J])) == QSeries([-J])


def test_symmetrization_examples():
    # (q - p0) * (q - conj p0) with p0 = 1+i: coefficients [|p0|^2, -2 Re p0, 1]
    f = QSeries([Quaternion(-1, -1, 0, 0), ONE])
    assert symmetrization(f) == QSeries.from_real([2.0, -2.0, 1.0])

    g = QSeries.from_real([0.5, 1.5, -2.0])
    assert symmetrization(g) == star_product(g, g)

    assert symmetrization(QSeries([I])) == QSeries.one()


def test_symmetrization_real_and_slice_preserving():
    rng = as_rng(37)
    for _ in range(20):
        f = random_series(rng, 6)
        s = symmetrization(f)
        assert np.max(np.abs(s.array[:, 1:])) <= 1e-12 * (1 + np.max(np.abs(s.array)))
        # f * f^c = f^c * f as series
        other = star_product(regular_conjugate(f), f)
        assert np.max(np.abs(s.array - other.array)) <= 1e-12 * (1 + np.max(np.abs(s.array)))


def test_symmetrization_slice_preserving_pointwise():
    rng = as_rng(38)
    from sliceregular.quaternion import orthogonal_unit, random_unit_imaginary

    for _ in range(100):
        f = random_series(rng, 5, scale=0.5)
        s = symmetrization(f)
        unit = random_unit_imaginary(rng)
        x, y = rng.uniform(-0.7, 0.7), rng.uniform(0, 0.7)
        val = s.evaluate(Quaternion(x) + unit * y)
        ortho = orthogonal_unit(unit)
        third = unit * ortho
        off = abs(float(np.dot(val.imag, ortho.imag))) + abs(float(np.dot(val.imag, third.imag)))
        assert off <= 1e-10 * (1 + val.modulus())


# -- reciprocal -----------------------------------------------------------------

def test_reciprocal_examples():
    assert regular_reciprocal(QSeries.one(), 5) == QSeries.from_real([1, 0, 0, 0, 0, 0])

    f = QSeries.from_real([1.0, -0.5])  # 1 - q/2
    rec = regular_reciprocal(f, 12)
    assert np.allclose(rec.array[:, 0], [0.5**n for n in range(13)], atol=1e-12)
    assert np.max(np.abs(rec.array[:, 1:])) <= 1e-12

    with pytest.raises(ValueError, match="undefined at center"):
        regular_reciprocal(QSeries([0.0, 1.0]), 4)


def test_reciprocal_defining_identity():
    from sliceregular.quaternion import array_modulus

    rng = as_rng(39)
    for _ in range(10):
        # |a_0| = 1 with geometrically damped higher coefficients, so the
        # reciprocal's coefficients stay O(1) and an absolute tolerance is fair
        arr = rng.standard_normal((6, 4))
        arr /= np.linalg.norm(arr, axis=1)[:, None]
        arr *= (0.5 ** np.arange(6))[:, None]
        f = QSeries(arr)
        rec = regular_reciprocal(f, 16)
        prod = star_product(f, rec).truncated(16)
        assert (prod.coeff(0) - ONE).modulus() <= 1e-9
        assert np.max(array_modulus(prod.array[1:])) <= 1e-9

    for _ in range(10):
        # wild coefficients: the reciprocal grows geometrically, so the honest
        # statement of the identity is relative to its coefficient scale
        arr = rng.standard_normal((6, 4))
        arr[0] /= np.linalg.norm(arr[0])
        f = QSeries(arr)
        rec = regular_reciprocal(f, 16)
        prod = star_product(f, rec).truncated(16)
        scale = float(np.max(array_modulus(rec.array)))
        assert (prod.coeff(0) - ONE).modulus() <= 1e-12 * (1 + scale)
        assert np.max(array_modulus(prod.array[1:])) <= 1e-12 * (1 + scale)


# -- twist map -------------------------------------------------------------------

def test_twist_fixes_reals_and_preserves_sphere():
    rng = as_rng(40)
    f = tame_series(rng, 5)
    q_real = Quaternion(0.3)
    assert twist_map(f, q_real).isclose(q_real, 1e-14)
    for _ in range(50):
        q = random_quaternion(rng, 0.5)
        t = twist_map(f, q)
        assert abs(t.modulus() - q.modulus()) <= 1e-12 * (1 + q.modulus())
        assert abs(t.real - q.real) <= 1e-12 * (1 + abs(q.real))


def test_twist_mutual_inverse():
    rng = as_rng(41)
    for _ in range(30):
        f = tame_series(rng, 6)
        q = random_quaternion(rng, 0.5)
        back = twist_map(regular_conjugate(f), twist_map(f, q))
        assert back.isclose(q, 1e-9)


def test_twist_zero_of_conjugate_raises():
    f = QSeries([0.0, 1.0])  # f^c(q) = q vanishes at 0
    with pytest.raises(ValueError, match="twist undefined"):
        twist_map(f, Quaternion())


# -- quotient ---------------------------------------------------------------------

def test_quotient_examples():
    rng = as_rng(42)
    f = tame_series(rng, 5)
    q = random_quaternion(rng, 0.4)
    assert quotient_eval(f, f, q).isclose(ONE, 1e-10)

    g = random_series(rng, 5)
    assert quotient_eval(QSeries.one(), g, q).isclose(g.evaluate(q), 1e-12)


def test_quotient_matches_series_side():
    rng = as_rng(43)
    g = random_series(rng, 5)
    f = QSeries.from_real([1.0, -0.5])
    q = Quaternion(0.2, 0.0, 0.3, 0.0)
    series_side = star_product(regular_reciprocal(f, 60), g).evaluate(q)
    assert quotient_eval(f, g, q).isclose(series_side, 1e-8)

    for _ in range(20):
        f = tame_series(rng, 4)
        g = random_series(rng, 4)
        q = random_quaternion(rng, 0.45)
        series_side = star_product(regular_reciprocal(f, 60), g).evaluate(q)
        assert quotient_eval(f, g, q).isclose(series_side, 1e-8 * (1 + series_side.modulus()))


def test_quotient_near_zero_set_raises():
    f = QSeries([0.0, 1.0])  # symmetrization q^2 vanishes at 0
    with pytest.raises(ValueError, match="zero set"):
        quotient_eval(f, QSeries.one(), Quaternion())
