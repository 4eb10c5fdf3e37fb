import math

import numpy as np
import pytest

from sliceregular.quaternion import (
    I,
    J,
    K,
    ONE,
    Quaternion,
    UnitImaginary,
    array_modulus,
    as_rng,
    orthogonal_unit,
    random_quaternion,
    random_unit_imaginary,
    root_of_unity,
    slice_decompose,
)

# Full basis multiplication table, products of 1, i, j, k written as
# (w, x, y, z) rows: entry [p][q] is the product basis[p] * basis[q].
BASIS = [ONE, I, J, K]
TABLE = {
    (0, 0): ONE, (0, 1): I, (0, 2): J, (0, 3): K,
    (1, 0): I, (1, 1): -ONE, (1, 2): K, (1, 3): -J,
    (2, 0): J, (2, 1): -K, (2, 2): -ONE, (2, 3): I,
    (3, 0): K, (3, 1): J, (3, 2): -I, (3, 3): -ONE,
}


def test_multiplication_table_exact():
    for (p, q), expected in TABLE.items():
        assert BASIS[p] * BASIS[q] == expected
    # and the signed units: products of +-basis elements stay exact
    for sp in (1.0, -1.0):
        for sq in (1.0, -1.0):
            for (p, q), expected in TABLE.items():
                assert (BASIS[p] * sp) * (BASIS[q] * sq) == expected * (sp * sq)


def test_mul_examples():
    assert I * J == K
    q = Quaternion(0.3, -1.2, 0.5, 2.0)
    assert q * ONE == q
    # (1+i)(1+j) = 1 + j + i + ij = 1 + i + j + k, expanded by the table
    assert Quaternion(1, 1, 0, 0) * Quaternion(1, 0, 1, 0) == Quaternion(1, 1, 1, 1)


def test_conj_modulus_inverse():
    assert I.conjugate() == -I
    assert Quaternion(1, 1, 1, 1).modulus() == 2.0  # sqrt(1+1+1+1)
    inv = (I * 2).inverse()
    assert inv.isclose(-I * 0.5, 0.0)
    with pytest.raises(ValueError, match="zero has no inverse"):
        Quaternion().inverse()


def test_modulus_squared_is_q_times_conjugate():
    rng = as_rng(10)
    for _ in range(200):
        q = random_quaternion(rng)
        prod = q * q.conjugate()
        assert abs(prod.real - q.modulus_sq()) <= 1e-12 * (1 + q.modulus_sq())
        assert prod.is_real(1e-12)


def test_inverse_identity_and_modulus_multiplicativity():
    rng = as_rng(11)
    for _ in range(300):
        p, q = random_quaternion(rng), random_quaternion(rng)
        assert (q * q.inverse()).isclose(ONE, 1e-12)
        assert (q.inverse() * q).isclose(ONE, 1e-12)
        assert abs((p * q).modulus() - p.modulus() * q.modulus()) <= 1e-12 * (
            1 + p.modulus() * q.modulus()
        )
        assert (p * q).conjugate().isclose(q.conjugate() * p.conjugate(), 1e-12)


def test_right_unit_factor_preserves_modulus():
    rng = as_rng(12)
    for _ in range(100):
        a = random_quaternion(rng)
        u = random_unit_imaginary(rng)
        assert abs((a * u).modulus() - a.modulus()) <= 1e-12 * (1 + a.modulus())


def test_unit_imaginary_invariants():
    u = UnitImaginary(2.0, -1.0, 0.5)
    assert abs(u.modulus() - 1.0) <= 1e-15
    assert (u * u).isclose(-ONE, 1e-12)
    with pytest.raises(ValueError):
        UnitImaginary(0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        UnitImaginary.from_quaternion(Quaternion(0.5, 1, 0, 0))


def test_slice_decompose_examples():
    x, y, u = slice_decompose(Quaternion(3, 0, 4, 0))
    assert (x, y) == (3.0, 4.0)
    assert u == J

    x, y, u = slice_decompose(Quaternion(5))
    assert (x, y) == (5.0, 0.0)
    assert u == I  # documented convention for real inputs

    x, y, u = slice_decompose(Quaternion(1, 1, 1, 1))
    assert x == 1.0
    assert abs(y - math.sqrt(3)) <= 1e-15
    s = 1 / math.sqrt(3)
    assert u.isclose(Quaternion(0, s, s, s), 1e-15)


def test_slice_decompose_recompose():
    rng = as_rng(13)
    for _ in range(300):
        q = random_quaternion(rng, scale=2.0)
        x, y, u = slice_decompose(q)
        assert y >= 0.0
        assert (Quaternion(x) + u * y).isclose(q, 1e-14)


def test_orthogonal_unit():
    assert orthogonal_unit(I) == J  # canonical frame choice
    s = 1 / math.sqrt(2)
    u = orthogonal_unit(UnitImaginary(1, 1, 0))
    assert u.isclose(Quaternion(0, s, -s, 0), 1e-12)  # Gram-Schmidt of i against (i+j)/sqrt 2

    rng = as_rng(14)
    for seed in range(50):
        base = random_unit_imaginary(rng)
        u = orthogonal_unit(base, seed=seed)
        assert abs(float(np.dot(base.imag, u.imag))) <= 1e-12
        assert (u * u + ONE).modulus() <= 1e-12
        assert u == orthogonal_unit(base, seed=seed)  # deterministic


def test_root_of_unity():
    assert root_of_unity(1, J) == ONE
    assert root_of_unity(2, J) == -ONE
    assert root_of_unity(4, I).isclose(I, 1e-15)
    with pytest.raises(ValueError):
        root_of_unity(0, I)
    for n in (3, 5, 7):
        w = root_of_unity(n, K)
        assert (w**n).isclose(ONE, 1e-12)
        for k in range(1, n):
            assert not (w**k).isclose(ONE, 1e-6)


def test_random_unit_imaginary():
    u = random_unit_imaginary(123)
    assert abs(u.real) <= 1e-15
    assert abs(u.modulus() - 1.0) <= 1e-12
    assert u == random_unit_imaginary(123)  # determinism

    rng = as_rng(15)
    vecs = np.stack([random_unit_imaginary(rng).imag for _ in range(10_000)])
    assert float(np.linalg.norm(vecs.mean(axis=0))) < 0.05  # law of large numbers


def test_array_helpers_match_scalar_ops():
    rng = as_rng(16)
    ps = rng.standard_normal((50, 4))
    qs = rng.standard_normal((50, 4))
    from sliceregular.quaternion import array_mul

    prods = array_mul(ps, qs)
    for n in range(50):
        expected = Quaternion.from_array(ps[n]) * Quaternion.from_array(qs[n])
        assert Quaternion.from_array(prods[n]) == expected
    assert np.allclose(array_modulus(ps), [Quaternion.from_array(p).modulus() for p in ps])
