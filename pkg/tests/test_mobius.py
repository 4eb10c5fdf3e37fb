import numpy as np
import pytest

from sliceregular.quaternion import I, J, Quaternion, as_rng, random_quaternion
from sliceregular.mobius import MobiusMap, cayley_map, dieudonne_det, disk_map


def test_dieudonne_det_examples():
    assert dieudonne_det(1, 0, 0, 1) == 1.0
    assert dieudonne_det(1, 1, 1, 1) == 0.0  # 1 + 1 - 2
    assert dieudonne_det(I, 0, 0, J) == 1.0  # |i|^2 |j|^2 = 1, cross terms vanish


def test_constructor_rejects_degenerate():
    with pytest.raises(ValueError, match="determinant"):
        MobiusMap(1, 1, 1, 1)
    assert MobiusMap(1, 0, 0, 1).det == 1.0


def test_apply_identity_forms():
    rng = as_rng(60)
    ident = MobiusMap(0, 1, 1, 0)  # (0 + 1)^(-1) (q + 0) = q
    for _ in range(20):
        q = random_quaternion(rng)
        assert ident.apply(q) == q


def test_apply_pole():
    m = MobiusMap(1, -1, 1, 1)  # qa + b = q - 1 vanishes at q = 1
    with pytest.raises(ValueError, match="pole"):
        m.apply(Quaternion(1.0))


def test_cayley_map_center_and_unit_sphere():
    rng = as_rng(61)
    for _ in range(20):
        w0 = random_quaternion(rng)
        if w0.real == 0.0:
            continue
        g = cayley_map(w0)
        assert g.apply(w0).modulus() <= 1e-14 * (1 + w0.modulus())
        for _ in range(50):
            v = rng.standard_normal(3)
            q = Quaternion(0.0, *v)
            assert abs(g.apply(q).modulus() - 1.0) <= 1e-10


def test_cayley_half_space_to_ball():
    rng = as_rng(62)
    w0 = Quaternion(-0.8, 0.3, -0.2, 0.5)  # Re(w0) < 0
    g = cayley_map(w0)
    for _ in range(500):
        q = random_quaternion(rng, 1.5)
        q = Quaternion(-abs(q.real), q.x, q.y, q.z)  # force Re q <= 0
        assert g.apply(q).modulus() <= 1.0 + 1e-10


def test_cayley_degenerate_center():
    with pytest.raises(ValueError, match="degenerate"):
        cayley_map(Quaternion(0, 1, 0, 0))


def test_disk_map_examples():
    rng = as_rng(63)
    ident = disk_map(0.0)
    for _ in range(10):
        q = random_quaternion(rng)
        assert ident.apply(q).isclose(q, 1e-15)

    m = disk_map(0.6)
    assert m.apply(Quaternion(0.6)).modulus() <= 1e-15


def test_disk_map_preserves_unit_ball():
    rng = as_rng(64)
    m = disk_map(0.6)
    dirs = rng.standard_normal((10_000, 4))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    radii = rng.uniform(0, 1, 10_000) ** 0.25
    worst = 0.0
    for p, r in zip(dirs, radii):
        q = Quaternion.from_array(p * r)
        worst = max(worst, m.apply(q).modulus())
    assert worst < 1.0 + 1e-12


def test_disk_map_real_axis_is_classical():
    m = disk_map(0.35)
    for x in np.linspace(-0.99, 0.99, 41):
        expected = (x - 0.35) / (1 - x * 0.35)
        got = m.apply(Quaternion(x))
        assert abs(got.real - expected) <= 1e-14
        assert got.is_real(1e-15)


def test_disk_map_domain():
    with pytest.raises(ValueError):
        disk_map(1.0)
    with pytest.raises(ValueError):
        disk_map(-0.1)
