"""The regular *-algebra on truncated quaternionic power series.

On series the regular product is the right-coefficient convolution
c_n = sum_k a_k b_{n-k}; the pointwise form, the twist map, and the
quotient formula convert between *-algebra operations and ordinary
quaternion arithmetic at a point.
"""

from __future__ import annotations

import numpy as np

from .quaternion import Quaternion, array_conjugate, array_mul
from .power_series import QSeries


def star_product(f: QSeries, g: QSeries, max_degree: int | None = None) -> QSeries:
    """Convolution product c_n = sum_{k} a_k b_{n-k} (a-factors on the left).

    Exact degree deg f + deg g unless an explicit max_degree cap is given.
    """
    a, b = f.array, g.array
    out = np.zeros((f.degree + g.degree + 1, 4))
    for k in range(f.degree + 1):
        out[k : k + g.degree + 1] += array_mul(a[k][None, :], b)
    if max_degree is not None:
        out = out[: max_degree + 1]
    return QSeries(out)


def pointwise_star(f: QSeries, g: QSeries, q: Quaternion) -> Quaternion:
    """Value of f*g at q without forming the product series:
    f(q) g(f(q)^{-1} q f(q)) when f(q) != 0, and 0 when f(q) = 0.

    The conjugated argument keeps the modulus and real part of q, so it stays
    on the same 2-sphere x + y*S.
    """
    fq = f.evaluate(q)
    if fq.modulus() == 0.0:
        return Quaternion(0.0)
    t = fq.inverse() * q * fq
    return fq * g.evaluate(t)


def regular_conjugate(f: QSeries) -> QSeries:
    """Series with quaternion-conjugated coefficients a_n -> conj(a_n)."""
    return QSeries(array_conjugate(f.array))


def symmetrization(f: QSeries) -> QSeries:
    """f * f^c; its coefficients are real up to rounding and it is slice
    preserving."""
    return star_product(f, regular_conjugate(f))


def regular_reciprocal(f: QSeries, degree: int) -> QSeries:
    """Inverse of f in the *-algebra, truncated at the given degree.

    Computed as the formal power-series inverse of the symmetrization (real
    coefficients, standard recursive inversion) convolved with the conjugate
    series.  Requires a_0 != 0; then star_product(f, reciprocal) is
    1 + O(q^{degree+1}).
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if f.coeff(0).modulus() == 0.0:
        raise ValueError("reciprocal undefined at center")
    sym = symmetrization(f)
    # The symmetrization is real in exact arithmetic; invert its real parts.
    s = np.zeros(degree + 1)
    m = min(degree, sym.degree) + 1
    s[:m] = sym.array[:m, 0]
    t = np.zeros(degree + 1)
    t[0] = 1.0 / s[0]
    for n in range(1, degree + 1):
        t[n] = -np.dot(s[1 : n + 1], t[n - 1 :: -1]) / s[0]
    inv_sym = QSeries.from_real(t)
    return star_product(inv_sym, regular_conjugate(f), max_degree=degree).truncated(degree)


def twist_map(f: QSeries, q: Quaternion) -> Quaternion:
    """Conjugation of q by the value of the conjugate series:
    f^c(q)^{-1} q f^c(q).  Preserves |q| and Re q, and fixes real q."""
    fc = regular_conjugate(f)
    v = fc.evaluate(q)
    if v.modulus() <= 1e-14 * (1.0 + fc.majorant_sum(abs(q))):
        raise ValueError("twist undefined (zero of f^c)")
    return v.inverse() * q * v


def _near_zero_set(f_sym: QSeries, q: Quaternion) -> bool:
    # Threshold relative to the majorant; the harness only needs to stay away
    # from singular evaluation points, not to locate roots.
    tol = 1e-9 * (1.0 + f_sym.majorant_sum(abs(q)))
    return f_sym.evaluate(q).modulus() <= tol


def quotient_eval(f: QSeries, g: QSeries, q: Quaternion) -> Quaternion:
    """Value of the regular quotient f^{-*} * g at q via the twist map:
    f(T(q))^{-1} g(T(q)) with T(q) = f^c(q)^{-1} q f^c(q).

    Valid away from the zero set of the symmetrization of f.
    """
    if _near_zero_set(symmetrization(f), q):
        raise ValueError("near zero set of symmetrization")
    t = twist_map(f, q)
    fv = f.evaluate(t)
    if fv.modulus() == 0.0:
        raise ValueError("near zero set of symmetrization")
    return fv.inverse() * g.evaluate(t)
