"""Per-slice holomorphic data: splitting into two complex-coefficient series,
the split form of the *-product, and regular extension from one slice.

Complex series on a slice L_I are stored as (N+1, 2) real arrays holding the
components along 1 and I; no ambient complex type is committed to.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quaternion import Quaternion, UnitImaginary, slice_decompose
from .power_series import QSeries

_ORTHO_TOL = 1e-10


def _check_orthogonal(unit_i: UnitImaginary, unit_j: UnitImaginary) -> None:
    if abs(float(np.dot(unit_i.imag, unit_j.imag))) > _ORTHO_TOL:
        raise ValueError("slice units must be orthogonal")


def _cplx(arr: np.ndarray) -> np.ndarray:
    return arr[:, 0] + 1j * arr[:, 1]


def _pairs(c: np.ndarray) -> np.ndarray:
    return np.stack([c.real, c.imag], axis=1)


@dataclass(frozen=True)
class SplitPair:
    """Decomposition f_I = F + G*J of a series restricted to the slice of I,
    with J an imaginary unit orthogonal to I.

    F and G are (N+1, 2) arrays: row n holds the components of the n-th
    coefficient along 1 and I.
    """

    F: np.ndarray
    G: np.ndarray
    I: UnitImaginary
    J: UnitImaginary

    def __post_init__(self):
        _check_orthogonal(self.I, self.J)
        if self.F.shape != self.G.shape or self.F.ndim != 2 or self.F.shape[1] != 2:
            raise ValueError("F and G must be (N+1, 2) arrays of equal shape")
        self.F.setflags(write=False)
        self.G.setflags(write=False)

    @property
    def degree(self) -> int:
        return self.F.shape[0] - 1

    def evaluate_restriction(self, x: float, y: float) -> Quaternion:
        """Value F(z) + G(z)J at the slice point z = x + y*I."""
        z = complex(x, y)
        fv = _cplx(self.F)[::-1]
        gv = _cplx(self.G)[::-1]
        fz = np.polyval(fv, z)
        gz = np.polyval(gv, z)
        fq = Quaternion(fz.real) + self.I * fz.imag
        gq = Quaternion(gz.real) + self.I * gz.imag
        return fq + gq * self.J

    def to_series(self) -> QSeries:
        """Recombine coefficientwise: a_n = alpha_n + beta_n * J."""
        ij = (self.I * self.J).to_array()
        iv = self.I.to_array()
        jv = self.J.to_array()
        e0 = np.array([1.0, 0.0, 0.0, 0.0])
        arr = (
            np.outer(self.F[:, 0], e0)
            + np.outer(self.F[:, 1], iv)
            + np.outer(self.G[:, 0], jv)
            + np.outer(self.G[:, 1], ij)
        )
        return QSeries(arr)


def split(f: QSeries, unit_i: UnitImaginary, unit_j: UnitImaginary) -> SplitPair:
    """Split each coefficient a_n = alpha_n + beta_n*J with alpha, beta in L_I.

    The basis 1, I, J, IJ is orthonormal for the Euclidean inner product, so
    the decomposition is an exact projection.
    """
    _check_orthogonal(unit_i, unit_j)
    basis = np.stack(
        [
            np.array([1.0, 0.0, 0.0, 0.0]),
            unit_i.to_array(),
            unit_j.to_array(),
            (unit_i * unit_j).to_array(),
        ]
    )
    comps = f.array @ basis.T  # (N+1, 4): components along 1, I, J, IJ
    return SplitPair(F=comps[:, :2].copy(), G=comps[:, 2:].copy(), I=unit_i, J=unit_j)


def split_star(p: SplitPair, q: SplitPair) -> SplitPair:
    """*-product in split form:
    (F + GJ) * (H + KJ) = [FH - G conj(K o conj)] + [FK + G conj(H o conj)] J,
    where conj(K o conj) conjugates the coefficients of K.

    Both operands must share the same (I, J) frame.
    """
    if not (
        np.allclose(p.I.to_array(), q.I.to_array(), atol=1e-12)
        and np.allclose(p.J.to_array(), q.J.to_array(), atol=1e-12)
    ):
        raise ValueError("mismatched slices")
    F, G = _cplx(p.F), _cplx(p.G)
    H, K = _cplx(q.F), _cplx(q.G)
    out_f = np.convolve(F, H) - np.convolve(G, np.conj(K))
    out_g = np.convolve(F, K) + np.convolve(G, np.conj(H))
    return SplitPair(F=_pairs(out_f), G=_pairs(out_g), I=p.I, J=p.J)


def extend(
    f_slice: Callable[[Quaternion], Quaternion],
    unit_i: UnitImaginary,
    q: Quaternion,
) -> Quaternion:
    """Regular extension of a holomorphic slice function to a point q = x + yJ:

        (1/2) [f(x+yI) + f(x-yI)] + J (I/2) [f(x-yI) - f(x+yI)]

    For y = 0 this collapses to f(x); for J = I it returns f(x+yI).
    """
    x, y, unit_j = slice_decompose(q)
    z_plus = Quaternion(x) + unit_i * y
    z_minus = Quaternion(x) - unit_i * y
    f_plus = f_slice(z_plus)
    f_minus = f_slice(z_minus)
    return (f_plus + f_minus) * 0.5 + unit_j * (unit_i * (f_minus - f_plus)) * 0.5
