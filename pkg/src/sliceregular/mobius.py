"""Quaternionic fractional linear transformations L(q) = (qa+b)^{-1}(qc+d)."""

from __future__ import annotations

import math

import numpy as np

from .quaternion import Quaternion

_REAL = (int, float, np.integer, np.floating)


def _as_quaternion(v) -> Quaternion:
    if isinstance(v, Quaternion):
        return v
    if isinstance(v, _REAL):
        return Quaternion(float(v))
    raise TypeError("expected a Quaternion or a real number")


def dieudonne_det(a, b, c, d) -> float:
    """sqrt(|a|^2|d|^2 + |c|^2|b|^2 - 2 Re(c conj(a) b conj(d))), the
    nonnegative scalar whose vanishing marks a degenerate coefficient matrix.

    Tiny negative radicands from rounding are clamped to zero.
    """
    a, b, c, d = map(_as_quaternion, (a, b, c, d))
    cross = (c * a.conjugate() * b * d.conjugate()).real
    rad = a.modulus_sq() * d.modulus_sq() + c.modulus_sq() * b.modulus_sq() - 2.0 * cross
    return math.sqrt(max(rad, 0.0))


class MobiusMap:
    """The left-quotient fractional linear transformation q -> (qa+b)^{-1}(qc+d)."""

    __slots__ = ("a", "b", "c", "d", "det")

    def __init__(self, a, b, c, d):
        self.a = _as_quaternion(a)
        self.b = _as_quaternion(b)
        self.c = _as_quaternion(c)
        self.d = _as_quaternion(d)
        self.det = dieudonne_det(self.a, self.b, self.c, self.d)
        if self.det == 0.0:
            raise ValueError("degenerate coefficients: Dieudonne determinant vanishes")

    def apply(self, q: Quaternion) -> Quaternion:
        u = q * self.a + self.b
        if u.modulus() <= 1e-14:
            raise ValueError("pole of the fractional linear transformation")
        return u.inverse() * (q * self.c + self.d)

    def __repr__(self):
        return f"MobiusMap(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})"


def cayley_map(w0: Quaternion) -> MobiusMap:
    """The map q -> (q + conj(w0))^{-1} (q - w0).

    For Re(w0) < 0 it sends the half-space Re q <= 0 into the closed unit
    ball, the 3-space Re q = 0 onto the unit 3-sphere, and w0 to 0.
    Requires Re(w0) != 0 (otherwise the coefficients are degenerate).
    """
    w0 = _as_quaternion(w0)
    if w0.real == 0.0:
        raise ValueError("degenerate center: Re(w0) must be nonzero")
    return MobiusMap(Quaternion(1.0), w0.conjugate(), Quaternion(1.0), -w0)


def disk_map(a0: float) -> MobiusMap:
    """The map q -> (1 - q a0)^{-1} (q - a0) for real a0 in [0, 1).

    Maps the closed unit ball into itself and restricts to the classical disk
    automorphism x -> (x - a0)/(1 - x a0) on the reals.
    """
    a0 = float(a0)
    if not (0.0 <= a0 < 1.0):
        raise ValueError("disk parameter must lie in [0, 1)")
    return MobiusMap(Quaternion(-a0), Quaternion(1.0), Quaternion(1.0), Quaternion(-a0))
