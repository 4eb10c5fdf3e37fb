"""Quaternion arithmetic, slice decomposition, and sampling utilities.

Convention: q = w + x*i + y*j + z*k with the Hamilton relations
i*i = j*j = k*k = -1, i*j = k = -j*i, j*k = i = -k*j, k*i = j = -i*k.
Components are 64-bit floats.  Values are treated as immutable after
construction; every function here is pure and thread-safe.
"""

from __future__ import annotations

import math

import numpy as np

_REAL = (int, float, np.integer, np.floating)


class Quaternion:
    """An element of the skew field of quaternions."""

    __slots__ = ("w", "x", "y", "z")

    def __init__(self, w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0):
        self.w = float(w)
        self.x = float(x)
        self.y = float(y)
        self.z = float(z)

    @classmethod
    def from_array(cls, arr) -> "Quaternion":
        w, x, y, z = arr
        return cls(w, x, y, z)

    def to_array(self) -> np.ndarray:
        return np.array([self.w, self.x, self.y, self.z])

    def to_list(self) -> list[float]:
        return [self.w, self.x, self.y, self.z]

    @property
    def real(self) -> float:
        return self.w

    @property
    def imag(self) -> np.ndarray:
        """Imaginary part as a 3-vector (components along i, j, k)."""
        return np.array([self.x, self.y, self.z])

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def modulus_sq(self) -> float:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def modulus(self) -> float:
        return math.sqrt(self.modulus_sq())

    __abs__ = modulus

    def inverse(self) -> "Quaternion":
        n2 = self.modulus_sq()
        if n2 == 0.0:
            raise ValueError("zero has no inverse")
        return Quaternion(self.w / n2, -self.x / n2, -self.y / n2, -self.z / n2)

    def is_real(self, tol: float = 0.0) -> bool:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z) <= tol

    def __add__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w + other.w, self.x + other.x, self.y + other.y, self.z + other.z)
        if isinstance(other, _REAL):
            return Quaternion(self.w + other, self.x, self.y, self.z)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Quaternion):
            return Quaternion(self.w - other.w, self.x - other.x, self.y - other.y, self.z - other.z)
        if isinstance(other, _REAL):
            return Quaternion(self.w - other, self.x, self.y, self.z)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _REAL):
            return Quaternion(other - self.w, -self.x, -self.y, -self.z)
        return NotImplemented

    def __neg__(self):
        return Quaternion(-self.w, -self.x, -self.y, -self.z)

    def __mul__(self, other):
        if isinstance(other, Quaternion):
            pw, px, py, pz = self.w, self.x, self.y, self.z
            qw, qx, qy, qz = other.w, other.x, other.y, other.z
            return Quaternion(
                pw * qw - px * qx - py * qy - pz * qz,
                pw * qx + px * qw + py * qz - pz * qy,
                pw * qy - px * qz + py * qw + pz * qx,
                pw * qz + px * qy - py * qx + pz * qw,
            )
        if isinstance(other, _REAL):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __rmul__(self, other):
        # Only reals reach here; they commute with everything.
        if isinstance(other, _REAL):
            return Quaternion(self.w * other, self.x * other, self.y * other, self.z * other)
        return NotImplemented

    def __truediv__(self, other):
        # Quaternion/quaternion division is ambiguous (left vs right); only
        # division by reals is provided.
        if isinstance(other, _REAL):
            return Quaternion(self.w / other, self.x / other, self.y / other, self.z / other)
        return NotImplemented

    def __pow__(self, n: int) -> "Quaternion":
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = Quaternion(1.0)
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, Quaternion):
            return NotImplemented
        return self.w == other.w and self.x == other.x and self.y == other.y and self.z == other.z

    def isclose(self, other: "Quaternion", tol: float = 1e-12) -> bool:
        return (self - other).modulus() <= tol

    def __repr__(self):
        return f"Quaternion({self.w!r}, {self.x!r}, {self.y!r}, {self.z!r})"


class UnitImaginary(Quaternion):
    """A purely imaginary unit quaternion (a point of the 2-sphere S).

    The input 3-vector is normalized on construction, so I*I == -1 up to
    rounding and abs(I) == 1.
    """

    __slots__ = ()

    def __init__(self, x: float, y: float, z: float):
        n = math.sqrt(float(x) * float(x) + float(y) * float(y) + float(z) * float(z))
        if n == 0.0:
            raise ValueError("cannot normalize the zero vector to an imaginary unit")
        super().__init__(0.0, x / n, y / n, z / n)

    @classmethod
    def from_quaternion(cls, q: Quaternion, tol: float = 1e-9) -> "UnitImaginary":
        if abs(q.w) > tol:
            raise ValueError("quaternion has a nonzero real part")
        if abs(q.modulus() - 1.0) > tol:
            raise ValueError("quaternion is not of unit modulus")
        return cls(q.x, q.y, q.z)

    def __repr__(self):
        return f"UnitImaginary({self.x!r}, {self.y!r}, {self.z!r})"


ZERO = Quaternion()
ONE = Quaternion(1.0)
I = UnitImaginary(1.0, 0.0, 0.0)
J = UnitImaginary(0.0, 1.0, 0.0)
K = UnitImaginary(0.0, 0.0, 1.0)

#: Imaginary unit assigned to real quaternions by slice_decompose.
DEFAULT_SLICE = I


# ---------------------------------------------------------------------------
# Vectorized helpers on (..., 4) component arrays.  These back the batched
# evaluation paths; scalar code uses Quaternion directly.

def array_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Hamilton product of component arrays of shape (..., 4), broadcasting."""
    pw, px, py, pz = p[..., 0], p[..., 1], p[..., 2], p[..., 3]
    qw, qx, qy, qz = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    return np.stack(
        [
            pw * qw - px * qx - py * qy - pz * qz,
            pw * qx + px * qw + py * qz - pz * qy,
            pw * qy - px * qz + py * qw + pz * qx,
            pw * qz + px * qy - py * qx + pz * qw,
        ],
        axis=-1,
    )


def array_conjugate(q: np.ndarray) -> np.ndarray:
    out = np.array(q, dtype=float, copy=True)
    out[..., 1:] = -out[..., 1:]
    return out


def array_modulus(q: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.asarray(q, dtype=float) ** 2, axis=-1))


# ---------------------------------------------------------------------------
# Slice decomposition and imaginary-unit constructions.

def slice_decompose(q: Quaternion) -> tuple[float, float, UnitImaginary]:
    """Write q = x + y*I with y = abs(Im q) >= 0 and I an imaginary unit.

    Real q returns (q, 0, DEFAULT_SLICE); consumers must not depend on that
    choice of slice.
    """
    y = math.sqrt(q.x * q.x + q.y * q.y + q.z * q.z)
    if y == 0.0:
        return q.w, 0.0, DEFAULT_SLICE
    return q.w, y, UnitImaginary(q.x, q.y, q.z)


def orthogonal_unit(unit: UnitImaginary, seed=None) -> UnitImaginary:
    """An imaginary unit orthogonal to `unit` (Euclidean sense on 3-vectors).

    With seed=None the choice is canonical: Gram-Schmidt of the first frame
    vector i, j, k that is not parallel to `unit`.  With a seed, Gram-Schmidt
    of a seeded random 3-vector; deterministic for a fixed seed, falling back
    to the canonical frame when the draw is (nearly) parallel.
    """
    u = unit.imag
    candidates = []
    if seed is not None:
        rng = as_rng(seed)
        candidates.append(rng.standard_normal(3))
    candidates.extend([np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0]), np.array([0.0, 0.0, 1.0])])
    for v in candidates:
        res = v - np.dot(v, u) * u
        n = float(np.linalg.norm(res))
        if n > 1e-6 * max(1.0, float(np.linalg.norm(v))):
            res = res / n
            return UnitImaginary(res[0], res[1], res[2])
    raise AssertionError("frame fallback cannot be degenerate for a unit vector")


def root_of_unity(n: int, unit: UnitImaginary) -> Quaternion:
    """Primitive n-th root of unity cos(2*pi/n) + I*sin(2*pi/n) in the slice of I."""
    if n < 1:
        raise ValueError("order of a root of unity must be a positive integer")
    if n == 1:
        return Quaternion(1.0)
    if n == 2:
        return Quaternion(-1.0)
    ang = 2.0 * math.pi / n
    c, s = math.cos(ang), math.sin(ang)
    return Quaternion(c, s * unit.x, s * unit.y, s * unit.z)


# ---------------------------------------------------------------------------
# Seeded sampling.

def as_rng(seed) -> np.random.Generator:
    """Coerce an int, seed sequence, or Generator into a numpy Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_unit_imaginary(seed) -> UnitImaginary:
    """Uniform sample of the imaginary-unit sphere (normalized isotropic 3-vector)."""
    rng = as_rng(seed)
    v = rng.standard_normal(3)
    while float(np.linalg.norm(v)) < 1e-12:
        v = rng.standard_normal(3)
    return UnitImaginary(v[0], v[1], v[2])


def random_quaternion(rng: np.random.Generator, scale: float = 1.0) -> Quaternion:
    return Quaternion.from_array(rng.standard_normal(4) * scale)


def random_unit_quaternions(rng: np.random.Generator, n: int) -> np.ndarray:
    """(n, 4) array of uniform points on the unit 3-sphere."""
    v = rng.standard_normal((n, 4))
    norms = np.linalg.norm(v, axis=1)
    bad = norms < 1e-12
    while np.any(bad):
        v[bad] = rng.standard_normal((int(np.sum(bad)), 4))
        norms = np.linalg.norm(v, axis=1)
        bad = norms < 1e-12
    return v / norms[:, None]
