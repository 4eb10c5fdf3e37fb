"""Truncated quaternionic power series sum q^n a_n with right coefficients.

The truncation degree N is explicit: a QSeries is exactly the polynomial
a_0 + q a_1 + ... + q^N a_N.  Arithmetic never extends the degree silently;
only the *-product (exact degree sum) and explicit truncation change it.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from .quaternion import (
    Quaternion,
    UnitImaginary,
    array_modulus,
    array_mul,
    as_rng,
    random_unit_quaternions,
)


def _coerce_coeff(c) -> np.ndarray:
    if isinstance(c, Quaternion):
        return c.to_array()
    if isinstance(c, (int, float, np.integer, np.floating)):
        return np.array([float(c), 0.0, 0.0, 0.0])
    arr = np.asarray(c, dtype=float)
    if arr.shape != (4,):
        raise ValueError("a coefficient must be a Quaternion, a real number, or a 4-sequence")
    return arr


class QSeries:
    """Truncated power series sum_{n=0}^{N} q^n a_n centered at 0."""

    __slots__ = ("_c", "_real")

    def __init__(self, coeffs):
        if isinstance(coeffs, np.ndarray) and coeffs.ndim == 2 and coeffs.shape[1] == 4:
            arr = np.array(coeffs, dtype=float, copy=True)
        else:
            rows = [_coerce_coeff(c) for c in coeffs]
            if not rows:
                raise ValueError("a series needs at least the degree-0 coefficient")
            arr = np.stack(rows)
        if arr.shape[0] == 0:
            raise ValueError("a series needs at least the degree-0 coefficient")
        arr.setflags(write=False)
        self._c = arr
        self._real = bool(np.all(arr[:, 1:] == 0.0))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "QSeries":
        return cls(np.zeros((degree + 1, 4)))

    @classmethod
    def one(cls) -> "QSeries":
        return cls([1.0])

    @classmethod
    def monomial(cls, degree: int, coeff=1.0) -> "QSeries":
        arr = np.zeros((degree + 1, 4))
        arr[degree] = _coerce_coeff(coeff)
        return cls(arr)

    @classmethod
    def from_real(cls, values: Iterable[float]) -> "QSeries":
        vals = [float(v) for v in values]
        arr = np.zeros((len(vals), 4))
        arr[:, 0] = vals
        return cls(arr)

    # -- accessors ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return self._c.shape[0] - 1

    @property
    def array(self) -> np.ndarray:
        """Read-only (N+1, 4) component array of the coefficients."""
        return self._c

    def coeff(self, n: int) -> Quaternion:
        return Quaternion.from_array(self._c[n])

    def coefficients(self) -> list[Quaternion]:
        return [Quaternion.from_array(row) for row in self._c]

    def truncated(self, degree: int) -> "QSeries":
        """Explicitly cut or zero-pad to the given degree."""
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        arr = np.zeros((degree + 1, 4))
        m = min(degree, self.degree) + 1
        arr[:m] = self._c[:m]
        return QSeries(arr)

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    def isclose(self, other: "QSeries", tol: float = 1e-12) -> bool:
        n = max(self.degree, other.degree)
        return bool(
            np.all(array_modulus(self.truncated(n).array - other.truncated(n).array) <= tol)
        )

    def __repr__(self):
        return f"QSeries(degree={self.degree})"

    # -- linear arithmetic --------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = max(self.degree, other.degree)
        return QSeries(self.truncated(n).array + other.truncated(n).array)

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        n = max(self.degree, other.degree)
        return QSeries(self.truncated(n).array - other.truncated(n).array)

    def __neg__(self):
        return QSeries(-self._c)

    def __mul__(self, other):
        # Real scalars only; quaternion factors need an explicit side.
        if isinstance(other, (int, float, np.integer, np.floating)):
            return QSeries(self._c * float(other))
        return NotImplemented

    __rmul__ = __mul__

    def right_scaled(self, c) -> "QSeries":
        """Coefficients a_n * c (right factor; order matters for quaternions)."""
        cc = _coerce_coeff(c)
        return QSeries(array_mul(self._c, cc[None, :]))

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, q: Quaternion) -> Quaternion:
        """Horner evaluation a_0 + q*(a_1 + q*(a_2 + ...)).

        Powers of q multiply from the left, coefficients sit on the right;
        the nesting preserves that order exactly.
        """
        acc = self.coeff(self.degree)
        for n in range(self.degree - 1, -1, -1):
            acc = q * acc + self.coeff(n)
        return acc

    def evaluate_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorized Horner evaluation at an (m, 4) array of points."""
        pts = np.asarray(points, dtype=float)
        if self._real:
            # Real coefficients make the series slice preserving, so the value
            # at x + y*u is Re(p(x+iy)) + u*Im(p(x+iy)) with p the complex
            # Horner evaluation; this cuts the per-degree work by ~8x.
            x = pts[..., 0]
            yvec = pts[..., 1:]
            y = np.linalg.norm(yvec, axis=-1)
            val = np.polynomial.polynomial.polyval(x + 1j * y, self._c[:, 0])
            out = np.zeros(pts.shape)
            out[..., 0] = val.real
            out[..., 1:] = (val.imag / np.where(y == 0.0, 1.0, y))[..., None] * yvec
            return out
        pw, px, py, pz = pts[..., 0], pts[..., 1], pts[..., 2], pts[..., 3]
        c = self._c
        aw = np.full(pw.shape, c[-1, 0])
        ax = np.full(pw.shape, c[-1, 1])
        ay = np.full(pw.shape, c[-1, 2])
        az = np.full(pw.shape, c[-1, 3])
        for n in range(self.degree - 1, -1, -1):
            nw = pw * aw - px * ax - py * ay - pz * az + c[n, 0]
            nx = pw * ax + px * aw + py * az - pz * ay + c[n, 1]
            ny = pw * ay - px * az + py * aw + pz * ax + c[n, 2]
            nz = pw * az + px * ay - py * ax + pz * aw + c[n, 3]
            aw, ax, ay, az = nw, nx, ny, nz
        return np.stack([aw, ax, ay, az], axis=-1)

    # -- calculus and size measures -----------------------------------------

    def slice_derivative(self) -> "QSeries":
        """Termwise derivative: coefficient b_n = (n+1) a_{n+1}, degree N-1."""
        if self.degree == 0:
            return QSeries.zero(0)
        n = np.arange(1, self.degree + 1, dtype=float)
        return QSeries(self._c[1:] * n[:, None])

    def majorant_sum(self, r: float) -> float:
        """sum_{n=0}^{N} r^n |a_n|; depends only on r = |q|."""
        if r < 0:
            raise ValueError("radius must be nonnegative")
        mods = array_modulus(self._c)
        powers = float(r) ** np.arange(self.degree + 1)
        return float(np.dot(powers, mods))

    # -- JSON ----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [list(map(float, row)) for row in self._c]}

    @classmethod
    def from_json_dict(cls, obj: dict) -> "QSeries":
        if not isinstance(obj, dict) or "degree" not in obj or "coeffs" not in obj:
            raise ValueError('series JSON must be {"degree": N, "coeffs": [[w,x,y,z], ...]}')
        degree = obj["degree"]
        coeffs = obj["coeffs"]
        if not isinstance(degree, int) or degree < 0:
            raise ValueError("series degree must be a nonnegative integer")
        if not isinstance(coeffs, list) or len(coeffs) != degree + 1:
            raise ValueError("series JSON must carry exactly degree+1 coefficients")
        return cls(coeffs)


# ---------------------------------------------------------------------------
# Boundary sup estimation.

def local_search_max_on_sphere(
    f: QSeries,
    center: np.ndarray,
    r: float,
    start_pts: np.ndarray,
    start_vals: np.ndarray,
    rng: np.random.Generator,
    rounds: int,
    width: int,
    objective,
) -> float:
    """Shrinking-step stochastic ascent of `objective(f values)` constrained to
    the sphere |q - center| = r, batched over all start points.  Returns the
    best value seen; deterministic for a fixed Generator state."""
    pts = np.array(start_pts, copy=True)
    vals = np.array(start_vals, copy=True)
    k = pts.shape[0]
    step = 0.5
    rows = np.arange(k)
    for _ in range(rounds):
        cand = pts[:, None, :] + (step * r) * rng.standard_normal((k, width, 4))
        rel = cand - center
        rel /= np.linalg.norm(rel, axis=-1, keepdims=True)
        cand = center + rel * r
        cv = objective(f.evaluate_array(cand.reshape(-1, 4))).reshape(k, width)
        best = np.argmax(cv, axis=1)
        best_vals = cv[rows, best]
        improved = best_vals > vals
        vals[improved] = best_vals[improved]
        pts[improved] = cand[rows, best][improved]
        step *= 0.6
    return float(np.max(vals))


def sup_modulus_on_sphere(
    f: QSeries,
    r: float,
    samples: int = 512,
    seed=0,
    refine_starts: int = 8,
    refine_rounds: int = 12,
    refine_width: int = 24,
) -> float:
    """Estimated max of |f(q)| over the sphere |q| = r.

    Monte-Carlo over quasi-uniform points of the 3-sphere plus a local search
    from the best samples.  Deterministic for a fixed seed.  The estimate is a
    lower bound of the true sup and never exceeds majorant_sum(f, r).
    """
    if samples < 1:
        raise ValueError("need at least one sample")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0.0 or f.degree == 0:
        # f(0) = a_0, and a constant series takes the value a_0 everywhere.
        return abs(f.coeff(0))
    rng = as_rng(seed)
    pts = random_unit_quaternions(rng, samples) * r
    vals = array_modulus(f.evaluate_array(pts))
    order = np.argsort(vals)[::-1][: min(refine_starts, samples)]
    if refine_rounds < 1 or refine_width < 1:
        return float(vals[order[0]])
    return local_search_max_on_sphere(
        f,
        np.zeros(4),
        r,
        pts[order],
        vals[order],
        rng,
        refine_rounds,
        refine_width,
        array_modulus,
    )


# ---------------------------------------------------------------------------
# Coefficient recovery by contour quadrature on a slice circle.

def contour_coefficients_from_samples(
    values: np.ndarray,
    unit: UnitImaginary,
    r: float,
    n_max: int,
) -> list[Quaternion]:
    """Coefficients a_0..a_{n_max} from function values on the uniform grid
    z_m = r e^{I theta_m}, theta_m = 2 pi m / M.

    a_n = (1/2pi) int r^{-n} e^{-I n theta} g(r e^{I theta}) dtheta, with the
    exponential kernel in the slice of I multiplying g on the left.
    """
    vals = np.asarray(values, dtype=float)
    nodes = vals.shape[0]
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    ivec = unit.imag
    out = []
    for n in range(n_max + 1):
        scale = r ** (-n)
        kern = np.empty((nodes, 4))
        kern[:, 0] = np.cos(n * theta) * scale
        kern[:, 1:] = (-np.sin(n * theta) * scale)[:, None] * ivec[None, :]
        out.append(Quaternion.from_array(array_mul(kern, vals).mean(axis=0)))
    return out


def slice_circle_points(unit: UnitImaginary, r: float, nodes: int) -> np.ndarray:
    """(nodes, 4) array of the grid z_m = r e^{I theta_m} on the slice of I."""
    theta = 2.0 * math.pi * np.arange(nodes) / nodes
    pts = np.empty((nodes, 4))
    pts[:, 0] = r * np.cos(theta)
    pts[:, 1:] = (r * np.sin(theta))[:, None] * unit.imag[None, :]
    return pts


def coefficients_by_contour(
    g: Callable[[Quaternion], Quaternion],
    unit: UnitImaginary,
    r: float,
    n_max: int,
    nodes: int,
) -> list[Quaternion]:
    """Recover a_0..a_{n_max} of a slice function g: L_I -> H by trapezoid
    quadrature on the circle |z| = r of the slice.

    The uniform trapezoid rule is spectrally accurate for analytic integrands;
    `nodes` must be at least 4*(n_max+1).
    """
    if nodes < 4 * (n_max + 1):
        raise ValueError("quadrature underresolved: need nodes >= 4*(n_max+1)")
    if not (r > 0.0):
        raise ValueError("contour radius must be positive")
    pts = slice_circle_points(unit, r, nodes)
    vals = np.stack([g(Quaternion.from_array(p)).to_array() for p in pts])
    return contour_coefficients_from_samples(vals, unit, r, n_max)
