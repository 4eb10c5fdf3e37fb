"""Verification harness for boundedness theorems on the unit ball.

The harness generates admissible functions (truncated series with a certified
sup bound below 1 on the closed unit ball), checks the Borel-Caratheodory
bound, the weak (1/6) and sharp (1/3) majorant-radius theorems with their
per-coefficient bounds, estimates the empirical radius where the majorant
first reaches 1, and constructs explicit witnesses showing the 1/3 radius
cannot be improved.

Strict inequalities are checked through margins: a check with margin m fails
only when m < -tol, since floating-point strictness is meaningless.  Every
randomized step is driven by an explicit seed, and independent trials derive
their own streams from (seed, trial index), so reports are reproducible and
independent of the parallelism level.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .quaternion import (
    Quaternion,
    UnitImaginary,
    array_modulus,
    array_mul,
    as_rng,
    random_unit_quaternions,
    root_of_unity,
    slice_decompose,
)
from .power_series import (
    QSeries,
    contour_coefficients_from_samples,
    local_search_max_on_sphere,
    slice_circle_points,
    sup_modulus_on_sphere,
)

WEAK_BOHR_RADIUS = 1.0 / 6.0
SHARP_BOHR_RADIUS = 1.0 / 3.0

#: Environment variable holding the default number of concurrent trial workers.
PARALLELISM_ENV = "SLICEREGULAR_PARALLEL"

_TAIL_DEGREE_LIMIT = 200_000


# ---------------------------------------------------------------------------
# Data types.

@dataclass(frozen=True)
class AdmissibleFunction:
    """A truncated series together with a certified sup bound below 1.

    tail_coeff/tail_ratio certify |a_n| <= tail_coeff * tail_ratio**n for all
    n beyond the truncation degree of the underlying infinite family member
    (zero for exact polynomials), so majorant comparisons at radius r can add
    a geometric tail bound.
    """

    series: QSeries
    certified_sup: float
    generator_id: str
    seed: object
    tail_coeff: float = 0.0
    tail_ratio: float = 0.0

    def __post_init__(self):
        if not (self.certified_sup < 1.0):
            raise ValueError("certified sup bound must be below 1")

    def tail(self, r: float) -> float:
        """Geometric bound for sum_{n > degree} r^n |a_n|."""
        if self.tail_coeff == 0.0:
            return 0.0
        x = r * self.tail_ratio
        if x >= 1.0:
            return math.inf
        return self.tail_coeff * x ** (self.series.degree + 1) / (1.0 - x)

    def majorant_with_tail(self, r: float) -> float:
        return self.series.majorant_sum(r) + self.tail(r)


@dataclass
class VerificationReport:
    """Structured outcome of a theorem check."""

    theorem: str
    trials: int
    violations: int
    worst_margin: float
    seed: int
    tolerances: dict
    witness: dict | None = None

    def passed(self) -> bool:
        return self.violations == 0

    def to_json_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "trials": self.trials,
            "violations": self.violations,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class SharpnessWitness:
    """A scaled disk-automorphism series whose majorant exceeds 1 at q0 while
    its sup on the closed unit ball stays below 1."""

    a: float
    c: float
    q0: Quaternion
    series: QSeries
    majorant_at_q0: float
    sup_bound: float

    def to_admissible(self) -> AdmissibleFunction:
        tail_coeff = self.c * (1.0 - self.a) / self.a if self.a > 0 else 0.0
        tail1 = self.c * self.a ** self.series.degree
        return AdmissibleFunction(
            series=self.series,
            certified_sup=self.sup_bound + tail1,
            generator_id="witness",
            seed=None,
            tail_coeff=tail_coeff,
            tail_ratio=self.a,
        )

    def to_json_dict(self) -> dict:
        return {
            "a": self.a,
            "c": self.c,
            "q0": self.q0.to_list(),
            "majorant_at_q0": self.majorant_at_q0,
            "sup_bound": self.sup_bound,
            "series": self.series.to_json_dict(),
        }


# ---------------------------------------------------------------------------
# Admissible-function generation.

def disk_family_series(a: float, c: float, degree: int) -> QSeries:
    """Coefficients of c*(1 - q a)^{-1}(1 - q): b_0 = c, b_n = c(a-1)a^{n-1}."""
    vals = np.empty(degree + 1)
    vals[0] = c
    if degree >= 1:
        vals[1:] = c * (a - 1.0) * a ** np.arange(degree)
    return QSeries.from_real(vals)


def generate_admissible(seed, generator_id: str = "g1") -> AdmissibleFunction:
    """Deterministic admissible-function generators.

    g1: random polynomial of degree <= 32 rescaled so its majorant at r=1 is
        exactly 1 - delta (delta = 0.01), which certifies the sup bound.
    g2: the scaled disk-automorphism family with random a in (0.1, 0.9) and
        c chosen so the exact boundary sup 2c/(1+a) is uniform in (0.5, 0.99);
        its majorant approaches 1 near r = 1/3, keeping the radius checks
        non-vacuous.
    """
    rng = as_rng(seed)
    if generator_id == "g1":
        delta = 0.01
        deg = int(rng.integers(0, 33))
        coeffs = rng.standard_normal((deg + 1, 4))
        h = QSeries(coeffs)
        total = h.majorant_sum(1.0)
        if total == 0.0:
            h = QSeries.one()
            total = 1.0
        return AdmissibleFunction(
            series=h * ((1.0 - delta) / total),
            certified_sup=1.0 - delta,
            generator_id="g1",
            seed=_seed_repr(seed),
        )
    if generator_id == "g2":
        a = float(rng.uniform(0.1, 0.9))
        s = float(rng.uniform(0.5, 0.99))
        c = s * (1.0 + a) / 2.0
        degree = 200
        series = disk_family_series(a, c, degree)
        return AdmissibleFunction(
            series=series,
            certified_sup=s + c * a**degree,
            generator_id="g2",
            seed=_seed_repr(seed),
            tail_coeff=c * (1.0 - a) / a,
            tail_ratio=a,
        )
    raise ValueError(f"unknown generator id: {generator_id!r}")


def _seed_repr(seed):
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    if isinstance(seed, np.random.SeedSequence):
        return list(map(int, np.atleast_1d(seed.entropy)))
    return str(seed)


# ---------------------------------------------------------------------------
# Coefficient normalization.

def normalize_leading(f: QSeries) -> QSeries:
    """Right-multiply every coefficient by conj(a_0)/|a_0| so that the new
    a_0 equals |a_0| in [0, inf); coefficient moduli are unchanged.  The zero
    leading coefficient leaves f untouched."""
    a0 = f.coeff(0)
    m = a0.modulus()
    if m == 0.0:
        return f
    return f.right_scaled(a0.conjugate() / m)


# ---------------------------------------------------------------------------
# Borel-Caratheodory.

def _abs_re(values: np.ndarray) -> np.ndarray:
    return np.abs(values[..., 0])


def _max_abs_re_on_sphere(
    f: QSeries,
    center: float,
    r: float,
    samples: int,
    rng: np.random.Generator,
    starts: int = 6,
    rounds: int = 10,
    width: int = 16,
) -> float:
    """Estimated max of |Re f| over the sphere |q - center| = r (center real).

    Monte-Carlo plus multistart local search; a lower bound of the true max.
    """
    c = np.array([center, 0.0, 0.0, 0.0])
    pts = c + r * random_unit_quaternions(rng, samples)
    vals = _abs_re(f.evaluate_array(pts))
    order = np.argsort(vals)[::-1][: min(starts, samples)]
    return local_search_max_on_sphere(f, c, r, pts[order], vals[order], rng, rounds, width, _abs_re)


def verify_borel_caratheodory(
    f: QSeries,
    q0: float,
    r: float,
    rho: float,
    samples: int = 256,
    seed=0,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check |f(q)| <= |gamma| + |beta| (r+rho)/(r-rho) + 2 A rho/(r-rho) + tol
    on sampled points |q - q0| <= rho, where A estimates max |Re f| on the
    sphere |q - q0| = r and f(q0) = beta + gamma*I.

    The center must be real; rho must satisfy 0 < rho < r.  The caller is
    responsible for f being trustworthy on the closed ball of radius r
    (truncation tail below tolerance there).
    """
    if isinstance(q0, Quaternion):
        if not q0.is_real(0.0):
            raise ValueError("center must be real")
        q0 = q0.real
    q0 = float(q0)
    if not (0.0 < rho < r):
        raise ValueError("need 0 < rho < r")
    tolerances = {"tol": tol, "r": r, "rho": rho, "samples": samples}

    x, y, _ = slice_decompose(f.evaluate(Quaternion(q0)))
    beta, gamma = x, y

    if f.degree == 0:
        # Constant series: |f| = sqrt(beta^2 + gamma^2) <= |gamma| + |beta|.
        margin = abs(gamma) + abs(beta) - f.coeff(0).modulus()
        return VerificationReport(
            theorem="borel-caratheodory",
            trials=1,
            violations=0 if margin >= -tol else 1,
            worst_margin=margin,
            seed=_as_report_seed(seed),
            tolerances=tolerances,
        )

    rng = as_rng(seed)
    a_outer = _max_abs_re_on_sphere(f, q0, r, samples, rng)
    bound = abs(gamma) + abs(beta) * (r + rho) / (r - rho) + 2.0 * a_outer * rho / (r - rho)

    center = np.array([q0, 0.0, 0.0, 0.0])
    n_boundary = max(1, (7 * samples) // 10)
    n_inner = max(1, samples - n_boundary)
    b_pts = center + rho * random_unit_quaternions(rng, n_boundary)
    radii = rho * rng.uniform(0.0, 1.0, size=n_inner) ** 0.25
    i_pts = center + radii[:, None] * random_unit_quaternions(rng, n_inner)
    pts = np.vstack([b_pts, i_pts, center[None, :]])

    mods = array_modulus(f.evaluate_array(pts))
    margins = bound - mods
    violations = int(np.sum(margins < -tol))
    worst = float(np.min(margins))
    witness = None
    if violations:
        i = int(np.argmin(margins))
        witness = {
            "q": [float(v) for v in pts[i]],
            "value": float(mods[i]),
            "bound": float(bound),
            "series": f.to_json_dict(),
        }
    return VerificationReport(
        theorem="borel-caratheodory",
        trials=int(pts.shape[0]),
        violations=violations,
        worst_margin=worst,
        seed=_as_report_seed(seed),
        tolerances=tolerances,
        witness=witness,
    )


def _as_report_seed(seed) -> int:
    if isinstance(seed, (int, np.integer)):
        return int(seed)
    return -1  # derived stream; the run-level report carries the real seed


# ---------------------------------------------------------------------------
# Bohr checks.

def verify_weak_bohr(
    f: AdmissibleFunction,
    samples: int = 128,
    seed=0,
    tol: float = 1e-9,
) -> VerificationReport:
    """Check the majorant of f below 1 at radius 1/6 plus the coefficient
    bounds |a_n| < 2**(n+1) (1 - a_0) after leading-coefficient normalization.

    `samples` drives a boundary sanity check that the estimated sup on |q|=1
    does not exceed the certified bound.
    """
    margins = []
    margins.append(1.0 - f.majorant_with_tail(WEAK_BOHR_RADIUS))

    g = normalize_leading(f.series)
    a0 = g.coeff(0).real
    if g.degree >= 1:
        mods = array_modulus(g.array[1:])
        bounds = (1.0 - a0) * 2.0 ** np.arange(2, g.degree + 2, dtype=float)
        margins.extend((bounds - mods).tolist())

    if samples > 0:
        sup_est = sup_modulus_on_sphere(
            f.series, 1.0, samples=samples, seed=seed,
            refine_starts=2, refine_rounds=5, refine_width=8,
        )
        margins.append(f.certified_sup - sup_est)

    return _margins_report("weak-bohr", margins, seed, tol)


def verify_sharp_coefficient_bound(f: AdmissibleFunction, tol: float = 1e-9) -> VerificationReport:
    """Check |a_n| < 1 - a_0**2 for all n >= 1 after normalization."""
    g = normalize_leading(f.series)
    a0 = g.coeff(0).real
    bound = 1.0 - a0 * a0
    if g.degree >= 1:
        margins = (bound - array_modulus(g.array[1:])).tolist()
    else:
        margins = [bound]  # vacuous: no n >= 1 coefficients to check
    return _margins_report("coeff-bounds", margins, 0, tol)


def verify_sharp_bohr(f: AdmissibleFunction, tol: float = 1e-9) -> VerificationReport:
    """Check the majorant of f below 1 at radius 1/3."""
    margins = [1.0 - f.majorant_with_tail(SHARP_BOHR_RADIUS)]
    return _margins_report("sharp-bohr", margins, 0, tol)


def _margins_report(theorem: str, margins: list[float], seed, tol: float) -> VerificationReport:
    worst = float(min(margins))
    violations = int(sum(1 for m in margins if m < -tol))
    return VerificationReport(
        theorem=theorem,
        trials=len(margins),
        violations=violations,
        worst_margin=worst,
        seed=_as_report_seed(seed),
        tolerances={"tol": tol},
    )


# ---------------------------------------------------------------------------
# Root-of-unity averaging.

def root_of_unity_average(
    f: QSeries,
    n: int,
    unit: UnitImaginary,
    r: float | None = None,
    nodes: int | None = None,
) -> QSeries:
    """The series of sum_{k=0}^{n-1} f(z w^k) on the slice of I, with w the
    primitive n-th root of unity in that slice, recovered by contour
    quadrature.

    Up to quadrature error the result has coefficient n*a_{nm} at degree n*m
    and 0 at degrees not divisible by n, independently of the slice.
    """
    if n < 1:
        raise ValueError("averaging order must be a positive integer")
    deg = f.degree
    if r is None:
        # Balance the r**(-deg) roundoff amplification of high coefficients
        # against staying inside the well-resolved region.
        r = min(0.95, max(0.5, 0.1 ** (1.0 / max(deg, 1))))
    if nodes is None:
        nodes = max(4 * (deg + 1), 16)
    if nodes < 4 * (deg + 1):
        raise ValueError("quadrature underresolved: need nodes >= 4*(degree+1)")
    omega = root_of_unity(n, unit)
    pts = slice_circle_points(unit, r, nodes)
    vals = np.zeros((nodes, 4))
    w_pow = Quaternion(1.0)
    for _ in range(n):
        vals += f.evaluate_array(array_mul(pts, w_pow.to_array()[None, :]))
        w_pow = w_pow * omega
    coeffs = contour_coefficients_from_samples(vals, unit, r, deg)
    return QSeries(np.stack([c.to_array() for c in coeffs]))


# ---------------------------------------------------------------------------
# Sharpness witnesses.

def sharpness_witness(
    q0,
    a: float | None = None,
    c: float | None = None,
    degree: int | None = None,
) -> SharpnessWitness:
    """Witness series for the sharpness of the 1/3 radius at a point q0 with
    1/3 < |q0| < 1.

    Parameters a and c default to deterministic midpoint rules: a halfway
    between (1/|q0| - 1)/2 and 1, then c halfway between 1/S and (1+a)/2 with
    S = 1 + |q0|(1-a)/(1-|q0|a).  The closed forms give majorant_at_q0 = c*S
    (> 1) and sup_bound = 2c/(1+a) (< 1).  The truncation degree is raised
    until the geometric tail cannot push the sup of the truncated series to 1.
    """
    if isinstance(q0, Quaternion):
        point = q0
    else:
        point = Quaternion(float(q0))
    r0 = point.modulus()
    if not (SHARP_BOHR_RADIUS < r0 < 1.0):
        raise ValueError("no witness exists: |q0| must lie strictly between 1/3 and 1")

    a_min = (1.0 / r0 - 1.0) / 2.0
    if a is None:
        a = (a_min + 1.0) / 2.0
    else:
        a = float(a)
        if not (a_min < a < 1.0):
            raise ValueError("parameter a must satisfy 1/(1+2a) < |q0|, i.e. a > (1/|q0|-1)/2, and a < 1")

    big_s = 1.0 + r0 * (1.0 - a) / (1.0 - r0 * a)
    c_lo, c_hi = 1.0 / big_s, (1.0 + a) / 2.0
    if c is None:
        c = (c_lo + c_hi) / 2.0
    else:
        c = float(c)
        if not (c_lo < c < c_hi):
            raise ValueError("parameter c must lie strictly between 1/S and (1+a)/2")

    sup_bound = 2.0 * c / (1.0 + a)
    if degree is None:
        target = (1.0 - sup_bound) / (2.0 * c)
        degree = 200
        if a > 0.0 and target < a**degree:
            degree = int(math.ceil(math.log(target) / math.log(a)))
            if degree > _TAIL_DEGREE_LIMIT:
                raise ValueError("witness truncation degree exceeds limit; |q0| too close to 1/3")
    series = disk_family_series(a, c, degree)
    return SharpnessWitness(
        a=a,
        c=c,
        q0=point,
        series=series,
        majorant_at_q0=c * big_s,
        sup_bound=sup_bound,
    )


# ---------------------------------------------------------------------------
# Empirical majorant radius.

def bohr_radius_estimate(f: AdmissibleFunction, tol: float = 1e-9) -> float:
    """Bisection for the radius where the (tail-padded) majorant reaches 1,
    returning 1.0 when it never does.  The majorant is monotone in r, so the
    bisection bracket is valid."""
    total = f.majorant_with_tail
    if total(1.0) <= 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if total(mid) < 1.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# Corpus-level runs.

_THEOREM_IDS = ("borel-caratheodory", "weak-bohr", "sharp-bohr", "coeff-bounds", "bohr-radius")


def _resolve_parallelism(parallelism: int | None) -> int:
    if parallelism is not None:
        return max(1, int(parallelism))
    raw = os.environ.get(PARALLELISM_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def run_verification(
    theorem: str,
    trials: int,
    seed: int,
    generator: str | None = None,
    tol: float = 1e-9,
    samples: int = 256,
    rhos: Sequence[float] = (0.25, 0.5, 0.75),
    parallelism: int | None = None,
) -> VerificationReport:
    """Run a theorem check over a corpus of `trials` generated functions.

    Without an explicit generator the corpus alternates g1 and g2.  Trial i
    draws its randomness from the stream (seed, i), so the aggregate report
    does not depend on the parallelism level (default: the value of the
    SLICEREGULAR_PARALLEL environment variable, else serial).
    """
    if theorem not in _THEOREM_IDS:
        raise ValueError(f"unknown theorem id: {theorem!r} (expected one of {_THEOREM_IDS})")
    if trials < 1:
        raise ValueError("need at least one trial")

    def one_trial(i: int):
        gen = generator or ("g1" if i % 2 == 0 else "g2")
        f = generate_admissible(np.random.SeedSequence([seed, i]), gen)
        if theorem == "borel-caratheodory":
            worst = math.inf
            violations = 0
            wit = None
            for j, rho in enumerate(rhos):
                rep = verify_borel_caratheodory(
                    f.series, 0.0, 1.0, rho,
                    samples=samples, seed=np.random.SeedSequence([seed, i, j]), tol=tol,
                )
                worst = min(worst, rep.worst_margin)
                violations += rep.violations
                wit = wit or rep.witness
            return violations, worst, wit
        if theorem == "weak-bohr":
            rep = verify_weak_bohr(f, samples=samples, seed=np.random.SeedSequence([seed, i, 1]), tol=tol)
        elif theorem == "sharp-bohr":
            rep = verify_sharp_bohr(f, tol=tol)
        elif theorem == "coeff-bounds":
            rep = verify_sharp_coefficient_bound(f, tol=tol)
        else:  # bohr-radius
            radius = bohr_radius_estimate(f, tol=1e-9)
            margin = radius - SHARP_BOHR_RADIUS
            rep = VerificationReport(
                theorem="bohr-radius",
                trials=1,
                violations=int(margin < -tol),
                worst_margin=margin,
                seed=seed,
                tolerances={"tol": tol},
            )
        wit = rep.witness
        if rep.violations and wit is None:
            wit = {"trial": i, "generator": gen, "series": f.series.to_json_dict()}
        return rep.violations, rep.worst_margin, wit

    workers = _resolve_parallelism(parallelism)
    indices = range(trials)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one_trial, indices))
    else:
        results = [one_trial(i) for i in indices]

    violations = sum(r[0] for r in results)
    worst = float(min(r[1] for r in results))
    witness = next((r[2] for r in results if r[2] is not None), None)
    tolerances = {"tol": tol, "samples": samples}
    if theorem == "borel-caratheodory":
        tolerances["rhos"] = list(rhos)
    return VerificationReport(
        theorem=theorem,
        trials=trials,
        violations=violations,
        worst_margin=worst,
        seed=int(seed),
        tolerances=tolerances,
        witness=witness,
    )
