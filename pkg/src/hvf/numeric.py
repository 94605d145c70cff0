"""Complex evaluation on the upper half-plane and residual verification.

Every functional equation in the theory is checked here numerically:
the weight-2 anomaly under S, the automorphic laws for the higher weights,
the depth-lowering S-transformation of the companion series, and the
vector-form laws under both generators.  Residuals are always reported
together with a truncation tail bound so a failure can be attributed to
truncation rather than mathematics.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .combinat import binom
from .forms import Hauptbuch, QuasiForm, hauptbuch
from .matrixcore import SquareMatrix, epsilon_S, epsilon_T, pascal
from .numfield import FieldElement, varpi_numeric
from .qseries import EisensteinFamily, QSeries, StructureConstant


class EvaluationError(ValueError):
    """Raised on evaluation at a pole or outside the upper half-plane."""


@dataclass(frozen=True)
class GroupElement:
    """A real 2x2 matrix of determinant 1 acting by Mobius transformations."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-12:
            raise ValueError(f"determinant must be 1, got {det}")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


def generator_T(mu: int) -> GroupElement:
    return GroupElement(1.0, varpi_numeric(mu), 0.0, 1.0)


def generator_S() -> GroupElement:
    return GroupElement(0.0, -1.0, 1.0, 0.0)


def mobius(g: GroupElement, z: complex) -> complex:
    if z.imag <= 0:
        raise EvaluationError(f"z must lie in the upper half-plane, got {z}")
    denom = g.c * z + g.d
    if abs(denom) < 1e-300:
        raise EvaluationError(f"Mobius pole at z = {z}")
    return (g.a * z + g.b) / denom


def cocycle(g: GroupElement, z: complex) -> complex:
    """The factor of automorphy c*z + d."""
    return g.c * z + g.d


class EvalResult(NamedTuple):
    value: complex
    tail: float


def _to_complex(c) -> complex:
    if isinstance(c, FieldElement):
        return complex(c.embed())
    if isinstance(c, Fraction):
        return complex(c.numerator / c.denominator)
    return complex(c)


def eval_series(s: QSeries, mu: int, z: complex) -> EvalResult:
    """Evaluate at q = exp(2*pi*i*z / w), with a geometric tail bound.

    The tail estimate is |q|^(N+1)/(1-|q|) times the largest recent
    coefficient magnitude.
    """
    if z.imag <= 0:
        raise EvaluationError(f"z must lie in the upper half-plane, got {z}")
    w = varpi_numeric(mu)
    q = cmath.exp(2j * math.pi * z / w)
    acc = 0j
    for c in reversed(s.coeffs):
        acc = acc * q + _to_complex(c)
    aq = abs(q)
    if aq >= 1.0:
        return EvalResult(acc, math.inf)
    recent = s.coeffs[-min(8, len(s.coeffs)) :]
    scale = max(abs(_to_complex(c)) for c in recent)
    tail = aq ** (s.trunc + 1) / (1.0 - aq) * scale
    return EvalResult(acc, tail)


@dataclass(frozen=True)
class SamplePlan:
    """Evaluation points for functional-equation checks.

    Every point must keep both z and Sz = -1/z at imaginary part >= 0.4 so
    that truncated series converge on both sides of each equation.
    """

    points: tuple
    tol: float = 1e-6
    trunc: int = 64

    def __post_init__(self):
        for z in self.points:
            if z.imag < 0.4 or (-1 / z).imag < 0.4:
                raise ValueError(f"plan point {z} violates the Im >= 0.4 admissibility bound")


def default_plan(seed: int = 0, npoints: int = 12, tol: float = 1e-6, trunc: int = 64) -> SamplePlan:
    """Points with |z| in [0.9, 1.1] and arg in [pi/3, 2pi/3] (seeded)."""
    rng = random.Random(seed)
    pts = []
    for _ in range(npoints):
        rho = rng.uniform(0.9, 1.1)
        theta = rng.uniform(math.pi / 3, 2 * math.pi / 3)
        pts.append(rho * cmath.exp(1j * theta))
    return SamplePlan(points=tuple(pts), tol=tol, trunc=trunc)


@dataclass
class PointResult:
    z: complex
    residual: float
    tail_bound: float

    def to_json(self):
        return {
            "z": [self.z.real, self.z.imag],
            "residual": self.residual,
            "tail_bound": self.tail_bound,
        }


@dataclass
class VerificationReport:
    check: str
    mu: int
    points: list
    max_residual: float = field(init=False)
    max_tail: float = field(init=False)
    weight: int | None = None
    depth: int | None = None
    tol: float | None = None

    def __post_init__(self):
        self.max_residual = max((p.residual for p in self.points), default=0.0)
        self.max_tail = max((p.tail_bound for p in self.points), default=0.0)

    @property
    def passed(self) -> bool:
        return self.tol is not None and self.max_residual < self.tol

    def to_json(self):
        out = {
            "check": self.check,
            "mu": self.mu,
            "points": [p.to_json() for p in self.points],
            "max_residual": self.max_residual,
            "max_tail_bound": self.max_tail,
        }
        if self.weight is not None:
            out["weight"] = self.weight
        if self.depth is not None:
            out["depth"] = self.depth
        if self.tol is not None:
            out["tol"] = self.tol
            out["pass"] = self.passed
        return out


def verify_E2_anomaly(
    mu: int,
    family: EisensteinFamily,
    plan: SamplePlan,
    constant: StructureConstant | None = None,
) -> VerificationReport:
    """Residuals of E_2(Sz)/z^2 = E_2(z) - C*Sz over the plan.

    ``constant`` may override the structure constant, to separate
    calibration errors from a wrong anomaly constant.
    """
    c = (constant or StructureConstant(mu)).numeric()
    e2 = family.e2
    points = []
    for z in plan.points:
        sz = -1 / z
        left, tl = eval_series(e2, mu, sz)
        right, tr = eval_series(e2, mu, z)
        res = abs(left / z**2 - right + c * sz)
        points.append(PointResult(z, res, max(tl, tr)))
    return VerificationReport(check="E2_anomaly", mu=mu, points=points, weight=2, depth=1, tol=plan.tol)


def verify_automorphic(h, mu: int, plan: SamplePlan) -> VerificationReport:
    """Residuals of H(Tz) = H(z) and H(Sz)/z^w = H(z) for an automorphic form."""
    w = varpi_numeric(mu)
    weight = h.weight
    points = []
    for z in plan.points:
        sz = -1 / z
        vz, t0 = eval_series(h.series, mu, z)
        vt, t1 = eval_series(h.series, mu, z + w)
        vs, t2 = eval_series(h.series, mu, sz)
        res = max(abs(vt - vz), abs(vs / z**weight - vz))
        points.append(PointResult(z, res, max(t0, t1, t2)))
    return VerificationReport(
        check="automorphic", mu=mu, points=points, weight=weight, depth=0, tol=plan.tol
    )


def s_transform_multiplier(r: int) -> SquareMatrix:
    """The S-multiplier the component vector actually transforms by.

    The depth-lowering corollary gives f_n(Sz)/z^(w-r) = (-1)^n f_{r-n}(z),
    so the top-right entry is +1; this differs from the representation-
    normalized epsilon_S(r) by the global parity factor (-1)^r.
    """
    return epsilon_S(r).scale((-1) ** r)


def _embed_matrix(m: SquareMatrix) -> SquareMatrix:
    return m.map(_to_complex)


def _eval_hauptbuch(h: Hauptbuch, mu: int, z: complex):
    """Numeric g_l(z) = C^l ghat_l(z); returns (values, max tail bound)."""
    c = h.C.numeric()
    vals, tails = [], []
    for l, g in enumerate(h.ghat):
        v, t = eval_series(g, mu, z)
        vals.append(v * c**l)
        tails.append(t * abs(c) ** l)
    return vals, max(tails)


def _eval_F_from_hauptbuch(h: Hauptbuch, mu: int, z: complex):
    """Both construction routes from a precomputed hauptbuch."""
    g, tail = _eval_hauptbuch(h, mu, z)
    r = h.r
    route_exp = pascal(r, complex(z)).apply(g)
    transfer = SquareMatrix(
        [
            [binom(n, k) * g[n - k] if k <= n else 0j for k in range(r + 1)]
            for n in range(r + 1)
        ]
    )
    nu = [complex(z) ** j for j in range(r + 1)]
    return route_exp, transfer.apply(nu), tail


def eval_F_routes(u: QuasiForm, family: EisensteinFamily, z: complex):
    """The vector form via both constructions.

    Returns (exponential route, transfer route, tail bound): P_r(z) applied
    to the hauptbuch vector, and the transfer matrix applied to the monomial
    vector (1, z, ..., z^r).  The two are the same function; agreement is a
    cross-check of the plumbing.
    """
    return _eval_F_from_hauptbuch(hauptbuch(u, family), u.mu, z)


def _checked_F(h: Hauptbuch, mu: int, z: complex, agree_tol: float = 1e-9):
    fe, ft, tail = _eval_F_from_hauptbuch(h, mu, z)
    gap = max(abs(a - b) for a, b in zip(fe, ft))
    scale = max(1.0, max(abs(a) for a in fe))
    if gap > agree_tol * scale:
        raise AssertionError(f"construction routes disagree by {gap} at z={z}")
    return fe, tail


def eval_F(u: QuasiForm, family: EisensteinFamily, z: complex, agree_tol: float = 1e-9):
    """Evaluate the vector form, asserting the two routes agree."""
    return _checked_F(hauptbuch(u, family), u.mu, z, agree_tol)


def verify_vector_T(u: QuasiForm, family: EisensteinFamily, plan: SamplePlan) -> VerificationReport:
    """Residuals of F(Tz) = eps_T F(z) over the plan."""
    r = u.depth
    h = hauptbuch(u, family)
    epsT = _embed_matrix(epsilon_T(u.mu, r))
    w = varpi_numeric(u.mu)
    points = []
    for z in plan.points:
        fz, t0 = _checked_F(h, u.mu, z)
        ftz, t1 = _checked_F(h, u.mu, z + w)
        pred = epsT.apply(fz)
        res = max(abs(a - b) for a, b in zip(ftz, pred))
        points.append(PointResult(z, res, max(t0, t1)))
    return VerificationReport(
        check="vector_T", mu=u.mu, points=points, weight=u.weight, depth=r, tol=plan.tol
    )


def verify_vector_S(u: QuasiForm, family: EisensteinFamily, plan: SamplePlan) -> VerificationReport:
    """Residuals of F(Sz)/z^(w-r) = (-1)^r eps_S F(z) over the plan."""
    r = u.depth
    h = hauptbuch(u, family)
    epsS = _embed_matrix(s_transform_multiplier(r))
    points = []
    for z in plan.points:
        sz = -1 / z
        fz, t0 = _checked_F(h, u.mu, z)
        fsz, t1 = _checked_F(h, u.mu, sz)
        pred = epsS.apply(fz)
        zp = z ** (u.weight - r)
        res = max(abs(a / zp - b) for a, b in zip(fsz, pred))
        points.append(PointResult(z, res, max(t0, t1)))
    return VerificationReport(
        check="vector_S", mu=u.mu, points=points, weight=u.weight, depth=r, tol=plan.tol
    )


def verify_g_under_S(
    u: QuasiForm, family: EisensteinFamily, l: int, plan: SamplePlan
) -> VerificationReport:
    """Residuals of the depth-lowering S-law for g_l, plus the alternating
    convolution corollary at n = l."""
    r, w = u.depth, u.weight
    if not 0 <= l <= r:
        raise ValueError(f"need 0 <= l <= r, got l={l}, r={r}")
    h = hauptbuch(u, family)
    points = []
    for z in plan.points:
        sz = -1 / z
        gz, t0 = _eval_hauptbuch(h, u.mu, z)
        gsz, t1 = _eval_hauptbuch(h, u.mu, sz)
        lhs = gsz[l] / z ** (w - r - l)
        rhs = sum(binom(r - l, m) * gz[l + m] * z ** (r - l - m) for m in range(r - l + 1))
        res = abs(lhs - rhs)
        # corollary: alternating binomial convolution at n = l
        n = l
        conv = sum(binom(n, j) * gsz[j] * sz ** (n - j) for j in range(n + 1))
        lhs2 = conv / z ** (w - r)
        rhs2 = (-1) ** n * sum(
            binom(r - n, m) * gz[m] * z ** (r - n - m) for m in range(r - n + 1)
        )
        res = max(res, abs(lhs2 - rhs2))
        points.append(PointResult(z, res, max(t0, t1)))
    return VerificationReport(
        check=f"g_under_S[l={l}]", mu=u.mu, points=points, weight=w, depth=r, tol=plan.tol
    )


def dim_automorphic(mu: int, w: int) -> int:
    """floor((w/4)(mu-2)/mu) + 1, valid for weights divisible by 4."""
    if mu < 3:
        raise ValueError(f"mu must be >= 3, got {mu}")
    if w < 0 or w % 4 != 0:
        raise ValueError(f"dimension formula applies to weights w = 0 mod 4 only, got {w}")
    return (w // 4) * (mu - 2) // mu + 1
