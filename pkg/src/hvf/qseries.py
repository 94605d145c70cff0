"""Truncated q-expansion arithmetic and the Eisenstein engine.

Series live in the variable q = exp(2*pi*i*z / w) with w = 2*cos(pi/mu), the
natural variable for translation by w; at mu = 3 this is the classical q.
The differential operator theta acts as q d/dq, i.e. diagonally on Fourier
coefficients.

The engine solves the weight-graded differential system order by order:
the equations for weights 2..2(mu-1) *define* the higher Eisenstein series,
and the top-weight closure equation, whose order-n coefficient is an affine
function of the unknown order-n coefficient of the weight-2 series, is
solved by evaluating that affine map at 0 and 1.  Everything is exact when
the normalization a1 (the q-coefficient of the weight-2 series) is rational.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache


class DegenerateRecursionError(ArithmeticError):
    """Raised when a recursion pivot of the closure equation vanishes.

    ``consistent`` distinguishes the benign case (the closure is vacuous at
    this order, so the coefficient is a genuine extra degree of freedom that
    must be supplied externally) from an unsolvable system.
    """

    def __init__(self, order: int, consistent: bool | None = None):
        self.order = order
        self.consistent = consistent
        detail = ""
        if consistent is True:
            detail = "; the system is underdetermined here, supply the coefficient explicitly"
        elif consistent is False:
            detail = "; the system is inconsistent at this order"
        super().__init__(f"degenerate recursion: closure pivot vanishes at order {order}{detail}")


class CalibrationError(RuntimeError):
    """Raised when the normalization root-find fails."""


class SpanError(ValueError):
    """Raised when a target series is not in the span of a basis."""

    def __init__(self, order: int, message: str | None = None):
        self.order = order
        super().__init__(message or f"target leaves the span at order {order}")


class DomainMismatchError(TypeError):
    """Raised when series over incompatible coefficient domains are mixed."""


def _domain_of(coeffs):
    kind = "exact"
    for c in coeffs:
        if isinstance(c, (int, Fraction)):
            continue
        if isinstance(c, (float, complex)):
            kind = "float"
        else:
            # FieldElement or anything exotic: key on the type itself
            return ("object", type(c).__name__)
    return kind


class QSeries:
    """Truncated Fourier expansion: coefficients for q^0 .. q^N."""

    __slots__ = ("coeffs", "weight_tag")

    def __init__(self, coeffs, weight_tag=None):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise ValueError("a series needs at least the constant coefficient")
        self.coeffs = coeffs
        self.weight_tag = weight_tag

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, QSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        tag = f", weight_tag={self.weight_tag}" if self.weight_tag is not None else ""
        return f"QSeries([{head}{tail}]; N={self.trunc}{tag})"

    def _pair(self, other):
        if not isinstance(other, QSeries):
            raise TypeError(f"expected QSeries, got {type(other).__name__}")
        da, db = _domain_of(self.coeffs), _domain_of(other.coeffs)
        if da != db and "exact" not in (da, db):
            raise DomainMismatchError(f"incompatible coefficient domains: {da} vs {db}")
        n = min(self.trunc, other.trunc)
        return other, n

    def __add__(self, other):
        other, n = self._pair(other)
        tag = self.weight_tag if self.weight_tag == other.weight_tag else None
        return QSeries(
            [a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], tag
        )

    def __sub__(self, other):
        other, n = self._pair(other)
        tag = self.weight_tag if self.weight_tag == other.weight_tag else None
        return QSeries(
            [a - b for a, b in zip(self.coeffs[: n + 1], other.coeffs[: n + 1])], tag
        )

    def __neg__(self):
        return QSeries([-a for a in self.coeffs], self.weight_tag)

    def __mul__(self, other):
        if isinstance(other, QSeries):
            other, n = self._pair(other)
            a, b = self.coeffs, other.coeffs
            out = [_conv_at(a, b, k) for k in range(n + 1)]
            tag = None
            if self.weight_tag is not None and other.weight_tag is not None:
                tag = self.weight_tag + other.weight_tag
            return QSeries(out, tag)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, s):
        return QSeries([s * a for a in self.coeffs], self.weight_tag)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("series powers take a nonnegative integer exponent")
        result = constant_series(1, self.trunc)
        if self.weight_tag is not None:
            result = QSeries(result.coeffs, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, n: int) -> "QSeries":
        if n >= self.trunc:
            return self
        return QSeries(self.coeffs[: n + 1], self.weight_tag)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def with_tag(self, tag) -> "QSeries":
        return QSeries(self.coeffs, tag)

    def map_coefficients(self, fn) -> "QSeries":
        return QSeries([fn(c) for c in self.coeffs], self.weight_tag)


def _conv_at(a, b, k):
    acc = a[0] * b[k]
    for j in range(1, k + 1):
        acc = acc + a[j] * b[k - j]
    return acc


def constant_series(value, trunc: int, weight_tag=None) -> QSeries:
    zero = value * 0
    return QSeries([value] + [zero] * trunc, weight_tag)


def zero_series(trunc: int, weight_tag=None) -> QSeries:
    return QSeries([Fraction(0)] * (trunc + 1), weight_tag)


def series_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def series_pow(a: QSeries, k: int) -> QSeries:
    return a**k


def theta(a: QSeries) -> QSeries:
    """q d/dq: multiply the n-th coefficient by n (raises weight tags by 2)."""
    tag = None if a.weight_tag is None else a.weight_tag + 2
    return QSeries([n * c for n, c in enumerate(a.coeffs)], tag)


def divisor_sigma(m: int, n: int) -> int:
    """sum of d^m over the divisors d of n."""
    if n < 1:
        raise ValueError(f"divisor_sigma needs n >= 1, got {n}")
    if m < 0:
        raise ValueError(f"divisor_sigma needs m >= 0, got {m}")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**m
            e = n // d
            if e != d:
                total += e**m
        d += 1
    return total


# -- the Eisenstein engine ---------------------------------------------------


@dataclass(frozen=True)
class StructureConstant:
    """The constant C governing the weight-2 S-anomaly, kept symbolic.

    Differentiating the S-law and substituting the weight-2 differential
    equation forces C = (2*mu/(mu-2)) * w / (pi*i) with w = 2*cos(pi/mu)
    under the constant-term-1 normalization; the coefficient 2*mu/(mu-2) is
    stored exactly and the transcendental factor w/(pi*i) is resolved only
    at numeric evaluation.  At mu = 3 this is the classical 6/(pi*i).

    ``coefficient`` may be overridden to probe alternative constants.
    """

    mu: int
    coefficient: Fraction = None

    def __post_init__(self):
        if self.coefficient is None:
            object.__setattr__(self, "coefficient", Fraction(2 * self.mu, self.mu - 2))
        else:
            object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    def numeric(self) -> complex:
        w = 2.0 * math.cos(math.pi / self.mu)
        return float(self.coefficient) * w / (math.pi * 1j)

    def fixed_point_value(self) -> float:
        """E_2(i) = C*i/2, the value the S-law forces at the fixed point of S."""
        w = 2.0 * math.cos(math.pi / self.mu)
        return float(self.coefficient) * w / (2.0 * math.pi)

    def __str__(self):
        return f"({self.coefficient})*varpi/(pi*i)"


@dataclass(frozen=True)
class EisensteinFamily:
    """Weight-graded Eisenstein series E_2, E_4, ..., E_{2mu}.

    Every member is normalized to constant term 1; a1 is the q-coefficient
    of the weight-2 member and determines everything else through the
    differential system.
    """

    mu: int
    a1: object
    trunc: int
    series: dict

    def __getitem__(self, weight: int) -> QSeries:
        return self.series[weight]

    @property
    def weights(self):
        return sorted(self.series)

    @property
    def e2(self) -> QSeries:
        return self.series[2]

    def structure_constant(self) -> StructureConstant:
        return StructureConstant(self.mu)


def _system_constants(mu: int):
    s = Fraction(mu - 2, 2 * mu)
    inv_c1 = Fraction(4 * mu, mu - 2)
    closure_coeff = Fraction(mu - 2, 2)
    return s, inv_c1, closure_coeff


def _make_filler(mu: int, E):
    """Order filler for the weight-graded system over any coefficient domain.

    fill(n, t) sets E_2[n] = t, propagates the defining equations k < mu,
    and returns the order-n coefficient of the top-weight closure residual.
    """
    s, inv_c1, closure_coeff = _system_constants(mu)

    def fill(n, t):
        E[1][n] = t
        for k in range(1, mu):
            e2k = E[k]
            p_e2 = _conv_at(E[1], e2k, n)
            if k == 1:
                E[2][n] = p_e2 - inv_c1 * (n * t)
            else:
                rhs = k * s * p_e2 - n * e2k[n]
                if k >= 3:
                    rhs = rhs - Fraction(k - 2, 2) * _conv_at(E[2], E[k - 1], n)
                E[k + 1][n] = Fraction(mu, mu - k) * rhs
        top = E[mu]
        res = n * top[n] - mu * s * _conv_at(E[1], top, n)
        return res + closure_coeff * _conv_at(E[2], E[mu - 1], n)

    return fill


@lru_cache(maxsize=None)
def closure_pivots(mu: int, trunc: int):
    """Exact closure pivots for orders 2..trunc.

    The order-n pivot (the slope of the closure residual in the unknown
    coefficient) does not depend on a1 or on lower-order data: the unknown
    only ever multiplies constant terms.  It is therefore computed once, on
    the zero background, where the two-evaluation difference is just the
    residual at t = 1.  Float-mode runs reuse these exact pivots, which the
    naive float difference r(1) - r(0) would lose to cancellation.
    """
    if not isinstance(mu, int) or mu < 3:
        raise ValueError(f"mu must be an integer >= 3, got {mu!r}")
    zero, one = Fraction(0), Fraction(1)
    E = {k: [zero] * (trunc + 1) for k in range(1, mu + 1)}
    for k in E:
        E[k][0] = one
    fill = _make_filler(mu, E)
    if trunc >= 1:
        fill(1, zero)
    pivots = {}
    for n in range(2, trunc + 1):
        pivots[n] = fill(n, one)
        fill(n, zero)
    return pivots


def degenerate_orders(mu: int, trunc: int):
    """Orders at which the closure equation fails to pin the coefficient."""
    return tuple(n for n, p in sorted(closure_pivots(mu, trunc).items()) if p == 0)


@lru_cache(maxsize=None)
def _degenerate_consistency(mu: int, trunc: int):
    """Exact consistency of the closure at each degenerate order.

    Probes the system at the generic point a1 = 1 (filling degenerate
    orders with 0): a zero offset there certifies the closure is vacuous at
    that order, so float-mode runs need not trust their own noisy offsets.
    """
    free = degenerate_orders(mu, trunc)
    if not free:
        return {}
    status = {}
    try:
        hecke_eisenstein(mu, trunc, Fraction(1), extra=dict.fromkeys(free, Fraction(0)))
        status = dict.fromkeys(free, True)
    except DegenerateRecursionError as exc:
        for n in free:
            status[n] = n < exc.order
    return status


def hecke_eisenstein(mu: int, trunc: int, a1, extra=None) -> EisensteinFamily:
    """Solve the differential system for the Eisenstein family of t_mu.

    The weight-2k equation reads

        theta E_2  = (mu-2)/(4mu) * (E_2^2 - E_4)                      (k = 1)
        theta E_2k = k (mu-2)/(2mu) E_2 E_2k - (mu-k)/mu E_{2k+2}
                     - (k-2)/2 E_4 E_{2k-2}                            (k >= 2)

    Equations k = 1..mu-1 define E_4..E_{2mu}; the k = mu equation closes
    the system and pins the coefficients of E_2 beyond a1, via the affine
    two-evaluation method at each order.

    At a few (mu, n) the closure pivot vanishes identically (first cases
    mu = 6, n = 2 and mu = 10, n = 3); there the closure is vacuous and the
    coefficient is a genuine extra parameter of the system, which must be
    supplied through ``extra`` ({order: value}).  The engine never fills
    such an order silently: DegenerateRecursionError is raised when the
    value is missing, or when the closure is outright inconsistent.
    """
    if not isinstance(mu, int) or mu < 3:
        raise ValueError(f"mu must be an integer >= 3, got {mu!r}")
    if trunc < 1:
        raise ValueError(f"trunc must be >= 1, got {trunc}")
    if isinstance(a1, int):
        a1 = Fraction(a1)
    extra = {int(n): v for n, v in (extra or {}).items()}
    zero, one = a1 * 0, a1 * 0 + 1
    exact = isinstance(a1, Fraction)
    pivots = None if exact else closure_pivots(mu, trunc)

    E = {k: [zero] * (trunc + 1) for k in range(1, mu + 1)}
    for k in range(1, mu + 1):
        E[k][0] = one
    fill = _make_filler(mu, E)

    res1 = fill(1, a1)
    if exact and res1 != 0:
        raise AssertionError("closure equation not satisfied at order 1")
    for n in range(2, trunc + 1):
        r0 = fill(n, zero)
        if exact:
            pivot = fill(n, one) - r0
        else:
            pivot = float(pivots[n])
        if pivot == 0:
            consistent = (r0 == 0) if exact else _degenerate_consistency(mu, trunc)[n]
            if not consistent:
                raise DegenerateRecursionError(n, consistent=False)
            if n not in extra:
                raise DegenerateRecursionError(n, consistent=True)
            if exact and not isinstance(extra[n], (int, Fraction)):
                raise TypeError(f"exact run needs an exact coefficient at order {n}")
            an = extra[n] + zero
        else:
            an = -r0 / pivot
        rfin = fill(n, an)
        if exact and rfin != 0:
            raise AssertionError(f"closure residual nonzero at order {n}")

    series = {2 * k: QSeries(E[k], weight_tag=2 * k) for k in range(1, mu + 1)}
    return EisensteinFamily(mu=mu, a1=a1, trunc=trunc, series=series)


def closure_residual(family: EisensteinFamily) -> QSeries:
    """Recompute the top-weight equation residual of a family (zero series
    when the family actually solves the system)."""
    mu = family.mu
    s = Fraction(mu - 2, 2 * mu)
    top = family[2 * mu]
    res = theta(top) - (mu * s) * (family[2] * top)
    res = res + Fraction(mu - 2, 2) * (family[4] * family[2 * mu - 2])
    return res


@dataclass(frozen=True)
class CalibrationResult:
    """Calibrated normalization: a1 plus any system-underdetermined coefficients."""

    mu: int
    trunc: int
    a1: float
    extra: dict
    residual: float

    def build(self, trunc: int | None = None) -> EisensteinFamily:
        return hecke_eisenstein(self.mu, trunc or self.trunc, self.a1, extra=self.extra)


def _eval_float(coeffs, mu: int, z: complex) -> complex:
    w = 2.0 * math.cos(math.pi / mu)
    q = cmath.exp(2j * math.pi * z / w)
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * q + complex(c)
    return acc


def _anomaly_residual(e2_coeffs, mu: int, z: complex, constant: StructureConstant) -> complex:
    sz = -1 / z
    left = _eval_float(e2_coeffs, mu, sz)
    right = _eval_float(e2_coeffs, mu, z)
    return left / z**2 - right + constant.numeric() * sz


def calibrate(
    mu: int,
    trunc: int,
    tol: float,
    *,
    scan_step: float = 4.0,
    scan_limit: float = 512.0,
) -> CalibrationResult:
    """Pin the normalization numerically from the weight-2 S-law.

    S fixes z = i, where the functional equation collapses to
    2 E_2(i) = C*i; a sign-change bracket for a1 is located by scanning
    outward from 0, narrowed by bisection and polished with secant steps.

    When the system has underdetermined orders (mu = 6 and 10 within the
    supported range), the fixed point alone cannot pin all parameters; the
    full complex anomaly residual at an off-axis point is then driven to
    zero by a damped Newton iteration in (a1, extra coefficient), seeded by
    the one-dimensional estimate.  The result is always cross-checked at a
    point away from the calibration data.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    constant = StructureConstant(mu)
    target = constant.fixed_point_value()
    free = degenerate_orders(mu, trunc)
    if len(free) > 1:
        raise CalibrationError(
            f"mu={mu} has {len(free)} underdetermined orders {free}; not supported"
        )
    extra0 = dict.fromkeys(free, 0.0)

    def e2_at_i(a1f: float, extra) -> float:
        fam = hecke_eisenstein(mu, trunc, a1f, extra=extra)
        return _eval_float(fam.e2.coeffs, mu, 1j).real

    def f(a1f: float) -> float:
        return e2_at_i(a1f, extra0) - target

    # outward scan for a sign change, nearest to zero first
    f0 = f(0.0)
    bracket = None
    prev = {-1.0: f0, 1.0: f0}
    for i in range(1, int(scan_limit / scan_step) + 1):
        for side in (-1.0, 1.0):
            x = side * i * scan_step
            fx = f(x)
            if prev[side] == 0.0 or prev[side] * fx <= 0.0:
                bracket = (x - side * scan_step, x) if side > 0 else (x, x + scan_step)
                break
            prev[side] = fx
        if bracket:
            break
    if bracket is None:
        raise CalibrationError(
            f"no sign change of the calibration function in [-{scan_limit}, {scan_limit}]"
        )

    lo, hi = bracket
    flo, fhi = f(lo), f(hi)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            lo = hi = mid
            flo = fhi = fmid
            break
        if flo * fmid < 0.0:
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
        if hi - lo < 1e-12 * max(1.0, abs(lo)):
            break

    x0, x1 = lo, hi
    fx0, fx1 = flo, fhi
    for _ in range(8):
        if fx1 == fx0:
            break
        x2 = x1 - fx1 * (x1 - x0) / (fx1 - fx0)
        x0, fx0 = x1, fx1
        x1, fx1 = x2, f(x2)
        if abs(x1 - x0) < 1e-14 * max(1.0, abs(x1)):
            break

    if not free:
        if abs(fx1) > tol:
            raise CalibrationError(
                f"calibration residual {abs(fx1):.3e} exceeds tol {tol:.3e} for mu={mu}"
            )
        result = CalibrationResult(mu=mu, trunc=trunc, a1=x1, extra={}, residual=abs(fx1))
    else:
        result = _calibrate_newton(mu, trunc, tol, x1, free[0], constant)

    # cross-point check, away from the calibration data
    fam = result.build()
    z_check = 0.31 + 1.07j
    rho = abs(_anomaly_residual(fam.e2.coeffs, mu, z_check, constant))
    if rho > max(tol, 1e-8):
        raise CalibrationError(
            f"cross-point anomaly residual {rho:.3e} after calibration for mu={mu}"
        )
    return result


def _calibrate_newton(
    mu: int, trunc: int, tol: float, a1_seed: float, order: int, constant: StructureConstant
) -> CalibrationResult:
    """Two-parameter Newton iteration on the complex anomaly residual."""
    z0 = 0.23 + 1.04j

    def rho(a1f: float, v: float) -> complex:
        fam = hecke_eisenstein(mu, trunc, a1f, extra={order: v})
        return _anomaly_residual(fam.e2.coeffs, mu, z0, constant)

    x = [a1_seed, 0.0]
    r = rho(*x)
    for _ in range(60):
        if abs(r) < 1e-13:
            break
        h1 = 1e-6 * max(1.0, abs(x[0]))
        h2 = 1e-6 * max(1.0, abs(x[1]))
        d1 = (rho(x[0] + h1, x[1]) - r) / h1
        d2 = (rho(x[0], x[1] + h2) - r) / h2
        det = d1.real * d2.imag - d1.imag * d2.real
        if det == 0.0:
            raise CalibrationError(f"singular Newton system for mu={mu}")
        dx0 = (-r.real * d2.imag + r.imag * d2.real) / det
        dx1 = (-d1.real * r.imag + d1.imag * r.real) / det
        step = 1.0
        while step > 1e-4:
            cand = [x[0] + step * dx0, x[1] + step * dx1]
            rc = rho(*cand)
            if abs(rc) < abs(r):
                x, r = cand, rc
                break
            step *= 0.5
        else:
            break
    if abs(r) > tol:
        raise CalibrationError(
            f"Newton calibration stalled at residual {abs(r):.3e} for mu={mu}"
        )
    return CalibrationResult(mu=mu, trunc=trunc, a1=x[0], extra={order: x[1]}, residual=abs(r))


def calibrate_a1(mu: int, trunc: int, tol: float, **kwargs) -> float:
    """The calibrated a1 alone (see ``calibrate`` for the full result)."""
    return calibrate(mu, trunc, tol, **kwargs).a1


def extremal_D63(trunc: int) -> QSeries:
    """The weight-6 depth-3 extremal form from its divisor-sum formula.

    Coefficient of q^n is (n*sigma_3(n) - n^2*sigma_1(n)) / 6; the first
    nonzero coefficient sits at q^2 (one step past the displayed expansion,
    consistent with d = 3 and leading term q^(d-1)).
    """
    if trunc < 2:
        raise ValueError(f"trunc must be >= 2, got {trunc}")
    coeffs = [Fraction(0)]
    for n in range(1, trunc + 1):
        val = n * divisor_sigma(3, n) - n * n * divisor_sigma(1, n)
        q, rem = divmod(val, 6)
        if rem:
            raise ArithmeticError(f"n*sigma_3(n) - n^2*sigma_1(n) not divisible by 6 at n={n}")
        coeffs.append(Fraction(q))
    return QSeries(coeffs, weight_tag=6)


def express_in_depth_basis(target: QSeries, basis, match_trunc: int):
    """Exact coefficients c_i with sum c_i * basis_i = target.

    Solves the linear system on orders 0..match_trunc and then verifies the
    combination against every order the operands carry, raising SpanError
    with the first mismatching order otherwise.
    """
    basis = list(basis)
    if match_trunc < len(basis):
        raise ValueError("match_trunc must be at least the number of basis series")
    full = min([target.trunc] + [b.trunc for b in basis])
    if match_trunc > full:
        raise ValueError("match_trunc exceeds a series truncation")

    ncols = len(basis)
    rows = [
        ([Fraction(b.coeffs[n]) for b in basis], Fraction(target.coeffs[n]), n)
        for n in range(match_trunc + 1)
    ]
    # Gaussian elimination with first-nonzero pivoting; order indices ride along
    sol = [Fraction(0)] * ncols
    pivots = []
    for col in range(ncols):
        pividx = next(
            (i for i in range(len(pivots), len(rows)) if rows[i][0][col] != 0), None
        )
        if pividx is None:
            continue
        k = len(pivots)
        rows[k], rows[pividx] = rows[pividx], rows[k]
        pr, pv, _ = rows[k]
        p = pr[col]
        for i in range(len(rows)):
            if i != k and rows[i][0][col] != 0:
                f = rows[i][0][col] / p
                ri, vi, ni = rows[i]
                rows[i] = ([a - f * b for a, b in zip(ri, pr)], vi - f * pv, ni)
        pivots.append((col, k))
    for col, k in pivots:
        sol[col] = rows[k][1] / rows[k][0][col]

    for n in range(full + 1):
        acc = Fraction(0)
        for c, b in zip(sol, basis):
            acc += c * Fraction(b.coeffs[n])
        if acc != Fraction(target.coeffs[n]):
            raise SpanError(n)
    return sol
