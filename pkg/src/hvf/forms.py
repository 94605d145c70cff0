"""Quasiautomorphic forms as depth-graded objects.

A form U of weight w and depth r is a sum over k = 0..r of automorphic
components of weight w-2k times the k-th power of the weight-2 Eisenstein
series.  From the components one builds the hauptbuch vector (the depth-
truncated companions g_0..g_r) and the lower-triangular transfer matrix
whose (n,k)-entry is binom(n,k) g_{n-k}.

The structure constant C is complex, so g_l = C^l * ghat_l is stored
stripped: an exact series ghat_l plus the integer power l.  C enters only
at numeric evaluation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .combinat import binom, bracket
from .qseries import EisensteinFamily, QSeries, StructureConstant, zero_series


@dataclass(frozen=True)
class AutomorphicForm:
    """An automorphic component: an even weight and its q-expansion.

    Nonzero forms exist only in weight 0 and even weights >= 4; odd spots in
    the depth grading are filled by explicit weight-tagged zero forms so the
    bookkeeping never has to guess.
    """

    weight: int
    series: QSeries

    def __post_init__(self):
        if self.weight % 2 != 0 or self.weight < 0:
            raise ValueError(f"weight must be a nonnegative even integer, got {self.weight}")
        if self.weight == 2 and not self.series.is_zero():
            raise ValueError("weight 2 admits only the zero automorphic form")
        if self.series.weight_tag is None:
            object.__setattr__(self, "series", self.series.with_tag(self.weight))
        elif self.series.weight_tag != self.weight:
            raise ValueError(
                f"series weight tag {self.series.weight_tag} != declared weight {self.weight}"
            )

    def is_zero(self) -> bool:
        return self.series.is_zero()


def zero_form(weight: int, trunc: int) -> AutomorphicForm:
    return AutomorphicForm(weight, zero_series(trunc, weight))


def constant_form(value, trunc: int) -> AutomorphicForm:
    coeffs = [Fraction(value)] + [Fraction(0)] * trunc
    return AutomorphicForm(0, QSeries(coeffs, 0))


@dataclass(frozen=True)
class QuasiForm:
    """Weight w, depth r, and components B_0..B_r with B_k of weight w-2k."""

    mu: int
    weight: int
    depth: int
    components: tuple

    def __post_init__(self):
        w, r = self.weight, self.depth
        if w % 2 != 0:
            raise ValueError(f"weight must be even, got {w}")
        if not 0 <= r <= w // 2:
            raise ValueError(f"depth must satisfy 0 <= r <= w/2, got r={r}, w={w}")
        comps = tuple(self.components)
        if len(comps) != r + 1:
            raise ValueError(f"expected {r + 1} components, got {len(comps)}")
        for k, c in enumerate(comps):
            if c.weight != w - 2 * k:
                raise ValueError(
                    f"component {k} has weight {c.weight}, expected {w - 2 * k}"
                )
        object.__setattr__(self, "components", comps)

    def exact_depth(self) -> bool:
        return not self.components[self.depth].is_zero()


@dataclass(frozen=True)
class Hauptbuch:
    """C-stripped companion series ghat_0..ghat_r plus the structure constant."""

    r: int
    ghat: tuple
    C: StructureConstant

    def __post_init__(self):
        if len(self.ghat) != self.r + 1:
            raise ValueError("hauptbuch needs r+1 component series")
        object.__setattr__(self, "ghat", tuple(self.ghat))


class StrippedSeries(NamedTuple):
    """A series known only up to an integer power of the structure constant."""

    series: QSeries
    c_power: int


@dataclass(frozen=True)
class TransferMatrix:
    """Lower-triangular array with (n,k)-entry binom(n,k) g_{n-k}, stripped."""

    r: int
    entries: tuple  # (r+1) x (r+1) of StrippedSeries or None above the diagonal
    C: StructureConstant

    def __getitem__(self, nk):
        n, k = nk
        return self.entries[n][k]


def assemble(u: QuasiForm, family: EisensteinFamily) -> QSeries:
    """The q-expansion of U = sum_k B_k E_2^k."""
    _check_compatible(u, family)
    e2 = family.e2
    total = None
    for k, comp in enumerate(u.components):
        term = comp.series * e2**k if k else comp.series
        if term.weight_tag != u.weight:
            raise ValueError(
                f"summand {k} has formal weight {term.weight_tag}, expected {u.weight}"
            )
        total = term if total is None else total + term
    return total


def hauptbuch(u: QuasiForm, family: EisensteinFamily) -> Hauptbuch:
    """The stripped companions ghat_l = sum_m bracket(r,l,m) B_{l+m} E_2^m."""
    _check_compatible(u, family)
    r = u.depth
    e2 = family.e2
    e2_powers = [None] * (r + 1)
    ghat = []
    for l in range(r + 1):
        total = u.components[l].series.scale(bracket(r, l, 0))
        for m in range(1, r - l + 1):
            if e2_powers[m] is None:
                e2_powers[m] = e2**m
            total = total + (u.components[l + m].series * e2_powers[m]).scale(
                bracket(r, l, m)
            )
        ghat.append(total.with_tag(u.weight - 2 * l))
    return Hauptbuch(r=r, ghat=tuple(ghat), C=StructureConstant(u.mu))


def transfer_matrix(h: Hauptbuch) -> TransferMatrix:
    r = h.r
    entries = []
    for n in range(r + 1):
        row = []
        for k in range(r + 1):
            if k > n:
                row.append(None)
            else:
                j = n - k
                row.append(StrippedSeries(h.ghat[j].scale(binom(n, k)), j))
        entries.append(tuple(row))
    return TransferMatrix(r=r, entries=tuple(entries), C=h.C)


def orthogonality_check(h: Hauptbuch, z: complex, tol: float, trunc=None) -> bool:
    """Round-trip the binomial transform on the evaluated hauptbuch vector.

    Evaluates u_i = g_i(z)/z^i, applies v_n = sum_i binom(n,i) u_i (which is
    f_n / z^n) and the alternating inverse, and checks the inputs come back
    within tol.  Binomial inversion is an algebraic identity, so this holds
    for any series; it validates the numeric plumbing.
    """
    from .numeric import eval_series  # deferred: numeric depends on forms

    if z.imag <= 0:
        raise ValueError("z must lie in the upper half-plane")
    mu = h.C.mu
    c = h.C.numeric()
    u = []
    for i, g in enumerate(h.ghat):
        s = g if trunc is None else g.truncate(trunc)
        u.append(eval_series(s, mu, z).value * c**i / z**i)
    v = [sum(binom(n, i) * u[i] for i in range(n + 1)) for n in range(len(u))]
    back = [
        sum((-1) ** (n - j) * binom(n, j) * v[j] for j in range(n + 1))
        for n in range(len(v))
    ]
    return max(abs(x - y) for x, y in zip(u, back)) <= tol


def from_e2_polynomial(
    mu: int, weight: int, coeffs, family: EisensteinFamily
) -> QuasiForm:
    """Build a QuasiForm from coefficients of the basis E_{w-2k} E_2^k.

    ``coeffs[k]`` multiplies E_{w-2k} E_2^k, with E_0 the constant 1 and the
    weight-2 spot necessarily zero.  The depth is the largest k present.
    """
    coeffs = [Fraction(c) for c in coeffs]
    depth = max((k for k, c in enumerate(coeffs) if c != 0), default=0)
    trunc = family.trunc
    comps = []
    for k in range(depth + 1):
        w = weight - 2 * k
        c = coeffs[k]
        if c == 0:
            comps.append(zero_form(w, trunc))
        elif w == 0:
            comps.append(constant_form(c, trunc))
        elif w == 2:
            raise ValueError("weight-2 component must vanish")
        else:
            comps.append(AutomorphicForm(w, family[w].scale(c)))
    return QuasiForm(mu=mu, weight=weight, depth=depth, components=tuple(comps))


# -- JSON interfaces ---------------------------------------------------------


def _series_to_json(s: QSeries):
    out = []
    for c in s.coeffs:
        f = Fraction(c) if isinstance(c, int) else c
        out.append(f"{f.numerator}/{f.denominator}")
    return out


def _series_from_json(data, tag=None) -> QSeries:
    return QSeries([Fraction(c) for c in data], tag)


def quasiform_to_json(u: QuasiForm) -> dict:
    return {
        "mu": u.mu,
        "weight": u.weight,
        "depth": u.depth,
        "components": [
            {"weight": c.weight, "coeffs": _series_to_json(c.series)}
            for c in u.components
        ],
    }


def quasiform_from_json(data) -> QuasiForm:
    comps = [
        AutomorphicForm(c["weight"], _series_from_json(c["coeffs"], c["weight"]))
        for c in data["components"]
    ]
    return QuasiForm(
        mu=data["mu"], weight=data["weight"], depth=data["depth"], components=tuple(comps)
    )


def hauptbuch_to_json(h: Hauptbuch, weight: int) -> dict:
    return {
        "mu": h.C.mu,
        "weight": weight,
        "depth": h.r,
        "structure_constant": str(h.C),
        "ghat": [
            {"weight": weight - 2 * l, "c_power": l, "coeffs": _series_to_json(g)}
            for l, g in enumerate(h.ghat)
        ],
    }


def quasiform_loads(text: str) -> QuasiForm:
    return quasiform_from_json(json.loads(text))


def _check_compatible(u: QuasiForm, family: EisensteinFamily):
    if u.mu != family.mu:
        raise ValueError(f"form is over mu={u.mu} but family over mu={family.mu}")
