import json
from fractions import Fraction

import pytest

from hvf import forms
from hvf.combinat import bracket
from hvf.qseries import QSeries, extremal_D63, hecke_eisenstein


def test_automorphic_form_weight_rules():
    with pytest.raises(ValueError):
        forms.AutomorphicForm(3, QSeries([Fraction(1)]))
    with pytest.raises(ValueError):
        forms.AutomorphicForm(2, QSeries([Fraction(1), Fraction(0)]))
    z = forms.zero_form(2, 4)
    assert z.is_zero() and z.series.weight_tag == 2


def test_quasiform_validation(fam3):
    with pytest.raises(ValueError):
        forms.QuasiForm(mu=3, weight=6, depth=4, components=())
    with pytest.raises(ValueError):
        forms.QuasiForm(
            mu=3,
            weight=6,
            depth=1,
            components=(forms.AutomorphicForm(6, fam3[6]), forms.constant_form(1, 64)),
        )


def test_assemble_depth_zero(fam3):
    u = forms.QuasiForm(
        mu=3, weight=4, depth=0, components=(forms.AutomorphicForm(4, fam3[4]),)
    )
    assert forms.assemble(u, fam3) == fam3[4]


def test_assemble_e2(u_e2, fam3):
    assert forms.assemble(u_e2, fam3) == fam3.e2


def test_assemble_d63(u_d63, fam3):
    assert forms.assemble(u_d63, fam3) == extremal_D63(64)
    assert u_d63.exact_depth()


def test_assemble_rejects_wrong_mu(u_e2):
    fam5 = hecke_eisenstein(5, 8, Fraction(1))
    with pytest.raises(ValueError):
        forms.assemble(u_e2, fam5)


def test_hauptbuch_endpoints(u_d63, fam3):
    h = forms.hauptbuch(u_d63, fam3)
    assert h.ghat[0] == forms.assemble(u_d63, fam3)
    assert h.ghat[3] == u_d63.components[3].series
    assert h.C.mu == 3


def test_hauptbuch_e2(u_e2, fam3):
    h = forms.hauptbuch(u_e2, fam3)
    assert h.ghat[0] == fam3.e2
    one = h.ghat[1]
    assert one.coeffs[0] == 1 and all(c == 0 for c in one.coeffs[1:])


def test_hauptbuch_depth_truncation(u_d63, fam3):
    # the companions of ghat_l, viewed as a depth r-l form, are exactly the
    # deeper companions of the original form
    r = u_d63.depth
    h = forms.hauptbuch(u_d63, fam3)
    for l in range(r + 1):
        comps = []
        for m in range(r - l + 1):
            base = u_d63.components[l + m]
            comps.append(
                forms.AutomorphicForm(base.weight, base.series.scale(bracket(r, l, m)))
            )
        v = forms.QuasiForm(
            mu=3,
            weight=u_d63.weight - 2 * l,
            depth=r - l,
            components=tuple(comps),
        )
        hv = forms.hauptbuch(v, fam3)
        for j in range(r - l + 1):
            assert hv.ghat[j] == h.ghat[l + j]


def test_transfer_matrix_pattern(u_d63, fam3):
    h = forms.hauptbuch(u_d63, fam3)
    t = forms.transfer_matrix(h)
    r = u_d63.depth
    for n in range(r + 1):
        assert t[n, n].series == h.ghat[0]
        assert t[n, n].c_power == 0
        assert t[n, 0].series == h.ghat[n]
    assert t[2, 1].series == h.ghat[1].scale(2)
    assert t[0, 1] is None


def test_transfer_matrix_depth_zero(fam3):
    u = forms.QuasiForm(
        mu=3, weight=4, depth=0, components=(forms.AutomorphicForm(4, fam3[4]),)
    )
    t = forms.transfer_matrix(forms.hauptbuch(u, fam3))
    assert t.r == 0 and t[0, 0].series == fam3[4]


def test_orthogonality_round_trip(u_e2, u_d63, fam3):
    for u in (u_e2, u_d63):
        h = forms.hauptbuch(u, fam3)
        assert forms.orthogonality_check(h, 1j, 1e-12)
        assert forms.orthogonality_check(h, 0.3 + 1.2j, 1e-12)
    with pytest.raises(ValueError):
        forms.orthogonality_check(forms.hauptbuch(u_e2, fam3), 1 - 1j, 1e-12)


def test_from_e2_polynomial_weight2_guard(fam3):
    with pytest.raises(ValueError):
        forms.from_e2_polynomial(3, 6, [0, 0, Fraction(1), 0], fam3)


def test_quasiform_json_round_trip(u_d63):
    blob = json.dumps(forms.quasiform_to_json(u_d63))
    back = forms.quasiform_loads(blob)
    assert back.mu == u_d63.mu
    assert back.weight == u_d63.weight
    assert back.depth == u_d63.depth
    for a, b in zip(back.components, u_d63.components):
        assert a.weight == b.weight and a.series == b.series


def test_hauptbuch_json(u_e2, fam3):
    h = forms.hauptbuch(u_e2, fam3)
    out = forms.hauptbuch_to_json(h, u_e2.weight)
    assert out["mu"] == 3 and out["depth"] == 1
    assert out["ghat"][1]["c_power"] == 1
    assert out["ghat"][0]["coeffs"][1] == "-24/1"
