from fractions import Fraction

import pytest

from hvf import forms
from hvf.qseries import extremal_D63, express_in_depth_basis, hecke_eisenstein


@pytest.fixture(scope="session")
def fam3():
    """The classical family (mu=3, a1=-24) at N=64, shared across tests."""
    return hecke_eisenstein(3, 64, Fraction(-24))


@pytest.fixture(scope="session")
def u_e2(fam3):
    """E_2 as a weight-2 depth-1 form: components (0, 1)."""
    n = fam3.trunc
    return forms.QuasiForm(
        mu=3,
        weight=2,
        depth=1,
        components=(forms.zero_form(2, n), forms.constant_form(1, n)),
    )


@pytest.fixture(scope="session")
def u_d63(fam3):
    """The weight-6 depth-3 extremal form in the depth basis."""
    target = extremal_D63(fam3.trunc)
    e2, e4, e6 = fam3[2], fam3[4], fam3[6]
    c3, c1, c0 = express_in_depth_basis(target, [e2**3, e2 * e4, e6], 3)
    return forms.from_e2_polynomial(3, 6, [c0, c1, Fraction(0), c3], fam3)
