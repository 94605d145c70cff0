"""Quasiautomorphic forms on Hecke triangle groups as Hecke vector-forms.

The package computes the weight-graded Eisenstein family of the triangle
group t_mu from its differential system, assembles depth-graded forms into
component vectors with their transfer matrices, constructs the exact
multiplier system over Q(2*cos(pi/mu)), and verifies every transformation
law both exactly and numerically.
"""

from .combinat import binom, bracket, check_coeff_equiv, rising, vandermonde_like
from .forms import (
    AutomorphicForm,
    Hauptbuch,
    QuasiForm,
    TransferMatrix,
    assemble,
    hauptbuch,
    orthogonality_check,
    transfer_matrix,
)
from .matrixcore import (
    MultiplierPair,
    SquareMatrix,
    creation,
    epsilon_S,
    epsilon_T,
    exchange,
    nilpotent_exp,
    pascal,
    sym_power,
    verify_presentation,
    verify_sym_theorem,
)
from .numfield import FieldElement, IntPolynomial, minimal_polynomial, varpi
from .numeric import (
    SamplePlan,
    default_plan,
    dim_automorphic,
    eval_F,
    eval_series,
    generator_S,
    generator_T,
    mobius,
    verify_E2_anomaly,
    verify_automorphic,
    verify_g_under_S,
    verify_vector_S,
    verify_vector_T,
)
from .qseries import (
    CalibrationError,
    DegenerateRecursionError,
    EisensteinFamily,
    QSeries,
    StructureConstant,
    calibrate,
    calibrate_a1,
    degenerate_orders,
    divisor_sigma,
    extremal_D63,
    express_in_depth_basis,
    hecke_eisenstein,
    theta,
)

__version__ = "0.1.0"
