"""Equidistribution of dilated measures and curves on compact nilmanifolds.

Exact character-obstruction classification (rational arithmetic throughout)
plus numerical diagnostics: Weyl sums, Cesaro averages, discrepancies, and the
ternary-staircase constructions separating weak from strong equidistribution.
"""

from .cantor import (
    cantor_measure,
    cantor_psi,
    cantor_psi_exact,
    counterexample_curve,
    product_cantor,
    verify_self_similarity,
    verify_selfsimilar_measure,
)
from .curves import PiecewisePolynomial, StaircaseCurve
from .diagnostics import (
    ConvergenceTable,
    character_discrepancy,
    psi_t,
    shrinking_window_average,
    star_discrepancy_1d,
    weak_average_continuous,
    weak_average_discrete,
    weyl_exponential_mean,
    weyl_sum,
)
from .dilation import (
    DegreeData,
    DilationFamily,
    TorusCoefficients,
    check_graded_condition,
    degree_data,
    torus_coefficients,
)
from .lattice import (
    NilmanifoldPoint,
    from_second_kind,
    haar_integrate,
    lattice_element,
    reduce_mod_lattice,
    to_second_kind,
)
from .lie import GroupElement, NilAlgebra, StructureError, group_inv, group_mul
from .measures import (
    AtomicMeasure,
    CantorMeasure1D,
    CurvePushforward,
    DilatedMeasure,
    PanelBudgetWarning,
    ProductMeasure,
    base_point,
    cesaro_family,
    integrate,
    oscillation_guard,
    sample,
)
from .obstruction import (
    Character,
    UndecidableMeasureError,
    Verdict,
    Witness,
    characters_up_to_height,
    check_analytic_condition,
    check_tangent_condition,
    check_weak_condition,
    classify,
    witness_mass,
)

__version__ = "0.1.0"
