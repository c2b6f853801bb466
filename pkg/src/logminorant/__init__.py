"""Verification toolkit for minorizing log-potentials by logarithms of polynomials.

Covers exact circle and disk means, variable-radius Hausdorff content,
Besicovitch-style covering and the explicit exceptional-set bounds, all on
finite atomic Riesz measures.
"""

__version__ = "0.1.0"

from .content import DiskCover, ContentValue, ball_coefficient, content_upper_bound, cover_weight
from .covering import (
    RadiusAssignment,
    audit_multiplicity,
    besicovitch_select,
    find_bad_radius,
    multiplicity,
)
from .errors import ConfigError, DomainError, InternalContradiction, MultiplicityAuditError
from .exceptional import (
    PFunction,
    build_p,
    exceptional_cover_and_check,
    is_exceptional,
    jensen_defect,
    sup_over_disk_radial,
    theorem_bound_rhs,
)
from .harness import (
    PolynomialMinorant,
    atomize_measure,
    construct_minorant,
    verify_means,
    verify_pointwise,
    verify_radial_growth,
)
from .means import MeanKind, circle_mean_exact, disk_mean_exact, mean_quadrature
from .measure import (
    AtomicMassDistribution,
    GrowthEnvelope,
    fit_growth_envelope,
    mu_rad,
    order_of_measure,
    radial_profile,
)
from .subharmonic import (
    LogPotentialFunction,
    PowerRadius,
    RadialGrowthFunction,
    RadiusFunction,
    TabulatedRadius,
    check_radius_condition,
    constant_radius,
    evaluate,
    growth_function,
    order_of_function,
    radial_sup,
)
