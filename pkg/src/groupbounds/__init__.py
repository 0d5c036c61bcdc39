"""Exact invariants of small finite groups and checks of automorphism/commuting-probability bounds."""

from .automorphisms import (
    AutGroup,
    LambdaResult,
    automorphism_group,
    fixed_points,
    lambda_e,
    minimal_generators,
    power_agreement_set,
)
from .bounds import (
    BoundReport,
    RhoConstants,
    inversion_cp_lower,
    inversion_dl_bound_holds,
    inversion_fit_index_upper,
    rho_constants,
    squaring_bounds,
    verify_group,
)
from .catalog import GroupSpec, construct, default_scan_set, parse_cayley_file, parse_spec, serialize_cayley
from .core import (
    ElementSet,
    FiniteGroup,
    Morphism,
    center,
    centralizer,
    commuting_probability,
    conjugacy_classes,
    conjugation_map,
    power,
    validate_group,
)
from .lemmas import (
    SetFamily,
    intersection_pair,
    popular_index,
    random_family,
    translate_lemma_check,
    union_growth_check,
)
from .structure import (
    SeriesReport,
    SubgroupLattice,
    derived_series,
    fitting_subgroup,
    lower_central_series,
    normal_subgroups,
    quotient,
    solvable_radical,
    subgroup_closure,
)

__version__ = "0.1.0"
