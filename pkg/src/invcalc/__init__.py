"""Degree-3 cohomological invariant groups of split semisimple groups (B, C, D)."""

__version__ = "0.1.0"

from .lattices import (
    CongruenceSystem,
    DimensionMismatch,
    FiniteAbelianGroup,
    InfiniteQuotient,
    IntMatrix,
    NotASubgroup,
    SnfResult,
    Sublattice,
    lattice_equal,
    lattice_intersection,
    lattice_member,
    lattice_quotient,
    lattice_sum,
    snf,
    solve_congruences,
)
from .rootdata import (
    QForm,
    SimpleFactor,
    cartan_matrix,
    center_image_component,
    coroot_length_sq,
    killing_form,
    weyl_orbit,
)
from .groupspec import (
    CenterTooLarge,
    GroupSpec,
    MalformedGenerator,
    RelationSubgroup,
    SpecError,
    adjoint,
    center_image,
    character_lattice,
    enumerate_subgroups,
    make_spec,
    relation_subgroup,
    simply_connected,
    spec_for_subgroup,
    weight_order,
)
from .forms import (
    HypothesisNotSatisfied,
    NonIntegralChern,
    NotInCharLattice,
    WorkBoundExceeded,
    decomposable_lattice,
    decomposable_oracle,
    invariant_forms_closed_b,
    invariant_forms_closed_c,
    invariant_forms_lattice,
    orbit_chern_vector,
    reductive_lattice,
)
from .invariants import (
    GeneratorEntry,
    GeneratorReport,
    RankData,
    UNRAMIFIED_NOTE,
    cross_checks,
    generator_report,
    indecomposable_invariants,
    indecomposable_rank_formula,
    reductive_invariants,
    reductive_rank_data,
    unramified_status,
)
