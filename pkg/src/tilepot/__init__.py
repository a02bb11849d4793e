"""tilepot: exact analysis and construction of the complete complexes a
flexible DNA tile pot can assemble."""

from .builders import (
    BuildError,
    build_auto,
    build_bipartite,
    build_cycle,
    build_divalg,
    build_path,
    build_star,
    dispatch_distribution,
    relabel_to_source,
)
from .complexes import (
    LabeledMultigraph,
    RealizationCheck,
    components,
    decompose_distribution,
    disconnected_by_gcd,
    disconnected_by_zeta,
    enumerate_realizations,
    forced_disconnected,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    realizes_disconnected,
    tile_distribution_of,
    validate_realization,
)
from .feasibility import (
    BudgetExceededError,
    DivisionForm,
    FeasibilityReport,
    InfeasibleOrderError,
    canonical_distributions,
    distributions_for_order,
    division_form,
    eta,
    feasibility_report,
    gcd_classifier,
    is_realizable,
    min_order,
    witnesses,
    zeta,
)
from .pots import (
    CohesiveEnd,
    NotSingleBondError,
    Pot,
    PotSyntaxError,
    PotValidationError,
    SingleBondPot,
    TileType,
    as_single_bond,
    parse_pot,
    render_pot,
)
from .spectrum import (
    ConstructionMatrix,
    NonIntegralScaleError,
    SpectrumParameters,
    SpectrumPoint,
    TileDistribution,
    balances,
    construction_matrix,
    general_solution,
    rref,
    scale_to_distribution,
    single_bond_spectrum,
    z_matrix,
)

__version__ = "0.1.0"
