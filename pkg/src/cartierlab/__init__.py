"""cartierlab: exact invariants of finitely presented ring extensions.

The library computes, with exact arithmetic throughout: subalgebra
membership and seminormality/anodality witnesses, conductor ideals,
connected-component counts of fibers, ranks of the Laurent deviation of the
relative Cartier divisor group, and the four-factor decomposition of Laurent
polynomial units over Artinian coefficient rings.
"""

from .artinian import (
    FiniteAlgebra,
    IdempotentDecomposition,
    component_count,
    components_over_subring,
    idempotent_decomposition,
    minimal_polynomial,
    minimal_polynomial_as_poly,
    quotient_algebra,
)
from .cartier import (
    LIResult,
    NIVerdict,
    RankData,
    StabilityVerdict,
    StalkReport,
    TowerVerdict,
    decomposition_terms,
    laurent_stability,
    li_auto,
    li_conductor_square,
    li_finite_connected,
    li_five_term,
    li_five_term_from_extension,
    li_hensel_local,
    li_reduce_red,
    ni_verdict,
    product_rank,
    stalk_rank,
    tower_check,
)
from .errors import CartierlabError, EMPTY, UNKNOWN
from .extensions import (
    ClosureResult,
    ExtensionPresentation,
    Hints,
    SubalgebraMembership,
    WitnessCheck,
    closure_search,
    conductor,
    is_anodal_witness,
    is_seminormal_witness,
    nil_comparison,
    reduce_mod_conductor,
)
from .extfile import load_extension, load_rank_data, load_ring
from .laurent import (
    LaurentElement,
    LaurentUnitDecomposition,
    bass_decompose,
    is_laurent_unit,
    lu_rank,
    parse_laurent,
)
from .polycore import (
    GREVLEX,
    Ideal,
    LEX,
    MonomialOrder,
    Polynomial,
    PolyRing,
    PrimeField,
    QQ,
    RationalFunctionField,
    SimpleExtensionField,
    colon,
    eliminate,
    ideal_product,
    ideal_sum,
    intersect,
    parse_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "CartierlabError",
    "ClosureResult",
    "EMPTY",
    "ExtensionPresentation",
    "FiniteAlgebra",
    "GREVLEX",
    "Hints",
    "Ideal",
    "IdempotentDecomposition",
    "LEX",
    "LIResult",
    "LaurentElement",
    "LaurentUnitDecomposition",
    "MonomialOrder",
    "NIVerdict",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "QQ",
    "RankData",
    "RationalFunctionField",
    "SimpleExtensionField",
    "StabilityVerdict",
    "StalkReport",
    "SubalgebraMembership",
    "TowerVerdict",
    "UNKNOWN",
    "WitnessCheck",
    "bass_decompose",
    "closure_search",
    "colon",
    "component_count",
    "components_over_subring",
    "conductor",
    "decomposition_terms",
    "eliminate",
    "idempotent_decomposition",
    "ideal_product",
    "ideal_sum",
    "intersect",
    "is_anodal_witness",
    "is_laurent_unit",
    "is_seminormal_witness",
    "laurent_stability",
    "li_auto",
    "li_conductor_square",
    "li_finite_connected",
    "li_five_term",
    "li_five_term_from_extension",
    "li_hensel_local",
    "li_reduce_red",
    "load_extension",
    "load_rank_data",
    "load_ring",
    "lu_rank",
    "minimal_polynomial",
    "minimal_polynomial_as_poly",
    "ni_verdict",
    "nil_comparison",
    "parse_laurent",
    "parse_polynomial",
    "product_rank",
    "quotient_algebra",
    "reduce_mod_conductor",
    "stalk_rank",
    "tower_check",
]
