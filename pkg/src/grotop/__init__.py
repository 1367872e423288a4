"""Grothendieck topologies on posets, computed at desk scale.

The library side lives in the submodules; `grotop.service.create_app`
exposes the HTTP surface and `grotop.cli.main` the command-line client.
"""

from .counting import (
    AntichainCensus,
    CountReport,
    InequalityVerdict,
    antichain_census,
    count_report,
    verify_inequalities,
)
from .dcpo import (
    Dcpo,
    OpenSet,
    SpectralVerdict,
    filter_completion,
    finite_elements,
    is_algebraic,
    is_spectral,
    open_intersection,
    scott_closure,
    way_below,
)
from .errors import GrotopError
from .families import (
    OMEGA,
    FamilySieve,
    PointSetPresentation,
    PosetFamily,
    Supernatural,
    family_leq,
    family_point_membership,
    family_truncate,
    get_family,
    parse_supernatural,
    supernatural_join,
    supernatural_leq,
)
from .patch import (
    ConvergenceVerdict,
    Profile,
    converges_pointwise,
    embed_profile,
    is_strong_closed,
    locally_closed_basis,
    metric,
    patch_closure,
    strong_closure,
)
from .posets import (
    ElementSet,
    Filter,
    FinitePoset,
    cone,
    enumerate_antichains,
    enumerate_down_sets,
    enumerate_filters,
    minimal_elements,
    parse_poset,
)
from .sieves import (
    GrothendieckTopology,
    Sieve,
    check_topology_axioms,
    enumerate_topologies,
    family_finite_type,
    finite_type,
    points_of_topology,
    sieves_on,
    topology_from_points,
)

__version__ = "0.1.0"

__all__ = [
    "AntichainCensus",
    "ConvergenceVerdict",
    "CountReport",
    "Dcpo",
    "ElementSet",
    "FamilySieve",
    "Filter",
    "FinitePoset",
    "GrothendieckTopology",
    "GrotopError",
    "InequalityVerdict",
    "OMEGA",
    "OpenSet",
    "PointSetPresentation",
    "PosetFamily",
    "Profile",
    "Sieve",
    "SpectralVerdict",
    "Supernatural",
    "antichain_census",
    "check_topology_axioms",
    "cone",
    "converges_pointwise",
    "count_report",
    "embed_profile",
    "enumerate_antichains",
    "enumerate_down_sets",
    "enumerate_filters",
    "enumerate_topologies",
    "family_finite_type",
    "family_leq",
    "family_point_membership",
    "family_truncate",
    "filter_completion",
    "finite_elements",
    "finite_type",
    "get_family",
    "is_algebraic",
    "is_spectral",
    "is_strong_closed",
    "locally_closed_basis",
    "metric",
    "minimal_elements",
    "open_intersection",
    "parse_poset",
    "parse_supernatural",
    "patch_closure",
    "points_of_topology",
    "scott_closure",
    "sieves_on",
    "strong_closure",
    "supernatural_join",
    "supernatural_leq",
    "topology_from_points",
    "verify_inequalities",
    "way_below",
]
