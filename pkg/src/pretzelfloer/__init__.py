"""Dual Thurston polytopes of four-column pretzel links.

Three independent pipelines with full cross-validation: closed-form
vertex tables, a from-scratch grid-diagram link Floer homology engine
over GF(2), and a Fox-calculus Alexander polynomial oracle, plus
Morse-movie schedules of the norm-realizing spanning surfaces.
"""

__version__ = "0.1.0"

from .closedform import (
    PretzelParams,
    SurfaceComplexities,
    dual_thurston_polytope,
    hfl_hull_oracle,
    knot_component,
    support_constraints,
    surface_complexities,
    theorem1_points,
)
from .polytope import (
    Point2,
    Polytope2,
    center,
    convex_hull,
    is_centrally_symmetric,
    minkowski_diff,
    minkowski_sum,
    thurston_norm,
)
from .links import (
    GridDiagram,
    PDCode,
    SignedPretzel,
    WirtingerPresentation,
    canonicalize,
    parse_grid,
    pd_to_grid,
    pretzel_pd,
    serialize_grid,
    torus_pd,
    twist_region_pd,
    wirtinger,
)
from .alexander import (
    LaurentPoly,
    alexander_poly,
    equal_up_to_units,
    fox_derivative,
    mcmullen_check,
    newton_polytope,
)
from .domains import (
    Domain,
    domain_between,
    filtration_vector,
    is_periodic,
    is_positive,
    maslov_index,
    periodic_basis,
)
from .gridfloer import (
    BudgetExceeded,
    GridState,
    RankTable,
    differential,
    enumerate_states,
    grade,
    graded_euler,
    hat_support_hull,
    homology_ranks,
    thurston_polytope,
)
from .movie import MoveSchedule, render_schedule, schedule_FK, schedule_FU

__all__ = [name for name in dir() if not name.startswith("_")]
