"""R-bodies toolkit: ball-complement hulloids, supporting-direction arcs,
R-cones, and reach certification in the plane."""

from .cones import (
    ConeSpec,
    Sector2,
    cone_contains,
    cone_equivalence_sample,
    dual_sector,
    normal_arcs,
    support_recovery_witness,
    tangent_cone,
)
from .exact import (
    ContactReport,
    LensSpec,
    SupportArcs,
    contact_points,
    lens_contains,
    membership_corR,
    membership_corR_cones,
    nr_convexity_profile,
    supporting_arcs,
)
from .geom import (
    Arc,
    ArcSet,
    Ball2,
    Point2,
    PointSet2,
    Tolerances,
    UnitVec2,
    arcset_intersect,
    arcset_is_sph_convex,
    make_arcset,
)
from .grid import (
    BinaryMask,
    SqDistField,
    boundary,
    convex_hull_mask,
    dilate,
    hausdorff,
    hulloid,
    hulloid_sweep,
    identity_report,
    is_rbody,
    remote_set,
    sq_edt,
)
from .reach import (
    certify_reach_d2,
    grid_convexity_profile,
    grid_supporting_bins,
    reach_ge_lens,
    reach_lower_bound,
    walther_rolling_check,
)
from .reports import (
    CheckReport,
    EmptyBodyError,
    InputError,
    NoInteriorError,
    NotSupportingError,
    ReachReport,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
