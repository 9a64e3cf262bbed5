"""Ball bodies: intersections of congruent balls, their hulls and invariants.

The package splits into a small exact core (``core``, ``exact2d``,
``constants``, ``meb``), randomized estimators (``estimators``), the
contraction-threshold machinery (``contraction``) and the experiment
harness (``harness``).  ``cli`` exposes everything as the ``ballbody``
command.
"""

from .constants import (
    UnitBallConstants,
    ball_intrinsic_volume,
    ball_volume,
    mean_width_factor,
    unit_ball_volume,
    v1_factor,
)
from .core import (
    BallBody,
    BodyStatus,
    HullEmptyError,
    HullMembership,
    PointSet,
    ball_hull_membership,
    circumradius,
    dual,
    dual_of_ball_union,
    membership,
)
from .meb import minimum_enclosing_ball
from .exact2d import (
    Arc,
    ArcPolygon2D,
    area,
    boundary_points,
    disk_intersection,
    hausdorff_distance,
    perimeter,
    region_distance,
    render_svg,
    spindle_hull_2d,
    support_value,
    v1_2d,
)
from .estimators import (
    Estimate,
    EstimatorConfig,
    NoConvergenceError,
    mc_volume,
    project_onto,
    support_function,
    uniform_in_ball,
    v1_estimate,
    vk_estimate,
)
from .contraction import (
    SAUSAGE_DIM,
    BoundReport,
    Classification,
    ContractionInstance,
    InstanceCase,
    KappaRatio,
    Threshold,
    bound_chain,
    classify_instance,
    equivalent_radius_mu,
    is_contraction,
    is_uniform_contraction,
    jung_radius,
    kappa_ratio_check,
    minimal_integer,
    mode_applicable,
    modified_sausage_lower_bound,
    sample_clustered,
    sample_separated,
    sausage_volume_lower_bound,
    threshold_n,
)
from .harness import (
    ExperimentSpec,
    SweepResult,
    TrialRecord,
    any_violation,
    records_to_csv,
    records_to_json,
    run_bsz_check,
    run_identity_suite,
    run_kp_check,
    run_threshold_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "UnitBallConstants",
    "ball_intrinsic_volume",
    "ball_volume",
    "mean_width_factor",
    "unit_ball_volume",
    "v1_factor",
    "BallBody",
    "BodyStatus",
    "HullEmptyError",
    "HullMembership",
    "PointSet",
    "ball_hull_membership",
    "circumradius",
    "dual",
    "dual_of_ball_union",
    "membership",
    "minimum_enclosing_ball",
    "Arc",
    "ArcPolygon2D",
    "area",
    "boundary_points",
    "disk_intersection",
    "hausdorff_distance",
    "perimeter",
    "region_distance",
    "render_svg",
    "spindle_hull_2d",
    "support_value",
    "v1_2d",
    "Estimate",
    "EstimatorConfig",
    "NoConvergenceError",
    "mc_volume",
    "project_onto",
    "support_function",
    "uniform_in_ball",
    "v1_estimate",
    "vk_estimate",
    "SAUSAGE_DIM",
    "BoundReport",
    "Classification",
    "ContractionInstance",
    "InstanceCase",
    "KappaRatio",
    "Threshold",
    "bound_chain",
    "classify_instance",
    "equivalent_radius_mu",
    "is_contraction",
    "is_uniform_contraction",
    "jung_radius",
    "kappa_ratio_check",
    "minimal_integer",
    "mode_applicable",
    "modified_sausage_lower_bound",
    "sample_clustered",
    "sample_separated",
    "sausage_volume_lower_bound",
    "threshold_n",
    "ExperimentSpec",
    "SweepResult",
    "TrialRecord",
    "any_violation",
    "records_to_csv",
    "records_to_json",
    "run_bsz_check",
    "run_identity_suite",
    "run_kp_check",
    "run_threshold_sweep",
    "__version__",
]
