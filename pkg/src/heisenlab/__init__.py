"""Computational toolkit for the sub-Riemannian Heisenberg group H^n.

Exact group algebra and gauge metric, symplectic linear algebra on the
horizontal layer, horizontal polylines with machine-exact lifts and
solved geodesics, Lipschitz extension of partial curve data, discrete
contact analysis of sampled maps, and covering/measure experiments.
"""

from .core import (
    ETangent,
    HFrame,
    contact_form,
    check_point,
    dilate,
    dim_n,
    from_blocks,
    group_inv,
    group_mul,
    horizontal_frame,
    identity,
    koranyi_dist,
    koranyi_norm,
    point,
    to_blocks,
    tpart,
    zpart,
)
from .curves import (
    HorizontalPolyline,
    NonConvergenceError,
    PlanarPolyline,
    cc_distance,
    cc_distance_batch,
    cc_length,
    geodesic,
    horizontal_lift,
    left_translate,
    point_at_length,
    projected_signed_areas,
    segment_lift_residual,
)
from .symplectic import (
    HIsometry,
    Subspace,
    complex_structure,
    is_isotropic,
    isometry_between_isotropic,
    lagrangian_extension,
    random_isotropic_subspace,
    symp_complement,
    symp_form,
)
from .extension import (
    CircleDomain,
    IntervalDomain,
    PartialCurveData,
    extend_circle,
    extend_interval,
    lipschitz_constant,
)
from .neighbors import nn_distances, pairs_within
from .contact import (
    ContactReport,
    DegenerateMapError,
    SampledMap,
    contact_residual,
    finite_diff_jacobian,
    holder_exponent_estimate,
    injectivity_collision_search,
    loop_integral_residual,
    pullback_symplectic,
    rank_report,
)
from .covering import (
    BallCovering,
    DecayConfig,
    DecayResult,
    PointCloud,
    box_counting_dimension,
    content_decay_experiment,
    greedy_ball_covering,
    hausdorff_content,
    sard_covering,
)

__version__ = "0.1.0"
