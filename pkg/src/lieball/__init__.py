"""Numerical geometry of the correspondence between the tangent bundle of
the Poincare ball and the Lie ball (Cartan's fourth bounded symmetric
domain): Moebius motions with holomorphic continuation, oriented-sphere
parametrizations, the diffeomorphism between bundle and ball, and the
induced Kahler-type metric with geodesic verification."""

from .core import (
    DEFAULT_TOL,
    BallClassification,
    BallRegion,
    classify,
    hermitian_norm_sq,
    lie_gauge,
    q_form,
)
from .correspondence import boundary_tangency, s_inv, s_map, theta, theta_inv
from .errors import (
    ConstructionMismatchError,
    DomainError,
    GeometryError,
    IllConditionedError,
    InternalError,
    IsotropicConeError,
    NoConvergenceError,
    NotBoundaryError,
    NotInteriorError,
    RankDeficientError,
    SingularDenominatorError,
    StepOutError,
)
from .metric import (
    GeodesicPath,
    MetricTensor,
    christoffel_fd,
    geodesic_integrate,
    leaf_embed,
    metric_at,
    path_energy,
    theta_jacobian,
)
from .moebius import (
    HyperbolicMotion,
    Inversion,
    delta_apply,
    delta_differential,
    delta_param_differential,
    delta_second_differential,
    hyp_distance,
    hyp_midpoint,
    inversion_apply,
    motion_apply,
    motion_apply_sphere,
    motion_compose,
    motion_differential,
    motion_inverse,
    motion_parity,
    motion_second_differential,
    tangent_action,
)
from .oracles import (
    SampleSet,
    conformality_check,
    fd_jacobian,
    fit_sphere,
    newton_theta_inv,
    sample_sphere,
)
from .spheres import (
    OrientedSphere,
    TangentVector,
    sphere_contains_point,
    sphere_euc_to_hyp,
    sphere_hyp_to_euc,
    t_inv,
    t_map,
)

__version__ = "0.1.0"
