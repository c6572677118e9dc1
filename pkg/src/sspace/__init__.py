"""Tensor fields of type (0,2) as equivariant matrix maps on frame spaces.

A frame space packages a submersion onto a base manifold, a fiber-transitive
group action, and a family of frame maps moving rigidly under that action.
Tensor fields on the base then correspond to equivariant matrix-valued maps
on the total space; morphisms, connections, and naturality notions all act
on that matrix side.  The catalog subpackage ships worked instances with
randomized checks, runnable through the command line interface.
"""

from .config import DEFAULT, DiffConfig
from .connections import (
    ConnectionFunction,
    SSpaceConnection,
    connection_from_bases,
    connection_from_k,
    coframe_theta,
    coframe_w,
    fundamental_vertical_field,
    global_frame_check,
    horizontal_lift,
    lifted_metric,
    sasaki_mok_metric,
    splitting_report,
    verify_connection,
    vertical_space_basis,
)
from .core import (
    SSpace,
    act,
    admits_constant_rep,
    base_change,
    block_structure_test,
    dimension_identity,
    extract_base_change,
    frame_matrix,
    matrix_rep,
    random_fiber_mates,
    stabilizer_dim,
    tensor_from_matrix,
    vector_rep,
    verify_rigidity,
)
from .errors import SSpaceError
from .geometry import (
    Manifold,
    PointOn,
    RiemannianMetric,
    SmoothMap,
    Tangent,
    Tensor02Field,
    ambient_dot_metric,
    constant_matrix_tensor,
    euclidean,
    polynomial_tensor,
    product_manifold,
    pushforward,
    random_point,
    random_tangent,
    scale_tensor,
    sphere,
)
from .groups import (
    AlgebraElement,
    GroupElement,
    LieGroup,
    circle,
    general_linear,
    group_manifold,
    orthogonal,
    product_group,
    sign_group,
    special_orthogonal,
    trivial_group,
)
from .morphisms import (
    SSpaceMorphism,
    comes_from_tensor,
    invariance_group_member,
    is_invariant_tensor,
    is_subsspace,
    iterate_pullback,
    linking_map,
    over_map,
    pullback_matrix,
    verify_morphism,
)
from .naturality import (
    Atlas,
    constant_signature_sspace,
    depends_only_on_split,
    frame_twist,
    is_atlas_fibration_natural,
    is_atlas_natural,
    is_fibration_natural,
    is_lambda_natural,
    is_weak_natural,
    validate_atlas,
)
from .report import NaturalityReport, Report

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "DiffConfig",
    "Atlas",
    "AlgebraElement",
    "ConnectionFunction",
    "GroupElement",
    "LieGroup",
    "Manifold",
    "NaturalityReport",
    "PointOn",
    "Report",
    "RiemannianMetric",
    "SSpace",
    "SSpaceConnection",
    "SSpaceError",
    "SSpaceMorphism",
    "SmoothMap",
    "Tangent",
    "Tensor02Field",
    "act",
    "admits_constant_rep",
    "ambient_dot_metric",
    "base_change",
    "block_structure_test",
    "circle",
    "coframe_theta",
    "coframe_w",
    "comes_from_tensor",
    "connection_from_bases",
    "connection_from_k",
    "constant_matrix_tensor",
    "constant_signature_sspace",
    "depends_only_on_split",
    "dimension_identity",
    "euclidean",
    "extract_base_change",
    "frame_matrix",
    "frame_twist",
    "fundamental_vertical_field",
    "general_linear",
    "global_frame_check",
    "group_manifold",
    "horizontal_lift",
    "invariance_group_member",
    "is_atlas_fibration_natural",
    "is_atlas_natural",
    "is_fibration_natural",
    "is_invariant_tensor",
    "is_lambda_natural",
    "is_subsspace",
    "is_weak_natural",
    "iterate_pullback",
    "lifted_metric",
    "linking_map",
    "matrix_rep",
    "orthogonal",
    "over_map",
    "polynomial_tensor",
    "product_group",
    "product_manifold",
    "pullback_matrix",
    "pushforward",
    "random_fiber_mates",
    "random_point",
    "random_tangent",
    "sasaki_mok_metric",
    "scale_tensor",
    "sign_group",
    "special_orthogonal",
    "sphere",
    "splitting_report",
    "stabilizer_dim",
    "tensor_from_matrix",
    "trivial_group",
    "validate_atlas",
    "vector_rep",
    "verify_connection",
    "verify_morphism",
    "verify_rigidity",
    "vertical_space_basis",
]
