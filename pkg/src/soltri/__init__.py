"""Translation-curve geometry in Sol space.

Points and isometries of the model, closed-form translation curves and
their inverse parametrization, translation distance, and the interior
angles of translation triangles, whose sum is always at least pi.
"""

from .core import (
    ORIGIN,
    MetricTensor,
    SolIsometry,
    SolPoint,
    apply,
    conjugate,
    group_inverse,
    group_multiply,
    sol_angle,
    stabilizer_elements,
    stabilizer_generators,
    translation_to,
)
from .curves import (
    CurveParams,
    Direction,
    curve_point,
    curve_tangent,
    endpoint_branch,
    params_from_endpoint,
    sample_curve,
    translation_distance,
)
from .triangles import (
    Triangle,
    TriangleReport,
    angle_sum,
    coplanarity_test,
    interior_angles,
    is_coordinate_planar,
    normalize,
    report,
    tangent_directions,
    vertex_images,
)

__version__ = "0.1.0"

__all__ = [
    "ORIGIN",
    "MetricTensor",
    "SolIsometry",
    "SolPoint",
    "apply",
    "conjugate",
    "group_inverse",
    "group_multiply",
    "sol_angle",
    "stabilizer_elements",
    "stabilizer_generators",
    "translation_to",
    "CurveParams",
    "Direction",
    "curve_point",
    "curve_tangent",
    "endpoint_branch",
    "params_from_endpoint",
    "sample_curve",
    "translation_distance",
    "Triangle",
    "TriangleReport",
    "angle_sum",
    "coplanarity_test",
    "interior_angles",
    "is_coordinate_planar",
    "normalize",
    "report",
    "tangent_directions",
    "vertex_images",
    "__version__",
]
