"""Hull-covers and box-covers of forests of non-crossing plane trees.

The library computes the unique fixpoint partition of a forest into pairwise
disjoint regions under a region function (convex hull or axis-aligned box),
both by the defining naive merge process and by fast engines (ray shooting
with permanent ray insertion for hulls, a segment range index for boxes),
and ships the machinery to check when such covers are well-defined.
"""

__version__ = "0.1.0"

from .boxcover import box_cover_fast, maximal_boxes
from .geom import (
    AABB,
    Circle,
    ConvexPolygon,
    box_of,
    box_union,
    boxes_intersect,
    boundary_intersection_points,
    circles_intersect,
    convex_hull,
    merge_convex_hulls,
    min_enclosing_circle,
    orient,
    point_in_convex_polygon,
    polygons_intersect,
    segments_intersect,
)
from .hullcover import hull_cover_fast, maximal_regions, weakly_disjoint
from .model import (
    Cover,
    GeometricTree,
    Instance,
    generate,
    parse_instance,
    serialize_instance,
    validate_instance,
)
from .phicover import (
    PHI,
    MergePolicy,
    check_phi_properties,
    check_well_defined,
    naive_phi_cover,
)

__all__ = [
    "AABB",
    "Circle",
    "ConvexPolygon",
    "Cover",
    "GeometricTree",
    "Instance",
    "MergePolicy",
    "PHI",
    "box_cover_fast",
    "box_of",
    "box_union",
    "boxes_intersect",
    "boundary_intersection_points",
    "check_phi_properties",
    "check_well_defined",
    "circles_intersect",
    "convex_hull",
    "generate",
    "hull_cover_fast",
    "maximal_boxes",
    "maximal_regions",
    "merge_convex_hulls",
    "min_enclosing_circle",
    "naive_phi_cover",
    "orient",
    "parse_instance",
    "point_in_convex_polygon",
    "polygons_intersect",
    "segments_intersect",
    "serialize_instance",
    "validate_instance",
    "weakly_disjoint",
    "__version__",
]
