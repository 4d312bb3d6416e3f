from semflow.graphops.ops import BBox, LinkSpec, filter_bbox, filter_temporal, fuse, union
from semflow.graphops.shapes import Constraint, Shape, ValidationReport, Violation, load_shapes, validate

__all__ = [
    "union", "fuse", "LinkSpec", "filter_temporal", "filter_bbox", "BBox",
    "Shape", "Constraint", "Violation", "ValidationReport", "validate", "load_shapes",
]
