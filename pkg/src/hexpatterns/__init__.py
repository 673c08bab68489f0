"""Hexagonal circle patterns from integrable lattice equations.

Vertex fields on a triangular lattice whose elementary hexagons all carry
multi-ratio -1 define circle patterns; a non-autonomous constraint singles
out the discrete z**(3*alpha) family with its log z**3 and z**(3/2)*log z
degenerations.  The package computes the fields, verifies the defining
invariants, audits the zero-curvature and monodromy-preserving structure,
and renders the resulting patterns.
"""
__version__ = "1.0.0"

from .errors import HexPatternError
from .geometry import (INFINITY, Circle, Line, circle_through, is_infinite,
                       multi_ratio, solve_sixth_point)
from .lattice import LatticePoint, OrientedEdge, canonicalize, embed
from .fgh import (VertexField, companion_field, edge_fields, fourth_point,
                  solve_sector, third_field, verify_mr)
from .isomonodromy import (ConstraintParams, axis_solve, closed_form_axis,
                           closed_form_axis_limits, solve_constrained_sector)
from .patterns import (CirclePattern, PatternBundle, VerificationReport,
                       assemble_full_plane, build_circle_pattern,
                       central_extension, circle_row_propagate,
                       generate_limit_pattern, generate_zalpha,
                       verify_pattern)
from .document import (PatternDocument, from_bundle, load_json, save_json)
from .svg import RenderOptions, render_svg

__all__ = [
    "HexPatternError", "INFINITY", "Circle", "Line", "circle_through",
    "is_infinite", "multi_ratio", "solve_sixth_point", "LatticePoint",
    "OrientedEdge", "canonicalize", "embed", "VertexField",
    "companion_field", "edge_fields", "fourth_point", "solve_sector",
    "third_field", "verify_mr", "ConstraintParams", "axis_solve",
    "closed_form_axis", "closed_form_axis_limits",
    "solve_constrained_sector", "CirclePattern", "PatternBundle",
    "VerificationReport", "assemble_full_plane", "build_circle_pattern",
    "central_extension", "circle_row_propagate", "generate_limit_pattern",
    "generate_zalpha", "verify_pattern", "PatternDocument", "from_bundle",
    "load_json", "save_json", "RenderOptions", "render_svg", "__version__",
]
