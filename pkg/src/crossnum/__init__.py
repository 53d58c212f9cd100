"""Crossing numbers of cubic graphs: reductions, heuristic drawings, exact search, verification."""

from .drawing import Drawing, DrawingError
from .graph import EdgeRef, Graph, Graph6Error, girth, is_cubic, parse_graph6, write_graph6
from .heuristic import EscalationSchedule, EscalationStage, HeuristicConfig, escalate, find_drawing, improve, schedule
from .oracle import euler_lower_bound, exact_crossing_number
from .planarity import is_planar, kuratowski_witness, planar_embedding
from .reductions import eliminate_girth3, lift_drawing, split_at_bridges
from .verify import planarize, verify_drawing

__all__ = [
    "Drawing",
    "DrawingError",
    "EdgeRef",
    "EscalationSchedule",
    "EscalationStage",
    "Graph",
    "Graph6Error",
    "HeuristicConfig",
    "eliminate_girth3",
    "escalate",
    "euler_lower_bound",
    "exact_crossing_number",
    "find_drawing",
    "girth",
    "improve",
    "is_cubic",
    "is_planar",
    "kuratowski_witness",
    "lift_drawing",
    "parse_graph6",
    "planar_embedding",
    "planarize",
    "schedule",
    "split_at_bridges",
    "verify_drawing",
    "write_graph6",
]

__version__ = "0.1.0"
