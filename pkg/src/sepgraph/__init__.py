"""Separating sets, minimum vertex cuts and path moduli on measure graphs."""
from ._accel import backend_name
from .errors import (CapExceeded, CoincidentPoles, ComputationError, DegenerateDuals, NoPath, NonConvergence,
                     NotSeparating, SepGraphError, TerminalsMerged, ValidationError, ZeroFlow)
from .graph import MeasureGraph, connected_component, graph_to_dict, load_graph, path_intersection_count
from .mincut import CutResult, PathPencil, min_vertex_cut, pencil_from_flow
from .modulus import ModulusResult, modulus_p, pencil_from_duals, shortest_rho_path
from .separation import (Fibration, PositionField, RatioValue, disc_sr, disc_width, fibrate, is_separating,
                         is_slim, position_field, slimify)

__version__ = "0.1.0"
