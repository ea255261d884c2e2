"""Bus-factor estimation on bipartite people/task graphs."""

from .errors import (BusFactorError, DomainError, GenerationError, GuardError,
                     NotFoundError, ParseError)
from .graph import (BipartiteGraph, CompactGraph, StructuralFeatures, coverage, degree,
                    max_connected_tasks, read_edge_list, remove_people,
                    structural_features, write_edge_list)
from .unionfind import TaskUnionFind
from .generator import (GeneratorParams, generate_power_law_bipartite,
                        generate_random_bipartite)
from .heuristics import (RemovalOrder, combined_estimate, degree_order,
                         greedy_isolation_order, greedy_tau_order,
                         maximum_coverage_order, minimum_coverage_order, mixed_order)
from .measures import (BusFactorScore, DecayCurve, coverage_curve, estimate_avelino,
                       estimate_piccolo, estimate_zazworka, exact_avelino, exact_piccolo,
                       tau_curve)

__version__ = "0.1.0"
