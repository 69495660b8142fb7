"""detourkit: exact-detour decision on undirected graphs.

Library surface: GF(2^64) field arithmetic, BFS-layered graphs with
interval/tail views, the labeled-walk sieve for bipartitioned-path
queries, an exact-length path solver, the layered detour program, and
exhaustive oracles for verification.
"""

from . import field64
from .brute_oracle import (PathRecord, bipartitioned_exists, check_label_bound,
                           check_split_claim, detour_exists, enumerate_paths,
                           path_length_set, signature_set)
from .detour_dp import (DEFAULT_ALPHA, Alpha, DetourQuery, DetourResult,
                        OffsetTable, UnreachableTargetError,
                        compute_offset_table, solve, solve_detailed)
from .layered_graph import (Bipartition, EdgeClass, Graph, GraphError,
                            LayeredGraph, SubgraphView, bfs_layers,
                            classify_edge, interval_view, parity_partition,
                            random_partition, subgraph_view, tail_view)
from .path_solver import (PathSolverConfig, SolverError, derive_seed,
                          exists_path_of_length, exists_path_upto)
from .walk_sieve import (SieveError, SieveQuery, SieveStats, VarAssignment,
                         decide, decide_cube, dp_state_count,
                         evaluate_polynomial)

__version__ = "0.1.0"
