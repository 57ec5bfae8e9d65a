"""Sample compression schemes for balls in graphs.

A library and CLI implementing proper labeled/unlabeled sample compression
schemes for ball families of trees, cycles, cacti, cube-free median graphs,
interval graphs, split graphs, planar graphs (radius 1), and delta-hyperbolic
graphs, together with the brute-force oracles (ball enumeration,
realizable-sample enumeration, VC-dimension, scheme verification) that
certify every scheme at desk scale.
"""

from .cactus import (CactusLSCS, CycleLSCS, cactus_compress, cactus_reconstruct,
                     cycle_compress, cycle_reconstruct, locate_center_edge)
from .cfmedian import (CubeFreeMedianLSCS, GridEmbedding, cfm_compress,
                       cfm_reconstruct, embed_interval, is_cube_free_median)
from .errors import (BallSchemeError, GraphError, InvalidEmbedding, MalformedInput,
                     NotCactus, NotGated, NotMedian, NotRealizable, NotSplit,
                     ParseError, SchemeError, Undefined, UnsupportedSpec)
from .generators import (GenSpec, GeneratedInstance, concept_to_split_graph,
                         generate, grid_graph, staircase_graph)
from .graph import (BlockTree, DistanceMatrix, Graph, SphereOrder,
                    all_pairs_distances, block_cut_tree, canonical_path,
                    diametral_pair, dfs_sphere_order, gate, interval, median,
                    phi, sphere)
from .hyperbolic import (HyperbolicApproxLSCS, Hyperbolicity, hyp_compress,
                         hyp_reconstruct, hyperbolicity)
from .intervals import (IntervalLSCS, IntervalRepresentation, farthest_pair,
                        iv_compress, iv_reconstruct, validate_representation)
from .oracle import (Ball, BallSpace, CompressedSample, Sample,
                     VerificationReport, empty_ball, enumerate_balls,
                     enumerate_realizable_samples, realizing_balls,
                     vc_dimension, verify_scheme)
from .splitplanar import (PlanarUnitLSCS, RotationSystem, SplitLSCS,
                          SplitPartition, planar_unit_compress,
                          planar_unit_reconstruct, potential_centers,
                          split_compress, split_partition, split_reconstruct,
                          validate_rotation)
from .trees import (MetricBall, TreeBallLSCS, TreeBallUSCS, TreeFixedRadiusLSCS,
                    TreeFixedRadiusNoInfo, tree_fixed_r_compress,
                    tree_fixed_r_noinfo_compress, tree_fixed_r_noinfo_reconstruct,
                    tree_fixed_r_reconstruct, tree_lscs_compress,
                    tree_lscs_reconstruct, tree_uscs_compress,
                    tree_uscs_reconstruct)

__version__ = "0.1.0"
