"""Weighted dual graphs of boundary divisors of affine ruled surfaces.

Blowups, blowdowns and elementary transformations on weighted trees;
standard forms of zigzags; extended graphs with their degenerate fibers,
normalization and configuration invariants; blowup schedules with rational
parameters; a small text format and a command-line tool.
"""

from .errors import *  # noqa: F401,F403
from .extended import (ComponentKind, ExtendedGraph, Fiber, NormalizedExtendedGraph,
                       contract_canonically, mother_map, normalize, validate)
from .graph import (Role, Vertex, WeightedGraph, Zigzag, canonical_code, classify_chain,
                    is_standard_circular, is_standard_graph, segments)
from .invariants import (ConfigurationInvariant, FeatherData, PointConfig, Verdict, Witness,
                         canonical_config, config_space_dim, configuration_invariant,
                         decide_equivalence, match_feather_data, reverse_normalized)
from .presentation import (BlowupSchedule, Instance, OneSkeleton, instantiate, one_skeleton,
                           presentation_dimension, random_params, schedule_from)
from .surgery import (SurgeryStep, SurgeryTranscript, blow_down, blow_up, confluence_oracle,
                      elementary_transform, reverse, standard_forms, standardize)

__version__ = "0.1.0"
