"""Semiregular automorphisms of cubic vertex-transitive graphs."""
from __future__ import annotations

from .constructions import (
    cayley_graph,
    circular_ladder,
    directed_px,
    generalized_petersen,
    mobius_ladder,
    petersen,
    px,
    px_groups,
    w_module_group,
)
from .errors import NotAutomorphismError, TooLargeError
from .graph_aut import are_isomorphic, automorphism_group
from .graphs import Digraph, Graph, induced_action_on_blocks, normal_quotient
from .groups import (
    PermutationGroup,
    max_semiregular_order,
    satisfies_property_P,
    semiregular_witness,
    spectrum,
    subgroups_up_to_conjugacy,
)
from .harness import AnalysisReport, analyze, verify_row
from .perm import Permutation
from .split_merge import CyclePartition, merge, s_partition, split, split_px, super_flip

__version__ = "0.1.0"
