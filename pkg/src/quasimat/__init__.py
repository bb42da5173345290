"""Matroids from multigraphs with a classified cycle space.

Each cycle of a multigraph is labelled balanced, lift, or frame; a proper
labelling determines a matroid on the edge set generalizing graphic, lifted-
graphic, and frame matroids.  The package provides the rank, independence,
closure, circuit, and connectivity oracles, minors, two-sum decomposition,
and exhaustive verification campaigns over small instances.
"""

from .multigraph import (
    CycleBudgetExceeded,
    GraphError,
    Multigraph,
    Shape,
    ShapeKind,
    complete_graph,
    cycle_graph,
)
from .tripartition import (
    BiasSpec,
    CycleClass,
    ImproperTripartition,
    QuasiBiasedGraph,
    ValidationReport,
    all_balanced,
    all_unbalanced,
    from_bias_spec,
)
from .matroid import BudgetExceeded, MatroidView
from .minors import MinorRecipe, apply_recipe, contract, contract_flat, delete
from .unbreakability import (
    BreakWitness,
    OutcomeTag,
    Rank2Tag,
    StructureOutcome,
    breakability_structure,
    classify_rank2_disconnected,
    cycle_case_3connected,
    find_balancing_sets,
    is_3connected_nearly_complete,
    is_balancing,
    is_unbreakable_bruteforce,
    is_unbreakable_rank2,
)
from .decomposition import (
    CircuitMatroid,
    DecompositionTree,
    LinkSumSpec,
    link_sum,
    two_sum_abstract,
    verify_decomposition,
)
from .corpus import (
    EnumerationParams,
    connected_multigraphs,
    enumerate_signed,
    enumerate_tripartitions,
    proper_tripartitions,
    sign_maps,
)
from .campaigns import CAMPAIGNS, CampaignReport, run_campaign
from .files import ParseError, load, parse, serialize

__version__ = "0.1.0"
