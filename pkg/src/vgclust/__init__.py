"""Agglomerative hierarchical clustering that stays unique under ties.

The variable-group engine merges every group of clusters tied at the
minimum distance in one step and records the spread of distances inside
each such group as a band.  A classical pair-group engine with explicit
tie-breaking is included for comparison.
"""

from .dendro import DeviationReport, NodeDetails, UltrametricMatrix, cophenetic_matrix, details, deviation_measures
from .linkage import GroupDistanceInput, Method, group_distance, pair_update
from .pair_group import EnumerationBudgetExceeded, TiePolicy, enumerate_tie_dendrograms, pair_group_cluster
from .proximity_io import (
    FormatKind,
    Measure,
    ProximityData,
    ProximityFormatError,
    apply_precision,
    detect_format,
    infer_precision,
    load_proximity,
    parse_list,
    parse_matrix,
    parse_proximity,
    similarity_to_dissimilarity,
)
from .tree import Dendrogram, Leaf, Multidendrogram, Node, canonical
from .variable_group import ReversalEvent, detect_band_reversals, variable_group_cluster

__version__ = "0.1.0"

__all__ = [
    "Dendrogram",
    "DeviationReport",
    "EnumerationBudgetExceeded",
    "FormatKind",
    "GroupDistanceInput",
    "Leaf",
    "Measure",
    "Method",
    "Multidendrogram",
    "Node",
    "NodeDetails",
    "ProximityData",
    "ProximityFormatError",
    "ReversalEvent",
    "TiePolicy",
    "UltrametricMatrix",
    "apply_precision",
    "canonical",
    "cophenetic_matrix",
    "detect_band_reversals",
    "detect_format",
    "details",
    "deviation_measures",
    "enumerate_tie_dendrograms",
    "group_distance",
    "infer_precision",
    "load_proximity",
    "pair_group_cluster",
    "pair_update",
    "parse_list",
    "parse_matrix",
    "parse_proximity",
    "similarity_to_dissimilarity",
    "variable_group_cluster",
]
