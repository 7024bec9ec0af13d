from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.graph.edgelist import (
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from jointdyad.graph.stats import GraphStats, graph_stats, reciprocity

__all__ = [
    "DirectedBinaryGraph",
    "GraphStats",
    "format_edge_list",
    "graph_stats",
    "parse_edge_list",
    "read_edge_list",
    "reciprocity",
    "write_edge_list",
]
