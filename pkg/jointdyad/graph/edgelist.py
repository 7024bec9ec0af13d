"""
Edge-list ingestion and export.

Format: one ``source target`` pair per line, whitespace separated.
Lines starting with ``#`` and blank lines are ignored. Node labels are
mapped to dense indices in order of first appearance.
"""

from pathlib import Path
from typing import Dict, List, Tuple, Union

import structlog

from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.utils.exceptions import EdgeListParseError


logger = structlog.get_logger(__name__)


def parse_edge_list(
    text: Union[bytes, str],
    directed_format: bool = True
) -> DirectedBinaryGraph:
    """
    Parse an edge list into a DirectedBinaryGraph.

    Args:
        text: Raw edge-list content
        directed_format: If False every line is read as an undirected
            tie and both directions are added

    Returns:
        Graph with duplicates collapsed and self-loops dropped

    Raises:
        EdgeListParseError: On a malformed line or when no node is found
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    index: Dict[str, int] = {}
    edges: List[Tuple[int, int]] = []
    self_loops = 0

    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        tokens = line.split()
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected 2 tokens 'source target', got {len(tokens)}",
                line_number=line_number,
            )

        source, target = (index.setdefault(token, len(index)) for token in tokens)
        if source == target:
            self_loops += 1
            continue

        edges.append((source, target))
        if not directed_format:
            edges.append((target, source))

    if not index:
        raise EdgeListParseError("edge list is empty")

    if self_loops:
        logger.warning("self_loops_dropped", count=self_loops)

    labels = sorted(index, key=index.__getitem__)
    graph = DirectedBinaryGraph(len(labels), edges, node_labels=labels)

    duplicates = len(edges) - graph.n_edges
    if duplicates:
        logger.info("duplicate_edges_collapsed", count=duplicates)

    logger.debug("edge_list_parsed", n_nodes=graph.n_nodes, n_edges=graph.n_edges)
    return graph


def read_edge_list(path: Union[str, Path], directed_format: bool = True) -> DirectedBinaryGraph:
    """Read and parse an edge-list file."""
    return parse_edge_list(Path(path).read_bytes(), directed_format=directed_format)


def format_edge_list(graph: DirectedBinaryGraph) -> str:
    """Serialize edges as ``source target`` lines using the external labels."""
    labels = graph.labels()
    lines = [f"{labels[i]} {labels[j]}" for i, j in graph.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def write_edge_list(graph: DirectedBinaryGraph, path: Union[str, Path]) -> Path:
    """Write the edge list to ``path`` and return it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_edge_list(graph), encoding="utf-8")
    return path
