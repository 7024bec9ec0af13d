"""
Shared plumbing of the command-line commands: flags, typed config
construction, output writing and the run manifest.
"""

import argparse
import sys
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Type, TypeVar

import numpy as np
import pandas as pd
import pydantic
import structlog
from pydantic import BaseModel

from jointdyad import __version__
from jointdyad.graph.core import DirectedBinaryGraph
from jointdyad.graph.edgelist import read_edge_list, write_edge_list
from jointdyad.model.params import ModelParams
from jointdyad.utils.exceptions import ValidationError


logger = structlog.get_logger(__name__)

ModelT = TypeVar("ModelT", bound=BaseModel)

MANIFEST_NAME = "manifest.json"


class RunManifest(BaseModel):
    """Everything needed to repeat a run"""
    command: str
    version: str = __version__
    seed: Optional[int] = None
    config: Dict[str, Any] = {}
    inputs: Dict[str, str] = {}
    outputs: List[str] = []
    started_at: datetime
    duration_seconds: float = 0.0


def common_flags() -> argparse.ArgumentParser:
    """Parent parser carrying the flags every command accepts."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=0, help="Seed of every random stream (default: 0)")
    parent.add_argument("--threads", type=int, default=None, help="Worker cap (default: JOINTDYAD_THREADS or all cores)")
    parent.add_argument("-o", "--output-dir", type=Path, default=Path("."), help="Directory for output files (default: .)")
    parent.add_argument("--quiet", action="store_true", help="Only log warnings and errors")
    parent.add_argument("--csv-only", action="store_true", help="Write tables to stdout and skip JSON outputs")
    return parent


def fit_flags(parser: argparse.ArgumentParser) -> None:
    """EM policy flags shared by fit and cv; unset flags fall back to settings."""
    parser.add_argument("--restarts", type=int, default=None, help="Random initializations")
    parser.add_argument("--max-iter", type=int, default=None, help="EM iteration cap per restart")
    parser.add_argument("--tol", type=float, default=None, help="Convergence threshold on the log-likelihood")
    parser.add_argument("--check-every", type=int, default=None, help="Iterations between convergence checks")
    parser.add_argument("--eta-fixed", type=float, default=None, help="Pin eta (1 gives independent dyads)")
    parser.add_argument("--assortative", action="store_true", help="Restrict w to its diagonal")
    parser.add_argument("--undirected-input", action="store_true", help="Each input line adds both directions")


def build_config(model: Type[ModelT], **values: Any) -> ModelT:
    """Instantiate a typed config, skipping unset values; errors become ValidationError."""
    try:
        return model(**{key: value for key, value in values.items() if value is not None})
    except pydantic.ValidationError as e:
        raise ValidationError(f"invalid {model.__name__}: {e}") from e


def fit_config_values(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        "n_restarts": args.restarts,
        "max_iter": args.max_iter,
        "tol": args.tol,
        "check_every": args.check_every,
        "eta_fixed": args.eta_fixed,
        "assortative": args.assortative,
        "seed": args.seed,
    }


def load_graph(path: Path, undirected: bool = False) -> DirectedBinaryGraph:
    return read_edge_list(path, directed_format=not undirected)


def align_graph(g: DirectedBinaryGraph, params: ModelParams) -> DirectedBinaryGraph:
    """
    Re-index ``g`` to the node order of ``params``.

    Edge lists only know the nodes they mention, in first-appearance
    order; labeled parameters fix the order and may carry extra
    (isolated) nodes.
    """
    if params.node_labels is None:
        if params.n_nodes != g.n_nodes:
            raise ValidationError(
                f"parameters describe {params.n_nodes} nodes, graph has {g.n_nodes}"
            )
        return g

    position = {label: index for index, label in enumerate(params.node_labels)}
    unknown = [label for label in g.labels() if label not in position]
    if unknown:
        raise ValidationError(
            f"{len(unknown)} graph nodes are missing from the parameters, e.g. '{unknown[0]}'"
        )
    new_index = [position[label] for label in g.labels()]
    edges = ((new_index[i], new_index[j]) for i, j in g.edges)
    aligned = DirectedBinaryGraph(params.n_nodes, edges, node_labels=params.node_labels)
    if aligned.n_nodes != g.n_nodes:
        logger.info("isolated_nodes_restored", count=aligned.n_nodes - g.n_nodes)
    return aligned


def align_params(reference: ModelParams, other: ModelParams) -> ModelParams:
    """
    Rows of ``other`` in the node order of ``reference``.

    Nodes of ``reference`` that ``other`` never saw get zero membership
    rows. Without labels on both sides the shapes must already agree.
    """
    if reference.node_labels is None or other.node_labels is None:
        if reference.u.shape != other.u.shape:
            raise ValidationError(
                f"memberships {reference.u.shape} and {other.u.shape} differ in shape"
            )
        return other
    if reference.n_communities != other.n_communities:
        raise ValidationError(
            f"K differs: {reference.n_communities} vs {other.n_communities}"
        )

    rows = {label: index for index, label in enumerate(other.node_labels)}
    known = set(reference.node_labels)
    unknown = [label for label in other.node_labels if label not in known]
    if unknown:
        raise ValidationError(f"{len(unknown)} nodes are missing from the reference, e.g. '{unknown[0]}'")

    u = np.zeros_like(reference.u)
    v = np.zeros_like(reference.v)
    for index, label in enumerate(reference.node_labels):
        if label in rows:
            u[index] = other.u[rows[label]]
            v[index] = other.v[rows[label]]
    missing = reference.n_nodes - other.n_nodes
    if missing:
        logger.info("zero_rows_for_unseen_nodes", count=missing)
    return other.replace(u=u, v=v, node_labels=list(reference.node_labels))


class OutputWriter:
    """
    Writes the files of one run and its manifest.

    With ``csv_only`` the JSON outputs (manifest included) are skipped and
    tables are streamed to stdout instead of files.
    """

    def __init__(self, command: str, args: argparse.Namespace):
        self.output_dir: Path = args.output_dir
        self.csv_only: bool = args.csv_only
        self.started = time.perf_counter()
        self.manifest = RunManifest(
            command=command,
            seed=args.seed,
            started_at=datetime.now(timezone.utc),
        )

    def _path(self, name: str) -> Path:
        path = self.output_dir / name
        path.parent.mkdir(parents=True, exist_ok=True)
        self.manifest.outputs.append(name)
        return path

    def record(self, config: Optional[Dict[str, Any]] = None, **inputs: Path) -> None:
        if config:
            self.manifest.config.update(config)
        self.manifest.inputs.update({key: str(value) for key, value in inputs.items()})

    def json(self, name: str, document: BaseModel) -> None:
        if self.csv_only:
            return
        self._path(name).write_text(document.model_dump_json(indent=2) + "\n", encoding="utf-8")

    def csv(self, name: str, frame: pd.DataFrame) -> None:
        if self.csv_only:
            frame.to_csv(sys.stdout, index=False)
            return
        frame.to_csv(self._path(name), index=False)

    def edges(self, name: str, graph: DirectedBinaryGraph) -> None:
        write_edge_list(graph, self._path(name))

    def finish(self) -> RunManifest:
        self.manifest.duration_seconds = time.perf_counter() - self.started
        if not self.csv_only:
            path = self.output_dir / MANIFEST_NAME
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.manifest.model_dump_json(indent=2) + "\n", encoding="utf-8")
        logger.info(
            "run_finished",
            command=self.manifest.command,
            outputs=len(self.manifest.outputs),
            duration_seconds=round(self.manifest.duration_seconds, 3),
        )
        return self.manifest
