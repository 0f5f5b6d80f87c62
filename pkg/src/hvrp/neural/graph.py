"""KNN graphs and their batched tensor form."""

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
import torch

from hvrp.instances.types import CvrpInstance


@dataclass(frozen=True, eq=False)
class KnnGraph:
    """Normalized node features and neighbor lists of one CVRP.

    Node 0 is the depot. ``features`` columns are normalized x, normalized y and
    demand / Q. ``neighbors[i]`` lists the ``min(k, N)`` nearest other nodes of
    node i, nearest first, ties to the lower node index.
    """

    features: np.ndarray
    neighbors: np.ndarray
    scale_factor: float

    @property
    def n_nodes(self) -> int:
        """Number of nodes including the depot."""
        return len(self.features)


def normalize_coordinates(points: np.ndarray) -> tuple[np.ndarray, float]:
    """Translate so the per-axis minimum is 0, then divide by the largest value.

    Returns:
        (normalized points in [0, 1], divisor); the divisor is 1 when all points
        coincide
    """
    shifted = points - points.min(axis=0)
    scale = float(shifted.max())
    if scale <= 0:
        scale = 1.0
    return shifted / scale, scale


def build_knn_graph(instance: CvrpInstance, k: int) -> KnnGraph:
    """Build the predictor input graph of a CVRP.

    Args:
        instance: The CVRP
        k: Neighbors per node (clipped to N)

    Returns:
        KnnGraph

    Raises:
        ValueError: If k < 1
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    coords, scale = normalize_coordinates(instance.points)
    demand = instance.node_demands / instance.capacity
    features = np.column_stack([coords, demand])

    distances = np.array(instance.distances)
    np.fill_diagonal(distances, np.inf)
    width = min(k, instance.n_customers)
    neighbors = np.argsort(distances, axis=1, kind="stable")[:, :width]
    features.setflags(write=False)
    neighbors.setflags(write=False)
    return KnnGraph(features=features, neighbors=neighbors, scale_factor=scale)


@dataclass
class GraphBatch:
    """Disjoint union of graphs as flat tensors.

    ``neighbors`` index rows of ``features`` across the whole batch; padded
    slots point at the node itself and are False in ``mask``.
    """

    features: torch.Tensor
    neighbors: torch.Tensor
    mask: torch.Tensor
    graph_index: torch.Tensor
    node_counts: torch.Tensor
    scale: torch.Tensor

    @property
    def n_graphs(self) -> int:
        """Number of graphs in the batch."""
        return len(self.scale)


def collate(graphs: Sequence[KnnGraph], dtype: torch.dtype = torch.float64) -> GraphBatch:
    """Stack graphs into one GraphBatch."""
    width = max(graph.neighbors.shape[1] for graph in graphs)
    total = sum(graph.n_nodes for graph in graphs)
    neighbors = np.repeat(np.arange(total)[:, None], width, axis=1)
    mask = np.zeros((total, width), dtype=bool)
    offset = 0
    for graph in graphs:
        rows = slice(offset, offset + graph.n_nodes)
        cols = graph.neighbors.shape[1]
        neighbors[rows, :cols] = graph.neighbors + offset
        mask[rows, :cols] = True
        offset += graph.n_nodes
    counts = [graph.n_nodes for graph in graphs]
    return GraphBatch(
        features=torch.as_tensor(
            np.vstack([graph.features for graph in graphs]), dtype=dtype
        ),
        neighbors=torch.as_tensor(neighbors, dtype=torch.long),
        mask=torch.as_tensor(mask),
        graph_index=torch.repeat_interleave(
            torch.arange(len(graphs)), torch.as_tensor(counts)
        ),
        node_counts=torch.as_tensor(counts, dtype=dtype),
        scale=torch.as_tensor([graph.scale_factor for graph in graphs], dtype=dtype),
    )
