"""Graph attention encoder with a mean readout."""

import math

import torch
from torch import nn

from hvrp.config.schema import PredictorConfig
from hvrp.core.exceptions import PredictorError
from hvrp.neural.graph import GraphBatch, KnnGraph, collate

N_FEATURES = 3

DTYPES = {"float32": torch.float32, "float64": torch.float64}


class NeighborAttention(nn.Module):
    """Multi-head attention where each node attends to its neighbor list only."""

    def __init__(self, hidden_dim: int, n_heads: int) -> None:
        """Create the projections W^Q, W^K, W^V and W^O."""
        super().__init__()
        self.n_heads = n_heads
        self.head_dim = hidden_dim // n_heads
        self.w_q = nn.Linear(hidden_dim, hidden_dim, bias=False)
        self.w_k = nn.Linear(hidden_dim, hidden_dim, bias=False)
        self.w_v = nn.Linear(hidden_dim, hidden_dim, bias=False)
        self.w_o = nn.Linear(hidden_dim, hidden_dim)

    def attention_weights(
        self, u: torch.Tensor, neighbors: torch.Tensor, mask: torch.Tensor
    ) -> torch.Tensor:
        """Softmax over each node's neighbors, shape (nodes, heads, slots)."""
        m = u.shape[0]
        q = self.w_q(u).view(m, self.n_heads, self.head_dim)
        k = self.w_k(u).view(m, self.n_heads, self.head_dim)[neighbors]
        scores = torch.einsum("mhd,mkhd->mhk", q, k) / math.sqrt(self.head_dim)
        scores = scores.masked_fill(~mask[:, None, :], float("-inf"))
        return torch.softmax(scores, dim=-1)

    def forward(
        self, u: torch.Tensor, neighbors: torch.Tensor, mask: torch.Tensor
    ) -> torch.Tensor:
        """Attend over neighbors and merge heads."""
        m = u.shape[0]
        weights = self.attention_weights(u, neighbors, mask)
        v = self.w_v(u).view(m, self.n_heads, self.head_dim)[neighbors]
        heads = torch.einsum("mhk,mkhd->mhd", weights, v)
        return self.w_o(heads.reshape(m, -1))


class EncoderLayer(nn.Module):
    """Attention and feed-forward sublayers, each with residual + LayerNorm."""

    def __init__(self, hidden_dim: int, n_heads: int, ff_dim: int) -> None:
        """Create one encoder layer."""
        super().__init__()
        self.attention = NeighborAttention(hidden_dim, n_heads)
        self.norm_attention = nn.LayerNorm(hidden_dim)
        self.feed_forward = nn.Sequential(
            nn.Linear(hidden_dim, ff_dim),
            nn.ReLU(),
            nn.Linear(ff_dim, hidden_dim),
        )
        self.norm_feed_forward = nn.LayerNorm(hidden_dim)

    def forward(
        self, u: torch.Tensor, neighbors: torch.Tensor, mask: torch.Tensor
    ) -> torch.Tensor:
        """Apply both sublayers."""
        u = self.norm_attention(u + self.attention(u, neighbors, mask))
        return self.norm_feed_forward(u + self.feed_forward(u))


class PredictorModel(nn.Module):
    """Predicts a CVRP's routing cost from its KNN graph.

    Node features are embedded, passed through the encoder layers, mapped to
    one value per node by the readout, averaged per graph and multiplied by
    the graph's coordinate scale factor.
    """

    def __init__(self, config: PredictorConfig) -> None:
        """Build the layers described by ``config``."""
        super().__init__()
        self.config = config
        self.embed = nn.Linear(N_FEATURES, config.hidden_dim)
        self.layers = nn.ModuleList(
            EncoderLayer(config.hidden_dim, config.n_heads, config.ff_dim)
            for _ in range(config.n_layers)
        )
        self.readout = nn.Linear(config.hidden_dim, 1)

    @property
    def dtype(self) -> torch.dtype:
        """Parameter dtype."""
        return self.embed.weight.dtype

    def forward(self, batch: GraphBatch) -> torch.Tensor:
        """Predicted cost per graph, shape (graphs,).

        Raises:
            PredictorError: If the feature width does not match the model
        """
        if batch.features.shape[-1] != self.embed.in_features:
            raise PredictorError(
                f"graph has {batch.features.shape[-1]} features, model expects "
                f"{self.embed.in_features}"
            )
        u = self.embed(batch.features)
        for layer in self.layers:
            u = layer(u, batch.neighbors, batch.mask)
        per_node = self.readout(u).squeeze(-1)
        sums = torch.zeros(batch.n_graphs, dtype=per_node.dtype).index_add(
            0, batch.graph_index, per_node
        )
        return sums / batch.node_counts * batch.scale

    def predict(self, graphs: list[KnnGraph]) -> torch.Tensor:
        """Forward a list of graphs without tracking gradients."""
        with torch.no_grad():
            return self(collate(graphs, self.dtype))


def create_model(config: PredictorConfig | None = None, seed: int = 0) -> PredictorModel:
    """Create a freshly initialized model in the configured dtype.

    Initialization draws from a private RNG state so it depends only on
    ``seed``.
    """
    config = config or PredictorConfig()
    with torch.random.fork_rng(devices=[]):
        torch.manual_seed(seed)
        model = PredictorModel(config)
    return model.to(DTYPES[config.dtype])


def loss(model: PredictorModel, graph: KnnGraph, label: float) -> torch.Tensor:
    """Squared error ``(prediction - label)^2`` for one graph."""
    prediction = model(collate([graph], model.dtype))[0]
    return (prediction - label) ** 2


def grad(model: PredictorModel, graph: KnnGraph, label: float) -> dict[str, torch.Tensor]:
    """Gradient of ``loss`` with respect to every named parameter."""
    names, params = zip(*model.named_parameters(), strict=True)
    grads = torch.autograd.grad(loss(model, graph, label), params, allow_unused=True)
    return {
        name: torch.zeros_like(param) if g is None else g
        for name, param, g in zip(names, params, grads, strict=True)
    }
