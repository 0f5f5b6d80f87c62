"""The trained predictor as a CostEstimator."""

from collections.abc import Sequence

import numpy as np

from hvrp.config.schema import DEFAULT_BUCKETS, SizeBucket, bucket_for
from hvrp.instances.types import CvrpInstance
from hvrp.neural.graph import build_knn_graph
from hvrp.neural.model import PredictorModel


class NeuralEstimator:
    """Batched predictor inference.

    Batches larger than the size bucket's limit are split internally; the
    limit is looked up from the largest instance in the batch.
    """

    name = "nn"

    def __init__(
        self, model: PredictorModel, buckets: list[SizeBucket] | None = None
    ) -> None:
        """Wrap a model for inference."""
        self.model = model.eval()
        self.buckets = buckets or DEFAULT_BUCKETS

    def batch_limit(self, instances: Sequence[CvrpInstance]) -> int:
        """Largest batch the size buckets allow for these instances."""
        largest = max(inst.n_customers for inst in instances)
        return bucket_for(largest, self.buckets).batch_size

    def estimate_batch(self, instances: Sequence[CvrpInstance]) -> np.ndarray:
        """Predict the routing cost of every instance, in order."""
        if not instances:
            return np.empty(0)
        limit = self.batch_limit(instances)
        k = self.model.config.knn
        out = []
        for start in range(0, len(instances), limit):
            graphs = [build_knn_graph(inst, k) for inst in instances[start : start + limit]]
            out.append(self.model.predict(graphs).numpy())
        return np.concatenate(out).astype(np.float64)
