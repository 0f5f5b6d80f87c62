"""Labeled training data for the cost predictor."""

from hvrp.datagen.dataset import (
    Dataset,
    DatasetManifest,
    SampleRecord,
    load_dataset,
    save_dataset,
)
from hvrp.datagen.labeling import label_instances, spawn_seeds
from hvrp.datagen.phases import (
    perturb_assignment,
    phase1,
    phase2,
    phase3,
    phase_distribution,
)

__all__ = [
    "Dataset",
    "DatasetManifest",
    "SampleRecord",
    "label_instances",
    "load_dataset",
    "perturb_assignment",
    "phase1",
    "phase2",
    "phase3",
    "phase_distribution",
    "save_dataset",
    "spawn_seeds",
]
