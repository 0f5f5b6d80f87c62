"""Labeled CVRP datasets on disk.

A dataset directory holds ``manifest.json`` and one ``records/<id>.json`` per
labeled instance.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError

from hvrp.config.schema import DatagenConfig, SolverConfig
from hvrp.core.exceptions import FileIOError, ParseError
from hvrp.instances.io import InstanceRecord, instance_from_record, instance_to_record
from hvrp.instances.types import CvrpInstance
from hvrp.version import __version__

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
RECORDS = "records"

SampleKind = Literal["random", "targeted", "perturbed", "gancp", "distribution"]
Phase = Literal["1", "2", "3", "distribution"]


class SampleRecord(BaseModel):
    """One labeled instance with its provenance."""

    id: str
    kind: SampleKind
    seed: int
    label: float = Field(gt=0)
    step: int | None = None
    instance: InstanceRecord

    def to_instance(self) -> CvrpInstance:
        """Rebuild the CVRP."""
        instance = instance_from_record(self.instance)
        if not isinstance(instance, CvrpInstance):
            raise ParseError(f"record {self.id} does not hold a CVRP", field="instance")
        return instance


class StepSummary(BaseModel):
    """One bootstrap step of phase 3."""

    step: int
    samples: int
    val_mape: float | None = None


class DatasetManifest(BaseModel):
    """Everything needed to regenerate a dataset."""

    phase: Phase
    seed: int
    count: int
    kinds: dict[str, int] = Field(default_factory=dict)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    datagen: DatagenConfig = Field(default_factory=DatagenConfig)
    positioning: str | None = None
    demand_model: str | None = None
    steps: list[StepSummary] = Field(default_factory=list)
    version: str = __version__


@dataclass
class Dataset:
    """Manifest plus records."""

    manifest: DatasetManifest
    records: list[SampleRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def samples(self) -> list[tuple[CvrpInstance, float]]:
        """(instance, label) pairs for training."""
        return [(record.to_instance(), record.label) for record in self.records]


def make_record(
    index: int,
    instance: CvrpInstance,
    label: float,
    kind: SampleKind,
    seed: int,
    step: int | None = None,
) -> SampleRecord:
    """Wrap a labeled instance as a record with a zero-padded id."""
    return SampleRecord(
        id=f"{index:06d}",
        kind=kind,
        seed=seed,
        label=label,
        step=step,
        instance=instance_to_record(instance),
    )


def kind_counts(records: list[SampleRecord]) -> dict[str, int]:
    """Number of records per kind, sorted by kind."""
    return dict(sorted(Counter(record.kind for record in records).items()))


def save_dataset(dataset: Dataset, directory: str | Path) -> Path:
    """Write a dataset directory, replacing records with the same ids.

    Returns:
        The directory

    Raises:
        FileIOError: If the directory cannot be written
    """
    directory = Path(directory)
    try:
        (directory / RECORDS).mkdir(parents=True, exist_ok=True)
        for record in dataset.records:
            (directory / RECORDS / f"{record.id}.json").write_text(
                record.model_dump_json(), encoding="utf-8"
            )
        (directory / MANIFEST).write_text(
            dataset.manifest.model_dump_json(indent=2), encoding="utf-8"
        )
    except OSError as e:
        raise FileIOError(f"Failed to write dataset {directory}: {e}") from e
    logger.info("Saved %d records to %s", len(dataset), directory)
    return directory


def load_dataset(directory: str | Path) -> Dataset:
    """Read a dataset directory; records come back sorted by id.

    Raises:
        FileIOError: If the manifest is missing
        ParseError: If the manifest or a record is malformed
    """
    directory = Path(directory)
    manifest_path = directory / MANIFEST
    if not manifest_path.exists():
        raise FileIOError(f"No {MANIFEST} in {directory}")
    try:
        manifest = DatasetManifest.model_validate_json(
            manifest_path.read_text(encoding="utf-8")
        )
    except ValidationError as e:
        raise ParseError(f"Invalid manifest: {e}", path=str(manifest_path)) from e
    records = []
    for path in sorted((directory / RECORDS).glob("*.json")):
        try:
            records.append(SampleRecord.model_validate_json(path.read_text(encoding="utf-8")))
        except ValidationError as e:
            raise ParseError(f"Invalid record: {e}", path=str(path)) from e
    if len(records) != manifest.count:
        logger.warning(
            "%s lists %d records, found %d", manifest_path, manifest.count, len(records)
        )
    return Dataset(manifest=manifest, records=records)
