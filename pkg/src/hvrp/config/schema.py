"""Configuration schema using Pydantic models."""

import math
from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

LocalSearchOp = Literal["two_opt", "relocate", "swap", "two_opt_star"]

LOCAL_SEARCH_ALIASES: dict[str, LocalSearchOp] = {"inter_route_two_opt_star": "two_opt_star"}

ALL_LOCAL_SEARCH_OPS: tuple[LocalSearchOp, ...] = (
    "relocate",
    "swap",
    "two_opt",
    "two_opt_star",
)


class SizeBucket(BaseModel):
    """Per-size settings keyed by approximate subproblem size N/D."""

    lower: float = Field(ge=0)
    upper: float = Field(gt=0)
    batch_size: int = Field(gt=0, description="Predictor batch limit")
    time_limit: float = Field(
        gt=0, description="Routing time limit (sec) when the solver stop_mode is time"
    )


DEFAULT_BUCKETS = [
    SizeBucket(lower=50, upper=100, batch_size=512, time_limit=0.1),
    SizeBucket(lower=100, upper=200, batch_size=256, time_limit=1.0),
    SizeBucket(lower=200, upper=300, batch_size=128, time_limit=2.0),
    SizeBucket(lower=300, upper=400, batch_size=64, time_limit=2.0),
    SizeBucket(lower=400, upper=math.inf, batch_size=32, time_limit=2.0),
]


def bucket_for(size: float, buckets: list[SizeBucket]) -> SizeBucket:
    """Find the bucket containing an approximate subproblem size.

    Sizes below the first bucket use the first bucket, sizes beyond the last use
    the last.

    Args:
        size: Approximate subproblem size (N/D)
        buckets: Buckets sorted by ``lower``

    Returns:
        Matching bucket
    """
    for bucket in buckets:
        if bucket.lower <= size < bucket.upper:
            return bucket
    return buckets[0] if size < buckets[0].lower else buckets[-1]


class SolverConfig(BaseModel):
    """CVRP heuristic settings."""

    time_limit: float = Field(
        default=1.0, gt=0, description="Seconds; bounds the search only when stop_mode is time"
    )
    local_search_ops: list[LocalSearchOp] = Field(
        default_factory=lambda: list(ALL_LOCAL_SEARCH_OPS)
    )
    rng_seed: int = 0
    stop_mode: Literal["iterations", "time"] = "iterations"
    max_iterations: int = Field(
        default=30, gt=0, description="Iterations to run when stop_mode is iterations"
    )
    savings_lambda: tuple[float, float] = (0.6, 1.6)
    restart_after: int = Field(
        default=2,
        gt=0,
        description="Consecutive non-improving iterations before a perturbed savings restart",
    )

    @field_validator("local_search_ops", mode="before")
    @classmethod
    def resolve_aliases(cls, v: object) -> object:
        """Map alternative operator names onto their canonical form.

        Args:
            v: Raw operator names

        Returns:
            Operator names with aliases replaced
        """
        if isinstance(v, list | tuple):
            return [LOCAL_SEARCH_ALIASES.get(op, op) if isinstance(op, str) else op for op in v]
        return v

    @field_validator("local_search_ops")
    @classmethod
    def dedupe_ops(cls, v: list[LocalSearchOp]) -> list[LocalSearchOp]:
        """Drop duplicate operators while keeping their order.

        Args:
            v: Operator names

        Returns:
            Deduplicated operator list
        """
        return list(dict.fromkeys(v))

    @field_validator("savings_lambda")
    @classmethod
    def validate_lambda(cls, v: tuple[float, float]) -> tuple[float, float]:
        """Validate the savings shape-parameter range.

        Args:
            v: (low, high) range

        Returns:
            Validated range

        Raises:
            ValueError: If the range is empty or non-positive
        """
        low, high = v
        if not 0 < low <= high:
            raise ValueError("savings_lambda must satisfy 0 < low <= high")
        return v


class PredictorConfig(BaseModel):
    """Graph attention predictor hyperparameters."""

    hidden_dim: int = Field(default=128, gt=0)
    n_heads: int = Field(default=8, gt=0)
    n_layers: int = Field(default=6, ge=0)
    ff_dim: int = Field(default=512, gt=0)
    knn: int = Field(default=10, ge=1)
    dtype: Literal["float32", "float64"] = "float64"

    @model_validator(mode="after")
    def validate_heads(self) -> "PredictorConfig":
        """Ensure the hidden width splits evenly across heads.

        Returns:
            Validated PredictorConfig

        Raises:
            ValueError: If hidden_dim is not divisible by n_heads
        """
        if self.hidden_dim % self.n_heads:
            raise ValueError("hidden_dim must be divisible by n_heads")
        return self


class TrainConfig(BaseModel):
    """Predictor training settings."""

    learning_rate: float = Field(default=1e-4, gt=0)
    epochs: int = Field(default=50, ge=1)
    batch_size: int | None = Field(
        default=None, gt=0, description="Overrides the size-bucket batch size"
    )
    validation_split: float = Field(default=0.2, gt=0, lt=1)
    rng_seed: int = 0


class GaConfig(BaseModel):
    """Genetic algorithm settings."""

    population_low: int = Field(default=60, gt=0)
    population_high: int = Field(default=100, gt=0)
    generations: int = Field(default=150, ge=0)
    stall_limit: int = Field(default=30, gt=0)
    p_repair: float = Field(default=0.8, ge=0, le=1)
    p_flip: float = Field(default=0.5, ge=0, le=1)
    mutation_fraction: float = Field(default=0.05, gt=0, lt=1)
    targeted_fraction: float = Field(default=0.05, gt=0, lt=1)
    gene_copy_fraction: float = Field(default=0.10, gt=0, lt=1)
    elite_fraction: float = Field(default=0.01, gt=0, lt=1)
    w1: float = Field(default=1.0, ge=0)
    w2: float = Field(default=0.3, ge=0)
    w3: float = Field(default=2.0, ge=0)
    top_k: int = Field(default=5, ge=1)
    inject_nda: bool = True
    rng_seed: int = 0

    @model_validator(mode="after")
    def validate_population(self) -> "GaConfig":
        """Ensure the population range is ordered.

        Returns:
            Validated GaConfig

        Raises:
            ValueError: If population_low > population_high
        """
        if self.population_low > self.population_high:
            raise ValueError("population_low must not exceed population_high")
        return self


class ClrpConfig(BaseModel):
    """CLRP extension weights."""

    w1: float = Field(default=1.0, ge=0)
    w2: float = Field(default=0.3, ge=0)
    w3: float = Field(default=2.0, ge=0)
    targeted_fraction: float = Field(default=0.10, gt=0, lt=1)
    random_mutations: bool = False


class DatagenConfig(BaseModel):
    """Training-data generation settings."""

    count: int = Field(default=2000, ge=1)
    size_range: tuple[int, int] = (10, 60)
    depot_range: tuple[int, int] = (2, 4)
    grid_size: int = Field(default=1000, gt=0)
    targeted_share: float = Field(default=0.8, ge=0, le=1)
    perturbed_share: float = Field(default=0.7, ge=0, le=1)
    perturb_max_fraction: float = Field(default=0.1, gt=0, le=1)
    phase3_steps: int = Field(default=4, ge=1)
    phase3_top: int = Field(default=2, ge=1)

    @field_validator("size_range", "depot_range")
    @classmethod
    def validate_range(cls, v: tuple[int, int]) -> tuple[int, int]:
        """Validate an inclusive integer range.

        Args:
            v: (low, high)

        Returns:
            Validated range

        Raises:
            ValueError: If the range is empty
        """
        if v[0] < 1 or v[0] > v[1]:
            raise ValueError("range must satisfy 1 <= low <= high")
        return v


class BenchConfig(BaseModel):
    """Experiment driver settings."""

    instances_per_suite: int = Field(default=5, ge=0)
    customer_range: tuple[int, int] = (100, 300)
    kmeans_restarts: int = Field(default=10, ge=1)
    rng_seed: int = 0


class RuntimeConfig(BaseModel):
    """Process-level settings."""

    workers: int = Field(default=1, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    structured_logs: bool = False


class OutputConfig(BaseModel):
    """Output formatting (CLI-specific)."""

    format: Literal["table", "json", "csv"] = Field(default="table")


class Config(BaseModel):
    """Root configuration model."""

    solver: SolverConfig = Field(default_factory=SolverConfig)
    predictor: PredictorConfig = Field(default_factory=PredictorConfig)
    train: TrainConfig = Field(default_factory=TrainConfig)
    ga: GaConfig = Field(default_factory=GaConfig)
    clrp: ClrpConfig = Field(default_factory=ClrpConfig)
    datagen: DatagenConfig = Field(default_factory=DatagenConfig)
    bench: BenchConfig = Field(default_factory=BenchConfig)
    buckets: list[SizeBucket] = Field(
        default_factory=lambda: [b.model_copy() for b in DEFAULT_BUCKETS]
    )
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    model_config = {"extra": "forbid"}

    @field_validator("buckets")
    @classmethod
    def sort_buckets(cls, v: list[SizeBucket]) -> list[SizeBucket]:
        """Keep buckets ordered by lower bound.

        Args:
            v: Buckets

        Returns:
            Sorted buckets

        Raises:
            ValueError: If no bucket is configured
        """
        if not v:
            raise ValueError("at least one size bucket is required")
        return sorted(v, key=lambda b: b.lower)
