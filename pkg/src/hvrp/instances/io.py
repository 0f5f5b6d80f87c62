"""Instance file readers and writers.

Supported formats:
- Cordeau classic MDVRP text (problem type 2), for MdvrpInstance
- TSPLIB-like CVRP sections (NODE_COORD_SECTION / DEMAND_SECTION / DEPOT_SECTION),
  for CvrpInstance
- Barreto-style CLRP text (whitespace separated blocks), for ClrpInstance
- JSON records for every instance type

Parsers never return a partial instance: any missing or malformed value raises
ParseError naming the file, line and field.
"""

import json
import logging
from collections.abc import Iterator
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from hvrp.core.exceptions import FileIOError, InstanceError, ParseError
from hvrp.instances.types import ClrpInstance, CvrpInstance, MdvrpInstance

logger = logging.getLogger(__name__)

AnyInstance = CvrpInstance | MdvrpInstance | ClrpInstance

_CORDEAU_MDVRP = 2


class _Tokens:
    """Cursor over the non-blank lines of a text file."""

    def __init__(self, path: Path) -> None:
        self.path = path
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError as e:
            raise FileIOError(f"File not found: {path}") from e
        except OSError as e:
            raise FileIOError(f"Failed to read file {path}: {e}") from e
        self._lines: list[tuple[int, list[str]]] = [
            (number, line.split())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        ]
        self._cursor = 0

    def error(self, message: str, field: str, line: int | None = None) -> ParseError:
        if line is None:
            line = self._lines[self._cursor - 1][0] if self._cursor else None
        return ParseError(message, path=str(self.path), line=line, field=field)

    def line(self, field: str, min_tokens: int = 1) -> tuple[int, list[str]]:
        """Return the next non-blank line, split into tokens."""
        if self._cursor >= len(self._lines):
            last = self._lines[-1][0] if self._lines else None
            raise self.error("unexpected end of file", field, last)
        number, tokens = self._lines[self._cursor]
        self._cursor += 1
        if len(tokens) < min_tokens:
            raise self.error(
                f"expected {min_tokens} values, found {len(tokens)}", field, number
            )
        return number, tokens

    def remaining(self) -> Iterator[tuple[int, list[str]]]:
        while self._cursor < len(self._lines):
            self._cursor += 1
            yield self._lines[self._cursor - 1]

    def number(self, token: str, field: str, line: int, kind: type = float) -> float:
        try:
            value = float(token)
        except ValueError:
            raise self.error(f"'{token}' is not a number", field, line) from None
        if kind is int:
            if not value.is_integer():
                raise self.error(f"'{token}' is not an integer", field, line)
            return int(value)
        return value


def _fmt(value: float) -> str:
    """Shortest text that parses back to the same float."""
    value = float(value)
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def _build(tokens: _Tokens, factory: type, **fields: object) -> AnyInstance:
    try:
        return factory(**fields)
    except InstanceError as e:
        raise ParseError(str(e), path=str(tokens.path)) from e


def parse_cordeau(path: str | Path) -> MdvrpInstance:
    """Read a Cordeau-format MDVRP file.

    Layout: ``type m n t``; ``t`` lines ``D Q``; ``n`` customer lines
    ``i x y d q ...``; ``t`` depot lines ``i x y ...``. A vehicle count ``m`` of 0
    means unlimited vehicles. Route-duration limits ``D`` are not modelled and
    are ignored with a warning.

    Args:
        path: File to read

    Returns:
        MdvrpInstance

    Raises:
        ParseError: If the file is truncated or malformed
    """
    tokens = _Tokens(Path(path))
    line, header = tokens.line("header", 4)
    problem_type, m, n, t = (
        int(tokens.number(v, "header", line, int)) for v in header[:4]
    )
    if problem_type != _CORDEAU_MDVRP:
        raise tokens.error(f"problem type {problem_type} is not MDVRP (2)", "type", line)
    if n < 1 or t < 1:
        raise tokens.error("customer and depot counts must be positive", "header", line)

    capacities = set()
    for _ in range(t):
        line, values = tokens.line("depot limits", 2)
        duration = tokens.number(values[0], "max_duration", line)
        if duration > 0:
            logger.warning(
                "%s:%d: route-duration limit %s ignored", path, line, values[0]
            )
        capacities.add(int(tokens.number(values[1], "max_load", line, int)))
    if len(capacities) != 1:
        raise tokens.error("depots must share one vehicle capacity", "max_load")

    coords = np.empty((n, 2))
    demands = np.empty(n, dtype=np.int64)
    for i in range(n):
        line, values = tokens.line("customer", 5)
        coords[i] = [tokens.number(v, "x/y", line) for v in values[1:3]]
        demands[i] = tokens.number(values[4], "demand", line, int)

    depots = np.empty((t, 2))
    for d in range(t):
        line, values = tokens.line("depot", 3)
        depots[d] = [tokens.number(v, "x/y", line) for v in values[1:3]]

    return _build(  # type: ignore[return-value]
        tokens,
        MdvrpInstance,
        depots=depots,
        coords=coords,
        demands=demands,
        capacity=capacities.pop(),
        fleet_sizes=np.full(t, m) if m > 0 else None,
        name=Path(path).stem,
    )


def write_cordeau(instance: MdvrpInstance, path: str | Path) -> None:
    """Write an MDVRP instance in Cordeau format.

    Raises:
        FileIOError: If depots have different fleet sizes (not representable)
    """
    if instance.fleet_sizes is None:
        m = 0
    elif len(set(instance.fleet_sizes.tolist())) == 1:
        m = int(instance.fleet_sizes[0])
    else:
        raise FileIOError("Cordeau format needs the same fleet size at every depot")

    n, t = instance.n_customers, instance.n_depots
    combos = " ".join(str(1 << d) for d in range(t))
    lines = [f"{_CORDEAU_MDVRP} {m} {n} {t}"]
    lines += [f"0 {instance.capacity}"] * t
    for i, ((x, y), q) in enumerate(zip(instance.coords, instance.demands, strict=True)):
        lines.append(f"{i + 1} {_fmt(x)} {_fmt(y)} 0 {int(q)} 1 {t} {combos}")
    for d, (x, y) in enumerate(instance.depots):
        lines.append(f"{n + d + 1} {_fmt(x)} {_fmt(y)} 0 0 0 0")
    _write_text(path, "\n".join(lines) + "\n")


def parse_tsplib_cvrp(path: str | Path) -> CvrpInstance:
    """Read a TSPLIB-style CVRP file with EUC_2D coordinates.

    The node listed in DEPOT_SECTION is the depot; the remaining nodes are the
    customers in file order. An optional ``VEHICLES`` header sets the fleet limit.

    Args:
        path: File to read

    Returns:
        CvrpInstance

    Raises:
        ParseError: If a required header or section is missing or malformed
    """
    tokens = _Tokens(Path(path))
    header: dict[str, tuple[int, str]] = {}
    points: dict[int, tuple[float, float]] = {}
    demand: dict[int, int] = {}
    depot_ids: list[int] = []
    section = ""

    for line, values in tokens.remaining():
        keyword = values[0].rstrip(":").upper()
        if keyword == "EOF":
            break
        if keyword.endswith("_SECTION"):
            section = keyword
            continue
        if ":" in " ".join(values) and not section:
            key, _, value = " ".join(values).partition(":")
            header[key.strip().upper()] = (line, value.strip())
            continue
        if section == "NODE_COORD_SECTION":
            if len(values) < 3:
                raise tokens.error("expected 'id x y'", "NODE_COORD_SECTION", line)
            node = int(tokens.number(values[0], "node id", line, int))
            points[node] = (
                tokens.number(values[1], "x", line),
                tokens.number(values[2], "y", line),
            )
        elif section == "DEMAND_SECTION":
            if len(values) < 2:
                raise tokens.error("expected 'id demand'", "DEMAND_SECTION", line)
            node = int(tokens.number(values[0], "node id", line, int))
            demand[node] = int(tokens.number(values[1], "demand", line, int))
        elif section == "DEPOT_SECTION":
            node = int(tokens.number(values[0], "depot id", line, int))
            if node == -1:
                section = ""
            else:
                depot_ids.append(node)
        else:
            raise tokens.error(f"unexpected line '{' '.join(values)}'", "header", line)

    for key in ("DIMENSION", "CAPACITY"):
        if key not in header:
            raise tokens.error(f"missing {key} header", key)
    line, weight_type = header.get("EDGE_WEIGHT_TYPE", (None, "EUC_2D"))
    if weight_type != "EUC_2D":
        raise tokens.error(f"unsupported edge weight type {weight_type}", "EDGE_WEIGHT_TYPE", line)
    line, dimension_text = header["DIMENSION"]
    dimension = int(tokens.number(dimension_text, "DIMENSION", line, int))
    line, capacity_text = header["CAPACITY"]
    capacity = int(tokens.number(capacity_text, "CAPACITY", line, int))
    fleet_limit = None
    if "VEHICLES" in header:
        line, vehicles = header["VEHICLES"]
        fleet_limit = int(tokens.number(vehicles, "VEHICLES", line, int))

    if len(depot_ids) != 1:
        raise tokens.error("exactly one depot is required", "DEPOT_SECTION")
    node_ids = sorted(points)
    if len(node_ids) != dimension:
        raise tokens.error(
            f"DIMENSION is {dimension} but {len(node_ids)} coordinates were read",
            "NODE_COORD_SECTION",
        )
    missing = [node for node in node_ids if node not in demand]
    if missing:
        raise tokens.error(f"no demand for node {missing[0]}", "DEMAND_SECTION")
    depot = depot_ids[0]
    if depot not in points:
        raise tokens.error(f"depot {depot} has no coordinates", "DEPOT_SECTION")
    customers = [node for node in node_ids if node != depot]

    name = header.get("NAME", (0, Path(path).stem))[1]
    return _build(  # type: ignore[return-value]
        tokens,
        CvrpInstance,
        depot=np.array(points[depot]),
        coords=np.array([points[node] for node in customers]),
        demands=np.array([demand[node] for node in customers]),
        capacity=capacity,
        fleet_limit=fleet_limit,
        name=name,
    )


def write_tsplib_cvrp(instance: CvrpInstance, path: str | Path) -> None:
    """Write a CVRP instance in TSPLIB section format (depot is node 1)."""
    points = instance.points
    lines = [
        f"NAME : {instance.name or Path(path).stem}",
        "TYPE : CVRP",
        f"DIMENSION : {len(points)}",
        "EDGE_WEIGHT_TYPE : EUC_2D",
        f"CAPACITY : {instance.capacity}",
    ]
    if instance.fleet_limit is not None:
        lines.append(f"VEHICLES : {instance.fleet_limit}")
    lines.append("NODE_COORD_SECTION")
    lines += [f"{i + 1} {_fmt(x)} {_fmt(y)}" for i, (x, y) in enumerate(points)]
    lines.append("DEMAND_SECTION")
    lines += [f"{i + 1} {int(q)}" for i, q in enumerate(instance.node_demands)]
    lines += ["DEPOT_SECTION", "1", "-1", "EOF"]
    _write_text(path, "\n".join(lines) + "\n")


def parse_barreto(path: str | Path) -> ClrpInstance:
    """Read a Barreto-style CLRP file.

    Blocks, in order: customer count; depot count; depot coordinates; customer
    coordinates; vehicle capacity; depot capacities; customer demands; depot
    opening costs; route cost; cost-rounding flag.

    Args:
        path: File to read

    Returns:
        ClrpInstance

    Raises:
        ParseError: If the file is truncated or malformed
    """
    tokens = _Tokens(Path(path))

    def scalar(field: str, kind: type = float) -> float:
        line, values = tokens.line(field)
        return tokens.number(values[0], field, line, kind)

    def pairs(count: int, field: str) -> np.ndarray:
        out = np.empty((count, 2))
        for i in range(count):
            line, values = tokens.line(field, 2)
            out[i] = [tokens.number(v, field, line) for v in values[:2]]
        return out

    def column(count: int, field: str, kind: type = float) -> np.ndarray:
        return np.array([scalar(field, kind) for _ in range(count)])

    n = int(scalar("customer count", int))
    t = int(scalar("depot count", int))
    if n < 1 or t < 1:
        raise tokens.error("customer and depot counts must be positive", "header")
    depots = pairs(t, "depot coordinates")
    coords = pairs(n, "customer coordinates")
    capacity = int(scalar("vehicle capacity", int))
    depot_capacities = column(t, "depot capacities")
    demands = column(n, "demands", int).astype(np.int64)
    opening_costs = column(t, "opening costs")
    route_cost = scalar("route cost")
    rounded = bool(scalar("cost flag", int))

    return _build(  # type: ignore[return-value]
        tokens,
        ClrpInstance,
        depots=depots,
        coords=coords,
        demands=demands,
        capacity=capacity,
        name=Path(path).stem,
        depot_capacities=depot_capacities,
        opening_costs=opening_costs,
        route_cost=route_cost,
        rounded_costs=rounded,
    )


def write_barreto(instance: ClrpInstance, path: str | Path) -> None:
    """Write a CLRP instance in Barreto format."""
    blocks = [
        [str(instance.n_customers)],
        [str(instance.n_depots)],
        [f"{_fmt(x)}\t{_fmt(y)}" for x, y in instance.depots],
        [f"{_fmt(x)}\t{_fmt(y)}" for x, y in instance.coords],
        [str(instance.capacity)],
        [_fmt(w) for w in instance.depot_capacities],
        [str(int(q)) for q in instance.demands],
        [_fmt(f) for f in instance.opening_costs],
        [_fmt(instance.route_cost)],
        [str(int(instance.rounded_costs))],
    ]
    _write_text(path, "\n\n".join("\n".join(block) for block in blocks) + "\n")


class InstanceRecord(BaseModel):
    """JSON form of any instance type."""

    model_config = ConfigDict(extra="forbid", ser_json_inf_nan="constants")

    kind: Literal["cvrp", "mdvrp", "clrp"]
    name: str = ""
    depots: list[tuple[float, float]]
    customers: list[tuple[float, float]]
    demands: list[int]
    capacity: int
    fleet_limit: int | None = None
    fleet_sizes: list[int] | None = None
    customer_ids: list[int] | None = None
    depot_id: int | None = None
    depot_capacities: list[float] | None = None
    opening_costs: list[float] | None = None
    route_cost: float | None = None
    rounded_costs: bool | None = None


def instance_to_record(instance: AnyInstance) -> InstanceRecord:
    """Convert an instance to its JSON record."""
    common = {
        "name": instance.name,
        "customers": instance.coords.tolist(),
        "demands": instance.demands.tolist(),
        "capacity": instance.capacity,
    }
    if isinstance(instance, CvrpInstance):
        return InstanceRecord(
            kind="cvrp",
            depots=[instance.depot.tolist()],
            fleet_limit=instance.fleet_limit,
            customer_ids=instance.customer_ids.tolist(),  # type: ignore[union-attr]
            depot_id=instance.depot_id,
            **common,
        )
    if isinstance(instance, ClrpInstance):
        return InstanceRecord(
            kind="clrp",
            depots=instance.depots.tolist(),
            depot_capacities=instance.depot_capacities.tolist(),
            opening_costs=instance.opening_costs.tolist(),
            route_cost=instance.route_cost,
            rounded_costs=instance.rounded_costs,
            **common,
        )
    return InstanceRecord(
        kind="mdvrp",
        depots=instance.depots.tolist(),
        fleet_sizes=(
            None if instance.fleet_sizes is None else instance.fleet_sizes.tolist()
        ),
        **common,
    )


def instance_from_record(record: InstanceRecord) -> AnyInstance:
    """Build an instance from its JSON record.

    Raises:
        InstanceError: If the record violates an instance invariant
    """
    if record.kind == "cvrp":
        if len(record.depots) != 1:
            raise InstanceError("a CVRP record has exactly one depot")
        return CvrpInstance(
            depot=np.array(record.depots[0]),
            coords=np.array(record.customers),
            demands=np.array(record.demands),
            capacity=record.capacity,
            fleet_limit=record.fleet_limit,
            name=record.name,
            customer_ids=(
                None if record.customer_ids is None else np.array(record.customer_ids)
            ),
            depot_id=record.depot_id,
        )
    if record.kind == "clrp":
        return ClrpInstance(
            depots=np.array(record.depots),
            coords=np.array(record.customers),
            demands=np.array(record.demands),
            capacity=record.capacity,
            name=record.name,
            depot_capacities=np.array(record.depot_capacities or []),
            opening_costs=np.array(record.opening_costs or []),
            route_cost=record.route_cost or 0.0,
            rounded_costs=bool(record.rounded_costs),
        )
    return MdvrpInstance(
        depots=np.array(record.depots),
        coords=np.array(record.customers),
        demands=np.array(record.demands),
        capacity=record.capacity,
        fleet_sizes=None if record.fleet_sizes is None else np.array(record.fleet_sizes),
        name=record.name,
    )


def instance_to_json(instance: AnyInstance) -> str:
    """Serialize an instance to canonical JSON (fixed field order)."""
    return instance_to_record(instance).model_dump_json(indent=2, exclude_none=True)


def instance_from_json(text: str, path: str = "") -> AnyInstance:
    """Parse an instance from JSON text.

    Raises:
        ParseError: If the JSON is malformed or violates the record schema
    """
    try:
        record = InstanceRecord.model_validate(json.loads(text))
        return instance_from_record(record)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=path, line=e.lineno) from e
    except ValidationError as e:
        raise ParseError(f"invalid instance record: {e}", path=path) from e
    except InstanceError as e:
        raise ParseError(str(e), path=path) from e


def _write_text(path: str | Path, content: str) -> None:
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as e:
        raise FileIOError(f"Failed to write file {path}: {e}") from e


def write_instance(instance: AnyInstance, path: str | Path) -> None:
    """Write an instance, choosing the format from the file suffix and type.

    ``.json`` always writes a JSON record; otherwise CVRP instances use the
    TSPLIB format, CLRP instances the Barreto format and MDVRP instances the
    Cordeau format.
    """
    if Path(path).suffix.lower() == ".json":
        _write_text(path, instance_to_json(instance) + "\n")
    elif isinstance(instance, CvrpInstance):
        write_tsplib_cvrp(instance, path)
    elif isinstance(instance, ClrpInstance):
        write_barreto(instance, path)
    else:
        write_cordeau(instance, path)


def read_instance(
    path: str | Path,
    kind: Literal["auto", "cordeau", "tsplib", "barreto", "json"] = "auto",
) -> AnyInstance:
    """Read an instance of any supported format.

    With ``kind="auto"`` the format is detected from the suffix (``.json``,
    ``.vrp``) or, failing that, from the first line: a single integer starts a
    Barreto file, four integers a Cordeau file.

    Args:
        path: File to read
        kind: Format override

    Returns:
        The parsed instance

    Raises:
        ParseError: If the format cannot be detected or the file is malformed
    """
    file_path = Path(path)
    if not file_path.exists():
        raise FileIOError(f"File not found: {path}")
    if kind == "auto":
        kind = _detect_format(file_path)
    if kind == "json":
        return instance_from_json(file_path.read_text(encoding="utf-8"), str(path))
    if kind == "tsplib":
        return parse_tsplib_cvrp(file_path)
    if kind == "barreto":
        return parse_barreto(file_path)
    return parse_cordeau(file_path)


def _detect_format(path: Path) -> Literal["cordeau", "tsplib", "barreto", "json"]:
    suffix = path.suffix.lower()
    if suffix == ".json":
        return "json"
    if suffix == ".vrp":
        return "tsplib"
    with open(path, encoding="utf-8") as f:
        first = next((line.split() for line in f if line.strip()), [])
    if first and ":" in " ".join(first):
        return "tsplib"
    if len(first) == 1:
        return "barreto"
    if len(first) >= 4:
        return "cordeau"
    raise ParseError("cannot detect the instance format", path=str(path), line=1)
