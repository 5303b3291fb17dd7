"""Graph file ingestion and machine-readable run records.

Two input formats are supported, matching how public graph repositories
distribute data: whitespace edge lists ("u v" or "u v w" per line) and
MatrixMarket coordinate files. Vertex labels from files are kept as strings
and mapped to dense 0-based ids; when every label is an integer the ids
follow ascending numeric order, otherwise first appearance in the file.

Self-loop lines cannot affect s-t flow, so they are skipped and counted
instead of rejected; their labels still register, which doubles as the
canonical writer's encoding for vertices with no incident edges.

Run results serialize to JSON (one object, stable key order, optional phi
array last) or CSV (header plus one row per record, phi omitted, floats at
17 significant digits).
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from typing import IO, Iterable, Optional, Sequence, Union

import numpy as np

from .graph import Graph, graph_from_arrays


class ParseError(ValueError):
    pass


_INT_LABEL = re.compile(r"[+-]?\d+\Z", re.ASCII)


@dataclass(frozen=True)
class LabelMap:
    """Bijection between file vertex labels and dense 0-based ids."""

    to_label: tuple[str, ...]

    @property
    def to_id(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.to_label)}

    def id_of(self, label: str) -> int:
        try:
            return self.to_id[label]
        except KeyError:
            raise ParseError(f"unknown vertex label {label!r}") from None

    def label_of(self, vid: int) -> str:
        return self.to_label[vid]

    def __len__(self) -> int:
        return len(self.to_label)


@dataclass(frozen=True)
class ParseResult:
    graph: Graph
    labels: LabelMap
    self_loops_skipped: int


def _finite_capacity(token: str, lineno: int) -> float:
    try:
        w = float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: non-numeric capacity {token!r}") from None
    if not math.isfinite(w):
        raise ParseError(f"line {lineno}: non-finite capacity {token!r}")
    if w < 0:
        raise ParseError(f"line {lineno}: negative capacity {token!r}")
    return w


def _assemble(label_order: list[str], arcs: list[tuple[str, str, float]], loops: int) -> ParseResult:
    if label_order and all(_INT_LABEL.fullmatch(lab) for lab in label_order):
        ordered = sorted(label_order, key=int)
    else:
        ordered = label_order
    ids = {lab: i for i, lab in enumerate(ordered)}
    src = np.fromiter((ids[u] for u, _, _ in arcs), dtype=np.int64, count=len(arcs))
    dst = np.fromiter((ids[v] for _, v, _ in arcs), dtype=np.int64, count=len(arcs))
    cap = np.fromiter((w for _, _, w in arcs), dtype=np.float64, count=len(arcs))
    g = graph_from_arrays(len(ordered), src, dst, cap)
    return ParseResult(g, LabelMap(tuple(ordered)), loops)


def parse_edge_list(
    lines: Iterable[str], *, directed: bool = True, default_capacity: float = 1.0
) -> ParseResult:
    """Parse "u v" / "u v w" lines; '%' and '#' start comments.

    Missing weights default to default_capacity; duplicate lines stay as
    parallel edges; directed=False emits both arcs per line with the full
    weight each.
    """
    label_order: list[str] = []
    seen: set[str] = set()
    arcs: list[tuple[str, str, float]] = []
    loops = 0
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line[0] in "%#":
            continue
        toks = line.split()
        if len(toks) not in (2, 3):
            raise ParseError(
                f"line {lineno}: expected 'u v' or 'u v w', got {len(toks)} fields"
            )
        u, v = toks[0], toks[1]
        w = _finite_capacity(toks[2], lineno) if len(toks) == 3 else float(default_capacity)
        for lab in (u, v):
            if lab not in seen:
                seen.add(lab)
                label_order.append(lab)
        if u == v:
            loops += 1
            continue
        arcs.append((u, v, w))
        if not directed:
            arcs.append((v, u, w))
    return _assemble(label_order, arcs, loops)


def parse_matrix_market(
    lines: Iterable[str], *, directed: bool = True, default_capacity: float = 1.0
) -> ParseResult:
    """Parse a MatrixMarket coordinate file as a graph adjacency matrix.

    Accepts real, integer and pattern fields with general or symmetric
    symmetry; the matrix must be square. Symmetric files (and directed=False)
    emit both arcs per off-diagonal entry.
    """
    it = enumerate(lines, start=1)
    try:
        lineno, header = next(it)
    except StopIteration:
        raise ParseError("line 1: empty file, expected MatrixMarket header") from None
    toks = header.strip().split()
    if not toks or toks[0] != "%%MatrixMarket":
        raise ParseError("line 1: missing %%MatrixMarket header")
    if len(toks) < 5:
        raise ParseError("line 1: header needs object, format, field and symmetry")
    obj, fmt, field, symmetry = (tok.lower() for tok in toks[1:5])
    if obj != "matrix":
        raise ParseError(f"line 1: unsupported object {obj!r}")
    if fmt != "coordinate":
        raise ParseError(f"line 1: unsupported format {fmt!r}")
    if field not in ("real", "integer", "pattern"):
        raise ParseError(f"line 1: unsupported field {field!r}")
    if symmetry not in ("general", "symmetric"):
        raise ParseError(f"line 1: unsupported symmetry {symmetry!r}")

    dims: Optional[tuple[int, int, int]] = None
    expect = 3 if field in ("real", "integer") else 2
    both = symmetry == "symmetric" or not directed
    arcs: list[tuple[str, str, float]] = []
    loops = 0
    found = 0
    for lineno, raw in it:
        line = raw.strip()
        if not line or line[0] == "%":
            continue
        toks = line.split()
        if dims is None:
            if len(toks) != 3:
                raise ParseError(f"line {lineno}: expected 'rows cols nnz'")
            try:
                rows, cols, nnz = (int(tok) for tok in toks)
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer dimensions") from None
            if rows != cols:
                raise ParseError(f"line {lineno}: matrix is {rows}x{cols}, need square")
            if rows < 0 or nnz < 0:
                raise ParseError(f"line {lineno}: negative dimensions")
            dims = (rows, cols, nnz)
            continue
        if found >= dims[2]:
            raise ParseError(f"line {lineno}: more than the declared {dims[2]} entries")
        if len(toks) != expect:
            want = "'i j w'" if expect == 3 else "'i j'"
            raise ParseError(f"line {lineno}: expected {want}, got {len(toks)} fields")
        try:
            i, j = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer vertex index") from None
        if not (1 <= i <= dims[0]) or not (1 <= j <= dims[0]):
            raise ParseError(f"line {lineno}: index out of range 1..{dims[0]}")
        w = _finite_capacity(toks[2], lineno) if expect == 3 else float(default_capacity)
        found += 1
        if i == j:
            loops += 1
            continue
        arcs.append((str(i), str(j), w))
        if both:
            arcs.append((str(j), str(i), w))
    if dims is None:
        raise ParseError("missing dimension line 'rows cols nnz'")
    if found != dims[2]:
        raise ParseError(f"expected {dims[2]} entries, found {found}")
    labels = [str(i) for i in range(1, dims[0] + 1)]
    return _assemble(labels, arcs, loops)


def write_edge_list(g: Graph, sink: IO[str], labels: Optional[Sequence[str]] = None) -> None:
    """Canonical edge-list form: parseable back into an identical graph.

    Capacities use 17 significant digits so float64 values survive the round
    trip exactly. Vertices without incident edges are encoded as zero-weight
    self-loop lines, which the parser registers and skips.
    """
    if labels is None:
        labels = [str(i + 1) for i in range(g.n)]
    elif len(labels) != g.n:
        raise ValueError(f"got {len(labels)} labels for {g.n} vertices")
    sink.write("% directed edge list: tail head capacity\n")
    sink.write("% a 'v v 0' line marks a vertex with no incident edges\n")
    touched = np.zeros(g.n, dtype=bool)
    touched[g.src] = True
    touched[g.dst] = True
    for u, v, w in g.edge_tuples():
        sink.write(f"{labels[u]} {labels[v]} {w:.17g}\n")
    for v in np.flatnonzero(~touched):
        sink.write(f"{labels[v]} {labels[v]} 0\n")


def load_graph(
    path: str, fmt: str = "edgelist", *, directed: bool = True, default_capacity: float = 1.0
) -> ParseResult:
    parser = {"edgelist": parse_edge_list, "mtx": parse_matrix_market}.get(fmt)
    if parser is None:
        raise ValueError(f"unknown graph format {fmt!r}; expected edgelist or mtx")
    with open(path, "r", encoding="utf-8") as fh:
        return parser(fh, directed=directed, default_capacity=default_capacity)


RECORD_FIELDS = (
    "input", "n", "m", "source", "sink", "p", "B", "seed", "ci_level", "ci_mode",
    "mean", "sd", "ci_low", "ci_high", "disconnected_count", "duration_seconds",
    "version",
)


@dataclass(frozen=True)
class RunRecord:
    """One estimator or exact run, flattened for serialization.

    Field names equal the serialized keys. source and sink hold the original
    file labels for file inputs and integer ids for generated graphs. phi,
    when kept, holds the raw scaled bootstrap flows and serializes last.
    """

    input: str
    n: int
    m: int
    source: Union[str, int]
    sink: Union[str, int]
    p: float
    B: int
    seed: int
    ci_level: float
    ci_mode: str
    mean: float
    sd: float
    ci_low: float
    ci_high: float
    disconnected_count: int
    duration_seconds: float
    version: str
    phi: Optional[tuple[float, ...]] = None

    def to_dict(self) -> dict:
        out = {name: getattr(self, name) for name in RECORD_FIELDS}
        if self.phi is not None:
            out["phi"] = list(self.phi)
        return out

    @staticmethod
    def from_dict(d: dict) -> "RunRecord":
        phi = d.get("phi")
        fields = {name: d[name] for name in RECORD_FIELDS}
        return RunRecord(**fields, phi=None if phi is None else tuple(phi))


def _csv_cell(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_run_records(records: Sequence[RunRecord], fmt: str, sink: IO[str]) -> None:
    """Serialize records: fmt 'json' gives an array, 'csv' a header plus rows."""
    if fmt == "json":
        json.dump([r.to_dict() for r in records], sink, indent=2)
        sink.write("\n")
    elif fmt == "csv":
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow([_csv_cell(getattr(r, name)) for name in RECORD_FIELDS])
    else:
        raise ValueError(f"unknown output format {fmt!r}; expected json or csv")


def write_run_record(record: RunRecord, fmt: str, sink: IO[str]) -> None:
    """Single-record form: JSON is one object rather than a one-element array."""
    if fmt == "json":
        json.dump(record.to_dict(), sink, indent=2)
        sink.write("\n")
    else:
        write_run_records([record], fmt, sink)


def read_run_record(source: Union[str, IO[str]]) -> RunRecord:
    doc = json.loads(source) if isinstance(source, str) else json.load(source)
    return RunRecord.from_dict(doc)


def read_run_records(source: Union[str, IO[str]]) -> list[RunRecord]:
    doc = json.loads(source) if isinstance(source, str) else json.load(source)
    return [RunRecord.from_dict(item) for item in doc]
