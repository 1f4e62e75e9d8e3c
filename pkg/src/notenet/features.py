"""Threshold sweep, feature-matrix assembly, and Min-Max rescaling.

Level 0 measures the network as built; level t measures the subgraph of
edges with weight > t. Under a fixed plan every row has 10 * (T + 1)
values, zero-padding levels where the pruned network is already empty.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import ConfigError, DataError
from .graph import TraversalParams, WeightedGraph, build_network, prune_by_weight
from .notes import NoteSequence
from .topology import MEASUREMENT_NAMES, ZERO_VECTOR, MeasurementVector, measure_all

MODE_FIXED = "fixed"
MODE_UNTIL_EMPTY = "until_empty"

T_MAX_GUARD = 1000


@dataclass(frozen=True)
class ThresholdPlan:
    """How far the pruning loop runs."""

    mode: str
    t_max: int | None = None

    @classmethod
    def fixed(cls, t_max: int) -> "ThresholdPlan":
        if t_max < 0:
            raise ConfigError(f"fixed threshold count must be >= 0, got {t_max}")
        if t_max > T_MAX_GUARD:
            raise ConfigError(f"threshold count {t_max} exceeds guard {T_MAX_GUARD}")
        return cls(MODE_FIXED, t_max)

    @classmethod
    def until_empty(cls) -> "ThresholdPlan":
        return cls(MODE_UNTIL_EMPTY, None)


@dataclass(frozen=True, eq=False)
class FeatureRow:
    """One segment's concatenated per-level measurements."""

    source_id: str
    segment_index: int
    label: str
    values: np.ndarray


@dataclass(frozen=True, eq=False)
class FeatureMatrix:
    rows: tuple[FeatureRow, ...]
    column_names: tuple[str, ...]
    rescaled: bool = False

    @property
    def values_matrix(self) -> np.ndarray:
        if not self.rows:
            return np.empty((0, len(self.column_names)))
        return np.vstack([r.values for r in self.rows])

    @property
    def labels(self) -> list[str]:
        return [r.label for r in self.rows]


def extract_features(g: WeightedGraph, plan: ThresholdPlan) -> list[MeasurementVector]:
    """Measure the graph at every pruning level of the plan.

    A fixed plan yields exactly t_max + 1 vectors (all-zero once the graph
    empties); the open-ended plan emits vectors until, and including, the
    first level whose pruned graph is empty.
    """
    vectors: list[MeasurementVector] = []
    current = g
    if plan.mode == MODE_FIXED:
        for t in range(plan.t_max + 1):
            if not current.is_empty():
                current = prune_by_weight(current, t)
            vectors.append(ZERO_VECTOR if current.is_empty() else measure_all(current))
        return vectors
    if plan.mode == MODE_UNTIL_EMPTY:
        t = 0
        while True:
            current = prune_by_weight(current, t)
            vectors.append(ZERO_VECTOR if current.is_empty() else measure_all(current))
            if current.is_empty():
                return vectors
            t += 1
    raise ConfigError(f"unknown threshold plan mode {plan.mode!r}")


def feature_column_names(t_max: int) -> tuple[str, ...]:
    return tuple(f"{name}_t{t}" for t in range(t_max + 1) for name in MEASUREMENT_NAMES)


def build_matrix(segments: Sequence[NoteSequence],
                 params: TraversalParams = TraversalParams(),
                 plan: ThresholdPlan = ThresholdPlan.fixed(0),
                 self_edges: str = "skip") -> FeatureMatrix:
    """One feature row per segment; requires a fixed plan for uniform width."""
    if plan.mode != MODE_FIXED:
        raise ConfigError("matrix building requires a fixed threshold plan")
    rows = []
    for seq in segments:
        g = build_network(seq, params, self_edges=self_edges)
        vectors = extract_features(g, plan)
        values = np.array([x for vec in vectors for x in vec], dtype=np.float64)
        rows.append(FeatureRow(seq.source_id, seq.segment_index, seq.label, values))
    return FeatureMatrix(tuple(rows), feature_column_names(plan.t_max), rescaled=False)


def minmax_rescale(m: FeatureMatrix) -> FeatureMatrix:
    """Map every column onto [0, 1]; constant columns map to 0."""
    if m.rescaled:
        raise ConfigError("matrix is already rescaled")
    if not m.rows:
        return replace(m, rescaled=True)
    values = m.values_matrix
    lo = values.min(axis=0)
    span = values.max(axis=0) - lo
    safe = np.where(span == 0, 1.0, span)
    scaled = np.where(span == 0, 0.0, (values - lo) / safe)
    rows = tuple(replace(r, values=scaled[i]) for i, r in enumerate(m.rows))
    return FeatureMatrix(rows, m.column_names, rescaled=True)


def write_matrix(m: FeatureMatrix, path: str | Path) -> None:
    """CSV with header source_id,segment_index,label,<columns>; 9 significant digits."""
    lines = ["source_id,segment_index,label," + ",".join(m.column_names)]
    for r in m.rows:
        for field, what in ((r.source_id, "source_id"), (r.label, "label")):
            if "," in field or "\n" in field:
                raise DataError(f"{what} {field!r} must not contain ',' or newlines")
        rendered = ",".join(f"{v:.9g}" for v in r.values)
        lines.append(f"{r.source_id},{r.segment_index},{r.label},{rendered}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_matrix(path: str | Path, rescaled: bool = False) -> FeatureMatrix:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read feature matrix {path}: {exc}") from None
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise DataError(f"empty feature matrix file: {path}")
    header = lines[0].split(",")
    if header[:3] != ["source_id", "segment_index", "label"]:
        raise DataError(f"bad feature matrix header in {path}")
    columns = tuple(header[3:])
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 3 + len(columns):
            raise DataError(f"line {lineno}: expected {3 + len(columns)} fields, "
                            f"got {len(parts)}")
        try:
            idx = int(parts[1])
            values = np.array([float(x) for x in parts[3:]], dtype=np.float64)
        except ValueError as exc:
            raise DataError(f"line {lineno}: {exc}") from None
        rows.append(FeatureRow(parts[0], idx, parts[2], values))
    m = FeatureMatrix(tuple(rows), columns, rescaled=rescaled)
    if rescaled and m.rows:
        values = m.values_matrix
        if values.size and (values.min() < 0.0 or values.max() > 1.0):
            raise DataError(f"{path} claims rescaled values but exceeds [0, 1]")
    return m


def matrices_equal(a: FeatureMatrix, b: FeatureMatrix) -> bool:
    """Structural equality (ids, labels, columns, exact values)."""
    if a.column_names != b.column_names or len(a.rows) != len(b.rows):
        return False
    for ra, rb in zip(a.rows, b.rows):
        if (ra.source_id, ra.segment_index, ra.label) != \
                (rb.source_id, rb.segment_index, rb.label):
            return False
        if not np.array_equal(ra.values, rb.values):
            return False
    return True
