"""Baseline separability evaluation: stratified k-fold CV with a k-NN classifier.

Features are produced independently of any classifier; this harness only
demonstrates class separability. Tie handling is fully deterministic:
neighbors sort by (distance, label order, row index), vote ties break by
smallest summed distance and then by label order.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ConfigError, DataError
from .features import FeatureMatrix


@dataclass(frozen=True, eq=False)
class CVReport:
    fold_accuracies: list[float]
    mean_accuracy: float
    std_accuracy: float
    confusion: np.ndarray
    label_order: list[str]
    folds: int
    knn_k: int
    seed: int

    @property
    def pooled_accuracy(self) -> float:
        total = int(self.confusion.sum())
        return float(np.trace(self.confusion)) / total if total else 0.0

    def to_text(self) -> str:
        lines = [
            f"rows: {int(self.confusion.sum())}",
            f"classes: {len(self.label_order)}",
            "labels: " + ",".join(self.label_order),
            f"folds: {self.folds}",
            f"knn_k: {self.knn_k}",
            f"seed: {self.seed}",
            "fold_accuracies: " + " ".join(f"{a:.4f}" for a in self.fold_accuracies),
            f"mean_accuracy: {self.mean_accuracy:.2f}",
            f"std_accuracy: {self.std_accuracy:.4f}",
            f"pooled_accuracy: {self.pooled_accuracy:.4f}",
        ]
        return "\n".join(lines) + "\n"

    def confusion_csv(self) -> str:
        lines = [",".join(self.label_order)]
        for row in self.confusion:
            lines.append(",".join(str(int(c)) for c in row))
        return "\n".join(lines) + "\n"

    def write(self, report_path: str | Path, confusion_path: str | Path) -> None:
        Path(report_path).write_text(self.to_text(), encoding="utf-8")
        Path(confusion_path).write_text(self.confusion_csv(), encoding="utf-8")


def stratified_folds(labels: Sequence[str], k: int, seed: int) -> list[list[int]]:
    """Partition indices into k folds with per-class counts differing by <= 1."""
    if k < 2:
        raise ConfigError(f"need at least 2 folds, got {k}")
    by_class: dict[str, list[int]] = {}
    for i, label in enumerate(labels):
        by_class.setdefault(label, []).append(i)
    rng = np.random.default_rng(seed)
    folds: list[list[int]] = [[] for _ in range(k)]
    for label in sorted(by_class):
        idx = np.array(by_class[label])
        if idx.size < k:
            raise DataError(
                f"class {label!r} has {idx.size} samples, fewer than {k} folds")
        rng.shuffle(idx)
        for j, sample in enumerate(idx):
            folds[j % k].append(int(sample))
    return [sorted(f) for f in folds]


def _label_ranks(labels: Sequence[str]) -> tuple[list[str], np.ndarray]:
    order = sorted(set(labels))
    rank = {label: r for r, label in enumerate(order)}
    return order, np.array([rank[label] for label in labels])


def _vote(dist_row: np.ndarray, ranks: np.ndarray, order: list[str], k: int) -> str:
    neighbor_order = np.lexsort((np.arange(dist_row.size), ranks, dist_row))
    chosen = neighbor_order[:k]
    votes: dict[int, int] = {}
    sums: dict[int, float] = {}
    for i in chosen:
        r = int(ranks[i])
        votes[r] = votes.get(r, 0) + 1
        sums[r] = sums.get(r, 0.0) + float(dist_row[i])
    best = max(votes.values())
    tied = [r for r, v in votes.items() if v == best]
    tied.sort(key=lambda r: (sums[r], r))
    return order[tied[0]]


def knn_classify(train_values: np.ndarray, train_labels: Sequence[str],
                 query: np.ndarray, k: int = 1) -> str:
    """Majority label among the k nearest training rows (Euclidean)."""
    train_values = np.asarray(train_values, dtype=np.float64)
    query = np.asarray(query, dtype=np.float64)
    if train_values.ndim != 2 or train_values.shape[0] == 0:
        raise ValueError("training matrix must be non-empty and 2-D")
    if query.shape != (train_values.shape[1],):
        raise ValueError(
            f"query width {query.shape} does not match training width "
            f"{train_values.shape[1]}")
    if not 1 <= k <= train_values.shape[0]:
        raise ValueError(f"k={k} out of range for {train_values.shape[0]} rows")
    order, ranks = _label_ranks(train_labels)
    dist = np.sqrt(((train_values - query) ** 2).sum(axis=1))
    return _vote(dist, ranks, order, k)


def _fold_rescale(train: np.ndarray, test: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Min-Max statistics from the training rows only; test values clipped
    # so the [0, 1] contract holds for out-of-range queries.
    lo = train.min(axis=0)
    span = train.max(axis=0) - lo
    safe = np.where(span == 0, 1.0, span)
    t_train = np.where(span == 0, 0.0, (train - lo) / safe)
    t_test = np.clip(np.where(span == 0, 0.0, (test - lo) / safe), 0.0, 1.0)
    return t_train, t_test


def cross_validate(m: FeatureMatrix, k_folds: int = 10, knn_k: int = 1,
                   seed: int = 0, train_only_rescale: bool = False) -> CVReport:
    """Stratified k-fold CV of a k-NN classifier over the feature matrix."""
    if not train_only_rescale and not m.rescaled:
        raise ConfigError("cross_validate requires a rescaled matrix "
                          "(or train_only_rescale=True on a raw one)")
    labels = m.labels
    values = m.values_matrix
    order, ranks = _label_ranks(labels)
    folds = stratified_folds(labels, k_folds, seed)
    confusion = np.zeros((len(order), len(order)), dtype=np.int64)
    accuracies = []
    for test_idx in folds:
        test_set = set(test_idx)
        train_idx = [i for i in range(len(labels)) if i not in test_set]
        train_v, test_v = values[train_idx], values[test_idx]
        if train_only_rescale:
            train_v, test_v = _fold_rescale(train_v, test_v)
        train_ranks = ranks[train_idx]
        dists = cdist(test_v, train_v)
        correct = 0
        for row, i in enumerate(test_idx):
            predicted = _vote(dists[row], train_ranks, order, knn_k)
            true = labels[i]
            confusion[order.index(true), order.index(predicted)] += 1
            if predicted == true:
                correct += 1
        accuracies.append(correct / len(test_idx))
    return CVReport(
        fold_accuracies=accuracies,
        mean_accuracy=float(np.mean(accuracies)),
        std_accuracy=float(np.std(accuracies, ddof=0)),
        confusion=confusion,
        label_order=order,
        folds=k_folds,
        knn_k=knn_k,
        seed=seed,
    )
