"""Plain-text dataset ingestion, split generation, and the homophily statistic.

File formats (all plain text, documented in the README):

* edges: one ``u<TAB>v`` pair of 0-based node ids per line (any whitespace
  accepted on input); the graph is symmetrized and deduplicated on load.
* features: one node per line, comma-separated values; row i is node i.
* labels: one integer per line; classes must be exactly 0..L-1.
* manifest: ``<name>.edges = <path>`` style key-value lines binding a dataset
  name to its three files, with an optional ``<name>.nodes`` expected count.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .graph import Graph, GraphError, degrees


class DatasetError(ValueError):
    """Malformed dataset files or inconsistent contents."""


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    name: str
    graph: Graph
    features: np.ndarray
    labels: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def num_classes(self) -> int:
        return int(self.labels.max()) + 1


@dataclass(frozen=True, eq=False)
class SplitSpec:
    """Disjoint train/validation/test node index sets.

    Test is floor(n / 5) nodes, validation a third (floored) of the rest, and
    train the remainder, drawn from a seeded uniform permutation.
    """

    train: np.ndarray
    validation: np.ndarray
    test: np.ndarray
    seed: int


def _read_lines(path) -> list[str]:
    return [line for line in Path(path).read_text().splitlines() if line.strip()]


def _read_edges(path) -> np.ndarray:
    pairs = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        parts = line.split()
        if len(parts) != 2:
            raise DatasetError(f"{path}:{lineno}: expected two node ids, got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise DatasetError(f"{path}:{lineno}: non-integer node id in {line!r}")
    return np.asarray(pairs, dtype=np.int64).reshape(-1, 2)


def _read_features(path) -> np.ndarray:
    rows = []
    width = None
    for lineno, line in enumerate(_read_lines(path), start=1):
        try:
            row = np.fromiter(map(float, line.split(",")), dtype=np.float64)
        except ValueError:
            raise DatasetError(f"{path}:{lineno}: unparseable feature row")
        if width is None:
            width = len(row)
        if len(row) != width or width == 0:
            raise DatasetError(f"{path}:{lineno}: ragged feature row ({len(row)} != {width})")
        rows.append(row)
    if not rows:
        raise DatasetError(f"{path}: empty feature file")
    out = np.vstack(rows)
    if not np.isfinite(out).all():
        raise DatasetError(f"{path}: features must be finite")
    return out


def _read_labels(path) -> np.ndarray:
    values = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        try:
            values.append(int(line.strip()))
        except ValueError:
            raise DatasetError(f"{path}:{lineno}: non-integer label {line!r}")
    return np.asarray(values, dtype=np.int64)


def load_dataset(edge_path, feature_path, label_path, name: str | None = None) -> LabeledDataset:
    """Load and validate a dataset from its three text files.

    The edge list is symmetrized (both directions included), duplicates are
    collapsed, and self-loops dropped. Labels must use every class in
    0..L-1 at least once.
    """
    features = _read_features(feature_path)
    labels = _read_labels(label_path)
    n = features.shape[0]
    if labels.shape[0] != n:
        raise DatasetError(
            f"label count ({labels.shape[0]}) does not match feature rows ({n})"
        )
    if labels.min() < 0:
        raise DatasetError("labels must be nonnegative")
    present = np.unique(labels)
    expected = np.arange(labels.max() + 1)
    if len(present) != len(expected):
        missing = sorted(set(expected.tolist()) - set(present.tolist()))
        raise DatasetError(f"label gap: classes {missing} absent (labels must be 0..L-1)")
    edges = _read_edges(edge_path)
    try:
        graph = Graph.from_edges(n, edges)
    except GraphError as exc:
        raise DatasetError(f"{edge_path}: {exc}")
    return LabeledDataset(
        name=name or Path(edge_path).stem,
        graph=graph,
        features=features,
        labels=labels,
    )


def save_dataset(ds: LabeledDataset, edge_path, feature_path, label_path) -> None:
    """Write a dataset back out in the canonical on-disk form.

    Each undirected edge appears once as ``i<TAB>j`` with i < j; feature
    values use shortest round-trip decimal representation, so a save/load
    cycle reproduces the arrays exactly.
    """
    g = ds.graph
    row = np.repeat(np.arange(g.n), np.diff(g.indptr))
    upper = row < g.indices
    with open(edge_path, "w") as fh:
        for i, j in zip(row[upper], g.indices[upper]):
            fh.write(f"{i}\t{j}\n")
    with open(feature_path, "w") as fh:
        for feature_row in ds.features:
            fh.write(",".join(repr(float(v)) for v in feature_row) + "\n")
    with open(label_path, "w") as fh:
        for value in ds.labels:
            fh.write(f"{int(value)}\n")


@dataclass(frozen=True)
class ManifestEntry:
    name: str
    edges: Path
    features: Path
    labels: Path
    expected_nodes: int | None = None


def load_manifest(path) -> dict[str, ManifestEntry]:
    """Parse a manifest of ``<name>.<field> = <value>`` lines.

    Fields: ``edges``, ``features``, ``labels`` (paths, resolved relative to
    the manifest's directory) and optional ``nodes`` (expected node count).
    Blank lines and lines starting with ``#`` are skipped.
    """
    path = Path(path)
    base = path.parent
    raw: dict[str, dict[str, str]] = {}
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise DatasetError(f"{path}:{lineno}: expected 'name.field = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if "." not in key:
            raise DatasetError(f"{path}:{lineno}: key {key!r} must look like 'name.field'")
        name, field = key.rsplit(".", 1)
        if field not in ("edges", "features", "labels", "nodes"):
            raise DatasetError(f"{path}:{lineno}: unknown field {field!r}")
        raw.setdefault(name, {})[field] = value
    entries = {}
    for name, fields in raw.items():
        missing = [f for f in ("edges", "features", "labels") if f not in fields]
        if missing:
            raise DatasetError(f"{path}: dataset {name!r} missing fields {missing}")
        expected = None
        if "nodes" in fields:
            try:
                expected = int(fields["nodes"])
            except ValueError:
                raise DatasetError(f"{path}: dataset {name!r} has non-integer node count")
        entries[name] = ManifestEntry(
            name=name,
            edges=base / fields["edges"],
            features=base / fields["features"],
            labels=base / fields["labels"],
            expected_nodes=expected,
        )
    return entries


def load_from_manifest(manifest_path, name: str) -> LabeledDataset:
    """Load one named dataset listed in a manifest file."""
    entries = load_manifest(manifest_path)
    if name not in entries:
        known = ", ".join(sorted(entries)) or "none"
        raise DatasetError(f"dataset {name!r} not in manifest (known: {known})")
    entry = entries[name]
    ds = load_dataset(entry.edges, entry.features, entry.labels, name=name)
    if entry.expected_nodes is not None and ds.n != entry.expected_nodes:
        warnings.warn(
            f"dataset {name!r} has {ds.n} nodes, manifest expected {entry.expected_nodes}",
            stacklevel=2,
        )
    return ds


def homophily(ds: LabeledDataset) -> float:
    """Mean over nodes of the fraction of neighbors sharing the node's label.

    Isolated nodes are excluded from the average (their fraction is
    undefined); a graph where every node is isolated is rejected.
    """
    g = ds.graph
    d = degrees(g)
    active = d > 0
    if not active.any():
        raise DatasetError("homophily undefined: all nodes are isolated")
    row = np.repeat(np.arange(g.n), d)
    same = (ds.labels[row] == ds.labels[g.indices]).astype(np.float64)
    same_counts = np.bincount(row, weights=same, minlength=g.n)
    fractions = same_counts[active] / d[active]
    return float(fractions.mean())


def make_splits(n: int, seed: int) -> SplitSpec:
    """Seeded random 20% test split, with a third of the rest for validation."""
    if n < 10:
        raise ValueError("need at least 10 nodes to split")
    perm = np.random.default_rng(seed).permutation(n)
    n_test = n // 5
    n_val = (n - n_test) // 3
    return SplitSpec(
        train=np.sort(perm[n_test + n_val :]),
        validation=np.sort(perm[n_test : n_test + n_val]),
        test=np.sort(perm[:n_test]),
        seed=seed,
    )
