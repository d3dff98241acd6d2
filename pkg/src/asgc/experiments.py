"""Benchmark protocol: per-split method runs, the convex-combination search,
hop sweeps, and proportional-accuracy aggregation.

Methods:

* ``raw``   - logistic regression on the unfiltered features.
* ``sgc``   - logistic regression on the K-hop smoothed features.
* ``sgc1``  - the same with the hop count forced to 1.
* ``asgc``  - logistic regression on the adaptively filtered features.
* ``combo`` - validation-selected convex blend of raw/sgc/asgc features.

Non-combo methods have no validation-dependent hyperparameters, so they train
on train + validation; the combo search selects its blend on validation and
then retrains the winner on train + validation, putting every method on the
same 80% of labels before testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .data import LabeledDataset, SplitSpec, make_splits
from .filters import ComboWeights, asgc_filter, blend, sgc_filter, simplex_grid
from .numeric import LogisticConfig, LogisticModel, accuracy, fit_logistic, predict
from .parallel import parallel_map

METHODS = ("raw", "sgc", "sgc1", "asgc", "combo")


@dataclass(frozen=True)
class TrialResult:
    """One (dataset, method, split) outcome."""

    dataset: str
    method: str
    k_hops: int
    seed: int
    test_accuracy: float
    validation_accuracy: float | None = None
    chosen_weights: ComboWeights | None = None


@dataclass(frozen=True, eq=False)
class FilteredFeatures:
    """Optional precomputed feature matrices, shared across methods and splits.

    Filtering is unsupervised, so matrices depend only on (dataset, k) and can
    safely be reused across trials. Any missing entry is computed on demand.
    """

    raw: np.ndarray | None = None
    sgc: np.ndarray | None = None
    asgc: np.ndarray | None = None
    sgc1: np.ndarray | None = None


def _method_matrix(
    ds: LabeledDataset,
    method: str,
    k_hops: int,
    features: FilteredFeatures | None,
    rank_tol: float,
) -> np.ndarray:
    ff = features or FilteredFeatures()
    if method == "raw":
        return ds.features if ff.raw is None else ff.raw
    if method == "sgc":
        return sgc_filter(ds.graph, ds.features, k_hops) if ff.sgc is None else ff.sgc
    if method == "sgc1":
        return sgc_filter(ds.graph, ds.features, 1) if ff.sgc1 is None else ff.sgc1
    if method == "asgc":
        if ff.asgc is None:
            return asgc_filter(ds.graph, ds.features, k_hops, rank_tol).filtered
        return ff.asgc
    raise ValueError(f"unknown method {method!r}")


def run_method(
    ds: LabeledDataset,
    split: SplitSpec,
    method: str,
    k_hops: int = 6,
    resolution: int = 3,
    classifier: LogisticConfig | None = None,
    features: FilteredFeatures | None = None,
    rank_tol: float = 1e-10,
) -> TrialResult:
    """Train one method on one split and score it on the test nodes."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "combo":
        x_raw = _method_matrix(ds, "raw", k_hops, features, rank_tol)
        x_sgc = _method_matrix(ds, "sgc", k_hops, features, rank_tol)
        x_asgc = _method_matrix(ds, "asgc", k_hops, features, rank_tol)
        _, _, trial = combo_search(
            ds, split, x_raw, x_sgc, x_asgc, resolution=resolution,
            classifier=classifier, k_hops=k_hops,
        )
        return trial
    x = _method_matrix(ds, method, k_hops, features, rank_tol)
    fit_idx = np.concatenate([split.train, split.validation])
    model = fit_logistic(x[fit_idx], ds.labels[fit_idx], classifier)
    test_accuracy = accuracy(predict(model, x[split.test]), ds.labels[split.test])
    return TrialResult(
        dataset=ds.name,
        method=method,
        k_hops=k_hops,
        seed=split.seed,
        test_accuracy=test_accuracy,
    )


def combo_search(
    ds: LabeledDataset,
    split: SplitSpec,
    x_raw: np.ndarray,
    x_sgc: np.ndarray,
    x_asgc: np.ndarray,
    resolution: int = 3,
    classifier: LogisticConfig | None = None,
    k_hops: int = 6,
) -> tuple[LogisticModel, ComboWeights, TrialResult]:
    """Grid-search convex blend weights by validation accuracy, then retrain.

    Every simplex lattice triple is tried in deterministic grid order; a
    strictly better validation accuracy is required to displace the incumbent,
    so ties resolve to the first maximum seen. The winning blend is retrained
    on train + validation and scored on test.
    """
    y = ds.labels
    best_weights: ComboWeights | None = None
    best_val = -np.inf
    for weights in simplex_grid(resolution):
        blended = blend(x_raw, x_sgc, x_asgc, weights)
        model = fit_logistic(blended[split.train], y[split.train], classifier)
        val_acc = accuracy(predict(model, blended[split.validation]), y[split.validation])
        if val_acc > best_val:
            best_val = val_acc
            best_weights = weights
    assert best_weights is not None
    blended = blend(x_raw, x_sgc, x_asgc, best_weights)
    fit_idx = np.concatenate([split.train, split.validation])
    final = fit_logistic(blended[fit_idx], y[fit_idx], classifier)
    test_accuracy = accuracy(predict(final, blended[split.test]), y[split.test])
    trial = TrialResult(
        dataset=ds.name,
        method="combo",
        k_hops=k_hops,
        seed=split.seed,
        test_accuracy=test_accuracy,
        validation_accuracy=float(best_val),
        chosen_weights=best_weights,
    )
    return final, best_weights, trial


def split_seed(seed: int, trial_index: int) -> int:
    """Derive the split seed for one trial; shared by every method and hop count."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial_index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def classification_trials(
    ds: LabeledDataset,
    method: str,
    k_hops: int = 6,
    trials: int = 10,
    seed: int = 0,
    resolution: int = 3,
    classifier: LogisticConfig | None = None,
    rank_tol: float = 1e-10,
    jobs: int = 1,
) -> list[TrialResult]:
    """Run one method over `trials` random splits with shared filter matrices.

    Splits derive from (seed, trial index), so results do not depend on how
    the trials are scheduled when ``jobs > 1``.
    """
    ff = _bundle(ds, [method], k_hops, rank_tol)

    def one(t: int) -> TrialResult:
        split = make_splits(ds.n, split_seed(seed, t))
        return run_method(ds, split, method, k_hops, resolution, classifier, ff, rank_tol)

    return parallel_map(one, range(trials), jobs)


def _bundle(ds, methods, k_hops, rank_tol) -> FilteredFeatures:
    need = set(methods)
    need_sgc = bool(need & {"sgc", "combo"})
    need_asgc = bool(need & {"asgc", "combo"})
    return FilteredFeatures(
        raw=ds.features,
        sgc=sgc_filter(ds.graph, ds.features, k_hops) if need_sgc else None,
        asgc=asgc_filter(ds.graph, ds.features, k_hops, rank_tol).filtered if need_asgc else None,
        sgc1=sgc_filter(ds.graph, ds.features, 1) if "sgc1" in need else None,
    )


def k_sweep(
    ds: LabeledDataset,
    methods: Sequence[str] = METHODS,
    k_values: Iterable[int] = range(1, 11),
    trials: int = 10,
    seed: int = 0,
    resolution: int = 3,
    classifier: LogisticConfig | None = None,
    rank_tol: float = 1e-10,
) -> list[TrialResult]:
    """Cross-product of hop counts, trials, and methods.

    For a fixed (k, trial) every method sees the identical split, so method
    comparisons are paired. Filter matrices are computed once per hop count.
    """
    methods = list(methods)
    k_values = list(k_values)
    if not methods or not k_values:
        raise ValueError("methods and k_values must be nonempty")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}")
    splits = [make_splits(ds.n, split_seed(seed, t)) for t in range(trials)]
    results = []
    for k in k_values:
        ff = _bundle(ds, methods, k, rank_tol)
        for split in splits:
            for m in methods:
                results.append(
                    run_method(ds, split, m, k, resolution, classifier, ff, rank_tol)
                )
    return results


@dataclass(frozen=True, eq=False)
class AggregateReport:
    """Per-dataset accuracy statistics and cross-dataset proportional summary.

    ``proportion[(method, dataset)]`` is that method's mean accuracy divided
    by the best method's mean accuracy on the dataset, so the per-dataset
    winner scores exactly 1. External reference methods (reported numbers,
    never trained here) carry source ``"reported"``.
    """

    datasets: tuple[str, ...]
    methods: tuple[str, ...]
    sources: dict[str, str]
    accuracy_mean: dict[tuple[str, str], float]
    accuracy_std: dict[tuple[str, str], float]
    proportion: dict[tuple[str, str], float]
    mean_proportion: dict[str, float]
    min_proportion: dict[str, float]


def aggregate(
    results: Sequence[TrialResult],
    external_baselines: Mapping[str, Mapping[str, float]] | None = None,
) -> AggregateReport:
    """Aggregate trial results into proportional accuracies per method.

    Every measured method must cover every dataset present; external baseline
    tables must cover the same datasets. Proportions are scale-free per
    dataset: rescaling all accuracies on one dataset leaves them unchanged.
    """
    if not results:
        raise ValueError("no results to aggregate")
    datasets = tuple(sorted({r.dataset for r in results}))
    measured = tuple(sorted({r.method for r in results}))
    by_key: dict[tuple[str, str], list[float]] = {}
    for r in results:
        by_key.setdefault((r.method, r.dataset), []).append(r.test_accuracy)
    accuracy_mean: dict[tuple[str, str], float] = {}
    accuracy_std: dict[tuple[str, str], float] = {}
    for m in measured:
        for d in datasets:
            if (m, d) not in by_key:
                raise ValueError(f"method {m!r} has no results on dataset {d!r}")
            vals = np.asarray(by_key[(m, d)])
            accuracy_mean[(m, d)] = float(vals.mean())
            accuracy_std[(m, d)] = float(vals.std())
    sources = {m: "measured" for m in measured}
    external_baselines = external_baselines or {}
    for name, table in external_baselines.items():
        if name in sources:
            raise ValueError(f"external baseline {name!r} collides with a measured method")
        missing = [d for d in datasets if d not in table]
        if missing:
            raise ValueError(f"external baseline {name!r} missing datasets {missing}")
        sources[name] = "reported"
        for d in datasets:
            accuracy_mean[(name, d)] = float(table[d])
            accuracy_std[(name, d)] = 0.0
    methods = tuple(list(measured) + sorted(external_baselines))
    proportion: dict[tuple[str, str], float] = {}
    for d in datasets:
        best = max(accuracy_mean[(m, d)] for m in methods)
        if best <= 0:
            raise ValueError(f"no method has positive accuracy on dataset {d!r}")
        for m in methods:
            proportion[(m, d)] = accuracy_mean[(m, d)] / best
    mean_proportion = {
        m: float(np.mean([proportion[(m, d)] for d in datasets])) for m in methods
    }
    min_proportion = {
        m: float(min(proportion[(m, d)] for d in datasets)) for m in methods
    }
    return AggregateReport(
        datasets=datasets,
        methods=methods,
        sources=sources,
        accuracy_mean=accuracy_mean,
        accuracy_std=accuracy_std,
        proportion=proportion,
        mean_proportion=mean_proportion,
        min_proportion=min_proportion,
    )
