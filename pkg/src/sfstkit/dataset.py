"""Random-walk datasets, splits, and transition-coverage analytics.

A dataset is built by walking the machine from its start state: at every
final state the walk stops with a fixed probability and emits the final
output; otherwise it takes a uniformly random outgoing transition.  Walks
that would exceed the step cap are discarded and restarted, walks that
strand in a non-final dead end are discarded, and pairs are deduplicated by
input string until the target count is reached.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from typing import Iterator

import numpy as np

from .errors import ConsistencyError, ExhaustionError, SplitError
from .formats import machine_hash
from .generate import RNG_ALGORITHM, make_rng
from .machine import Sfst, TokenString, transduce


@dataclass(frozen=True)
class WalkConfig:
    """Sampling knobs for random-walk dataset generation."""

    stop_probability: float = 0.10
    max_steps: int = 50
    target_pairs: int = 20_000
    seed: int = 0
    max_attempts: int | None = None

    def __post_init__(self):
        if not 0 < self.stop_probability <= 1:
            raise ValueError("stop_probability must be in (0, 1]")
        if self.max_steps < 1 or self.target_pairs < 1:
            raise ValueError("max_steps and target_pairs must be positive")
        if self.max_attempts is not None and self.max_attempts < 1:
            raise ValueError("max_attempts must be positive")

    @property
    def attempt_budget(self) -> int:
        # generous default: dedup misses dominate only on tiny languages
        return self.max_attempts if self.max_attempts is not None else 200 * self.target_pairs

    def metadata(self) -> dict[str, str]:
        meta = {f.name: str(getattr(self, f.name)) for f in fields(self)}
        meta["rng"] = RNG_ALGORITHM
        return meta


@dataclass
class Dataset:
    """Unique input/output pairs plus provenance of the machine that made them."""

    pairs: list[tuple[TokenString, TokenString]]
    machine_id: str = ""
    config: WalkConfig | None = None

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[TokenString, TokenString]]:
        return iter(self.pairs)

    def subset(self, indices) -> "Dataset":
        return Dataset([self.pairs[i] for i in indices], self.machine_id, self.config)


@dataclass
class Split:
    train: Dataset
    test: Dataset
    kind: str
    param: float | int


@dataclass
class CoverageReport:
    """Per-transition counts of training pairs crossing each transition."""

    per_transition: dict[tuple[int, int], int]
    min_count: int
    mean_count: float
    uncovered: list[tuple[int, int]]
    threshold: int
    threshold_met: bool


def _outgoing_index(m: Sfst) -> list[list[tuple[int, TokenString, int]]]:
    index: list[list[tuple[int, TokenString, int]]] = [[] for _ in range(m.n_states)]
    for (q, a) in sorted(m.transitions):
        w, j = m.transitions[(q, a)]
        index[q].append((a, w, j))
    return index


def sample_walk(m: Sfst, cfg: WalkConfig, rng: np.random.Generator, _index=None):
    """One walk attempt; an (input, output) pair, or None when discarded.

    Discards happen when the walk would exceed the step cap or strands in a
    non-final state with no outgoing transitions.  The walk only stops where
    a final output is available.
    """
    index = _outgoing_index(m) if _index is None else _index
    p = cfg.stop_probability
    cap = cfg.max_steps
    finals = m.finals
    random = rng.random
    integers = rng.integers
    q = m.start
    ins: list[int] = []
    outs: list[int] = []
    while True:
        fin = finals.get(q)
        if fin is not None and random() < p:
            return tuple(ins), tuple(outs) + fin
        arcs = index[q]
        if not arcs:
            if fin is not None:
                return tuple(ins), tuple(outs) + fin
            return None
        if len(ins) >= cap:
            return None
        a, w, j = arcs[integers(len(arcs))] if len(arcs) > 1 else arcs[0]
        ins.append(a)
        outs.extend(w)
        q = j


def random_walk(
    m: Sfst, cfg: WalkConfig, rng: np.random.Generator | None = None
) -> Dataset:
    """Collect ``cfg.target_pairs`` unique pairs by repeated walks.

    Raises :class:`ExhaustionError` when the attempt budget runs out first
    (for instance when the machine has fewer distinct accepted strings under
    the step cap than requested).  Every pair is verified against the
    machine's transduction before the dataset is returned.
    """
    if rng is None:
        rng = make_rng(cfg.seed)
    index = _outgoing_index(m)
    seen: set[TokenString] = set()
    pairs: list[tuple[TokenString, TokenString]] = []
    budget = cfg.attempt_budget
    attempts = 0
    while len(pairs) < cfg.target_pairs:
        if attempts >= budget:
            raise ExhaustionError(len(pairs), cfg.target_pairs, attempts)
        attempts += 1
        walked = sample_walk(m, cfg, rng, index)
        if walked is None:
            continue
        ins, outs = walked
        if ins in seen:
            continue
        seen.add(ins)
        pairs.append((ins, outs))
    dataset = Dataset(pairs, machine_hash(m), cfg)
    _verify(m, dataset)
    return dataset


def _verify(m: Sfst, d: Dataset) -> None:
    for ins, outs in d.pairs:
        if transduce(m, ins) != outs:
            raise ConsistencyError(f"pair {ins!r} -> {outs!r} contradicts the machine")


def split(d: Dataset, kind: str, param, rng=None) -> Split:
    """Partition a dataset randomly by fraction, or by input-length cutoff.

    ``rng`` may be a generator or a seed (default seed 0); the random split is
    deterministic given the seed.  Raises :class:`SplitError` when either
    side would be empty.
    """
    n = len(d.pairs)
    if kind == "random":
        frac = float(param)
        if not 0 < frac < 1:
            raise SplitError(f"fraction {frac} outside (0, 1)")
        if rng is None or isinstance(rng, int):
            rng = make_rng(0 if rng is None else rng)
        n_train = int(round(frac * n))
        if n_train <= 0 or n_train >= n:
            raise SplitError(f"fraction {frac} leaves an empty side for {n} pairs")
        perm = rng.permutation(n)
        train_idx = sorted(int(i) for i in perm[:n_train])
        test_idx = sorted(int(i) for i in perm[n_train:])
    elif kind == "by_length":
        cutoff = int(param)
        train_idx = [i for i, (ins, _o) in enumerate(d.pairs) if len(ins) <= cutoff]
        test_idx = [i for i, (ins, _o) in enumerate(d.pairs) if len(ins) > cutoff]
        if not train_idx or not test_idx:
            raise SplitError(f"length cutoff {cutoff} leaves an empty side")
    else:
        raise SplitError(f"unknown split kind {kind!r}")
    return Split(d.subset(train_idx), d.subset(test_idx), kind, param)


def coverage(m: Sfst, train: Dataset, threshold: int = 400) -> CoverageReport:
    """Replay every training input and count crossings per transition.

    A pair the machine does not accept (or maps elsewhere) raises
    :class:`ConsistencyError` naming the pair.  ``threshold_met`` records
    whether every transition was crossed at least ``threshold`` times.
    """
    counts = {key: 0 for key in m.transitions}
    trans = m.transitions
    for ins, outs in train.pairs:
        q = m.start
        acc: list[int] = []
        for a in ins:
            hit = trans.get((q, a))
            if hit is None:
                raise ConsistencyError(f"pair {ins!r} is not accepted by the machine")
            counts[(q, a)] += 1
            acc.extend(hit[0])
            q = hit[1]
        fin = m.finals.get(q)
        if fin is None or tuple(acc) + fin != outs:
            raise ConsistencyError(f"pair {ins!r} -> {outs!r} contradicts the machine")
    values = counts.values()
    min_count = min(values) if counts else 0
    mean_count = (sum(values) / len(counts)) if counts else 0.0
    uncovered = sorted(k for k, v in counts.items() if v == 0)
    return CoverageReport(
        counts, min_count, mean_count, uncovered, threshold, min_count >= threshold
    )


def length_cutoff_for_fraction(d: Dataset, fraction: float) -> int:
    """Smallest cutoff whose ≤-cutoff share reaches ``fraction`` of the pairs."""
    lengths = sorted(len(ins) for ins, _o in d.pairs)
    k = max(1, int(round(fraction * len(lengths))))
    return lengths[min(k, len(lengths)) - 1]


def compare_split_coverage(
    m: Sfst,
    d: Dataset,
    cutoff: int | None = None,
    fraction: float = 0.8,
    rng=None,
    threshold: int = 400,
) -> tuple[CoverageReport, CoverageReport]:
    """Coverage of a length-split train set vs a size-matched random one.

    When ``cutoff`` is None it is derived from ``fraction``.  The random
    baseline draws exactly as many pairs as the length split kept, so the two
    reports differ only in *which* pairs were kept.
    """
    if cutoff is None:
        cutoff = length_cutoff_for_fraction(d, fraction)
    by_length = split(d, "by_length", cutoff)
    k = len(by_length.train.pairs)
    if rng is None or isinstance(rng, int):
        rng = make_rng(0 if rng is None else rng)
    perm = rng.permutation(len(d.pairs))
    random_train = d.subset(sorted(int(i) for i in perm[:k]))
    return (
        coverage(m, by_length.train, threshold),
        coverage(m, random_train, threshold),
    )
