"""Uniform random sampling of trim, canonical machines.

Sampling draws, independently for every (state, input symbol), a row that is
either all-zero or a single unit vector, uniformly over those N+1 choices;
the at-most-one-entry constraint is input determinism by construction.  Each
transition then gets a length-1 output drawn uniformly over the output
alphabet, with the empty output as one extra equiprobable outcome when empty
emissions are enabled.  Samples are rejected until the machine is accessible
and co-accessible, and the survivor is minimized into canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from .errors import GenerationError
from .machine import Sfst, is_accessible, is_coaccessible
from .minimize import minimize

#: Bit generator backing all sampling; pinned so seeds stay meaningful.
RNG_ALGORITHM = "pcg64"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class GenConfig:
    """Knobs for one machine draw.

    ``allow_empty_emission`` widens the per-transition output choice with the
    empty string as one extra outcome.  All randomness flows from ``seed``
    through a pcg64 stream.
    """

    n_states: int
    input_alphabet_size: int = 10
    output_alphabet_size: int = 30
    allow_empty_emission: bool = False
    seed: int = 0
    max_rejections: int = 10_000

    def __post_init__(self):
        if self.n_states < 1:
            raise ValueError("n_states must be positive")
        if self.input_alphabet_size < 1 or self.output_alphabet_size < 1:
            raise ValueError("alphabet sizes must be positive")
        if self.max_rejections < 1:
            raise ValueError("max_rejections must be positive")

    def rng(self) -> np.random.Generator:
        return make_rng(self.seed)

    def metadata(self) -> dict[str, str]:
        """Flat key=value echo of every knob, plus the rng identity."""
        meta = {f.name: str(getattr(self, f.name)) for f in fields(self)}
        meta["rng"] = RNG_ALGORITHM
        return meta


@dataclass(frozen=True, eq=False)
class TransitionMatrixSet:
    """Per-symbol 0/1 transition matrices, stored as one target per row.

    ``targets[s, i]`` is the destination of state ``i`` on symbol ``s``, or
    ``-1`` for no transition (the all-zero row).  Every row of every matrix
    therefore has at most one non-zero entry.
    """

    n_states: int
    targets: np.ndarray

    def matrix(self, symbol: int) -> np.ndarray:
        b = np.zeros((self.n_states, self.n_states), dtype=np.int8)
        for i, j in enumerate(self.targets[symbol]):
            if j >= 0:
                b[i, j] = 1
        return b

    def matrices(self) -> list[np.ndarray]:
        return [self.matrix(s) for s in range(self.targets.shape[0])]


def sample_matrices(cfg: GenConfig, rng: np.random.Generator) -> TransitionMatrixSet:
    """Draw one row per (symbol, state), uniform over the N+1 admissible rows."""
    targets = rng.integers(
        -1, cfg.n_states, size=(cfg.input_alphabet_size, cfg.n_states), dtype=np.int64
    )
    return TransitionMatrixSet(cfg.n_states, targets)


def attach_outputs(
    t: TransitionMatrixSet, cfg: GenConfig, rng: np.random.Generator
) -> Sfst:
    """Decorate sampled topology with uniform outputs; all states final with λ."""
    gamma = cfg.output_alphabet_size
    trans = {}
    for s in range(cfg.input_alphabet_size):
        row = t.targets[s]
        for i in range(cfg.n_states):
            j = row[i]
            if j < 0:
                continue
            if cfg.allow_empty_emission:
                k = int(rng.integers(gamma + 1))
                out = () if k == gamma else (k,)
            else:
                out = (int(rng.integers(gamma)),)
            trans[(i, s)] = (out, int(j))
    finals = {q: () for q in range(cfg.n_states)}
    return Sfst(
        cfg.n_states,
        0,
        finals,
        trans,
        frozenset(range(cfg.input_alphabet_size)),
        frozenset(range(gamma)),
    )


def generate(cfg: GenConfig, rng: np.random.Generator | None = None) -> Sfst:
    """Rejection-sample a trim machine and return its canonical minimal form.

    Raises :class:`GenerationError` after ``cfg.max_rejections`` failed draws.
    A pure function of (cfg, seed) when no generator is passed in.
    """
    if rng is None:
        rng = cfg.rng()
    for _ in range(cfg.max_rejections):
        m = attach_outputs(sample_matrices(cfg, rng), cfg, rng)
        if is_accessible(m) and is_coaccessible(m):
            return minimize(m)
    raise GenerationError(cfg.max_rejections)
