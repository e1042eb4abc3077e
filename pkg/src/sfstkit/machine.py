"""Subsequential finite-state transducers and their transduction semantics.

A machine walks an input-deterministic transition graph, concatenating the
output string of every transition it crosses, and finishes by appending the
final output of the state it stops in.  The transduction is a *partial*
function: a missing transition, or stopping in a non-final state, makes the
result undefined, which the operations here report as ``None`` rather than
an error.

Tokens are non-negative integers.  Token strings are plain tuples; the empty
tuple is the empty string (the identity of concatenation), exported here as
``LAMBDA``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import AlphabetError, PathError

TokenString = tuple[int, ...]

#: The empty token string.
LAMBDA: TokenString = ()


def _as_string(tokens: Iterable[int]) -> TokenString:
    out = tuple(int(t) for t in tokens)
    if any(t < 0 for t in out):
        raise ValueError(f"negative token id in {out!r}")
    return out


@dataclass(frozen=True)
class Sfst:
    """A subsequential finite-state transducer.

    States are the dense integers ``0 .. n_states-1``.  ``finals`` maps each
    final state to its final output string (a state is final iff it has an
    entry).  ``transitions`` maps ``(state, input token)`` to
    ``(output string, target state)``; input determinism is structural, since
    a dict admits one value per key.  Instances are immutable after
    construction and safe to share between readers.
    """

    n_states: int
    start: int
    finals: Mapping[int, TokenString]
    transitions: Mapping[tuple[int, int], tuple[TokenString, int]]
    input_alphabet: frozenset[int]
    output_alphabet: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "input_alphabet", frozenset(int(s) for s in self.input_alphabet))
        object.__setattr__(self, "output_alphabet", frozenset(int(s) for s in self.output_alphabet))
        object.__setattr__(
            self, "finals", {int(q): _as_string(w) for q, w in self.finals.items()}
        )
        object.__setattr__(
            self,
            "transitions",
            {
                (int(q), int(a)): (_as_string(w), int(j))
                for (q, a), (w, j) in self.transitions.items()
            },
        )
        if self.n_states < 1:
            raise ValueError("a machine needs at least one state")
        if not 0 <= self.start < self.n_states:
            raise ValueError(f"start state {self.start} out of range")
        if any(s < 0 for s in self.input_alphabet | self.output_alphabet):
            raise ValueError("alphabet symbols must be non-negative")
        for q, w in self.finals.items():
            if not 0 <= q < self.n_states:
                raise ValueError(f"final state {q} out of range")
            if not set(w) <= self.output_alphabet:
                raise ValueError(f"final output {w!r} leaves the output alphabet")
        for (q, a), (w, j) in self.transitions.items():
            if not 0 <= q < self.n_states or not 0 <= j < self.n_states:
                raise ValueError(f"transition ({q},{a})->{j} leaves the state set")
            if a not in self.input_alphabet:
                raise ValueError(f"input symbol {a} not in the input alphabet")
            if not set(w) <= self.output_alphabet:
                raise ValueError(f"output {w!r} leaves the output alphabet")

    @property
    def states(self) -> range:
        return range(self.n_states)

    def is_final(self, q: int) -> bool:
        return q in self.finals

    def arcs(self) -> Iterator[tuple[int, int, TokenString, int]]:
        """Yield (src, input symbol, output string, dst), sorted."""
        for (q, a) in sorted(self.transitions):
            w, j = self.transitions[(q, a)]
            yield q, a, w, j

    def arcs_from(self, q: int) -> list[tuple[int, TokenString, int]]:
        """Outgoing arcs of one state as (symbol, output, dst), symbol-sorted."""
        hits = [(a, w, j) for (p, a), (w, j) in self.transitions.items() if p == q]
        hits.sort()
        return hits

    def __repr__(self):
        return (
            f"Sfst({self.n_states} states, {len(self.transitions)} transitions, "
            f"{len(self.finals)} final)"
        )


def _check_alphabet(m: Sfst, tokens: TokenString) -> None:
    for t in tokens:
        if t not in m.input_alphabet:
            raise AlphabetError(f"token {t} not in the input alphabet")


def _run_from(m: Sfst, q: int, tokens: TokenString):
    """Walk ``tokens`` starting in ``q``; (state, output) or None if a step is missing."""
    trans = m.transitions
    out: list[int] = []
    for t in tokens:
        hit = trans.get((q, t))
        if hit is None:
            return None
        w, q = hit
        out.extend(w)
    return q, tuple(out)


def run_to_state(m: Sfst, tokens: Iterable[int]):
    """The reached state and accumulated output, before any final output.

    Returns ``(state, output string)``, or ``None`` when some transition along
    the way is missing.  The empty input reaches the start state with empty
    output.  Raises :class:`AlphabetError` for tokens outside the input
    alphabet.
    """
    tokens = _as_string(tokens)
    _check_alphabet(m, tokens)
    return _run_from(m, m.start, tokens)


def transduce(m: Sfst, tokens: Iterable[int]):
    """Apply the machine's string function to ``tokens``.

    Returns the concatenated transition outputs followed by the final output
    of the reached state, or ``None`` when the input is undefined (missing
    transition, or the walk ends in a non-final state).
    """
    tokens = _as_string(tokens)
    _check_alphabet(m, tokens)
    reached = _run_from(m, m.start, tokens)
    if reached is None:
        return None
    q, out = reached
    fin = m.finals.get(q)
    if fin is None:
        return None
    return out + fin


def check_path_homomorphism(m: Sfst, tokens: Iterable[int], split: int) -> bool:
    """Check that the path output factors through any intermediate state.

    For an input ``x∘y`` split at ``split``, the accumulated output of the
    whole path must equal the output of the ``x`` leg concatenated with the
    output of the ``y`` leg continued from the state the ``x`` leg reaches.
    Raises :class:`PathError` when the path is undefined.
    """
    tokens = _as_string(tokens)
    if not 0 <= split <= len(tokens):
        raise ValueError(f"split {split} out of range for length {len(tokens)}")
    _check_alphabet(m, tokens)
    whole = _run_from(m, m.start, tokens)
    if whole is None:
        raise PathError("input does not label a path from the start state")
    left = _run_from(m, m.start, tokens[:split])
    assert left is not None
    mid, left_out = left
    right = _run_from(m, mid, tokens[split:])
    assert right is not None
    return whole[1] == left_out + right[1]


def accessible_states(m: Sfst) -> set[int]:
    """States reachable from the start state (depth-first search)."""
    seen = {m.start}
    stack = [m.start]
    succ: dict[int, list[int]] = {}
    for (q, _a), (_w, j) in m.transitions.items():
        succ.setdefault(q, []).append(j)
    while stack:
        q = stack.pop()
        for j in succ.get(q, ()):
            if j not in seen:
                seen.add(j)
                stack.append(j)
    return seen


def coaccessible_states(m: Sfst) -> set[int]:
    """States from which some final state is reachable."""
    pred: dict[int, list[int]] = {}
    for (q, _a), (_w, j) in m.transitions.items():
        pred.setdefault(j, []).append(q)
    seen = set(m.finals)
    stack = list(seen)
    while stack:
        q = stack.pop()
        for p in pred.get(q, ()):
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return seen


def is_accessible(m: Sfst) -> bool:
    """True iff every state is reachable from the start state."""
    return len(accessible_states(m)) == m.n_states


def is_coaccessible(m: Sfst) -> bool:
    """True iff every state can reach a final state."""
    return len(coaccessible_states(m)) == m.n_states


def is_trim(m: Sfst) -> bool:
    return is_accessible(m) and is_coaccessible(m)


def trim(m: Sfst) -> Sfst:
    """Restrict the machine to useful states (accessible and co-accessible).

    The transduction is unchanged.  A machine whose domain is empty collapses
    to a single non-final start state with no transitions.
    """
    keep = accessible_states(m) & coaccessible_states(m)
    if m.start not in keep:
        return Sfst(1, 0, {}, {}, m.input_alphabet, m.output_alphabet)
    if len(keep) == m.n_states:
        return m
    renum = {q: i for i, q in enumerate(sorted(keep))}
    finals = {renum[q]: w for q, w in m.finals.items() if q in keep}
    trans = {
        (renum[q], a): (w, renum[j])
        for (q, a), (w, j) in m.transitions.items()
        if q in keep and j in keep
    }
    return Sfst(len(keep), renum[m.start], finals, trans, m.input_alphabet, m.output_alphabet)


def language(m: Sfst, max_len: int) -> dict[TokenString, TokenString]:
    """All defined input/output pairs with input length up to ``max_len``.

    Breadth-first path enumeration; intended as a brute-force oracle for
    small machines and as the command enumerator for finite ones.
    """
    pairs: dict[TokenString, TokenString] = {}
    queue: deque[tuple[int, TokenString, TokenString]] = deque()
    queue.append((m.start, LAMBDA, LAMBDA))
    by_state = {q: m.arcs_from(q) for q in m.states}
    while queue:
        q, ins, outs = queue.popleft()
        fin = m.finals.get(q)
        if fin is not None:
            pairs[ins] = outs + fin
        if len(ins) >= max_len:
            continue
        for a, w, j in by_state[q]:
            queue.append((j, ins + (a,), outs + w))
    return pairs
