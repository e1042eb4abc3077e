"""Onward subsequential transducer inference by ordered state merging.

The learner builds a prefix-tree transducer of the training pairs, hoists
output prefixes toward the root so every non-root state is onward, and then
tries to merge each frontier (blue) state into a consolidated (red) state in
shortlex order of access prefixes.  Merging recursively folds the blue
subtree into the red part, pushing mismatched output suffixes down into
still-tree-shaped territory where that is legal; any conflict rolls the
whole attempt back.  A blue state no red state can absorb is promoted.

Merging never grants a consolidated state behavior it has not exhibited:
folding a final tree state into a non-final state, or a tree transition into
a state lacking that symbol, is a conflict.  Positive pairs carry no negative
evidence, so this is what keeps the hypothesis domain from silently growing
past the data (a single training pair generalizes no further than its own
string), and it is what lets exhaustive samples of partial-domain targets be
recovered exactly.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass

from .errors import ConsistencyError
from .machine import LAMBDA, Sfst, TokenString

_MISSING = object()


def _pairs_of(train):
    pairs = getattr(train, "pairs", train)
    return [(tuple(i), tuple(o)) for i, o in pairs]


class Ptt:
    """Prefix-tree transducer: one state per observed input prefix.

    Mutable working structure of the learner.  ``access[q]`` is the input
    prefix that created state ``q`` and never changes; it provides the
    canonical merge order.  ``parent[q]`` is the tree edge that reaches ``q``.
    """

    def __init__(self):
        self.trans: list[dict[int, tuple[TokenString, int]]] = [{}]
        self.finals: dict[int, TokenString] = {}
        self.access: list[TokenString] = [LAMBDA]
        self.parent: list[tuple[int, int] | None] = [None]

    @property
    def root(self) -> int:
        return 0

    @property
    def n_states(self) -> int:
        return len(self.trans)

    def _add_state(self, access: TokenString, parent: tuple[int, int]) -> int:
        self.trans.append({})
        self.access.append(access)
        self.parent.append(parent)
        return len(self.trans) - 1

    def shape(self):
        """Hashable structural snapshot, for tests and change detection."""
        return (
            tuple(tuple(sorted(t.items())) for t in self.trans),
            tuple(sorted(self.finals.items())),
        )


def build_ptt(train) -> Ptt:
    """Prefix-tree transducer of the training data.

    Transition outputs start empty; each full input's state carries the whole
    output as its final output.  Two pairs with the same input and different
    outputs raise :class:`ConsistencyError`.
    """
    pairs = _pairs_of(train)
    by_input: dict[TokenString, TokenString] = {}
    for ins, outs in pairs:
        if ins in by_input and by_input[ins] != outs:
            raise ConsistencyError(
                f"input {ins!r} maps to both {by_input[ins]!r} and {outs!r}"
            )
        by_input[ins] = outs
    t = Ptt()
    state_of: dict[TokenString, int] = {LAMBDA: t.root}
    for ins in sorted(by_input, key=lambda s: (len(s), s)):
        q = t.root
        for i, a in enumerate(ins):
            prefix = ins[: i + 1]
            nxt = state_of.get(prefix)
            if nxt is None:
                nxt = t._add_state(prefix, (q, a))
                state_of[prefix] = nxt
                t.trans[q][a] = (LAMBDA, nxt)
            q = nxt
        t.finals[q] = by_input[ins]
    return t


def _lcp2(a: TokenString, b: TokenString) -> TokenString:
    limit = min(len(a), len(b))
    i = 0
    while i < limit and a[i] == b[i]:
        i += 1
    return a[:i]


def make_onward(t: Ptt) -> Ptt:
    """Hoist common output prefixes toward the root, in place.

    After the bottom-up sweep, the outgoing outputs and final output of every
    non-root state share no common prefix; the transduction is unchanged.
    """
    order = sorted(range(t.n_states), key=lambda q: len(t.access[q]), reverse=True)
    for q in order:
        if q == t.root:
            continue
        pieces = [w for w, _j in t.trans[q].values()]
        fin = t.finals.get(q)
        if fin is not None:
            pieces.append(fin)
        if not pieces:
            continue
        hoist = pieces[0]
        for w in pieces[1:]:
            hoist = _lcp2(hoist, w)
            if not hoist:
                break
        if not hoist:
            continue
        k = len(hoist)
        for a, (w, j) in list(t.trans[q].items()):
            t.trans[q][a] = (w[k:], j)
        if fin is not None:
            t.finals[q] = fin[k:]
        p, a = t.parent[q]
        w, j = t.trans[p][a]
        t.trans[p][a] = (w + hoist, j)
    return t


class _Journal:
    """Undo log for one merge attempt."""

    def __init__(self, ptt: Ptt):
        self.ptt = ptt
        self.ops: list[tuple[str, int, int | None, object]] = []

    def set_edge(self, p: int, a: int, value: tuple[TokenString, int]) -> None:
        self.ops.append(("edge", p, a, self.ptt.trans[p].get(a, _MISSING)))
        self.ptt.trans[p][a] = value

    def set_final(self, q: int, w: TokenString) -> None:
        self.ops.append(("final", q, None, self.ptt.finals.get(q, _MISSING)))
        self.ptt.finals[q] = w

    def rollback(self) -> None:
        for kind, q, a, old in reversed(self.ops):
            if kind == "edge":
                if old is _MISSING:
                    del self.ptt.trans[q][a]
                else:
                    self.ptt.trans[q][a] = old
            else:
                if old is _MISSING:
                    self.ptt.finals.pop(q, None)
                else:
                    self.ptt.finals[q] = old


@dataclass
class OstiaRun:
    """A learned machine plus the work accounting of the run."""

    machine: Sfst
    merge_attempts: int
    fold_calls: int
    pushbacks: int
    promotions: int
    wall_time_s: float


def _fold(t: Ptt, jr: _Journal, r: int, q: int, stats: dict) -> bool:
    """Fold detached tree state ``q`` (and its subtree) into ``r``."""
    stats["fold_calls"] += 1
    fq = t.finals.get(q)
    if fq is not None:
        fr = t.finals.get(r)
        if fr is None or fr != fq:
            return False
    for a in sorted(t.trans[q]):
        w2, q2 = t.trans[q][a]
        hit = t.trans[r].get(a)
        if hit is None:
            # the consolidated side never exhibited this symbol; granting it
            # would silently extend the hypothesis domain
            return False
        w1, r2 = hit
        if w1 != w2:
            if w2[: len(w1)] != w1:
                return False
            # push the residue down onto q2's outgoing outputs; q2 is still
            # tree-shaped, so nothing else observes those edges
            residue = w2[len(w1):]
            jr.set_edge(q, a, (w1, q2))
            for b in sorted(t.trans[q2]):
                wb, qb = t.trans[q2][b]
                jr.set_edge(q2, b, (residue + wb, qb))
            if q2 in t.finals:
                jr.set_final(q2, residue + t.finals[q2])
            stats["pushbacks"] += 1
        if not _fold(t, jr, r2, q2, stats):
            return False
    return True


def _blue_frontier(t: Ptt, red: list[int], red_set: set[int]) -> dict[int, tuple[int, int]]:
    frontier: dict[int, tuple[int, int]] = {}
    for r in red:
        for a in sorted(t.trans[r]):
            _w, j = t.trans[r][a]
            if j not in red_set and j not in frontier:
                frontier[j] = (r, a)
    return frontier


def _merge_loop(t: Ptt, stats: dict) -> list[int]:
    red = [t.root]
    red_set = {t.root}
    while True:
        frontier = _blue_frontier(t, red, red_set)
        if not frontier:
            return red
        q = min(frontier, key=lambda s: (len(t.access[s]), t.access[s]))
        p, a = frontier[q]
        merged = False
        for r in red:
            stats["merge_attempts"] += 1
            jr = _Journal(t)
            w, _j = t.trans[p][a]
            jr.set_edge(p, a, (w, r))
            if _fold(t, jr, r, q, stats):
                merged = True
                break
            jr.rollback()
        if not merged:
            red.append(q)
            red_set.add(q)
            stats["promotions"] += 1


def _harvest(t: Ptt, sigma, gamma) -> Sfst:
    """Reachable part of the merged structure, renumbered breadth-first."""
    order = {t.root: 0}
    queue = deque([t.root])
    while queue:
        q = queue.popleft()
        for a in sorted(t.trans[q]):
            _w, j = t.trans[q][a]
            if j not in order:
                order[j] = len(order)
                queue.append(j)
    finals = {order[q]: w for q, w in t.finals.items() if q in order}
    trans = {
        (order[q], a): (w, order[j])
        for q in order
        for a, (w, j) in t.trans[q].items()
    }
    return Sfst(len(order), 0, finals, trans, frozenset(sigma), frozenset(gamma))


def run_ostia(train) -> OstiaRun:
    """Learn a machine from positive pairs, with work accounting.

    The result is onward, consistent with every training pair, and — given a
    characteristic sample of the target — equal to the target's canonical
    form up to state numbering.
    """
    pairs = _pairs_of(train)
    started = time.perf_counter()
    stats = {"merge_attempts": 0, "fold_calls": 0, "pushbacks": 0, "promotions": 0}
    t = make_onward(build_ptt(pairs))
    _merge_loop(t, stats)
    sigma = {a for ins, _o in pairs for a in ins}
    gamma = {b for _i, outs in pairs for b in outs}
    machine = _harvest(t, sigma, gamma)
    return OstiaRun(machine, wall_time_s=time.perf_counter() - started, **stats)


def ostia_infer(train) -> Sfst:
    """The learned machine alone; see :func:`run_ostia`."""
    return run_ostia(train).machine
