"""Canonical minimization of trim machines, and machine equivalence.

Minimization proceeds in three steps: (1) onward normalization, which hoists
every output prefix as close to the start state as it can travel; (2) Moore
partition refinement over (finality, final output, per-symbol behavior)
signatures; (3) canonical renumbering by breadth-first traversal taking input
symbols in sorted order.  The result computes the same string function with
the minimum number of states, and two machines get structurally identical
results iff they compute the same function.
"""

from __future__ import annotations

from collections import deque

from .errors import NotTrimError
from .machine import LAMBDA, Sfst, TokenString, is_accessible, is_coaccessible, trim


def _lcp(strings) -> TokenString:
    """Longest common prefix of a non-empty collection of token strings."""
    it = iter(strings)
    prefix = next(it)
    for s in it:
        limit = min(len(prefix), len(s))
        i = 0
        while i < limit and prefix[i] == s[i]:
            i += 1
        prefix = prefix[:i]
        if not prefix:
            break
    return prefix


def _delays(m: Sfst) -> list[TokenString]:
    """Per-state hoistable prefix: the lcp of all outputs emitted from here on.

    The start state's delay is pinned to the empty string (there is no
    incoming edge to hoist onto).  Computed as a decreasing fixpoint; each
    pass can only shorten a delay, so the iteration terminates.
    """
    n = m.n_states
    arcs = [[] for _ in range(n)]
    for (q, _a), (w, j) in m.transitions.items():
        arcs[q].append((w, j))
    d: list[TokenString | None] = [None] * n
    d[m.start] = LAMBDA
    changed = True
    while changed:
        changed = False
        for q in range(n):
            if q == m.start:
                continue
            terms = []
            fin = m.finals.get(q)
            if fin is not None:
                terms.append(fin)
            for w, j in arcs[q]:
                dj = d[j]
                if dj is not None:
                    terms.append(w + dj)
            if not terms:
                continue
            new = _lcp(terms)
            if new != d[q]:
                d[q] = new
                changed = True
    if any(v is None for v in d):
        raise NotTrimError("delay undefined for a non-co-accessible state")
    return d  # type: ignore[return-value]


def _onward(m: Sfst) -> Sfst:
    """Rewrite outputs so every non-start state emits as early as possible."""
    d = _delays(m)
    if all(not v for v in d):
        return m
    trans = {}
    for (q, a), (w, j) in m.transitions.items():
        s = w + d[j]
        assert s[: len(d[q])] == d[q]
        trans[(q, a)] = (s[len(d[q]):], j)
    finals = {}
    for q, w in m.finals.items():
        assert w[: len(d[q])] == d[q]
        finals[q] = w[len(d[q]):]
    return Sfst(m.n_states, m.start, finals, trans, m.input_alphabet, m.output_alphabet)


def _moore_blocks(m: Sfst) -> list[int]:
    """Coarsest behavior-preserving partition; block index per state."""
    arcs = [[] for _ in range(m.n_states)]
    for (q, a), (w, j) in m.transitions.items():
        arcs[q].append((a, w, j))
    for row in arcs:
        row.sort()
    sig = {}
    block = []
    for q in range(m.n_states):
        key = (q in m.finals, m.finals.get(q))
        block.append(sig.setdefault(key, len(sig)))
    while True:
        sig = {}
        nxt = []
        for q in range(m.n_states):
            key = (block[q], tuple((a, w, block[j]) for a, w, j in arcs[q]))
            nxt.append(sig.setdefault(key, len(sig)))
        if nxt == block:
            return block
        block = nxt


def _canonical_renumber(m: Sfst) -> Sfst:
    """Breadth-first renumbering from the start, symbols in sorted order."""
    arcs = [[] for _ in range(m.n_states)]
    for (q, a), (w, j) in m.transitions.items():
        arcs[q].append((a, w, j))
    for row in arcs:
        row.sort()
    order = {m.start: 0}
    queue = deque([m.start])
    while queue:
        q = queue.popleft()
        for _a, _w, j in arcs[q]:
            if j not in order:
                order[j] = len(order)
                queue.append(j)
    assert len(order) == m.n_states, "renumbering a non-accessible machine"
    finals = {order[q]: w for q, w in m.finals.items()}
    trans = {(order[q], a): (w, order[j]) for (q, a), (w, j) in m.transitions.items()}
    return Sfst(m.n_states, 0, finals, trans, m.input_alphabet, m.output_alphabet)


def minimize(m: Sfst) -> Sfst:
    """The canonical minimal onward machine equivalent to ``m``.

    Requires a trim input (raises :class:`NotTrimError` otherwise; apply
    :func:`trim` first).  The result never has more states than the input,
    computes the same function, and is a fixed point of this operation.
    """
    if not is_accessible(m):
        raise NotTrimError("machine has unreachable states")
    if not is_coaccessible(m):
        raise NotTrimError("machine has states that reach no final state")
    m = _onward(m)
    block = _moore_blocks(m)
    n_blocks = max(block) + 1
    rep = {}
    for q in range(m.n_states):
        rep.setdefault(block[q], q)
    finals = {b: m.finals[q] for b, q in rep.items() if q in m.finals}
    trans = {}
    for (p, a), (w, j) in m.transitions.items():
        if rep[block[p]] == p:
            trans[(block[p], a)] = (w, block[j])
    quotient = Sfst(
        n_blocks, block[m.start], finals, trans, m.input_alphabet, m.output_alphabet
    )
    return _canonical_renumber(quotient)


def same_structure(a: Sfst, b: Sfst) -> bool:
    """Structural identity over states, start, finals and transitions.

    Declared alphabets are ignored: the partial function a machine computes
    is determined by its transition graph, and unused declared symbols do not
    change it.
    """
    return (
        a.n_states == b.n_states
        and a.start == b.start
        and a.finals == b.finals
        and a.transitions == b.transitions
    )


def equivalent(a: Sfst, b: Sfst) -> bool:
    """True iff the two machines compute the same partial string function.

    Both machines are trimmed and minimized into canonical form and then
    compared structurally.  Machines with empty domains are all equivalent.
    """
    a = trim(a)
    b = trim(b)
    a_empty = not a.finals
    b_empty = not b.finals
    if a_empty or b_empty:
        return a_empty and b_empty
    return same_structure(minimize(a), minimize(b))
