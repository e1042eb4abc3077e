"""SCAN-style command machines: the core primitive block and its extensions.

The core block maps one primitive's command fragment (``jump``, ``jump
left/right``, ``jump opposite left/right``, ``jump around left/right``) to
its action sequence.  Word-level λ-output edges move through the block and
the whole action string is emitted by the final-output function of the state
each command ends in, which keeps the machine subsequential.

Words are mapped to integer tokens through a named symbol table so SCAN
machines and randomly generated ones share the same file formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ParseError
from .machine import LAMBDA, Sfst, TokenString

PRIMITIVES = {"jump": "JUMP", "walk": "WALK", "run": "RUN", "look": "LOOK"}

_TURNS = {"left": "LTURN", "right": "RTURN"}

#: Word vocabulary with disjoint id ranges for commands and actions.
_WORDS = [
    "jump", "walk", "run", "look",          # 0..3  primitives
    "left", "right", "around", "opposite",  # 4..7  modifiers
    "twice", "thrice",                      # 8..9  repetition
    "JUMP", "WALK", "RUN", "LOOK",          # 10..13 actions
    "LTURN", "RTURN",                       # 14..15 turns
]


@dataclass(frozen=True)
class SymbolTable:
    """Bidirectional map between words and integer tokens."""

    words: dict[int, str]

    def __post_init__(self):
        object.__setattr__(self, "words", {int(i): w for i, w in self.words.items()})
        if len(set(self.words.values())) != len(self.words):
            raise ValueError("duplicate words in symbol table")

    def id(self, word: str) -> int:
        for i, w in self.words.items():
            if w == word:
                return i
        raise KeyError(word)

    def word(self, token: int) -> str:
        return self.words[token]

    def encode(self, words: Sequence[str]) -> TokenString:
        return tuple(self.id(w) for w in words)

    def decode(self, tokens: Sequence[int]) -> list[str]:
        return [self.word(t) for t in tokens]

    def to_text(self) -> str:
        return "\n".join(f"{i} {self.words[i]}" for i in sorted(self.words)) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SymbolTable":
        words = {}
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ParseError(f"line {ln}: expected 'token_id word'")
            try:
                i = int(fields[0])
            except ValueError:
                raise ParseError(f"line {ln}: bad token id {fields[0]!r}") from None
            if i in words:
                raise ParseError(f"line {ln}: duplicate token id {i}")
            words[i] = fields[1]
        return cls(words)


def scan_symbol_table() -> SymbolTable:
    return SymbolTable({i: w for i, w in enumerate(_WORDS)})


def scan_reference_eval(words: Sequence[str]) -> list[str]:
    """Direct recursive interpretation of the command grammar (the oracle).

    Handles the core fragment: a primitive, optionally modified by a
    direction, ``opposite`` or ``around``, optionally repeated by ``twice``
    or ``thrice``.
    """
    ws = list(words)
    reps = 1
    if ws and ws[-1] == "twice":
        reps, ws = 2, ws[:-1]
    elif ws and ws[-1] == "thrice":
        reps, ws = 3, ws[:-1]
    if not ws or ws[0] not in PRIMITIVES:
        raise ValueError(f"cannot interpret {list(words)!r}")
    action = PRIMITIVES[ws[0]]
    if len(ws) == 1:
        seq = [action]
    elif len(ws) == 2 and ws[1] in _TURNS:
        seq = [_TURNS[ws[1]], action]
    elif len(ws) == 3 and ws[1] == "opposite" and ws[2] in _TURNS:
        seq = [_TURNS[ws[2]]] * 2 + [action]
    elif len(ws) == 3 and ws[1] == "around" and ws[2] in _TURNS:
        seq = [_TURNS[ws[2]], action] * 4
    else:
        raise ValueError(f"cannot interpret {list(words)!r}")
    return seq * reps


def build_scan_block(primitive: str = "jump") -> Sfst:
    """The core command block for one primitive.

    Figure-style topology: the start state reads the primitive, state 1
    branches on the modifiers, and the seven command endpoints carry the
    action strings as final outputs (the drawn λ-edges into the accept state
    are exactly the final-output function, so the accept state needs no
    separate existence here and the machine stays trim).
    """
    if primitive not in PRIMITIVES:
        raise ValueError(f"unknown primitive {primitive!r}; pick one of {sorted(PRIMITIVES)}")
    tab = scan_symbol_table()
    prim = tab.id(primitive)
    act = (tab.id(PRIMITIVES[primitive]),)
    left, right = tab.id("left"), tab.id("right")
    around, opposite = tab.id("around"), tab.id("opposite")
    lt, rt = (tab.id("LTURN"),), (tab.id("RTURN"),)
    trans = {
        (0, prim): (LAMBDA, 1),
        (1, right): (LAMBDA, 2),
        (1, left): (LAMBDA, 3),
        (1, around): (LAMBDA, 4),
        (1, opposite): (LAMBDA, 5),
        (4, right): (LAMBDA, 6),
        (4, left): (LAMBDA, 7),
        (5, right): (LAMBDA, 8),
        (5, left): (LAMBDA, 9),
    }
    finals = {
        1: act,
        2: rt + act,
        3: lt + act,
        6: (rt + act) * 4,
        7: (lt + act) * 4,
        8: rt * 2 + act,
        9: lt * 2 + act,
    }
    sigma = frozenset({prim, left, right, around, opposite})
    gamma = frozenset(act + lt + rt)
    return Sfst(10, 0, finals, trans, sigma, gamma)


def augment_with_repetition(m: Sfst, counts: Mapping[int, int]) -> Sfst:
    """Add repetition commands that repeat the final-output segment.

    For every final state with final output ``v`` and every ``symbol: k`` in
    ``counts``, a fresh final state is reachable on ``symbol`` whose final
    output is ``v`` repeated ``k`` times; the original behavior is untouched.
    The repetition symbols must be fresh (not in the input alphabet).
    """
    counts = {int(s): int(k) for s, k in counts.items()}
    clash = set(counts) & set(m.input_alphabet)
    if clash:
        raise ValueError(f"repetition symbols {sorted(clash)} already in the input alphabet")
    if any(k < 1 for k in counts.values()):
        raise ValueError("repetition counts must be positive")
    trans = dict(m.transitions)
    finals = dict(m.finals)
    nxt = m.n_states
    for q in sorted(m.finals):
        v = m.finals[q]
        for s in sorted(counts):
            trans[(q, s)] = (LAMBDA, nxt)
            finals[nxt] = v * counts[s]
            nxt += 1
    return Sfst(
        nxt,
        m.start,
        finals,
        trans,
        m.input_alphabet | frozenset(counts),
        m.output_alphabet,
    )


def replicate_subgraph(m: Sfst, copies: int, entry_symbols: Sequence[int]) -> Sfst:
    """A machine whose start branches into isomorphic copies of ``m``.

    Copy ``i`` is entered on ``entry_symbols[i]`` with an empty output, so the
    copies behave identically up to the entry symbol.  Used to build
    large-state machines whose unique structure stays small.
    """
    if copies < 1:
        raise ValueError("need at least one copy")
    entries = [int(s) for s in entry_symbols]
    if len(set(entries)) != len(entries):
        raise ValueError("entry symbols must be distinct")
    if len(entries) < copies:
        raise ValueError(f"need {copies} fresh entry symbols, got {len(entries)}")
    clash = set(entries[:copies]) & set(m.input_alphabet)
    if clash:
        raise ValueError(f"entry symbols {sorted(clash)} already in the input alphabet")
    n = m.n_states
    trans = {}
    finals = {}
    for i in range(copies):
        base = 1 + i * n
        trans[(0, entries[i])] = (LAMBDA, base + m.start)
        for (q, a), (w, j) in m.transitions.items():
            trans[(base + q, a)] = (w, base + j)
        for q, w in m.finals.items():
            finals[base + q] = w
    return Sfst(
        1 + copies * n,
        0,
        finals,
        trans,
        m.input_alphabet | frozenset(entries[:copies]),
        m.output_alphabet,
    )
