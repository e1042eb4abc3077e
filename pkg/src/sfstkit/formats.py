"""Plain-text serialization of machines and datasets.

Machine files are line records: an ``SFST v1`` header, then ``STATES``,
``START``, ``FINAL`` and ``TRANS`` lines with whitespace-separated fields.
``#`` starts a comment.  The empty output string is written as the single
literal ``-1``; the sentinel never appears inside a non-empty output.  The
serializer also emits ``# sigma:`` / ``# gamma:`` comment hints so the
declared alphabets survive a round trip even when some symbols are unused;
files from other tools without the hints get their alphabets inferred from
content.

Dataset files are one pair per line: input tokens, a single TAB, output
tokens (``-1`` for the empty output; an empty input is an empty left field).
Header comments carry the generating machine's hash, the seed and the walk
configuration.
"""

from __future__ import annotations

import hashlib

from .errors import ParseError
from .machine import Sfst, TokenString

_EMPTY_MARK = "-1"


def _fmt_out(w: TokenString) -> str:
    return _EMPTY_MARK if not w else " ".join(str(t) for t in w)


def _parse_out(fields: list[str], where: str) -> TokenString:
    if fields == [_EMPTY_MARK]:
        return ()
    out = []
    for f in fields:
        try:
            t = int(f)
        except ValueError:
            raise ParseError(f"{where}: bad token {f!r}") from None
        if t < 0:
            raise ParseError(f"{where}: {_EMPTY_MARK} may only stand alone for the empty output")
        out.append(t)
    return tuple(out)


def serialize_machine(m: Sfst, comments: tuple[str, ...] = ()) -> str:
    """Canonical text form of a machine; extra header comments go first."""
    lines = ["SFST v1"]
    lines.extend(f"# {c}" for c in comments)
    lines.append("# sigma: " + " ".join(str(s) for s in sorted(m.input_alphabet)))
    lines.append("# gamma: " + " ".join(str(s) for s in sorted(m.output_alphabet)))
    lines.append(f"STATES {m.n_states}")
    lines.append(f"START {m.start}")
    for q in sorted(m.finals):
        lines.append(f"FINAL {q} {_fmt_out(m.finals[q])}")
    for q, a, w, j in m.arcs():
        lines.append(f"TRANS {q} {a} {j} {_fmt_out(w)}")
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> Sfst:
    """Parse the machine text format; raises :class:`ParseError` with line numbers."""
    n_states = None
    start = None
    finals: dict[int, TokenString] = {}
    trans: dict[tuple[int, int], tuple[TokenString, int]] = {}
    sigma_hint = None
    gamma_hint = None
    saw_header = False
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("sigma:"):
                sigma_hint = frozenset(int(t) for t in body[len("sigma:"):].split())
            elif body.startswith("gamma:"):
                gamma_hint = frozenset(int(t) for t in body[len("gamma:"):].split())
            continue
        if not saw_header:
            if line != "SFST v1":
                raise ParseError(f"line {ln}: expected 'SFST v1' header, got {line!r}")
            saw_header = True
            continue
        fields = line.split()
        kind, args = fields[0], fields[1:]
        where = f"line {ln}"
        try:
            if kind == "STATES":
                (n_states,) = (int(args[0]),)
            elif kind == "START":
                start = int(args[0])
            elif kind == "FINAL":
                q = int(args[0])
                if q in finals:
                    raise ParseError(f"{where}: duplicate FINAL for state {q}")
                finals[q] = _parse_out(args[1:], where)
            elif kind == "TRANS":
                q, a, j = int(args[0]), int(args[1]), int(args[2])
                if (q, a) in trans:
                    raise ParseError(f"{where}: duplicate transition on ({q},{a})")
                trans[(q, a)] = (_parse_out(args[3:], where), j)
            else:
                raise ParseError(f"{where}: unknown record {kind!r}")
        except (ValueError, IndexError):
            raise ParseError(f"{where}: malformed {kind} record: {line!r}") from None
    if not saw_header:
        raise ParseError("missing 'SFST v1' header")
    if n_states is None or start is None:
        raise ParseError("missing STATES or START record")
    sigma = sigma_hint if sigma_hint is not None else frozenset(a for (_q, a) in trans)
    if gamma_hint is not None:
        gamma = gamma_hint
    else:
        gamma = frozenset(t for w, _j in trans.values() for t in w)
        gamma |= frozenset(t for w in finals.values() for t in w)
    try:
        return Sfst(n_states, start, finals, trans, sigma, gamma)
    except ValueError as e:
        raise ParseError(str(e)) from None


def machine_hash(m: Sfst) -> str:
    """Content hash of the machine's canonical serialization."""
    return hashlib.sha256(serialize_machine(m).encode()).hexdigest()


def file_hash(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def serialize_pairs(pairs, comments: tuple[str, ...] = ()) -> str:
    """One ``input TAB output`` line per pair, after optional header comments."""
    lines = [f"# {c}" for c in comments]
    for ins, outs in pairs:
        lines.append(" ".join(str(t) for t in ins) + "\t" + _fmt_out(outs))
    return "\n".join(lines) + "\n"


def parse_pairs(text: str):
    """Parse dataset lines into (pairs, header comment list)."""
    pairs = []
    comments = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        if raw.lstrip().startswith("#"):
            comments.append(raw.lstrip()[1:].strip())
            continue
        if "\t" not in raw:
            raise ParseError(f"line {ln}: expected a TAB between input and output")
        left, _tab, right = raw.partition("\t")
        where = f"line {ln}"
        ins = tuple(int(t) for t in left.split()) if left.split() else ()
        if any(t < 0 for t in ins):
            raise ParseError(f"{where}: negative input token")
        outs = _parse_out(right.split(), where) if right.split() else None
        if outs is None:
            raise ParseError(f"{where}: missing output field (use {_EMPTY_MARK} for empty)")
        pairs.append((ins, outs))
    return pairs, comments
