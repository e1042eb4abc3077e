"""Shared helpers for the test suite."""

import sfstkit as sk


def raw_trim_machine(cfg):
    """A trim sample before canonical minimization."""
    rng = cfg.rng()
    for _ in range(cfg.max_rejections):
        m = sk.attach_outputs(sk.sample_matrices(cfg, rng), cfg, rng)
        if sk.is_trim(m):
            return m
    raise AssertionError("no trim sample")


def nonstart_lcps(m):
    """Per non-start state: lcp of its outgoing outputs plus final output."""
    out = {}
    for q in m.states:
        if q == m.start:
            continue
        pieces = [w for (p, _a), (w, _j) in m.transitions.items() if p == q]
        if q in m.finals:
            pieces.append(m.finals[q])
        if not pieces:
            continue
        lcp = pieces[0]
        for w in pieces[1:]:
            i = 0
            while i < min(len(lcp), len(w)) and lcp[i] == w[i]:
                i += 1
            lcp = lcp[:i]
        out[q] = lcp
    return out
