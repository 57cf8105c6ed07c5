"""Brute-force reference solver used to anchor the vectorized oracle.

Everything here is deliberately independent of the package's own
evaluation code: constraint semantics are re-derived from scratch on
plain tuples and dicts, and the search is a bare loop over
itertools.permutations.  Slow on purpose; keep n at 7 or below.
"""

import itertools


def _satisfied(family, members, selected, pos):
    if family == "fast":
        return all(pos[selected] >= pos[v] for v in members)
    if family == "betweenness":
        lo = min(members, key=pos.__getitem__)
        hi = max(members, key=pos.__getitem__)
        return set(selected) == {lo, hi}
    if family == "tfast":
        return list(selected) == sorted(members, key=pos.__getitem__)
    raise ValueError(family)


def _rows(inst):
    return [(c.members, c.selected) for c in inst.constraints()]


def faults_under(inst, order):
    """Number of violated constraints under one ordering."""
    fam = inst.kind.family.value
    pos = {v: i for i, v in enumerate(order)}
    return sum(0 if _satisfied(fam, m, s, pos) else 1 for m, s in _rows(inst))


def best(inst):
    """Minimum fault count and the lexicographically first argmin ordering."""
    fam = inst.kind.family.value
    rows = _rows(inst)
    opt, arg = None, None
    for order in itertools.permutations(range(inst.n)):
        pos = {v: i for i, v in enumerate(order)}
        b = sum(0 if _satisfied(fam, m, s, pos) else 1 for m, s in rows)
        if opt is None or b < opt:
            opt, arg = b, order
    return opt, arg


def decide(inst, k):
    return k >= 0 and best(inst)[0] <= k


def conflict(inst, subset):
    """True when no ordering of `subset` satisfies every constraint inside it."""
    sub = set(subset)
    if len(sub) < inst.kind.r:
        return False
    fam = inst.kind.family.value
    rows = [(m, s) for m, s in _rows(inst) if set(m) <= sub]
    for order in itertools.permutations(sorted(sub)):
        pos = {v: i for i, v in enumerate(order)}
        if all(_satisfied(fam, m, s, pos) for m, s in rows):
            return False
    return True
