"""Exhaustive ground-truth oracle.

Everything here enumerates all n! rankings, nothing cleverer: the
oracle's only job is to be trustworthy, so it refuses instances above a
configurable vertex cap instead of trying to scale.  Enumeration order
is lexicographic and the reported witness is the first ranking
attaining the minimum, which makes every result reproducible.

The inner loop is vectorized with numpy over blocks of permutations;
the tests pin it against an independently written pure-Python
enumerator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterable, Iterator

import numpy as np

from .errors import EnumerationCapError
from .model import Family, Instance, Ranking, VertexId, induced

DEFAULT_CAP = 10

_BLOCK = 40320  # 8!, so instances up to n = 8 fit in a single block


@dataclass(frozen=True)
class ExactResult:
    opt: int
    witness: Ranking


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise EnumerationCapError(
            f"exact enumeration over {n} vertices exceeds the cap of {cap}; "
            f"raise the cap explicitly if you really want {factorial(n)} rankings"
        )


def _perm_blocks(n: int) -> Iterator[np.ndarray]:
    stream = itertools.permutations(range(n))
    while True:
        block = list(itertools.islice(stream, _BLOCK))
        if not block:
            return
        yield np.array(block, dtype=np.int8)


def _positions(perms: np.ndarray) -> np.ndarray:
    m, n = perms.shape
    pos = np.empty_like(perms)
    pos[np.arange(m)[:, None], perms] = np.arange(n, dtype=perms.dtype)
    return pos


def _fault_counter(inst: Instance) -> Callable[[np.ndarray], np.ndarray]:
    """Compile the instance into a batch fault counter.

    The returned function maps a (block, n) position matrix to the
    per-ranking number of violated constraints.
    """
    cs = list(inst.constraints())
    members = np.array([c.members for c in cs], dtype=np.int64)
    total = len(cs)
    family = inst.kind.family

    if family is Family.FAST:
        sel = np.array([c.selected for c in cs], dtype=np.int64)

        def count(pos: np.ndarray) -> np.ndarray:
            ok = pos[:, sel] == pos[:, members].max(axis=2)
            return total - ok.sum(axis=1, dtype=np.int64)

    elif family is Family.BETWEENNESS:
        first = np.array([c.selected[0] for c in cs], dtype=np.int64)
        second = np.array([c.selected[1] for c in cs], dtype=np.int64)

        def count(pos: np.ndarray) -> np.ndarray:
            mp = pos[:, members]
            lo = mp.min(axis=2)
            hi = mp.max(axis=2)
            pa = pos[:, first]
            pb = pos[:, second]
            ok = ((pa == lo) & (pb == hi)) | ((pa == hi) & (pb == lo))
            return total - ok.sum(axis=1, dtype=np.int64)

    else:
        chain = np.array([c.selected for c in cs], dtype=np.int64)

        def count(pos: np.ndarray) -> np.ndarray:
            ok = np.ones((pos.shape[0], total), dtype=bool)
            left = pos[:, chain[:, 0]]
            for j in range(1, chain.shape[1]):
                right = pos[:, chain[:, j]]
                ok &= left < right
                left = right
            return total - ok.sum(axis=1, dtype=np.int64)

    return count


def _nth_permutation(n: int, index: int) -> tuple[int, ...]:
    """The index-th permutation of 0..n-1 in lexicographic order."""
    remaining = list(range(n))
    out = []
    for i in range(n, 0, -1):
        block = factorial(i - 1)
        j, index = divmod(index, block)
        out.append(remaining.pop(j))
    return tuple(out)


def min_inconsistencies(inst: Instance, cap: int = DEFAULT_CAP) -> ExactResult:
    """Minimum fault count over all rankings, with the lexicographically
    first ranking attaining it."""
    _check_cap(inst.n, cap)
    counter = _fault_counter(inst)
    best = None
    best_index = 0
    offset = 0
    for perms in _perm_blocks(inst.n):
        counts = counter(_positions(perms))
        i = int(np.argmin(counts))
        if best is None or counts[i] < best:
            best = int(counts[i])
            best_index = offset + i
            if best == 0:
                break
        offset += perms.shape[0]
    return ExactResult(best, Ranking(_nth_permutation(inst.n, best_index)))


def decide(inst: Instance, k: int, cap: int = DEFAULT_CAP) -> bool:
    """Is there a ranking violating at most k constraints?

    Stops at the first witness; a NO answer always scans all n! rankings.
    """
    if k < 0:
        return False
    _check_cap(inst.n, cap)
    counter = _fault_counter(inst)
    for perms in _perm_blocks(inst.n):
        if bool((counter(_positions(perms)) <= k).any()):
            return True
    return False


def is_conflict(inst: Instance, subset: Iterable[VertexId], cap: int = DEFAULT_CAP) -> bool:
    """Does `subset` admit no consistent ranking of its sub-instance?

    Subsets smaller than the arity carry no constraints and are
    vacuously consistent, hence never conflicts.
    """
    vertices = sorted(set(subset))
    if len(vertices) < inst.kind.r:
        return False
    sub, _ = induced(inst, vertices)
    return not decide(sub, 0, cap=cap)
