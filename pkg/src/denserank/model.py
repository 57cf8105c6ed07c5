"""Data model for dense ranking constraint systems.

An instance is *dense*: it carries exactly one constraint for every
r-subset of its vertex set.  Vertices are the integers 0..n-1.  Three
constraint families are supported:

* BETWEENNESS: the two selected members must occupy the two extreme
  positions of the member set, in either orientation.
* FAST: the single selected member must come last among the members.
* TRANSITIVE_FAST: the stored member order must agree with the ranking
  position by position.

Constraints are stored keyed by their sorted member tuple, and every
iteration over an instance is in lexicographic member order, so all
downstream behaviour is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import comb
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    DensityError,
    EmptyInstanceError,
    InvalidConstraintError,
)

VertexId = int
SelectedData = Union[int, tuple]


class Family(Enum):
    BETWEENNESS = "betweenness"
    FAST = "fast"
    TRANSITIVE_FAST = "tfast"


_MIN_ARITY = {
    Family.BETWEENNESS: 3,
    Family.FAST: 2,
    Family.TRANSITIVE_FAST: 3,
}


@dataclass(frozen=True)
class ProblemKind:
    """Constraint family plus arity, validated together.

    BETWEENNESS needs three members for "strictly between" to mean
    anything, and two-member TRANSITIVE_FAST would collapse into FAST,
    so both are rejected.  FAST is allowed at r = 2, where it is the
    classic feedback problem on tournaments.
    """

    family: Family
    r: int

    def __post_init__(self):
        if self.r < _MIN_ARITY[self.family]:
            raise InvalidConstraintError(
                f"{self.family.value} requires arity >= "
                f"{_MIN_ARITY[self.family]}, got r={self.r}"
            )


@dataclass(frozen=True)
class Ranking:
    """A total order of 0..n-1 with O(1) position lookup."""

    order: tuple[VertexId, ...]
    position: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.order)
        pos = [-1] * n
        for i, v in enumerate(self.order):
            if not 0 <= v < n or pos[v] != -1:
                raise InvalidConstraintError(f"not a permutation of 0..{n - 1}: {self.order}")
            pos[v] = i
        object.__setattr__(self, "position", tuple(pos))

    @classmethod
    def from_order(cls, order: Iterable[VertexId]) -> "Ranking":
        return cls(tuple(order))

    @classmethod
    def identity(cls, n: int) -> "Ranking":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.order)

    def pos(self, v: VertexId) -> int:
        return self.position[v]

    def last(self) -> VertexId:
        return self.order[-1]

    def induced(self, keep: Iterable[VertexId]) -> "Ranking":
        """Restriction to `keep`, relabelled by ascending-id order.

        Vertex ids in the result are the ranks of the kept ids, the same
        relabelling `induced()` applies to instances.
        """
        kept = sorted(set(keep))
        relabel = {v: i for i, v in enumerate(kept)}
        return Ranking(tuple(relabel[v] for v in self.order if v in relabel))


@dataclass(frozen=True)
class Constraint:
    """One constraint: sorted members plus family-specific selected data.

    selected is a single vertex for FAST, an increasing pair for
    BETWEENNESS, and a permutation of the members for TRANSITIVE_FAST.
    """

    members: tuple[VertexId, ...]
    selected: SelectedData

    def arity(self) -> int:
        return len(self.members)


def validate_constraint(kind: ProblemKind, c: Constraint) -> None:
    m = c.members
    if len(m) != kind.r or any(m[i] >= m[i + 1] for i in range(len(m) - 1)):
        raise InvalidConstraintError(f"members must be {kind.r} strictly increasing ids: {m}")
    sel = c.selected
    if kind.family is Family.FAST:
        if not isinstance(sel, int) or sel not in m:
            raise InvalidConstraintError(f"FAST selected must be one member, got {sel!r} for {m}")
    elif kind.family is Family.BETWEENNESS:
        ok = (
            isinstance(sel, tuple)
            and len(sel) == 2
            and sel[0] < sel[1]
            and sel[0] in m
            and sel[1] in m
        )
        if not ok:
            raise InvalidConstraintError(
                f"BETWEENNESS selected must be an increasing member pair, got {sel!r} for {m}"
            )
    else:
        if not (isinstance(sel, tuple) and tuple(sorted(sel)) == m):
            raise InvalidConstraintError(
                f"TRANSITIVE_FAST selected must be a permutation of members, got {sel!r} for {m}"
            )


def all_selected_values(kind: ProblemKind, members: tuple[VertexId, ...]) -> list[SelectedData]:
    """Every selected datum a constraint on `members` could carry, in a
    fixed canonical order (ascending / lexicographic)."""
    if kind.family is Family.FAST:
        return list(members)
    if kind.family is Family.BETWEENNESS:
        return list(itertools.combinations(members, 2))
    return list(itertools.permutations(members))


class Instance:
    """Dense instance: one constraint per r-subset of 0..n-1."""

    __slots__ = ("n", "kind", "_constraints")

    def __init__(self, n: int, kind: ProblemKind, constraints: Iterable[Constraint]):
        if n < kind.r:
            raise EmptyInstanceError(f"need at least r={kind.r} vertices, got n={n}")
        self.n = n
        self.kind = kind
        by_members: dict[tuple[VertexId, ...], Constraint] = {}
        for c in constraints:
            validate_constraint(kind, c)
            if any(v < 0 or v >= n for v in c.members):
                raise DensityError(f"constraint members {c.members} outside 0..{n - 1}")
            if c.members in by_members:
                raise DensityError(f"duplicate constraint for subset {c.members}")
            by_members[c.members] = c
        # Rebuild in lexicographic order; this also finds any missing subset.
        table: dict[tuple[VertexId, ...], Constraint] = {}
        for subset in itertools.combinations(range(n), kind.r):
            try:
                table[subset] = by_members[subset]
            except KeyError:
                raise DensityError(f"missing constraint for subset {subset}") from None
        self._constraints = table

    @property
    def r(self) -> int:
        return self.kind.r

    def constraint_count(self) -> int:
        return len(self._constraints)

    def constraints(self) -> Iterator[Constraint]:
        """All constraints, lexicographic by member tuple."""
        return iter(self._constraints.values())

    def constraint(self, members: Iterable[VertexId]) -> Constraint:
        key = tuple(sorted(members))
        try:
            return self._constraints[key]
        except KeyError:
            raise DensityError(f"no constraint for subset {key}") from None

    def replace(self, changes: Mapping[tuple[VertexId, ...], Constraint]) -> "Instance":
        """New instance with the given subsets' constraints swapped out."""
        updated = dict(self._constraints)
        for key, c in changes.items():
            key = tuple(sorted(key))
            if key not in updated:
                raise DensityError(f"no constraint for subset {key}")
            if c.members != key:
                raise InvalidConstraintError(f"replacement members {c.members} != subset {key}")
            updated[key] = c
        return Instance(self.n, self.kind, updated.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.n == other.n
            and self.kind == other.kind
            and self._constraints == other._constraints
        )

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, kind={self.kind.family.value}/r={self.kind.r})"


@dataclass(frozen=True)
class OrderedInstance:
    """An instance together with a ranking of its vertices."""

    instance: Instance
    sigma: Ranking

    def __post_init__(self):
        if self.sigma.n != self.instance.n:
            raise InvalidConstraintError(
                f"ranking covers {self.sigma.n} vertices, instance has {self.instance.n}"
            )


def evaluate(kind: ProblemKind, c: Constraint, ranking: Ranking) -> bool:
    """Does `ranking` satisfy this constraint?"""
    pos = ranking.position
    if kind.family is Family.FAST:
        sp = pos[c.selected]
        return all(pos[v] <= sp for v in c.members)
    if kind.family is Family.BETWEENNESS:
        lo = min(c.members, key=pos.__getitem__)
        hi = max(c.members, key=pos.__getitem__)
        return {lo, hi} == set(c.selected)
    sel = c.selected
    return all(pos[sel[i]] < pos[sel[i + 1]] for i in range(len(sel) - 1))


def inconsistent_constraints(oi: OrderedInstance) -> list[Constraint]:
    """Constraints the ranking violates, lexicographic by members."""
    kind, sigma = oi.instance.kind, oi.sigma
    return [c for c in oi.instance.constraints() if not evaluate(kind, c, sigma)]


def fault_count(oi: OrderedInstance) -> int:
    return len(inconsistent_constraints(oi))


def span(c: Constraint, ranking: Ranking) -> tuple[tuple[VertexId, ...], bool]:
    """Vertices between the constraint's extreme positions, inclusive.

    Returned in ranking order, together with a flag telling whether the
    members sit consecutively (span size equals arity).
    """
    ps = [ranking.pos(v) for v in c.members]
    lo, hi = min(ps), max(ps)
    vertices = tuple(ranking.order[lo : hi + 1])
    return vertices, len(vertices) == len(c.members)


def span_minus(c: Constraint, ranking: Ranking) -> tuple[VertexId, ...]:
    """The span extended with every vertex ranked before it."""
    hi = max(ranking.pos(v) for v in c.members)
    return tuple(ranking.order[: hi + 1])


def edit_wrt(kind: ProblemKind, c: Constraint, ranking: Ranking) -> Constraint:
    """The unique constraint on the same members that `ranking` satisfies."""
    pos = ranking.position
    by_rank = sorted(c.members, key=pos.__getitem__)
    if kind.family is Family.FAST:
        return Constraint(c.members, by_rank[-1])
    if kind.family is Family.BETWEENNESS:
        lo, hi = by_rank[0], by_rank[-1]
        return Constraint(c.members, (lo, hi) if lo < hi else (hi, lo))
    return Constraint(c.members, tuple(by_rank))


def induced(
    inst: Instance, subset: Iterable[VertexId]
) -> tuple[Instance, dict[VertexId, VertexId]]:
    """Sub-instance on `subset`, densely relabelled to 0..m-1.

    The relabel map (old id -> new id) assigns new ids by ascending old
    id.  Raises EmptyInstanceError when the subset is smaller than the
    arity, because no dense instance exists there.
    """
    kept = sorted(set(subset))
    r = inst.kind.r
    if len(kept) < r:
        raise EmptyInstanceError(f"induced subset has {len(kept)} vertices, arity is {r}")
    if kept[0] < 0 or kept[-1] >= inst.n:
        raise DensityError(f"subset {kept} not within 0..{inst.n - 1}")
    relabel = {v: i for i, v in enumerate(kept)}

    def map_selected(sel: SelectedData) -> SelectedData:
        if isinstance(sel, int):
            return relabel[sel]
        return tuple(relabel[v] for v in sel)

    new_constraints = []
    for old_members in itertools.combinations(kept, r):
        c = inst.constraint(old_members)
        new_members = tuple(relabel[v] for v in c.members)
        sel = map_selected(c.selected)
        if inst.kind.family is Family.BETWEENNESS:
            sel = tuple(sorted(sel))
        new_constraints.append(Constraint(new_members, sel))
    return Instance(len(kept), inst.kind, new_constraints), relabel


def induced_ordered(
    oi: OrderedInstance, subset: Iterable[VertexId]
) -> tuple[OrderedInstance, dict[VertexId, VertexId]]:
    """`induced` plus the matching restriction of the ranking."""
    sub, relabel = induced(oi.instance, subset)
    return OrderedInstance(sub, oi.sigma.induced(relabel.keys())), relabel


def constraint_total(n: int, r: int) -> int:
    return comb(n, r)


def nth_combination(n: int, r: int, index: int) -> tuple[int, ...]:
    """The index-th r-subset of 0..n-1 in lexicographic order."""
    if not 0 <= index < comb(n, r):
        raise IndexError(f"combination index {index} out of range for C({n},{r})")
    out = []
    x = 0
    for slot in range(r, 0, -1):
        while comb(n - x - 1, slot - 1) <= index:
            index -= comb(n - x - 1, slot - 1)
            x += 1
        out.append(x)
        x += 1
    return tuple(out)
