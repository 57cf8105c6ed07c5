"""Kernelization by sunflower edits and vertex drops.

A simple sunflower is an inconsistent center constraint plus petals:
supersets of the center that pairwise share exactly the center's members
and each contain exactly one violated constraint (the center itself).
When more than k disjoint petals exist, any solution editing at most k
constraints must edit the center, and must edit it to agree with the
current ranking; doing so and decrementing k preserves the answer.

Two drivers are provided.  `kernelize_characterized` works for the
families whose single faults certify bounded conflicts (BETWEENNESS,
TRANSITIVE_FAST) with petals of a configurable width; the ranking comes
from a pluggable provider, is kept for the whole run, and its fault
count p bounds the output size.  `kernelize_fast` is the FAST pipeline:
every round recomputes the Inc-Degree ranking of the current instance,
gates on its fault count p (YES at p <= k, NO at p > 5k by the
5-approximation), drops always-selected vertices exhaustively, and
otherwise flips one violated constraint certified by more than k
petals, terminating with at most p + k + r vertices.  Pair constraints
get an extra certificate: when single-vertex petals run short, disjoint
vertex groups that each close a directed cycle with the center stand in
for them (the groups need not be single-fault, only conflicts).

All rule applications land in the outcome's trace, one record per
application, so a reduction can be replayed or audited line by line.
Vertex ids in trace records refer to the instance as it was when the
rule fired (drops relabel ids densely).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

from . import oracle
from .approx import inc_degree_ranking
from .characterize import default_conflict_size, violating_selected_values
from .errors import (
    ConfigError,
    KernelDriverError,
    PreconditionError,
    RuleInapplicableError,
    SemanticsError,
)
from .model import (
    Constraint,
    Family,
    Instance,
    OrderedInstance,
    ProblemKind,
    Ranking,
    SelectedData,
    VertexId,
    all_selected_values,
    edit_wrt,
    evaluate,
    fault_count,
    inconsistent_constraints,
    induced,
    span,
    span_minus,
)

RankingProvider = Callable[[Instance], Ranking]


# ---------------------------------------------------------------------------
# ranking providers


def exact_provider(cap: int = oracle.DEFAULT_CAP) -> RankingProvider:
    """Provider returning an optimal ranking (oracle witness, q = 1)."""

    def provide(inst: Instance) -> Ranking:
        return oracle.min_inconsistencies(inst, cap=cap).witness

    return provide


def incdegree_provider(inst: Instance) -> Ranking:
    """Inc-Degree ranking; FAST only, q = 5."""
    return inc_degree_ranking(inst)


def local_search_provider(inst: Instance) -> Ranking:
    """Adjacent-swap hill climbing from the identity ranking.

    First-improvement scans repeated until a full pass is swap-free.
    No approximation factor is guaranteed; use it only where a heuristic
    fault count is acceptable.
    """
    order = list(range(inst.n))

    def faults() -> int:
        return fault_count(OrderedInstance(inst, Ranking(tuple(order))))

    best = faults()
    improved = True
    while improved and best > 0:
        improved = False
        for i in range(inst.n - 1):
            order[i], order[i + 1] = order[i + 1], order[i]
            b = faults()
            if b < best:
                best = b
                improved = True
            else:
                order[i], order[i + 1] = order[i + 1], order[i]
    return Ranking(tuple(order))


# ---------------------------------------------------------------------------
# sunflowers


@dataclass(frozen=True)
class SimpleSunflower:
    """Center constraint plus pairwise-disjoint petal extensions."""

    center: Constraint
    extras: tuple[tuple[VertexId, ...], ...]

    def __post_init__(self):
        seen = set(self.center.members)
        for extra in self.extras:
            for v in extra:
                if v in seen:
                    raise PreconditionError(f"petal vertex {v} reused across the sunflower")
                seen.add(v)

    @property
    def petal_count(self) -> int:
        return len(self.extras)

    def petals(self):
        for extra in self.extras:
            yield tuple(sorted(self.center.members + extra))


def _petal_is_single_fault(
    oi: OrderedInstance, center: Constraint, petal: tuple[VertexId, ...]
) -> bool:
    """Exactly one violated constraint inside the petal set, the center.

    Dense instances are local: a constraint's verdict under a ranking
    only involves its own members, so checking the full instance's
    constraints restricted to the petal equals checking the induced
    sub-instance.
    """
    kind, sigma = oi.instance.kind, oi.sigma
    for subset in itertools.combinations(petal, kind.r):
        if subset == center.members:
            continue
        if not evaluate(kind, oi.instance.constraint(subset), sigma):
            return False
    return True


def _validate_characterized(kind: ProblemKind, conflict_size: int) -> None:
    expected = default_conflict_size(kind)
    if conflict_size != expected:
        raise ConfigError(
            f"{kind.family.value} at r={kind.r} certifies conflicts of size {expected}, "
            f"got {conflict_size}"
        )


def find_simple_sunflower(
    oi: OrderedInstance, center: Constraint, conflict_size: int, k: int
) -> Optional[SimpleSunflower]:
    """Greedy disjoint petals of width conflict_size - r around `center`.

    Non-center vertices are chunked in ranking order, first fit; a chunk
    survives if the center is the only violated constraint in its petal.
    Returns None when fewer than k + 1 petals survive.
    """
    kind = oi.instance.kind
    _validate_characterized(kind, conflict_size)
    if evaluate(kind, center, oi.sigma):
        raise PreconditionError("sunflower center must be violated by the ranking")
    width = conflict_size - kind.r
    pool = [v for v in oi.sigma.order if v not in center.members]
    extras = []
    for i in range(0, len(pool) - width + 1, width):
        extra = tuple(pool[i : i + width])
        petal = tuple(sorted(center.members + extra))
        if _petal_is_single_fault(oi, center, petal):
            extras.append(extra)
    if len(extras) < k + 1:
        return None
    return SimpleSunflower(center, tuple(extras))


def find_fast_sunflower(
    oi: OrderedInstance, center: Constraint, k: int
) -> Optional[SimpleSunflower]:
    """Single-vertex petals for FAST, drawn from the center's span.

    A petal must be a conflict, not merely single-fault.  For r >= 3
    every single-fault extension by a vertex ranked no later than the
    center's last member is a conflict, so candidates come from the
    span plus everything before it.  At r = 2 a backward pair plus an
    earlier vertex is an acyclic triangle, so only vertices strictly
    inside the span count.
    """
    kind = oi.instance.kind
    if kind.family is not Family.FAST:
        raise SemanticsError("find_fast_sunflower needs a FAST instance")
    if evaluate(kind, center, oi.sigma):
        raise PreconditionError("sunflower center must be violated by the ranking")
    members = set(center.members)
    if kind.r == 2:
        inner, _ = span(center, oi.sigma)
        candidates = [v for v in inner if v not in members]
    else:
        candidates = [v for v in span_minus(center, oi.sigma) if v not in members]
    extras = []
    for v in candidates:
        petal = tuple(sorted(center.members + (v,)))
        if _petal_is_single_fault(oi, center, petal):
            extras.append((v,))
    if len(extras) < k + 1:
        return None
    return SimpleSunflower(center, tuple(extras))


def _cyclic_triple(inst: Instance, a: VertexId, b: VertexId, c: VertexId) -> bool:
    """True when the pair constraints among {a, b, c} admit no ranking.

    Each pair selects the member that must be ranked last; the triple is
    unsatisfiable exactly when the three selected vertices are distinct,
    so the pairs chain into a directed cycle.
    """
    sels = {
        inst.constraint(tuple(sorted(pair))).selected
        for pair in itertools.combinations((a, b, c), 2)
    }
    return len(sels) == 3


def _find_conflict_packing(
    oi: OrderedInstance, center: Constraint, k: int
) -> Optional[tuple[tuple[VertexId, ...], ...]]:
    """Disjoint vertex groups each forming a conflict with a violated pair.

    Pair constraints only.  Interior single-vertex petals can run dry at
    width two while the instance is still large, so this widens the
    certificate: any vertex group whose union with the center contains a
    directed cycle is a conflict through the center, and groups sharing
    no vertices overlap pairwise in the center constraint alone.  More
    than k of them force every k-budget solution to edit the center.

    Groups are collected greedily in ranking order, smallest first:
    single vertices closing a cycle with both center members, then pairs
    closing a cycle with exactly one member, then free-standing cyclic
    triples.  Returns None when at most k groups are found.
    """
    inst = oi.instance
    if inst.kind.r != 2:
        raise SemanticsError("conflict packing applies to pair constraints only")
    if evaluate(inst.kind, center, oi.sigma):
        raise PreconditionError("packing center must be violated by the ranking")
    u, w = center.members
    used = set(center.members)
    groups: list[tuple[VertexId, ...]] = []

    def take(group: tuple[VertexId, ...]) -> None:
        groups.append(group)
        used.update(group)

    for s in oi.sigma.order:
        if s not in used and _cyclic_triple(inst, u, w, s):
            take((s,))
    rest = [v for v in oi.sigma.order if v not in used]
    for x, y in itertools.combinations(rest, 2):
        if x in used or y in used:
            continue
        if _cyclic_triple(inst, u, x, y) or _cyclic_triple(inst, w, x, y):
            take((x, y))
    rest = [v for v in rest if v not in used]
    for x, y, z in itertools.combinations(rest, 3):
        if x in used or y in used or z in used:
            continue
        if _cyclic_triple(inst, x, y, z):
            take((x, y, z))
    if len(groups) <= k:
        return None
    return tuple(groups)


def _apply_packing_edit(
    oi: OrderedInstance,
    center: Constraint,
    groups: tuple[tuple[VertexId, ...], ...],
    k: int,
) -> tuple[Instance, int]:
    """Flip a violated pair certified by a conflict packing, decrement k.

    A pair has one alternative value, so once the packing shows every
    k-budget solution edits the center, the flip itself is forced; the
    answer is preserved exactly.  Verifies the packing like
    apply_sunflower_edit does before touching the instance.
    """
    if len(groups) <= k:
        raise RuleInapplicableError(
            f"packing has {len(groups)} conflict groups, need more than k={k}"
        )
    kind = oi.instance.kind
    if evaluate(kind, center, oi.sigma):
        raise PreconditionError("packing center is already consistent with the ranking")
    seen = set(center.members)
    for group in groups:
        for v in group:
            if v in seen:
                raise PreconditionError(f"group vertex {v} reused across the packing")
            seen.add(v)
        petal = center.members + group
        if not any(
            _cyclic_triple(oi.instance, a, b, c)
            for a, b, c in itertools.combinations(petal, 3)
        ):
            raise PreconditionError(f"group {group} forms no conflict with the center")
    edited = edit_wrt(kind, center, oi.sigma)
    return oi.instance.replace({center.members: edited}), k - 1


# ---------------------------------------------------------------------------
# rules


def apply_sunflower_edit(
    oi: OrderedInstance, flower: SimpleSunflower, k: int
) -> tuple[Instance, int]:
    """Edit the center to agree with the ranking and decrement k.

    Sound only when the petal count exceeds k, since then no k-edit
    solution can leave the center untouched or disagree with the
    ranking on it.  The petal premise is re-verified here; a stale
    sunflower is a caller bug worth failing loudly on.
    """
    if flower.petal_count <= k:
        raise RuleInapplicableError(
            f"sunflower has {flower.petal_count} petals, need more than k={k}"
        )
    kind = oi.instance.kind
    if evaluate(kind, flower.center, oi.sigma):
        raise PreconditionError("sunflower center is already consistent with the ranking")
    for petal in flower.petals():
        if not _petal_is_single_fault(oi, flower.center, petal):
            raise PreconditionError(f"petal {petal} is not single-fault; sunflower is stale")
    edited = edit_wrt(kind, flower.center, oi.sigma)
    return oi.instance.replace({flower.center.members: edited}), k - 1


def always_selected_vertex(inst: Instance) -> Optional[VertexId]:
    """The vertex selected by every constraint containing it, if any.

    At most one can exist: two of them would meet in some constraint
    (density), which selects a single vertex.
    """
    if inst.kind.family is not Family.FAST:
        raise SemanticsError("always-selected drops are a FAST rule")
    ruled_out = [False] * inst.n
    for c in inst.constraints():
        for v in c.members:
            if v != c.selected:
                ruled_out[v] = True
    hits = [v for v in range(inst.n) if not ruled_out[v]]
    assert len(hits) <= 1, f"multiple always-selected vertices {hits} in a dense instance"
    return hits[0] if hits else None


def drop_always_selected_vertex(
    inst: Instance,
) -> Optional[tuple[Instance, VertexId, dict[VertexId, VertexId]]]:
    """Remove the always-selected vertex, if present.

    Such a vertex can be ranked last at no cost in any solution, so
    removal preserves the minimum fault count exactly.  Returns the
    reduced instance, the dropped vertex, and the dense relabel map.
    Callers must leave more than r vertices behind.
    """
    v = always_selected_vertex(inst)
    if v is None:
        return None
    keep = [u for u in range(inst.n) if u != v]
    reduced, relabel = induced(inst, keep)
    return reduced, v, relabel


def cycle_free_vertex(inst: Instance) -> Optional[VertexId]:
    """The smallest vertex of a pair instance lying in no cyclic triple.

    Pair constraints split every other vertex into losers (pairs
    selecting v) and winners (pairs selecting the other member).  When v
    closes no directed cycle, every loser-winner pair selects the
    winner, so any optimal ordering of the rest can be rearranged, at no
    cost, into losers-then-winners; v slots in between for free.
    Removing v therefore preserves the optimum exactly.
    """
    if inst.kind.family is not Family.FAST or inst.kind.r != 2:
        raise SemanticsError("cycle-free drops apply to FAST pair instances only")
    for v in range(inst.n):
        others = [u for u in range(inst.n) if u != v]
        in_cycle = any(
            _cyclic_triple(inst, v, x, y) for x, y in itertools.combinations(others, 2)
        )
        if not in_cycle:
            return v
    return None


def drop_cycle_free_vertex(
    inst: Instance,
) -> Optional[tuple[Instance, VertexId, dict[VertexId, VertexId]]]:
    """Remove the smallest cycle-free vertex of a pair instance, if any.

    Exact like the always-selected drop (which it subsumes at r = 2: a
    vertex winning every pair closes no cycle).  Callers must leave more
    than r vertices behind.
    """
    v = cycle_free_vertex(inst)
    if v is None:
        return None
    keep = [u for u in range(inst.n) if u != v]
    reduced, relabel = induced(inst, keep)
    return reduced, v, relabel


# ---------------------------------------------------------------------------
# outcomes and traces


@dataclass(frozen=True)
class EditRecord:
    center: tuple[VertexId, ...]
    old_selected: SelectedData
    new_selected: SelectedData
    k_before: int
    k_after: int
    petals: int
    rule: str = "sunflower-edit"

    def line(self) -> str:
        return (
            f"rule={self.rule} center={_fmt_ids(self.center)} "
            f"selected={_fmt_sel(self.old_selected)}->{_fmt_sel(self.new_selected)} "
            f"k={self.k_before}->{self.k_after} petals={self.petals}"
        )


@dataclass(frozen=True)
class DropRecord:
    vertex: VertexId
    n_before: int
    n_after: int
    k: int
    rule: str = "drop-always-selected"

    def line(self) -> str:
        return (
            f"rule={self.rule} vertex={self.vertex} "
            f"n={self.n_before}->{self.n_after} k={self.k}->{self.k}"
        )


TraceRecord = Union[EditRecord, DropRecord]


def _fmt_ids(ids: tuple[VertexId, ...]) -> str:
    return ",".join(str(v) for v in ids)


def _fmt_sel(sel: SelectedData) -> str:
    if isinstance(sel, tuple):
        return ",".join(str(v) for v in sel)
    return str(sel)


class Verdict(Enum):
    REDUCED = "reduced"
    TRIVIAL_YES = "trivial-yes"
    TRIVIAL_NO = "trivial-no"


@dataclass(frozen=True)
class KernelOutcome:
    """Result of a kernelization run.

    REDUCED carries the shrunken instance and budget; the trivial
    verdicts carry None and can be materialized as canonical instances.
    p0 is the initial fault count of the driver's ranking.
    """

    verdict: Verdict
    kind: ProblemKind
    instance: Optional[Instance]
    k: Optional[int]
    p0: int
    trace: tuple[TraceRecord, ...]

    def trace_text(self) -> str:
        return "\n".join(record.line() for record in self.trace)

    def edit_count(self) -> int:
        return sum(1 for t in self.trace if isinstance(t, EditRecord))

    def drop_count(self) -> int:
        return sum(1 for t in self.trace if isinstance(t, DropRecord))

    def materialize(self) -> tuple[Instance, int]:
        """An (instance, k) pair whose answer equals this verdict."""
        if self.verdict is Verdict.REDUCED:
            return self.instance, self.k
        return trivial_instance(self.kind, self.verdict is Verdict.TRIVIAL_YES)


def trivial_instance(kind: ProblemKind, yes: bool) -> tuple[Instance, int]:
    """Canonical fixed-answer instances at budget 0.

    YES: the identity-consistent instance on r vertices.  NO: a single
    fault placed so the whole r+1 vertex set is a conflict; the fault
    skips one vertex of the identity order, which is a conflict shape
    for every family, including FAST at r = 2 (a cyclic triangle).
    Both are re-checked against the oracle at construction.
    """
    r = kind.r

    def satisfied_on(members: tuple[VertexId, ...], sigma: Ranking) -> Constraint:
        seed = Constraint(members, all_selected_values(kind, members)[0])
        return edit_wrt(kind, seed, sigma)

    if yes:
        identity = Ranking.identity(r)
        inst = Instance(r, kind, [satisfied_on(tuple(range(r)), identity)])
        assert oracle.decide(inst, 0)
        return inst, 0

    size = r + 1
    sigma = Ranking.identity(size)
    inst = Instance(
        size,
        kind,
        [satisfied_on(subset, sigma) for subset in itertools.combinations(range(size), r)],
    )
    fault_members = tuple(range(r - 1)) + (r,)
    bad_value = violating_selected_values(kind, fault_members, sigma)[0]
    inst = inst.replace({fault_members: Constraint(fault_members, bad_value)})
    assert not oracle.decide(inst, 0)
    return inst, 0


# ---------------------------------------------------------------------------
# drivers


def _debug_check(
    enabled: bool,
    before: Instance,
    k_before: int,
    after: Instance,
    k_after: int,
    cap: int,
) -> None:
    """Oracle cross-check of one rule application (debug flag only;
    exponential in the vertex count, so small instances only)."""
    if not enabled or before.n > cap or after.n > cap:
        return
    lhs = oracle.decide(before, k_before, cap=cap)
    rhs = oracle.decide(after, k_after, cap=cap)
    if lhs != rhs:
        raise KernelDriverError(
            f"rule application changed the answer: before={lhs} after={rhs}"
        )


def kernelize_characterized(
    inst: Instance,
    k: int,
    conflict_size: int,
    provider: RankingProvider,
    debug_oracle_checks: bool = False,
    oracle_cap: int = oracle.DEFAULT_CAP,
) -> KernelOutcome:
    """Sunflower-edit kernelization for bounded-conflict families.

    One ranking is drawn from the provider up front and kept for the
    whole run; p is its fault count, re-counted after every edit.  While
    the vertex set is larger than p*w + w*(k+1) + r (w the petal width)
    a big sunflower is guaranteed, so the loop either answers or shrinks
    k until the size test closes.  The vertex set itself never changes;
    only k and the constraint data do.
    """
    kind = inst.kind
    _validate_characterized(kind, conflict_size)
    width = conflict_size - kind.r
    sigma = provider(inst)
    oi = OrderedInstance(inst, sigma)
    p0 = p = fault_count(oi)
    trace: list[TraceRecord] = []

    while True:
        if 0 <= p <= k:
            return KernelOutcome(Verdict.TRIVIAL_YES, kind, None, None, p0, tuple(trace))
        if k < 0:
            return KernelOutcome(Verdict.TRIVIAL_NO, kind, None, None, p0, tuple(trace))
        if inst.n <= p * width + width * (k + 1) + kind.r:
            return KernelOutcome(Verdict.REDUCED, kind, inst, k, p0, tuple(trace))
        center = inconsistent_constraints(oi)[0]
        flower = find_simple_sunflower(oi, center, conflict_size, k)
        if flower is None:
            raise KernelDriverError(
                "no sunflower although the size test guarantees one; "
                f"n={inst.n} p={p} k={k} width={width}"
            )
        new_inst, new_k = apply_sunflower_edit(oi, flower, k)
        _debug_check(debug_oracle_checks, inst, k, new_inst, new_k, oracle_cap)
        trace.append(
            EditRecord(
                center=center.members,
                old_selected=center.selected,
                new_selected=edit_wrt(kind, center, sigma).selected,
                k_before=k,
                k_after=new_k,
                petals=flower.petal_count,
            )
        )
        inst, k = new_inst, new_k
        oi = OrderedInstance(inst, sigma)
        new_p = fault_count(oi)
        assert new_p == p - 1, "an edit must clear exactly its own fault"
        p = new_p


def kernelize_fast(
    inst: Instance,
    k: int,
    debug_oracle_checks: bool = False,
    oracle_cap: int = oracle.DEFAULT_CAP,
) -> KernelOutcome:
    """FAST kernelization driven by the Inc-Degree ranking.

    Every round recomputes the ranking and its fault count p on the
    current instance and gates: k < 0 is NO, p <= k is YES (the ranking
    witnesses it), p > 5k is NO (the ranking is a 5-approximation, so
    the optimum exceeds k), and n <= p + k + r returns REDUCED.  The NO
    gate runs before the size test, which pins every REDUCED output
    under 6k + r vertices.  Past the gates, always-selected vertices are
    dropped exhaustively; failing that, one violated constraint holding
    the ranking's last vertex (one must exist once drops dry up) is
    flipped to agree with the ranking, certified by more than k petals.

    Every round drops a vertex, spends a unit of k, or exits, so the
    driver always terminates.  For r >= 3 the petal pool from the
    center's span is guaranteed large enough whenever the size test is
    open.  At r = 2 it is not: petals there are cyclic triples through
    the center's span interior, which can run dry early.  Three widening
    steps cover pair instances: cycle-free vertices are dropped (exact,
    like the always-selected drop, which it subsumes), every violated
    pair is tried as a center, and single-vertex petals give way to
    disjoint conflict packings.  A driver error means all of that
    failed, rather than return an oversized or unsound kernel.
    """
    if inst.kind.family is not Family.FAST:
        raise SemanticsError("kernelize_fast needs a FAST instance")
    kind = inst.kind
    p0: Optional[int] = None
    trace: list[TraceRecord] = []

    while True:
        sigma = inc_degree_ranking(inst)
        oi = OrderedInstance(inst, sigma)
        p = fault_count(oi)
        if p0 is None:
            p0 = p

        if k < 0:
            return KernelOutcome(Verdict.TRIVIAL_NO, kind, None, None, p0, tuple(trace))
        if p <= k:
            return KernelOutcome(Verdict.TRIVIAL_YES, kind, None, None, p0, tuple(trace))
        if p > 5 * k:
            return KernelOutcome(Verdict.TRIVIAL_NO, kind, None, None, p0, tuple(trace))
        if inst.n <= p + k + kind.r:
            return KernelOutcome(Verdict.REDUCED, kind, inst, k, p0, tuple(trace))

        # Drops preserve the optimum exactly; ids are relabelled densely
        # each time, and the ranking is recomputed at the top anyway.
        # At r = 2 cycle-free drops subsume always-selected ones, but the
        # latter stay first so traces name the cheaper rule when it fires.
        dropped_any = False
        while inst.n > kind.r:
            hit = drop_always_selected_vertex(inst)
            rule = "drop-always-selected"
            if hit is None and kind.r == 2:
                hit = drop_cycle_free_vertex(inst)
                rule = "drop-cycle-free"
            if hit is None:
                break
            reduced, dropped, _ = hit
            _debug_check(debug_oracle_checks, inst, k, reduced, k, oracle_cap)
            trace.append(
                DropRecord(vertex=dropped, n_before=inst.n, n_after=reduced.n, k=k, rule=rule)
            )
            inst = reduced
            dropped_any = True
        if dropped_any:
            continue

        last = sigma.last()
        faults = inconsistent_constraints(oi)
        centers = [c for c in faults if last in c.members]
        if not centers:
            raise KernelDriverError(
                "after exhaustive drops the last vertex must sit in a violated constraint"
            )
        center = centers[0]
        flower = find_fast_sunflower(oi, center, k)
        groups: Optional[tuple[tuple[VertexId, ...], ...]] = None
        if flower is None and kind.r == 2:
            # Interior pools can be thin at r = 2; try every violated
            # pair, then widen the petals to conflict packings.
            ordered = centers + [c for c in faults if last not in c.members]
            for cand in ordered[1:]:
                flower = find_fast_sunflower(oi, cand, k)
                if flower is not None:
                    center = cand
                    break
            if flower is None:
                for cand in ordered:
                    groups = _find_conflict_packing(oi, cand, k)
                    if groups is not None:
                        center = cand
                        break

        if flower is not None:
            new_inst, new_k = apply_sunflower_edit(oi, flower, k)
            petals, rule = flower.petal_count, "sunflower-edit"
        elif groups is not None:
            new_inst, new_k = _apply_packing_edit(oi, center, groups, k)
            petals, rule = len(groups), "conflict-packing-edit"
        else:
            raise KernelDriverError(
                f"no certificate with more than k={k} petals although n={inst.n} "
                f"exceeds p+k+r={p + k + kind.r}"
            )
        _debug_check(debug_oracle_checks, inst, k, new_inst, new_k, oracle_cap)
        trace.append(
            EditRecord(
                center=center.members,
                old_selected=center.selected,
                new_selected=edit_wrt(kind, center, sigma).selected,
                k_before=k,
                k_after=new_k,
                petals=petals,
                rule=rule,
            )
        )
        inst, k = new_inst, new_k
