"""Finite-universe event logs standing in for coanalytic and analytic sets.

A :class:`StagedSet` records the stage at which each element is enumerated
(or ``NEVER``); a :class:`CoStagedSet` records removal stages.  A
:class:`SeqSpec` describes an ordinal-length monotone family of staged sets
per element, by a membership segment plus a stage schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    OrdinalLike,
    add,
    mul,
    ordinal,
    parity,
    sub,
)

__all__ = [
    "NEVER",
    "Never",
    "Stage",
    "stage",
    "StagedSet",
    "CoStagedSet",
    "approx",
    "Constant",
    "Ramp",
    "Steps",
    "Listed",
    "Floor",
    "Shift",
    "Joined",
    "reindex_stage",
    "Schedule",
    "INCREASING",
    "DECREASING",
    "DecSegment",
    "IncSegment",
    "Member",
    "SeqSpec",
    "IndexOutOfRange",
    "Violation",
    "seq_slice",
    "validate_monotone",
    "probe_grid",
    "from_slices",
    "WellOrder",
    "NonWO",
    "NON_WO",
    "WOCode",
    "NonWOCode",
    "EmptySet",
    "wo_min",
]


class Never:
    """Stage of an event that never happens; above every ordinal."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEVER"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEVER")

    def __lt__(self, other):
        if other is self or isinstance(other, (Ordinal, int)):
            return False
        return NotImplemented

    def __le__(self, other):
        if other is self:
            return True
        if isinstance(other, (Ordinal, int)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, (Ordinal, int)):
            return True
        return NotImplemented

    def __ge__(self, other):
        if other is self or isinstance(other, (Ordinal, int)):
            return True
        return NotImplemented

    def __reduce__(self):
        return (Never, ())


NEVER = Never()
Stage = Union[Ordinal, Never]


def stage(value) -> Stage:
    if value is NEVER or isinstance(value, Never):
        return NEVER
    if isinstance(value, str) and value.lower() == "never":
        return NEVER
    return ordinal(value)


def stage_max(a: Stage, b: Stage) -> Stage:
    return a if a >= b else b


def stage_min(a: Stage, b: Stage) -> Stage:
    return a if a <= b else b


# ---------------------------------------------------------------------------
# staged sets

@dataclass(frozen=True)
class StagedSet:
    """Element ``n`` belongs to the stage-``s`` approximation iff ``entry[n] < s``."""

    entry: tuple

    def __post_init__(self):
        object.__setattr__(self, "entry", tuple(stage(e) for e in self.entry))

    @classmethod
    def of(cls, size: int, entries: dict) -> "StagedSet":
        return cls(tuple(entries.get(n, NEVER) for n in range(size)))

    @property
    def size(self) -> int:
        return len(self.entry)

    def approx(self, s: OrdinalLike) -> frozenset:
        s = ordinal(s)
        return frozenset(n for n, e in enumerate(self.entry) if e < s)

    @property
    def final(self) -> frozenset:
        return frozenset(n for n, e in enumerate(self.entry) if e is not NEVER)

    def event_stages(self) -> list:
        return sorted({e for e in self.entry if e is not NEVER})


@dataclass(frozen=True)
class CoStagedSet:
    """Element ``n`` is in the stage-``s`` approximation iff ``removal[n] >= s``."""

    removal: tuple

    def __post_init__(self):
        object.__setattr__(self, "removal", tuple(stage(e) for e in self.removal))

    @classmethod
    def of(cls, size: int, removals: dict) -> "CoStagedSet":
        return cls(tuple(removals.get(n, NEVER) for n in range(size)))

    @property
    def size(self) -> int:
        return len(self.removal)

    def approx(self, s: OrdinalLike) -> frozenset:
        s = ordinal(s)
        return frozenset(n for n, r in enumerate(self.removal) if r >= s)

    @property
    def final(self) -> frozenset:
        return frozenset(n for n, r in enumerate(self.removal) if r is NEVER)

    def event_stages(self) -> list:
        return sorted({r for r in self.removal if r is not NEVER})


def approx(s: StagedSet | CoStagedSet, at: OrdinalLike) -> frozenset:
    return s.approx(at)


# ---------------------------------------------------------------------------
# schedules
#
# A schedule maps a fact index to a stage.  ``settle(lam)`` is the least stage
# strictly above every fact with index below the limit ``lam``.

@dataclass(frozen=True)
class Constant:
    t: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "t", ordinal(self.t))

    def at(self, index: Ordinal) -> Ordinal:
        return self.t

    def settle(self, lam: Ordinal) -> Ordinal:
        return add(self.t, ONE)


@dataclass(frozen=True)
class Ramp:
    """Fact ``n`` appears at ``base + step*n``."""

    base: Ordinal
    step: Ordinal = ONE

    def __post_init__(self):
        object.__setattr__(self, "base", ordinal(self.base))
        object.__setattr__(self, "step", ordinal(self.step))

    def at(self, index: Ordinal) -> Ordinal:
        return add(self.base, mul(self.step, index))

    def settle(self, lam: Ordinal) -> Ordinal:
        if self.step.is_zero:
            return add(self.base, ONE)
        return add(self.base, mul(self.step, lam))

    def sup(self) -> Ordinal:
        return self.settle(OMEGA)


@dataclass(frozen=True)
class Steps:
    """Entry points of an increasing family.

    ``points`` lists ``(index, stage)`` pairs with descending indices and
    ascending stages; the fact ``x in A_xi`` appears at the least stage whose
    index is ``<= xi``.
    """

    points: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "points", tuple((ordinal(i), ordinal(t)) for i, t in self.points)
        )

    def at(self, index: Ordinal) -> Stage:
        best: Stage = NEVER
        for i, t in self.points:
            if i <= index and t < best:
                best = t
        return best

    @classmethod
    def normalized(cls, points: Iterable) -> "Steps":
        """Drop redundant points so indices descend and stages ascend."""
        pts = sorted((ordinal(i), ordinal(t)) for i, t in points)
        kept = []
        best: Stage = NEVER
        for i, t in pts:
            if t < best:
                kept.append((i, t))
                best = t
        return cls(tuple(reversed(kept)))


@dataclass(frozen=True)
class Listed:
    """Explicit stages for the facts ``0, 1, ..., len(stages)-1``."""

    stages: tuple

    def __post_init__(self):
        object.__setattr__(self, "stages", tuple(ordinal(t) for t in self.stages))

    def at(self, index: Ordinal) -> Stage:
        if index.is_finite and int(index) < len(self.stages):
            return self.stages[int(index)]
        return NEVER

    def settle(self, lam: Ordinal) -> Ordinal:
        raise ValueError("a listed schedule only covers finitely many facts")


@dataclass(frozen=True)
class Floor:
    """``max(floor, inner)``: facts cannot appear before ``floor``."""

    inner: "Schedule"
    floor: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "floor", ordinal(self.floor))

    def at(self, index: Ordinal) -> Stage:
        return stage_max(self.floor, self.inner.at(index))

    def settle(self, lam: Ordinal) -> Ordinal:
        return max(add(self.floor, ONE), self.inner.settle(lam))


@dataclass(frozen=True)
class Shift:
    """Prefix stages for the first facts, then ``inner`` shifted past them."""

    prefix: tuple
    inner: "Schedule"

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(ordinal(t) for t in self.prefix))

    def at(self, index: Ordinal) -> Stage:
        k = len(self.prefix)
        if index.is_finite and int(index) < k:
            return self.prefix[int(index)]
        return self.inner.at(sub(index, k))

    def settle(self, lam: Ordinal) -> Ordinal:
        inner = self.inner.settle(sub(lam, len(self.prefix)))
        if self.prefix:
            return max(add(max(self.prefix), ONE), inner)
        return inner


@dataclass(frozen=True)
class Joined:
    """Pointwise maximum of two schedules."""

    left: "Schedule"
    right: "Schedule"

    def at(self, index: Ordinal) -> Stage:
        return stage_max(self.left.at(index), self.right.at(index))

    def settle(self, lam: Ordinal) -> Ordinal:
        return max(self.left.settle(lam), self.right.settle(lam))


def reindex_stage(xi: OrdinalLike, t: OrdinalLike, eta: OrdinalLike) -> Ordinal:
    """``(eta+1)*t + xi + 1``: injective, successor, increasing in ``xi``."""
    xi, t, eta = ordinal(xi), ordinal(t), ordinal(eta)
    return add(add(mul(add(eta, ONE), t), xi), ONE)


Schedule = Union[Constant, Ramp, Steps, Listed, Floor, Shift, "Joined"]


# ---------------------------------------------------------------------------
# sequence specifications

INCREASING = "inc"
DECREASING = "dec"


class IndexOutOfRange(IndexError):
    pass


@dataclass(frozen=True)
class DecSegment:
    """Membership ``[0, bound)``, or ``[0, bound]`` when ``attained``."""

    bound: Ordinal
    attained: bool = False

    def __post_init__(self):
        object.__setattr__(self, "bound", ordinal(self.bound))

    def contains(self, xi: Ordinal) -> bool:
        return xi < self.bound or (self.attained and xi == self.bound)

    @property
    def otype(self) -> Ordinal:
        """Order type of the membership set (its least non-member)."""
        return add(self.bound, ONE) if self.attained else self.bound

    def max_index(self):
        if self.attained:
            return self.bound
        if self.bound.is_successor:
            return self.bound.pred()
        return None


@dataclass(frozen=True)
class IncSegment:
    """Membership ``[start, length)``; ``start == length`` means empty."""

    start: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "start", ordinal(self.start))

    def contains(self, xi: Ordinal) -> bool:
        return xi >= self.start


@dataclass(frozen=True)
class Member:
    segment: Union[DecSegment, IncSegment]
    schedule: Schedule = field(default_factory=lambda: Constant(ZERO))


@dataclass(frozen=True)
class Violation:
    element: int
    message: str
    index: object = None

    def __str__(self):
        where = f" at index {self.index}" if self.index is not None else ""
        return f"element {self.element}{where}: {self.message}"


@dataclass(frozen=True)
class SeqSpec:
    length: Ordinal
    direction: str
    members: tuple

    def __post_init__(self):
        object.__setattr__(self, "length", ordinal(self.length))
        object.__setattr__(self, "members", tuple(self.members))
        if self.direction not in (INCREASING, DECREASING):
            raise ValueError(f"unknown direction {self.direction!r}")

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def decreasing(self) -> bool:
        return self.direction == DECREASING

    @classmethod
    def dec(cls, length, bounds, schedules=None) -> "SeqSpec":
        """Decreasing spec from per-element bounds.

        A bound is an ordinal (open segment) or a pair ``(bound, attained)``.
        """
        members = []
        for x, b in enumerate(bounds):
            seg = DecSegment(*b) if isinstance(b, tuple) else DecSegment(b)
            sched = schedules[x] if schedules is not None else Constant(ZERO)
            members.append(Member(seg, sched))
        return cls(length, DECREASING, tuple(members))

    @classmethod
    def inc(cls, length, starts, schedules=None) -> "SeqSpec":
        members = []
        for x, g in enumerate(starts):
            sched = schedules[x] if schedules is not None else Constant(ZERO)
            members.append(Member(IncSegment(g), sched))
        return cls(length, INCREASING, tuple(members))

    def contains(self, x: int, xi: OrdinalLike) -> bool:
        xi = ordinal(xi)
        return xi < self.length and self.members[x].segment.contains(xi)

    def fact_stage(self, x: int, xi: OrdinalLike) -> Stage:
        """Stage at which the fact ``x in A_xi`` is enumerated, or NEVER."""
        xi = ordinal(xi)
        if not self.contains(x, xi):
            return NEVER
        member = self.members[x]
        sched = member.schedule
        if self.direction == INCREASING and not isinstance(sched, Steps):
            return sched.at(sub(xi, member.segment.start))
        return sched.at(xi)

    def slice(self, xi: OrdinalLike) -> StagedSet:
        xi = ordinal(xi)
        if not xi < self.length:
            raise IndexOutOfRange(f"index {xi} outside length {self.length}")
        return StagedSet(tuple(self.fact_stage(x, xi) for x in range(self.size)))

    def start(self, x: int):
        """Least index containing ``x`` (increasing specs), or None."""
        seg = self.members[x].segment
        return seg.start if seg.start < self.length else None

    def max_index(self, x: int):
        """Greatest index containing ``x`` (decreasing specs), or None."""
        seg = self.members[x].segment
        m = seg.max_index()
        if m is not None and m < self.length:
            return m
        return None

    def otype(self, x: int) -> Ordinal:
        return self.members[x].segment.otype

    def with_members(self, members) -> "SeqSpec":
        return SeqSpec(self.length, self.direction, tuple(members))


def seq_slice(seq: SeqSpec, index: OrdinalLike) -> StagedSet:
    return seq.slice(index)


def _schedule_probe_indices(seq: SeqSpec, x: int) -> list:
    """Indices where stage monotonicity of ``x``'s facts is checked."""
    seg = seq.members[x].segment
    probes = set(ordinal(n) for n in range(6))
    anchors = [seq.length]
    if isinstance(seg, DecSegment):
        anchors.append(seg.bound)
    else:
        anchors.append(seg.start)
    sched = seq.members[x].schedule
    if isinstance(sched, Steps):
        anchors.extend(i for i, _ in sched.points)
    for a in anchors:
        probes.add(a)
        probes.add(add(a, ONE))
        probes.add(add(a, 2))
        for e, c in a.terms:
            head = Ordinal._raw(a.terms[: a.terms.index((e, c))])
            probes.add(head)
            probes.add(add(head, ONE))
    return sorted(p for p in probes if p < seq.length and seg.contains(p))


def validate_monotone(seq: SeqSpec) -> list:
    """Return a list of :class:`Violation` records; empty means ok."""
    problems = []
    for x, member in enumerate(seq.members):
        seg, sched = member.segment, member.schedule
        if seq.direction == DECREASING:
            if not isinstance(seg, DecSegment):
                problems.append(Violation(x, "decreasing spec needs a bound segment"))
                continue
            if seg.bound > seq.length:
                problems.append(Violation(x, f"bound {seg.bound} exceeds length {seq.length}"))
            if seg.attained and not seg.bound < seq.length:
                problems.append(Violation(x, "attained bound must lie below the length"))
            if isinstance(sched, Steps):
                problems.append(Violation(x, "entry-point schedules describe increasing families"))
                continue
            if isinstance(sched, Listed):
                otype = seg.otype
                if not otype.is_finite or int(otype) != len(sched.stages):
                    problems.append(Violation(x, "listed stages must cover the segment exactly"))
        else:
            if not isinstance(seg, IncSegment):
                problems.append(Violation(x, "increasing spec needs a start segment"))
                continue
            if seg.start > seq.length:
                problems.append(Violation(x, f"start {seg.start} exceeds length {seq.length}"))
            if isinstance(sched, Listed):
                problems.append(Violation(x, "listed schedules describe decreasing families"))
                continue
            if isinstance(sched, Steps):
                problems.extend(_check_steps(seq, x, sched))
                continue
        if isinstance(sched, Ramp) and sched.step.is_zero:
            problems.append(Violation(x, "ramp step must be at least 1"))
        if seq.direction == DECREASING:
            problems.extend(_check_nondecreasing(seq, x))
    return problems


def _check_steps(seq: SeqSpec, x: int, sched: Steps) -> list:
    problems = []
    seg = seq.members[x].segment
    pts = sched.points
    if seg.start >= seq.length:
        if pts:
            problems.append(Violation(x, "entry points given for an empty segment"))
        return problems
    if not pts:
        problems.append(Violation(x, "nonempty segment needs entry points"))
        return problems
    for (i0, t0), (i1, t1) in zip(pts, pts[1:]):
        if not i1 < i0:
            problems.append(Violation(x, "entry indices must strictly descend", i1))
        if not t0 < t1:
            problems.append(Violation(x, "entry stages must strictly ascend", i1))
    if pts[-1][0] != seg.start:
        problems.append(Violation(x, "last entry point must be the segment start", pts[-1][0]))
    if not pts[0][0] < seq.length:
        problems.append(Violation(x, "entry index outside the sequence", pts[0][0]))
    return problems


def _check_nondecreasing(seq: SeqSpec, x: int) -> list:
    idx = _schedule_probe_indices(seq, x)
    prev = None
    for xi in idx:
        t = seq.fact_stage(x, xi)
        if prev is not None and t < prev[1]:
            return [Violation(x, f"stage {t} precedes the stage {prev[1]} of index {prev[0]}", xi)]
        prev = (xi, t)
    return []


def probe_grid(seq: SeqSpec) -> list:
    """Indices below the length that pin down every element's segment."""
    grid = set()
    for member in seq.members:
        seg = member.segment
        anchor = seg.bound if isinstance(seg, DecSegment) else seg.start
        for a in (anchor, add(anchor, ONE)):
            grid.add(a)
    grid.add(ZERO)
    return sorted(g for g in grid if g < seq.length)


def from_slices(length, direction: str, grid: list, slices: list) -> SeqSpec:
    """Rebuild per-element segments from materialized slices on ``grid``."""
    length = ordinal(length)
    size = slices[0].size if slices else 0
    members = []
    for x in range(size):
        present = [xi for xi, sl in zip(grid, slices) if x in sl.final]
        if direction == DECREASING:
            absent = [xi for xi, sl in zip(grid, slices) if x not in sl.final]
            bound = absent[0] if absent else length
            members.append(Member(DecSegment(bound)))
        else:
            start = present[0] if present else length
            members.append(Member(IncSegment(start)))
    return SeqSpec(length, direction, tuple(members))


# ---------------------------------------------------------------------------
# well-order codes

class NonWOCode(ValueError):
    pass


class EmptySet(ValueError):
    pass


@dataclass(frozen=True)
class WellOrder:
    """A well-order on the universe given by injective ordinal ranks.

    A standard code ranks the universe ``0..N-1`` bijectively; codes built
    for index surrogates may use arbitrary (injective) ordinal labels.
    """

    rank: tuple
    revealed_at: Ordinal = ZERO

    def __post_init__(self):
        object.__setattr__(self, "rank", tuple(ordinal(r) for r in self.rank))
        object.__setattr__(self, "revealed_at", ordinal(self.revealed_at))
        if len(set(self.rank)) != len(self.rank):
            raise ValueError("ranks must be injective")

    @property
    def size(self) -> int:
        return len(self.rank)

    @property
    def is_standard(self) -> bool:
        return sorted(self.rank) == [ordinal(n) for n in range(len(self.rank))]

    def par(self, n: int) -> int:
        return parity(self.rank[n])

    def known_at(self, s: OrdinalLike) -> bool:
        return self.revealed_at < ordinal(s)


@dataclass(frozen=True)
class NonWO:
    def known_at(self, s) -> bool:
        return False


NON_WO = NonWO()
WOCode = Union[WellOrder, NonWO]


def wo_min(y: WOCode, elements) -> int:
    """The element of least rank."""
    if not isinstance(y, WellOrder):
        raise NonWOCode("not a well-order code")
    elements = list(elements)
    if not elements:
        raise EmptySet("empty set has no least element")
    return min(elements, key=lambda n: y.rank[n])
