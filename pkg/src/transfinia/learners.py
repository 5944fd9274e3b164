"""Guess traces of learners running along an ordinal clock.

A :class:`Trace` is a finite list of segments.  A :class:`Plateau` holds a
value from its start stage until the next segment.  An :class:`OmegaBlock`
alternates between two values along the canonical fundamental sequence of
its limit and is the only way infinitely many changes are described.

The translations between hybrid difference specs and traces follow the
countdown construction (increasing specs) and the mind-change construction
with limit resets (decreasing specs).  A fact recorded at stage ``t`` is
visible from stage ``t+1`` on, as for :meth:`StagedSet.approx`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .diff_core import UNDEFINED, HybridSpec, InvalidSpec, eval_hybrid
from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    fundamental_seq,
    mul,
    omega_pow,
    ordinal,
    sub,
)
from .staged_sets import (
    DECREASING,
    INCREASING,
    NEVER,
    Steps,
    reindex_stage,
    validate_monotone,
)

__all__ = [
    "Plateau",
    "OmegaBlock",
    "Trace",
    "TraceViolation",
    "InvalidCountdown",
    "TooManyChanges",
    "NotSemicontinuous",
    "NotRepresentable",
    "value_at",
    "horizon_value",
    "change_events",
    "mind_change_otype",
    "validate_trace",
    "validate_continuity",
    "validate_semicontinuity",
    "validate_countdown",
    "diff_to_countdown",
    "countdown_to_diff",
    "reindex_stage",
    "dec_to_mindchange",
    "mindchange_to_dec",
    "IncFamily",
    "DecFamily",
    "merge_countdowns",
]


class InvalidCountdown(ValueError):
    pass


class TooManyChanges(ValueError):
    pass


class NotSemicontinuous(ValueError):
    pass


class NotRepresentable(ValueError):
    """The trace would need infinitely many accumulation points."""


@dataclass(frozen=True)
class Plateau:
    start: Ordinal
    value: object

    def __post_init__(self):
        object.__setattr__(self, "start", ordinal(self.start))


@dataclass(frozen=True)
class OmegaBlock:
    """``first`` and ``second`` alternate from ``start`` up to ``limit``.

    The k-th switch happens at stage ``fundamental_seq(limit, k0 + k) + 1``
    where ``k0`` is the least index reaching ``start``.
    """

    start: Ordinal
    limit: Ordinal
    first: object
    second: object

    def __post_init__(self):
        object.__setattr__(self, "start", ordinal(self.start))
        object.__setattr__(self, "limit", ordinal(self.limit))

    def _k0(self) -> int:
        k = 0
        while fundamental_seq(self.limit, k) < self.start:
            k += 1
        return k

    def switch_stages(self, count: int) -> list:
        k0 = self._k0()
        return [add(fundamental_seq(self.limit, k0 + k), ONE) for k in range(count)]

    def value_inside(self, s: Ordinal):
        k = self._k0()
        switches = 0
        while fundamental_seq(self.limit, k) < s:
            switches += 1
            k += 1
        return self.first if switches % 2 == 0 else self.second

    @property
    def alternates(self) -> bool:
        return self.first != self.second


Segment = Union[Plateau, OmegaBlock]


@dataclass(frozen=True)
class Trace:
    segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    @classmethod
    def constant(cls, value) -> "Trace":
        return cls((Plateau(ZERO, value),))

    @classmethod
    def from_assignments(cls, pairs, initial) -> "Trace":
        """Plateaus from ``(stage, value)`` pairs; later pairs win ties."""
        by_stage = {ZERO: initial}
        for s, v in pairs:
            by_stage[ordinal(s)] = v
        segs = []
        for s in sorted(by_stage):
            v = by_stage[s]
            if not segs or segs[-1].value != v:
                segs.append(Plateau(s, v))
        return cls(tuple(segs))

    def __iter__(self):
        return iter(self.segments)


@dataclass(frozen=True)
class TraceViolation:
    stage: object
    message: str

    def __str__(self):
        return f"stage {self.stage}: {self.message}"


def _first_value(seg: Segment):
    return seg.value if isinstance(seg, Plateau) else seg.first


def value_at(tr: Trace, s, c=None):
    """Value of the trace at stage ``s``; ``c`` is the reset value."""
    s = ordinal(s)
    current = None
    for seg in tr.segments:
        if seg.start <= s:
            current = seg
        else:
            break
    if current is None:
        raise ValueError("trace does not start at stage 0")
    if isinstance(current, Plateau):
        return current.value
    if s < current.limit:
        return current.value_inside(s)
    return c


def horizon_value(tr: Trace, c=None):
    """Value after the last segment (traces are eventually constant)."""
    last = tr.segments[-1]
    if isinstance(last, Plateau):
        return last.value
    return last.second if not last.alternates else c


def change_events(tr: Trace) -> list:
    """Change stages in order.

    Items are ``("change", stage, new_value)`` for a single change at
    ``stage`` (so the value at ``stage + 1`` is ``new_value``) and
    ``("omega", block)`` for the infinitely many switches inside a block.
    """
    events = []
    segs = tr.segments
    for i, seg in enumerate(segs):
        if i > 0 and seg.start.is_successor:
            prev = segs[i - 1]
            if isinstance(prev, Plateau) and prev.value != _first_value(seg):
                events.append(("change", seg.start.pred(), _first_value(seg)))
        if isinstance(seg, OmegaBlock) and seg.alternates:
            events.append(("omega", seg))
    return events


def mind_change_otype(tr: Trace) -> Ordinal:
    total = ZERO
    for ev in change_events(tr):
        total = add(total, OMEGA if ev[0] == "omega" else ONE)
    return total


def validate_trace(tr: Trace) -> list:
    """Structural checks shared by every validator."""
    problems = []
    segs = tr.segments
    if not segs:
        return [TraceViolation(ZERO, "empty trace")]
    if segs[0].start != ZERO:
        problems.append(TraceViolation(segs[0].start, "first segment must start at 0"))
    for a, b in zip(segs, segs[1:]):
        if not a.start < b.start:
            problems.append(TraceViolation(b.start, "segment starts must increase"))
    for i, seg in enumerate(segs):
        if isinstance(seg, OmegaBlock):
            if not seg.limit.is_limit:
                problems.append(TraceViolation(seg.limit, "block limit must be a limit ordinal"))
            elif not seg.start < seg.limit:
                problems.append(TraceViolation(seg.start, "block starts at or after its limit"))
            if i + 1 < len(segs) and segs[i + 1].start != seg.limit:
                problems.append(TraceViolation(seg.limit, "segment after a block must start at its limit"))
    return problems


def validate_continuity(tr: Trace) -> list:
    """Values at limit stages equal the eventual value below them."""
    problems = validate_trace(tr)
    segs = tr.segments
    for i, seg in enumerate(segs):
        if isinstance(seg, OmegaBlock) and seg.alternates:
            problems.append(TraceViolation(seg.limit, "no limit exists below an alternating block"))
        if i > 0 and seg.start.is_limit:
            prev = segs[i - 1]
            if isinstance(prev, Plateau) and prev.value != _first_value(seg):
                problems.append(TraceViolation(seg.start, "value jumps at a limit stage"))
    return problems


def validate_semicontinuity(tr: Trace, c) -> list:
    """Values at limit stages follow the reset rule ``c``-lim."""
    problems = validate_trace(tr)
    segs = tr.segments
    if segs and _first_value(segs[0]) != c:
        problems.append(TraceViolation(ZERO, f"initial value must be {c!r}"))
    for i, seg in enumerate(segs):
        if i == 0 or not seg.start.is_limit:
            continue
        prev = segs[i - 1]
        if isinstance(prev, OmegaBlock):
            expected = c if prev.alternates else prev.second
        else:
            expected = prev.value
        if _first_value(seg) != expected:
            problems.append(TraceViolation(seg.start, f"value at limit must be {expected!r}"))
    return problems


def validate_countdown(tr: Trace, cd: Trace) -> list:
    problems = validate_trace(tr) + validate_trace(cd)
    for seg in tr.segments:
        if isinstance(seg, OmegaBlock) and seg.alternates:
            problems.append(TraceViolation(seg.start, "infinitely many changes admit no countdown"))
            return problems
    for seg in cd.segments:
        if isinstance(seg, OmegaBlock):
            problems.append(TraceViolation(seg.start, "a countdown cannot alternate"))
            return problems
    for a, b in zip(cd.segments, cd.segments[1:]):
        if not ordinal(b.value) < ordinal(a.value):
            problems.append(TraceViolation(b.start, "countdown must decrease"))
    for ev in change_events(tr):
        t = ev[1]
        before, after = value_at(cd, t), value_at(cd, add(t, ONE))
        if not ordinal(after) < ordinal(before):
            problems.append(TraceViolation(t, f"guess changes but the countdown stays at {before}"))
    return problems


# ---------------------------------------------------------------------------
# increasing specs and countdowns

@dataclass(frozen=True)
class IncFamily:
    """A dom-increasing family at one element.

    ``points`` lists ``(index, value)`` in the order they became defined;
    ``f_xi`` is the value of the first point with index ``<= xi``.
    """

    length: Ordinal
    points: tuple

    def value(self, xi):
        xi = ordinal(xi)
        for i, v in self.points:
            if i <= xi:
                return v
        return UNDEFINED

    def min_index(self):
        return min((i for i, _ in self.points), default=None)

    def evaluate(self, c):
        m = self.min_index()
        return c if m is None else self.value(m)


def _entry_points(spec: HybridSpec, x: int) -> list:
    seq = spec.seq
    member = seq.members[x]
    start = seq.start(x)
    if start is None:
        return []
    if isinstance(member.schedule, Steps):
        pts = Steps.normalized(member.schedule.points).points
        return [(i, t) for i, t in pts if i < seq.length]
    return [(start, seq.fact_stage(x, start))]


def diff_to_countdown(spec: HybridSpec, x: int):
    """Guess trace and countdown of the least-index learner at ``x``."""
    seq = spec.seq
    if seq.direction != INCREASING:
        raise InvalidSpec("countdown learners need an increasing spec")
    problems = validate_monotone(seq)
    if problems:
        raise InvalidSpec(str(problems[0]))
    pairs, marks = [], []
    for index, t in _entry_points(spec, x):
        s = add(t, ONE)
        pairs.append((s, spec.values.value(index, x)))
        marks.append((s, index))
    trace = Trace.from_assignments(pairs, spec.c)
    countdown = Trace((Plateau(ZERO, seq.length),) + tuple(Plateau(s, v) for s, v in marks))
    return trace, countdown


def countdown_to_diff(tr: Trace, cd: Trace, eta, x: int = 0) -> IncFamily:
    """Read a dom-increasing family off a countdown."""
    eta = ordinal(eta)
    problems = validate_countdown(tr, cd)
    if problems:
        raise InvalidCountdown(str(problems[0]))
    if any(ordinal(seg.value) > eta for seg in cd.segments):
        raise InvalidCountdown("countdown exceeds the length")
    points = []
    for seg in cd.segments:
        d = ordinal(seg.value)
        if d < eta:
            points.append((d, value_at(tr, seg.start)))
    return IncFamily(eta, tuple(points))


def merge_countdowns(spec_set: HybridSpec, spec_complement: HybridSpec, x: int):
    """Guess a set from learners for it and its complement.

    Both specs are increasing characteristic specs of the same length.  The
    merged learner waits (looks ahead) until one learner has entered some
    level, then follows whichever countdown is lower.  Its countdown never
    takes the value ``length``.
    """
    eta = spec_set.seq.length
    if spec_complement.seq.length != eta:
        raise InvalidSpec("both learners must share the length")
    tr_a, cd_a = diff_to_countdown(spec_set, x)
    tr_b, cd_b = diff_to_countdown(spec_complement, x)
    marks = sorted({seg.start for tr in (tr_a, cd_a, tr_b, cd_b) for seg in tr.segments})
    first = None
    for s in marks:
        if value_at(cd_a, s) < eta or value_at(cd_b, s) < eta:
            first = s
            break
    if first is None:
        raise InvalidSpec(f"element {x} is covered by neither learner")

    def state(s):
        da, db = value_at(cd_a, s), value_at(cd_b, s)
        if da <= db:
            return value_at(tr_a, s), da
        return 1 - value_at(tr_b, s), db

    pairs, cd_pairs = [], []
    v0, d0 = state(first)
    for s in marks:
        if s > first:
            v, d = state(s)
            pairs.append((s, v))
            cd_pairs.append((s, d))
    trace = Trace.from_assignments(pairs, v0)
    countdown = Trace.from_assignments(cd_pairs, d0)
    return trace, countdown


# ---------------------------------------------------------------------------
# decreasing specs and mind changes

@dataclass(frozen=True)
class DecFamily:
    """A dom-decreasing family at one element.

    ``items`` are ``("one", value)`` for a single index or
    ``("alt", a, b)`` for an omega-run of indices valued ``a, b, a, ...``.
    """

    items: tuple

    @property
    def otype(self) -> Ordinal:
        total = ZERO
        for item in self.items:
            total = add(total, ONE if item[0] == "one" else OMEGA)
        return total

    def value(self, xi):
        xi = ordinal(xi)
        offset = ZERO
        for item in self.items:
            width = ONE if item[0] == "one" else OMEGA
            end = add(offset, width)
            if offset <= xi < end:
                if item[0] == "one":
                    return item[1]
                k = int(sub(xi, offset))
                return item[1] if k % 2 == 0 else item[2]
            offset = end
        return UNDEFINED

    def evaluate(self, c):
        if self.items and self.items[-1][0] == "one":
            return self.items[-1][1]
        return c


def _first_visible(seq, x, xi, eta) -> Ordinal:
    return reindex_stage(xi, add(seq.fact_stage(x, xi), ONE), eta)


def _sup_visible(seq, x, lam, eta) -> Ordinal:
    """Supremum of the reindexed first-visible stages of indices below ``lam``."""
    u = seq.members[x].schedule.settle(lam)
    width = add(eta, ONE)
    if u.is_successor:
        return add(mul(width, u), lam)
    return mul(width, u)


def dec_to_mindchange(spec: HybridSpec, c=None, x: int = 0) -> Trace:
    """Trace of the greatest-index learner with reset value ``c`` at limits.

    Fact stages are first reindexed by ``reindex_stage`` so that the stages
    at which successive indices become visible are distinct successors.
    """
    seq = spec.seq
    if c is None:
        c = spec.c
    if seq.direction != DECREASING:
        raise InvalidSpec("mind-change learners need a decreasing spec")
    problems = validate_monotone(seq)
    if problems:
        raise InvalidSpec(str(problems[0]))
    eta = seq.length
    mu = seq.otype(x)
    if mu >= omega_pow(2):
        raise NotRepresentable(f"membership of order type {mu} has too many limit points")
    blocks = int(mu.terms[0][1]) if mu.terms and mu.terms[0][0] == ONE else 0
    tail = mu.finite_part()
    if spec.values.by_index and not mu.is_finite:
        raise NotRepresentable("index-valued tables never settle into an alternation")

    def f(xi):
        return spec.values.value(xi, x)

    segs: list = [Plateau(ZERO, c)]

    def put(s, v):
        last = segs[-1]
        if isinstance(last, Plateau) and last.start == s:
            segs.pop()
            last = segs[-1] if segs else None
        if last is None or isinstance(last, OmegaBlock) or last.value != v:
            segs.append(Plateau(s, v))

    for i in range(blocks):
        base = mul(OMEGA, i)
        lam = add(base, OMEGA)
        explicit = [sub(k, base) for k in spec.values.explicit_indices() if base <= k < lam]
        n0 = (max(int(k) for k in explicit) + 1) if explicit else 0
        for m in range(n0):
            xi = add(base, m)
            put(_first_visible(seq, x, xi, eta), f(xi))
        u, v = f(add(base, n0)), f(add(base, n0 + 1))
        start = _first_visible(seq, x, add(base, n0), eta)
        limit = _sup_visible(seq, x, lam, eta)
        if u == v:
            put(start, u)
            at_limit = u
        else:
            last = segs[-1]
            if last.start == start:
                segs.pop()
            segs.append(OmegaBlock(start, limit, u, v))
            segs.append(Plateau(limit, c))
            at_limit = c
        if at_limit != c:
            put(add(limit, ONE), c)
    base = mul(OMEGA, blocks)
    for m in range(tail):
        xi = add(base, m)
        put(_first_visible(seq, x, xi, eta), f(xi))
    return _merge(segs)


def _merge(segs: list) -> Trace:
    out = []
    for seg in segs:
        if out and isinstance(seg, Plateau) and isinstance(out[-1], Plateau) and out[-1].value == seg.value:
            continue
        out.append(seg)
    return Trace(tuple(out))


def mindchange_to_dec(tr: Trace, c, eta, x: int = 0) -> DecFamily:
    """Read a dom-decreasing family off the mind-change stages of a trace."""
    eta = ordinal(eta)
    problems = validate_semicontinuity(tr, c)
    if problems:
        raise NotSemicontinuous(str(problems[0]))
    otype = mind_change_otype(tr)
    if otype > eta:
        raise TooManyChanges(f"{otype} changes exceed {eta}")
    items = []
    for ev in change_events(tr):
        if ev[0] == "change":
            items.append(("one", ev[2]))
        else:
            block = ev[1]
            items.append(("alt", block.second, block.first))
    return DecFamily(tuple(items))
