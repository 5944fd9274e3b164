"""Least-number and counting problems on staged sets, and reductions between them.

A reduction is a pair of maps: ``inner`` sends a source instance to a target
instance, ``outer`` pulls a target answer back to a source answer.
:func:`verify_reduction` checks this on a corpus.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .diff_core import UNDEFINED, HybridSpec, IndexValues
from .learners import Trace
from .ordinals import OMEGA, ONE, ZERO, Ordinal, add, ordinal, parity
from .staged_sets import (
    DECREASING,
    INCREASING,
    NEVER,
    CoStagedSet,
    DecSegment,
    IncSegment,
    Listed,
    Member,
    NonWO,
    SeqSpec,
    StagedSet,
    Steps,
    WellOrder,
    Constant,
    stage_max,
    stage_min,
    wo_min,
)

__all__ = [
    "EmptyInstance",
    "Problem",
    "Reduction",
    "ReductionRecord",
    "ReductionReport",
    "lnp_pi11",
    "lnp_sigma11",
    "count_pi11",
    "count_sigma11",
    "star_transform",
    "co_star_transform",
    "count_to_lnp_transform",
    "lnp_to_count_transform",
    "PI11_LNP",
    "SIGMA11_LNP",
    "PI11_COUNT",
    "SIGMA11_COUNT",
    "PI11_LNP_WO2",
    "SIGMA11_LNP_WO2",
    "PI11_LNP_TO_SIGMA11_COUNT",
    "SIGMA11_LNP_TO_PI11_COUNT",
    "SIGMA11_COUNT_TO_PI11_LNP",
    "PI11_COUNT_TO_SIGMA11_LNP",
    "identity_reduction",
    "corrupted",
    "verify_reduction",
    "lnp_wo_two_valued",
    "sigma_lnp_wo_two_valued",
    "min_parity_runs",
    "bn_sets",
    "IndexCode",
    "inc_index_code",
    "dec_index_code",
    "embed_inc_diff",
    "embed_dec_diff",
    "sigma_lnp_guess_trace",
    "guess_ladder",
    "change_predicate",
    "sigma_lnp_wo_by_changes",
    "lnp_realizer_spec",
    "sigma_lnp_realizer_spec",
]


class EmptyInstance(ValueError):
    pass


# ---------------------------------------------------------------------------
# basic problems

def lnp_pi11(p: StagedSet) -> int:
    final = p.final
    if not final:
        raise EmptyInstance("the set is empty")
    return min(final)


def lnp_sigma11(s: CoStagedSet) -> int:
    final = s.final
    if not final:
        raise EmptyInstance("the set is empty")
    return min(final)


def count_pi11(p: StagedSet) -> int:
    return len(p.final)


def count_sigma11(s: CoStagedSet) -> int:
    return len(s.final)


@dataclass(frozen=True)
class Problem:
    name: str
    domain: Callable
    solve: Callable

    def solutions(self, instance) -> list:
        return [self.solve(instance)]

    def solves(self, instance, answer) -> bool:
        return self.domain(instance) and answer in self.solutions(instance)


def _nonempty(inst) -> bool:
    return bool(inst.final)


def _total(inst) -> bool:
    return True


PI11_LNP = Problem("pi11-lnp", _nonempty, lnp_pi11)
SIGMA11_LNP = Problem("sigma11-lnp", _nonempty, lnp_sigma11)
PI11_COUNT = Problem("pi11-count", _total, count_pi11)
SIGMA11_COUNT = Problem("sigma11-count", _total, count_sigma11)


# ---------------------------------------------------------------------------
# transforms

def star_transform(a: StagedSet) -> CoStagedSet:
    """``{n : every m <= n is outside A}``, so its size is ``min A``.

    ``n`` is removed as soon as some ``m <= n`` is enumerated into ``A``.
    """
    removal, best = [], NEVER
    for e in a.entry:
        best = stage_min(best, e)
        removal.append(best)
    return CoStagedSet(tuple(removal))


def co_star_transform(s: CoStagedSet) -> StagedSet:
    """The analytic twin: ``n`` enters once every ``m <= n`` has been removed."""
    entry, worst = [], ZERO
    for r in s.removal:
        worst = stage_max(worst, r)
        entry.append(worst)
    return StagedSet(tuple(entry))


def count_to_lnp_transform(a: CoStagedSet) -> StagedSet:
    """Enumerate the current size of ``A`` after every removal stage.

    The result lives on ``0..N`` and its least element is the final size.
    """
    stages = [ZERO] + [r for r in a.event_stages() if r != ZERO]
    entry: list = [NEVER] * (a.size + 1)
    for s in stages:
        size = sum(1 for r in a.removal if r > s)
        if entry[size] is NEVER:
            entry[size] = s
    return StagedSet(tuple(entry))


def lnp_to_count_transform(b: StagedSet) -> CoStagedSet:
    """Remove ``j`` at the stage where ``B`` gets its ``(j+1)``-th element.

    The result lives on ``0..N``; its least element is the size of ``B``.
    """
    entries = sorted(e for e in b.entry if e is not NEVER)
    removal = [entries[j] if j < len(entries) else NEVER for j in range(b.size + 1)]
    return CoStagedSet(tuple(removal))


def _answer_id(x, y):
    return y


@dataclass(frozen=True)
class Reduction:
    name: str
    inner: Callable
    outer: Callable = _answer_id


PI11_LNP_TO_SIGMA11_COUNT = Reduction("pi11-lnp <= sigma11-count", star_transform)
SIGMA11_LNP_TO_PI11_COUNT = Reduction("sigma11-lnp <= pi11-count", co_star_transform)
SIGMA11_COUNT_TO_PI11_LNP = Reduction("sigma11-count <= pi11-lnp", count_to_lnp_transform)
PI11_COUNT_TO_SIGMA11_LNP = Reduction("pi11-count <= sigma11-lnp", lnp_to_count_transform)


def _same(x):
    return x


def identity_reduction(name: str = "identity") -> Reduction:
    return Reduction(name, _same)


def _off_by_one(x, y):
    return y + 1


def corrupted(r: Reduction) -> Reduction:
    """Negative control: the outer map answers one too high."""
    return Reduction(f"{r.name} (corrupted)", r.inner, _off_by_one)


@dataclass(frozen=True)
class ReductionRecord:
    index: int
    ok: bool
    instance: object
    image: object = None
    answer: object = None
    pulled: object = None
    reason: str = ""


@dataclass
class ReductionReport:
    name: str
    records: list = field(default_factory=list)

    @property
    def failures(self) -> list:
        return [r for r in self.records if not r.ok]

    @property
    def ok(self) -> bool:
        return not self.failures


def _check_one(r: Reduction, src: Problem, tgt: Problem, index: int, x) -> ReductionRecord:
    if not src.domain(x):
        return ReductionRecord(index, False, x, reason="instance outside the source domain")
    image = r.inner(x)
    if not tgt.domain(image):
        return ReductionRecord(index, False, x, image, reason="image outside the target domain")
    for y in tgt.solutions(image):
        z = r.outer(x, y)
        if not src.solves(x, z):
            return ReductionRecord(index, False, x, image, y, z, reason="pulled-back answer is wrong")
    return ReductionRecord(index, True, x, image, y, z)


def verify_reduction(r: Reduction, src: Problem, tgt: Problem, corpus, jobs: int = 1) -> ReductionReport:
    corpus = list(corpus)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(lambda p: _check_one(r, src, tgt, *p), enumerate(corpus)))
    else:
        records = [_check_one(r, src, tgt, i, x) for i, x in enumerate(corpus)]
    return ReductionReport(r.name, records)


# ---------------------------------------------------------------------------
# least elements along a well-order code

def lnp_wo_two_valued(p: StagedSet, y) -> int:
    if isinstance(y, WellOrder) and p.final:
        return y.par(wo_min(y, p.final))
    return 0


def sigma_lnp_wo_two_valued(s: CoStagedSet, y) -> int:
    if isinstance(y, WellOrder) and s.final:
        return y.par(wo_min(y, s.final))
    return 0


PI11_LNP_WO2 = Problem("pi11-lnp-wo-2", _total, lambda inst: lnp_wo_two_valued(*inst))
SIGMA11_LNP_WO2 = Problem("sigma11-lnp-wo-2", _total, lambda inst: sigma_lnp_wo_two_valued(*inst))


def min_parity_runs(p: StagedSet, y: WellOrder) -> list:
    """Stages at which the parity of the current least element flips.

    Returns ``(entry_stage, parity)`` for each maximal run of equal parity
    of ``min_y P[s]``, dropping a leading run of parity 0.
    """
    runs = []
    for e in p.event_stages():
        current = p.approx(add(e, ONE))
        par = y.par(wo_min(y, current))
        if not runs or runs[-1][1] != par:
            runs.append((e, par))
    if runs and runs[0][1] == 0:
        runs = runs[1:]
    return runs


def bn_sets(family, include_wo_level: bool = False) -> SeqSpec:
    """Decreasing length-omega sequence over the family's indices.

    With ``include_wo_level`` the sequence is ``B_0, B_1, ...`` where ``B_0``
    holds the instances whose code is a well-order and ``B_n`` (n >= 1)
    those whose least-element parity switched at least ``n`` times, the
    first switch landing on parity 1.  By default level 0 is dropped,
    so index ``n`` holds the instances with at least ``n+1`` switches; this
    is the indexing under which the set-level decreasing difference equals
    the two-valued least-element parity.
    """
    members = []
    for p, y in family:
        if not isinstance(y, WellOrder):
            members.append(Member(DecSegment(ZERO), Listed(())))
            continue
        stages = [stage_max(y.revealed_at, e) for e, _ in min_parity_runs(p, y)]
        if include_wo_level:
            stages = [y.revealed_at] + stages
        members.append(Member(DecSegment(ordinal(len(stages))), Listed(tuple(stages))))
    return SeqSpec(OMEGA, DECREASING, tuple(members))


@dataclass(frozen=True)
class IndexCode:
    """Finitely many index surrogates ranked inside a well-order code."""

    indices: tuple
    code: WellOrder


def inc_index_code(seq: SeqSpec) -> IndexCode:
    """Surrogates for every segment start; ranks shifted by one for odd lengths."""
    idx = {ZERO}
    for x in range(seq.size):
        g = seq.start(x)
        if g is not None:
            idx.add(g)
    indices = tuple(sorted(i for i in idx if i < seq.length))
    shift = parity(seq.length) == 1
    ranks = tuple(add(i, ONE) if shift else i for i in indices)
    return IndexCode(indices, WellOrder(ranks, ZERO))


def dec_index_code(seq: SeqSpec) -> IndexCode:
    """Surrogates for every least non-member index, plus the length itself."""
    idx = {ZERO, seq.length}
    for x in range(seq.size):
        idx.add(min(seq.otype(x), seq.length))
    indices = tuple(sorted(idx))
    return IndexCode(indices, WellOrder(indices, ZERO))


def embed_inc_diff(seq: SeqSpec, code: IndexCode | None = None) -> tuple:
    """Reduction from an increasing difference to the two-valued LNP.

    Element ``x`` maps to the staged set of surrogates ``n`` with
    ``x in A_(index n)`` together with the index code.
    """
    if seq.direction != INCREASING:
        raise ValueError("expected an increasing sequence")
    code = code or inc_index_code(seq)

    def inner(x: int):
        entry = tuple(seq.fact_stage(x, i) for i in code.indices)
        return StagedSet(entry), code.code

    return Reduction(f"inc-diff(len {seq.length}) <= pi11-lnp-wo-2", inner), code


def embed_dec_diff(seq: SeqSpec, code: IndexCode | None = None) -> tuple:
    """Reduction from a decreasing difference to the analytic two-valued LNP.

    Element ``x`` maps to the co-staged set of surrogates ``n`` with
    ``x`` outside ``B_(index n)``; surrogate ``n`` is removed when ``x``
    enters ``B_(index n)``.
    """
    if seq.direction != DECREASING:
        raise ValueError("expected a decreasing sequence")
    code = code or dec_index_code(seq)

    def inner(x: int):
        removal = tuple(seq.fact_stage(x, i) if i < seq.length else NEVER for i in code.indices)
        return CoStagedSet(removal), code.code

    return Reduction(f"dec-diff(len {seq.length}) <= sigma11-lnp-wo-2", inner), code


# ---------------------------------------------------------------------------
# guessing the least element of an analytic set

def _guess_marks(s: CoStagedSet, y: WellOrder) -> list:
    marks = {add(y.revealed_at, ONE)}
    marks.update(add(r, ONE) for r in s.event_stages())
    return sorted(marks)


def sigma_lnp_guess_trace(s: CoStagedSet, y, c=None) -> Trace:
    """Guess the current least element once the code is known to be a well-order."""
    if not isinstance(y, WellOrder):
        return Trace.constant(c)
    pairs = []
    for m in _guess_marks(s, y):
        if not y.known_at(m):
            continue
        current = s.approx(m)
        pairs.append((m, wo_min(y, current) if current else c))
    return Trace.from_assignments(pairs, c)


def guess_ladder(n: int) -> tuple:
    """Instance whose least element is removed ``n`` times in a row."""
    removal = tuple(ordinal(i + 1) for i in range(n)) + (NEVER,)
    return CoStagedSet(removal), WellOrder(tuple(range(n + 1)), ZERO)


def change_predicate(s: CoStagedSet, y, at) -> bool:
    """Some later event-log stage shows a different least element (or none)."""
    if not isinstance(y, WellOrder):
        return False
    at = ordinal(at)
    now = s.approx(at)
    if not now:
        return False
    least = wo_min(y, now)
    for m in _guess_marks(s, y):
        if m > at:
            later = s.approx(m)
            if not later or wo_min(y, later) != least:
                return True
    return False


def sigma_lnp_wo_by_changes(s: CoStagedSet, y) -> int:
    """1 iff at some event-log stage the guess is final and has parity 1."""
    if not isinstance(y, WellOrder):
        return 0
    for m in [ZERO] + _guess_marks(s, y):
        now = s.approx(m)
        if now and not change_predicate(s, y, m) and y.par(wo_min(y, now)) == 1:
            return 1
    return 0


# ---------------------------------------------------------------------------
# realizers computing least elements by difference operators

def lnp_realizer_spec(family) -> HybridSpec:
    """Increasing length-omega spec with ``x in A_n`` iff some ``k <= n`` is in ``P_x``.

    Index ``n`` carries the constant value ``n``; the hybrid value at
    ``x`` is then ``min P_x``.
    """
    members = []
    for p in family:
        pts = [(k, e) for k, e in enumerate(p.entry) if e is not NEVER]
        if pts:
            sched = Steps.normalized(pts)
            members.append(Member(IncSegment(sched.points[-1][0]), sched))
        else:
            members.append(Member(IncSegment(OMEGA), Constant(ZERO)))
    seq = SeqSpec(OMEGA, INCREASING, tuple(members))
    return HybridSpec(UNDEFINED, seq, IndexValues.index_valued(seq.size))


def sigma_lnp_realizer_spec(family) -> HybridSpec:
    """Decreasing length-omega spec with ``x in B_n`` iff every ``k < n`` left ``S_x``.

    Index ``n`` carries the value ``n``; the greatest index containing ``x``
    is ``min S_x``.
    """
    members = []
    for s in family:
        stages = [ZERO]
        worst = ZERO
        for r in s.removal:
            if r is NEVER:
                break
            worst = stage_max(worst, r)
            stages.append(worst)
        members.append(Member(DecSegment(ordinal(len(stages))), Listed(tuple(stages))))
    seq = SeqSpec(OMEGA, DECREASING, tuple(members))
    return HybridSpec(UNDEFINED, seq, IndexValues.index_valued(seq.size))
