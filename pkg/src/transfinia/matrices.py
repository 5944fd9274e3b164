"""Type Delta(omega+1) sequences, omega-change matrices and coproducts.

An omega-change matrix stacks ``rows`` decreasing length-omega sequences over
one universe.  Row 0 is the top row.  The staging condition requires that
once ``x`` enters level 0 of a row ``k``, every fact about ``x`` in a row
above it has already been enumerated at a strictly smaller stage.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diff_core import eval_diff_dec
from .learners import NotRepresentable, OmegaBlock, Plateau, Trace, TraceViolation, validate_trace
from .ordinals import OMEGA, ONE, ZERO, Ordinal, add, ordinal, parity
from .staged_sets import (
    DECREASING,
    NEVER,
    Constant,
    DecSegment,
    Floor,
    Joined,
    Listed,
    Member,
    NonWO,
    Ramp,
    SeqSpec,
    Shift,
    StagedSet,
    WellOrder,
    stage_max,
    stage_min,
    validate_monotone,
)

__all__ = [
    "InputsDisagree",
    "MatrixViolation",
    "DeltaOmegaPlusOneSeq",
    "eval_type_delta",
    "omega_decision",
    "merge_delta",
    "OmegaChangeMatrix",
    "validate_matrix",
    "eval_matrix_diff",
    "matrix_guess_trace",
    "is_delta_omega_plus_one",
    "matrix_normalize",
    "relabel",
    "diagonal_matrix",
    "complement_matrix",
    "diagonalize",
    "Diagonalization",
    "CoproductEntry",
    "pwo_coproduct_dec",
    "coproduct_index",
]


class InputsDisagree(ValueError):
    pass


def _infinite(seq: SeqSpec, x: int) -> bool:
    return seq.otype(x) >= OMEGA


def _levels(seq: SeqSpec, x: int) -> int:
    """Number of finite levels holding ``x``; only for finite rows."""
    return int(seq.otype(x))


def _check_omega_dec(seq: SeqSpec, what: str, length=OMEGA):
    if seq.direction != DECREASING or seq.length != ordinal(length):
        raise ValueError(f"{what} must be a decreasing sequence of length {ordinal(length)}")


# ---------------------------------------------------------------------------
# type Delta(omega+1)

@dataclass(frozen=True)
class DeltaOmegaPlusOneSeq:
    """Levels ``P_n`` plus a split of the survivors into decided-1 and decided-0.

    ``omega_one`` and ``omega_zero`` are staged sets whose final values
    partition the elements lying in every ``P_n``.
    """

    levels: SeqSpec
    omega_one: StagedSet
    omega_zero: StagedSet

    def __post_init__(self):
        _check_omega_dec(self.levels, "levels")
        n = self.levels.size
        if self.omega_one.size != n or self.omega_zero.size != n:
            raise ValueError("decision sets must cover the universe")
        one, zero = self.omega_one.final, self.omega_zero.final
        for x in range(n):
            inside = _infinite(self.levels, x)
            if (x in one) and (x in zero):
                raise ValueError(f"element {x} is decided both ways")
            if inside != ((x in one) or (x in zero)):
                raise ValueError(f"element {x}: decisions must cover exactly the intersection")

    @property
    def size(self) -> int:
        return self.levels.size


def eval_type_delta(seq: DeltaOmegaPlusOneSeq, x: int) -> int:
    if _infinite(seq.levels, x):
        return 1 if x in seq.omega_one.final else 0
    g = seq.levels.max_index(x)
    return int(g is not None and parity(g) == 0)


def omega_decision(seq: DeltaOmegaPlusOneSeq, x: int):
    """``(stage, value)`` of the decision after infinitely many changes, or None."""
    if not _infinite(seq.levels, x):
        return None
    if x in seq.omega_one.final:
        return seq.omega_one.entry[x], 1
    return seq.omega_zero.entry[x], 0


def merge_delta(p: SeqSpec, q: SeqSpec) -> DeltaOmegaPlusOneSeq:
    """Combine two length omega+1 decreasing sequences with complementary differences.

    ``p`` guesses the set and ``q`` its complement.  The merged levels are
    ``D_n = P_n & Q'_n`` where ``Q'`` is ``q`` with a universe level in
    front, so each element follows whichever side has fewer levels.  Elements
    in every level are decided by level omega of ``p`` (value 1) or of
    ``q`` (value 0).
    """
    plus = add(OMEGA, ONE)
    _check_omega_dec(p, "first sequence", plus)
    _check_omega_dec(q, "second sequence", plus)
    if p.size != q.size:
        raise ValueError("universes differ")
    dp, dq = eval_diff_dec(p), eval_diff_dec(q)
    for x in range(p.size):
        if (x in dp) == (x in dq):
            raise InputsDisagree(f"the two processes do not guess complementary values at {x}")
    members, one, zero = [], [], []
    for x in range(p.size):
        mp, mq = p.members[x], q.members[x]
        bound = min(min(p.otype(x), OMEGA), add(ONE, min(q.otype(x), OMEGA)))
        sched = Joined(mp.schedule, Shift((ZERO,), mq.schedule))
        members.append(Member(DecSegment(bound), sched))
        if bound == OMEGA:
            one.append(p.fact_stage(x, OMEGA))
            zero.append(q.fact_stage(x, OMEGA))
        else:
            one.append(NEVER)
            zero.append(NEVER)
    levels = SeqSpec(OMEGA, DECREASING, tuple(members))
    return DeltaOmegaPlusOneSeq(levels, StagedSet(tuple(one)), StagedSet(tuple(zero)))


# ---------------------------------------------------------------------------
# omega-change matrices

@dataclass(frozen=True)
class MatrixViolation:
    upper: int
    lower: int
    element: int
    stage: object
    message: str = ""

    def __str__(self):
        text = self.message or "upper row is still active"
        return f"rows {self.upper}<{self.lower}, element {self.element}, stage {self.stage}: {text}"


@dataclass(frozen=True)
class OmegaChangeMatrix:
    """``rows[j]`` is row ``j``; ``tables[j]`` overrides ``a(j, n) = parity(n)``."""

    rows: tuple
    tables: tuple = ()
    c: int = 0

    def __post_init__(self):
        rows = tuple(self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows:
            raise ValueError("a matrix needs at least one row")
        for j, row in enumerate(rows):
            _check_omega_dec(row, f"row {j}")
        if len({row.size for row in rows}) != 1:
            raise ValueError("rows must share one universe")
        tables = tuple(tuple(sorted((int(n), int(v)) for n, v in dict(t).items())) for t in self.tables)
        if not tables:
            tables = ((),) * len(rows)
        if len(tables) != len(rows):
            raise ValueError("one value table per row")
        object.__setattr__(self, "tables", tables)

    @property
    def height(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return self.rows[0].size

    def a(self, j: int, n: int) -> int:
        for i, v in self.tables[j]:
            if i == n:
                return v
        return parity(ordinal(n))

    def last_override(self, j: int) -> int:
        return max((i for i, _ in self.tables[j]), default=-1)

    @property
    def default_tables(self) -> bool:
        return all(v == parity(ordinal(i)) for t in self.tables for i, v in t)

    def with_rows(self, rows) -> "OmegaChangeMatrix":
        return OmegaChangeMatrix(tuple(rows), self.tables, self.c)


def _first_stage(row: SeqSpec, x: int):
    return row.fact_stage(x, ZERO)


def _row_sup(row: SeqSpec, x: int):
    """Least stage above every fact of ``x`` in this row (ZERO if none)."""
    if _infinite(row, x):
        return row.members[x].schedule.settle(OMEGA)
    n = _levels(row, x)
    if n == 0:
        return ZERO
    return add(row.fact_stage(x, n - 1), ONE)


def validate_matrix(m: OmegaChangeMatrix) -> list:
    problems = []
    for j, row in enumerate(m.rows):
        for v in validate_monotone(row):
            problems.append(MatrixViolation(j, j, v.element, v.index, f"row is not monotone: {v.message}"))
    for x in range(m.size):
        for k in range(m.height):
            start = _first_stage(m.rows[k], x)
            if start is NEVER:
                continue
            for j in range(k):
                if not _row_sup(m.rows[j], x) <= start:
                    problems.append(MatrixViolation(j, k, x, start))
    return problems


def eval_matrix_diff(m: OmegaChangeMatrix, x: int) -> int:
    v = m.c
    for k, row in enumerate(m.rows):
        if _infinite(row, x):
            return v
        g = row.max_index(x)
        if g is not None:
            v = m.a(k, int(g))
    return v


def _visible_levels(row: SeqSpec, x: int, s: Ordinal):
    """Levels of ``x`` visible at stage ``s``: an int, or OMEGA if all are."""
    total = None
    if _infinite(row, x):
        if row.members[x].schedule.settle(OMEGA) <= s:
            return OMEGA
    else:
        total = _levels(row, x)
    n = 0
    while (total is None or n < total) and row.fact_stage(x, n) < s:
        n += 1
    return n


def _guess_at(m: OmegaChangeMatrix, x: int, s: Ordinal) -> int:
    v = m.c
    for k, row in enumerate(m.rows):
        seen = _visible_levels(row, x, s)
        if seen == OMEGA:
            return v
        if seen:
            v = m.a(k, seen - 1)
    return v


def matrix_guess_trace(m: OmegaChangeMatrix, x: int) -> Trace:
    """Stagewise guess of the matrix value at ``x``.

    At each stage the current ``v_j`` are recomputed from the top row; once
    some row has shown all its levels, the guess freezes at that row's
    reset value.  Infinite rows must use a constant schedule or a ramp of
    step 1, so their facts follow the canonical fundamental sequence of
    their limit.
    """
    infinite = next((k for k, row in enumerate(m.rows) if _infinite(row, x)), None)
    marks = set()
    for k, row in enumerate(m.rows):
        if infinite is not None and k >= infinite:
            break
        for n in range(_levels(row, x)):
            marks.add(add(row.fact_stage(x, n), ONE))
    block = None
    if infinite is not None:
        row = m.rows[infinite]
        sched = row.members[x].schedule
        limit = sched.settle(OMEGA)
        marks.add(limit)
        if isinstance(sched, Ramp) and sched.step == ONE:
            n1 = m.last_override(infinite) + 1
            for n in range(n1):
                marks.add(add(sched.at(ordinal(n)), ONE))
            start = add(sched.at(ordinal(n1)), ONE)
            block = OmegaBlock(start, limit, m.a(infinite, n1), m.a(infinite, n1 + 1))
        elif not isinstance(sched, Constant):
            raise NotRepresentable(f"infinite row {infinite} needs a constant or unit-ramp schedule")
    pairs = [(s, _guess_at(m, x, s)) for s in sorted(marks) if block is None or s < block.start]
    head = Trace.from_assignments(pairs, _guess_at(m, x, ZERO)).segments
    if block is None:
        return Trace(head)
    tail = [block, Plateau(block.limit, _guess_at(m, x, block.limit))]
    return Trace(head + tuple(tail))


def is_delta_omega_plus_one(tr: Trace) -> list:
    """Violations of: at most one alternating block, then at most one decision."""
    problems = validate_trace(tr)
    blocks = [i for i, seg in enumerate(tr.segments) if isinstance(seg, OmegaBlock)]
    if len(blocks) > 1:
        problems.append(TraceViolation(tr.segments[blocks[1]].start, "more than one accumulation point"))
    elif blocks:
        after = tr.segments[blocks[0] + 1:]
        if len(after) > 2:
            problems.append(TraceViolation(after[2].start, "more than one decision after the accumulation point"))
    return problems


def _truncate(row: SeqSpec, x: int, cutoff) -> Member:
    member = row.members[x]
    if cutoff is NEVER or _row_sup(row, x) <= cutoff:
        return member
    n = 0
    while row.fact_stage(x, n) < cutoff:
        n += 1
    sched = member.schedule
    if isinstance(sched, Listed):
        sched = Listed(sched.stages[:n])
    return Member(DecSegment(ordinal(n)), sched)


def matrix_normalize(m: OmegaChangeMatrix) -> OmegaChangeMatrix:
    """Drop every fact of a row made at or after some lower row has started.

    Rows are processed bottom-up so the cutoff of row ``j`` uses the already
    normalized rows below it.
    """
    rows = list(m.rows)
    for j in range(m.height - 2, -1, -1):
        members = []
        for x in range(m.size):
            cutoff = NEVER
            for k in range(j + 1, m.height):
                cutoff = stage_min(cutoff, _first_stage(rows[k], x))
            members.append(_truncate(rows[j], x, cutoff))
        rows[j] = rows[j].with_members(members)
    return m.with_rows(rows)


def relabel(m: OmegaChangeMatrix, pi) -> OmegaChangeMatrix:
    """Pull the matrix back along ``pi``: new element ``i`` behaves like ``pi[i]``."""
    rows = [row.with_members(tuple(row.members[p] for p in pi)) for row in m.rows]
    return m.with_rows(rows)


def diagonal_matrix(corpus) -> OmegaChangeMatrix:
    """Element ``x`` copies its row data from the ``x``-th matrix of the corpus."""
    corpus = list(corpus)
    first = corpus[0]
    for mx in corpus:
        if mx.height != first.height or mx.tables != first.tables or mx.c != first.c:
            raise ValueError("corpus matrices must share height, tables and default")
        if mx.size < len(corpus):
            raise ValueError("each matrix must cover every probe element")
    rows = []
    for j in range(first.height):
        members = tuple(corpus[x].rows[j].members[x] for x in range(len(corpus)))
        rows.append(SeqSpec(OMEGA, DECREASING, members))
    return OmegaChangeMatrix(tuple(rows), first.tables, first.c)


def _delayed(row: SeqSpec, x: int, by: int) -> Member:
    """Row data of ``x`` with level 0 doubled and every stage moved ``by`` later."""
    member = row.members[x]
    sched = member.schedule
    seg = member.segment
    bound = add(ONE, seg.bound)
    if _infinite(row, x):
        if isinstance(sched, Constant):
            return Member(DecSegment(bound, seg.attained), Constant(add(sched.t, by)))
        if isinstance(sched, Ramp) and sched.step == ONE:
            return Member(DecSegment(bound, seg.attained), Ramp(add(sched.base, by), ONE))
        raise NotRepresentable("infinite rows need a constant or unit-ramp schedule")
    n = _levels(row, x)
    stages = [add(row.fact_stage(x, i), by) for i in range(n)]
    if stages:
        stages = [stages[0]] + stages
    return Member(DecSegment(ordinal(len(stages))), Listed(tuple(stages)))


def complement_matrix(m: OmegaChangeMatrix) -> OmegaChangeMatrix:
    """A matrix with one more row computing ``1 - eval_matrix_diff(m, x)``.

    The new top row holds every element at levels 0 and 1 (stages 0 and 1),
    so its reset value for the next row is ``1 - c``.  Each old row moves
    down one place with level 0 doubled, which flips the parity of its
    greatest index.
    """
    top = SeqSpec(OMEGA, DECREASING, tuple(Member(DecSegment(2), Listed((0, 1))) for _ in range(m.size)))
    rows = [top]
    for row in m.rows:
        rows.append(SeqSpec(OMEGA, DECREASING, tuple(_delayed(row, x, 2) for x in range(m.size))))
    tables = [{1: 1 - m.c}]
    for j in range(m.height):
        tables.append({i + 1: 1 - v for i, v in m.tables[j]})
    return OmegaChangeMatrix(tuple(rows), tuple(tables), m.c)


@dataclass(frozen=True)
class Diagonalization:
    values: tuple
    witness: OmegaChangeMatrix
    differs_at: tuple


def diagonalize(corpus) -> Diagonalization:
    """``Q(x) = 1 - eval(M_x, x)`` with a one-row-taller matrix realizing it.

    ``differs_at[i]`` is a probe where ``Q`` and matrix ``i`` disagree
    (always ``i`` itself, when the construction works).
    """
    corpus = list(corpus)
    diag = diagonal_matrix(corpus)
    witness = complement_matrix(diag)
    values = tuple(eval_matrix_diff(witness, x) for x in range(len(corpus)))
    differs = []
    for i, mi in enumerate(corpus):
        hit = next((x for x in range(len(corpus)) if eval_matrix_diff(mi, x) != values[x]), None)
        differs.append(hit)
    return Diagonalization(values, witness, tuple(differs))


# ---------------------------------------------------------------------------
# coproducts over well-order codes

@dataclass(frozen=True)
class CoproductEntry:
    """One indexed member: a code and a complementary pair of sequences."""

    code: object
    seq: SeqSpec
    dual: SeqSpec


def coproduct_index(i: int, x: int, size: int) -> int:
    return i * size + x


def pwo_coproduct_dec(family) -> tuple:
    """Decreasing pair over the product universe ``i * size + x``.

    ``Q`` keeps ``P_i`` where the code is a well-order (facts no earlier
    than the reveal stage) and is empty elsewhere.  ``Q_dual`` has the whole
    universe at level 0, the well-order indices at level 1 and the dual
    sequence shifted up by two above that.
    """
    family = list(family)
    if not family:
        raise ValueError("empty family")
    length, size = family[0].seq.length, family[0].seq.size
    if length < OMEGA:
        raise ValueError("the length must be infinite")
    for e in family:
        for seq in (e.seq, e.dual):
            if seq.direction != DECREASING or seq.length != length or seq.size != size:
                raise ValueError("every pair must be decreasing with a common length and universe")
    q, q_dual = [], []
    for e in family:
        wo = isinstance(e.code, WellOrder)
        for x in range(size):
            if wo:
                r = e.code.revealed_at
                m = e.seq.members[x]
                q.append(Member(m.segment, Floor(m.schedule, r)))
                d = e.dual.members[x]
                seg = DecSegment(add(ordinal(2), d.segment.bound), d.segment.attained)
                q_dual.append(Member(seg, Shift((ZERO, r), Floor(d.schedule, r))))
            else:
                q.append(Member(DecSegment(ZERO), Constant(ZERO)))
                q_dual.append(Member(DecSegment(ONE), Constant(ZERO)))
    return SeqSpec(length, DECREASING, tuple(q)), SeqSpec(length, DECREASING, tuple(q_dual))
