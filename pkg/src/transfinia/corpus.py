"""Seeded and exhaustive instance generators.

Every random generator takes a :class:`random.Random`; :func:`case_rng`
derives one per case from ``(seed, suite, index)`` so cases are
independent of evaluation order.
"""

from __future__ import annotations

import itertools
import random

from .diff_core import UNDEFINED, HybridSpec, IndexValues
from .matrices import CoproductEntry, OmegaChangeMatrix, matrix_normalize
from .ordinals import OMEGA, ONE, ZERO, add, mul, omega_pow, ordinal
from .staged_sets import (
    DECREASING,
    INCREASING,
    NEVER,
    NON_WO,
    Constant,
    CoStagedSet,
    DecSegment,
    IncSegment,
    Listed,
    Member,
    Ramp,
    SeqSpec,
    StagedSet,
    Steps,
    WellOrder,
)
from .tree_system import CellDecomposition

W = OMEGA

INC_ETAS = (ordinal(1), ordinal(2), ordinal(3), W, add(W, 2), mul(W, 2))
DEC_ETAS = (ordinal(1), ordinal(2), ordinal(3), W, add(W, 1), add(W, 2), mul(W, 2), add(mul(W, 2), 1))
EMBED_ETAS = (ordinal(2), ordinal(3), ordinal(4), W, add(W, 1))
STAGE_MENU = tuple(ordinal(n) for n in range(5)) + (W,)
WIDE_STAGE_MENU = STAGE_MENU + (add(W, 1),)


def case_rng(seed, suite: str, index: int) -> random.Random:
    return random.Random(f"{seed}:{suite}:{index}")


def random_ordinal(rng: random.Random) -> "Ordinal":
    """A random normal form below ``w^w * 3``."""
    total = mul(omega_pow(W), rng.randint(0, 2))
    exps = sorted(rng.sample(range(6), rng.randint(0, 3)), reverse=True)
    for e in exps:
        total = add(total, mul(omega_pow(e), rng.randint(1, 5)))
    return total


def index_candidates(eta) -> list:
    """Interesting indices below ``eta``: small naturals and the first limits."""
    eta = ordinal(eta)
    pool = [ordinal(n) for n in range(4)]
    pool += [W, add(W, 1), add(W, 2), add(W, 3), mul(W, 2), add(mul(W, 2), 1)]
    return sorted({p for p in pool if p < eta})


def random_stage(rng: random.Random, menu=None):
    menu = menu or (tuple(ordinal(n) for n in range(8)) + (W, add(W, 3), mul(W, 2)))
    return rng.choice(menu)


# ---------------------------------------------------------------------------
# hybrid specs

def _values(rng: random.Random, size: int, eta, palette=(0, 1, 2)) -> IndexValues:
    even = tuple(rng.choice(palette) for _ in range(size))
    odd = tuple(rng.choice(palette) for _ in range(size))
    explicit = []
    for i in rng.sample(index_candidates(eta), min(2, len(index_candidates(eta)))):
        if rng.random() < 0.5:
            explicit.append((i, tuple(rng.choice(palette) for _ in range(size))))
    return IndexValues(size, tuple(explicit), even, odd)


def random_inc_member(rng: random.Random, eta) -> Member:
    eta = ordinal(eta)
    cands = index_candidates(eta)
    start = rng.choice(cands + [eta])
    if start == eta:
        return Member(IncSegment(eta), Constant(0))
    kind = rng.random()
    if kind < 0.3:
        return Member(IncSegment(start), Constant(random_stage(rng)))
    if kind < 0.5:
        return Member(IncSegment(start), Ramp(random_stage(rng), rng.randint(1, 2)))
    above = [c for c in cands if c > start]
    extra = sorted(rng.sample(above, rng.randint(0, min(3, len(above)))), reverse=True)
    indices = extra + [start]
    stages = sorted(rng.sample(range(12), len(indices)))
    return Member(IncSegment(start), Steps(tuple(zip(indices, stages))))


def random_inc_hybrid(rng: random.Random, eta, size: int) -> HybridSpec:
    members = tuple(random_inc_member(rng, eta) for _ in range(size))
    seq = SeqSpec(eta, INCREASING, members)
    c = rng.choice((0, 1, UNDEFINED))
    return HybridSpec(c, seq, _values(rng, size, eta))


def random_dec_member(rng: random.Random, eta) -> Member:
    eta = ordinal(eta)
    cands = index_candidates(eta)
    bound = rng.choice(cands + [eta])
    attained = bound < eta and rng.random() < 0.4
    seg = DecSegment(bound, attained)
    otype = seg.otype
    kind = rng.random()
    if otype.is_finite and kind < 0.4:
        stages = sorted(rng.choice(range(10)) for _ in range(int(otype)))
        return Member(seg, Listed(tuple(stages)))
    if kind < 0.7:
        return Member(seg, Ramp(random_stage(rng), rng.randint(1, 2)))
    return Member(seg, Constant(random_stage(rng)))


def random_dec_seq(rng: random.Random, eta, size: int, force_limit: bool = True) -> SeqSpec:
    members = [random_dec_member(rng, eta) for _ in range(size)]
    eta = ordinal(eta)
    if force_limit and W <= eta and size:
        x = rng.randrange(size)
        members[x] = Member(DecSegment(W), Ramp(random_stage(rng), 1))
    return SeqSpec(eta, DECREASING, tuple(members))


def random_dec_hybrid(rng: random.Random, eta, size: int) -> HybridSpec:
    seq = random_dec_seq(rng, eta, size)
    c = rng.choice((0, 1))
    return HybridSpec(c, seq, _values(rng, size, eta, (0, 1)))


def random_inc_seq(rng: random.Random, eta, size: int) -> SeqSpec:
    return SeqSpec(eta, INCREASING, tuple(random_inc_member(rng, eta) for _ in range(size)))


# ---------------------------------------------------------------------------
# finite families for exhaustive checks

def monotone_families(size: int, eta: int, direction: str):
    """Every monotone length-``eta`` family over ``size`` elements (finite ``eta``)."""
    for picks in itertools.product(range(eta + 1), repeat=size):
        if direction == INCREASING:
            members = tuple(Member(IncSegment(p), Constant(0)) for p in picks)
        else:
            members = tuple(Member(DecSegment(p), Constant(0)) for p in picks)
        yield SeqSpec(eta, direction, members)


def all_staged_sets(size: int, menu=WIDE_STAGE_MENU):
    for entry in itertools.product(tuple(menu) + (NEVER,), repeat=size):
        yield StagedSet(entry)


def all_costaged_sets(size: int, menu=WIDE_STAGE_MENU):
    for removal in itertools.product(tuple(menu) + (NEVER,), repeat=size):
        yield CoStagedSet(removal)


def random_staged_set(rng: random.Random, size: int, menu=STAGE_MENU, p_never=0.35) -> StagedSet:
    return StagedSet(tuple(NEVER if rng.random() < p_never else rng.choice(menu) for _ in range(size)))


def random_costaged_set(rng: random.Random, size: int, menu=STAGE_MENU, p_never=0.35) -> CoStagedSet:
    return CoStagedSet(tuple(NEVER if rng.random() < p_never else rng.choice(menu) for _ in range(size)))


def random_code(rng: random.Random, size: int, p_nonwo=0.15):
    if rng.random() < p_nonwo:
        return NON_WO
    ranks = list(range(size))
    rng.shuffle(ranks)
    return WellOrder(tuple(ranks), rng.choice(STAGE_MENU))


# ---------------------------------------------------------------------------
# tree systems

def cell_rows(levels: int, cells: int = 2) -> list:
    """Every cell row: a depth ``d <= levels`` and a label per occupied level."""
    rows = []
    for d in range(levels + 1):
        for labels in itertools.product(range(cells), repeat=d):
            rows.append(tuple(labels) + (None,) * (levels - d))
    return rows


def _swap_tables(rows: list, levels: int) -> list:
    """``tables[mask][i]``: index of row ``i`` after swapping labels at the levels in ``mask``."""
    where = {r: i for i, r in enumerate(rows)}
    tables = []
    for mask in range(1 << levels):
        img = []
        for r in rows:
            swapped = tuple(c if c is None or not (mask >> n) & 1 else 1 - c for n, c in enumerate(r))
            img.append(where[swapped])
        tables.append(img)
    return tables


def cell_decompositions(size: int, levels: int):
    """Cell decompositions with two cells per level up to symmetry.

    Elements are interchangeable and the two labels at each level may be
    swapped without changing any checked property, so one representative
    per orbit is produced.
    """
    rows = cell_rows(levels)
    tables = _swap_tables(rows, levels)[1:]
    for combo in itertools.combinations_with_replacement(range(len(rows)), size):
        if any(tuple(sorted(t[i] for i in combo)) < combo for t in tables):
            continue
        yield CellDecomposition(levels, tuple(rows[i] for i in combo))


# ---------------------------------------------------------------------------
# matrices

def random_row_member(rng: random.Random, p_infinite=0.2, p_empty=0.3) -> Member:
    r = rng.random()
    if r < p_empty:
        return Member(DecSegment(ZERO), Constant(0))
    if r < p_empty + p_infinite:
        if rng.random() < 0.25:
            return Member(DecSegment(W), Constant(random_stage(rng)))
        return Member(DecSegment(W), Ramp(random_stage(rng), 1))
    n = rng.randint(1, 4)
    base = random_stage(rng)
    stages = [base]
    for _ in range(n - 1):
        stages.append(add(stages[-1], rng.randint(0, 2)))
    return Member(DecSegment(n), Listed(tuple(stages)))


def random_matrix(rng: random.Random, height: int, size: int, normalize: bool = True) -> OmegaChangeMatrix:
    rows = []
    for _ in range(height):
        rows.append(SeqSpec(W, DECREASING, tuple(random_row_member(rng) for _ in range(size))))
    m = OmegaChangeMatrix(tuple(rows))
    return matrix_normalize(m) if normalize else m


# ---------------------------------------------------------------------------
# coproduct configurations

def dec_segments(eta) -> list:
    """Segment choices over a length-``eta`` decreasing sequence."""
    eta = ordinal(eta)
    out = [DecSegment(0), DecSegment(1), DecSegment(2), DecSegment(0, True)]
    out.append(DecSegment(W))
    if W < eta:
        out.append(DecSegment(W, True))
        out.append(DecSegment(add(W, 1), add(W, 1) < eta))
    return [s for s in out if s.bound <= eta and not (s.attained and not s.bound < eta)]


def segment_value(seg: DecSegment, eta) -> int:
    m = seg.max_index()
    if m is not None and not m < ordinal(eta):
        m = None
    from .ordinals import parity

    return int(m is not None and parity(m) == 0)


def local_configurations(eta) -> list:
    """Every (code, P segment, dual segment, schedule) the coproduct sees locally."""
    codes = [NON_WO, WellOrder((0,), 0), WellOrder((0,), 3)]
    segs = dec_segments(eta)
    schedules = [Constant(0), Constant(4), Ramp(1, 1)]
    out = []
    for code in codes:
        for s in segs:
            for d in segs:
                if segment_value(s, eta) == segment_value(d, eta):
                    continue
                for sched in schedules:
                    out.append((code, s, d, sched))
    return out


def coproduct_families(eta, indices: int = 3, size: int = 4):
    """Pack every local configuration into families of ``indices`` x ``size``.

    Each index carries one code, so configurations are grouped by code.
    """
    eta = ordinal(eta)
    by_code: dict = {}
    for code, s, d, sched in local_configurations(eta):
        by_code.setdefault(repr(code), (code, []))[1].append((s, d, sched))
    entries = []
    for _, (code, items) in sorted(by_code.items()):
        for k in range(0, len(items), size):
            chunk = items[k:k + size]
            while len(chunk) < size:
                chunk.append(chunk[-1])
            seq = SeqSpec(eta, DECREASING, tuple(Member(s, sched) for s, _, sched in chunk))
            dual = SeqSpec(eta, DECREASING, tuple(Member(d, sched) for _, d, sched in chunk))
            entries.append(CoproductEntry(code, seq, dual))
    for k in range(0, len(entries), indices):
        yield entries[k:k + indices]
