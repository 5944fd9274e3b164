"""Difference operators over monotone ordinal-length sequences.

Set-level operators read each element's segment directly:

* increasing: ``x`` is in the difference iff the least index ``g`` with
  ``x in A_g`` exists and ``parity(g) != parity(length)``;
* decreasing: ``x`` is in the difference iff the greatest index ``g`` with
  ``x in B_g`` exists and ``parity(g) == 0``.

Hybrid operators return a per-index value at that least (greatest) index and
a default ``c`` otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .ordinals import ONE, ZERO, Ordinal, add, ordinal, parity
from .staged_sets import (
    DECREASING,
    INCREASING,
    NEVER,
    DecSegment,
    Listed,
    Member,
    SeqSpec,
    stage_max,
    validate_monotone,
)

__all__ = [
    "UNDEFINED",
    "IndexValues",
    "HybridSpec",
    "NotComplementary",
    "InvalidSpec",
    "eval_diff_inc",
    "eval_diff_dec",
    "eval_diff",
    "eval_hybrid",
    "delta_normalize",
]


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNDEFINED"

    def __reduce__(self):
        return (_Undefined, ())


UNDEFINED = _Undefined()


class NotComplementary(ValueError):
    pass


class InvalidSpec(ValueError):
    pass


@dataclass(frozen=True)
class IndexValues:
    """Per-index value tables ``f_xi`` on a finite universe.

    ``explicit`` overrides individual indices.  Other indices fall back to the
    ``even``/``odd`` tables by index parity, or to the index itself when
    ``by_index`` is set.
    """

    size: int
    explicit: tuple = ()
    even: tuple | None = None
    odd: tuple | None = None
    by_index: bool = False

    def __post_init__(self):
        object.__setattr__(
            self,
            "explicit",
            tuple(sorted(((ordinal(i), tuple(v)) for i, v in self.explicit), key=lambda p: p[0])),
        )
        for table in (self.even, self.odd):
            if table is not None and len(table) != self.size:
                raise InvalidSpec("value tables must cover the whole universe")
        if self.even is not None:
            object.__setattr__(self, "even", tuple(self.even))
        if self.odd is not None:
            object.__setattr__(self, "odd", tuple(self.odd))
        for _, table in self.explicit:
            if len(table) != self.size:
                raise InvalidSpec("value tables must cover the whole universe")
        if not self.by_index and (self.even is None or self.odd is None):
            raise InvalidSpec("default tables for both parities are required")

    @classmethod
    def constant_by_parity(cls, size: int, even_value, odd_value, explicit=()) -> "IndexValues":
        return cls(size, explicit, (even_value,) * size, (odd_value,) * size)

    @classmethod
    def characteristic(cls, size: int, direction: str, length=None) -> "IndexValues":
        """The 0/1 tables that turn a hybrid into the set-level operator."""
        if direction == DECREASING:
            return cls.constant_by_parity(size, 1, 0)
        eta_par = parity(ordinal(length))
        return cls.constant_by_parity(size, int(eta_par != 0), int(eta_par != 1))

    @classmethod
    def index_valued(cls, size: int) -> "IndexValues":
        return cls(size, by_index=True)

    def table(self, xi) -> tuple:
        xi = ordinal(xi)
        for i, table in self.explicit:
            if i == xi:
                return table
        if self.by_index:
            value = int(xi) if xi.is_finite else xi
            return (value,) * self.size
        return self.even if parity(xi) == 0 else self.odd

    def value(self, xi, x: int):
        return self.table(xi)[x]

    def explicit_indices(self) -> list:
        return [i for i, _ in self.explicit]


@dataclass(frozen=True)
class HybridSpec:
    c: object
    seq: SeqSpec
    values: IndexValues = field(default=None)

    def __post_init__(self):
        if self.values is None:
            object.__setattr__(
                self,
                "values",
                IndexValues.characteristic(self.seq.size, self.seq.direction, self.seq.length),
            )
        if self.values.size != self.seq.size:
            raise InvalidSpec("value tables and sequence disagree on the universe")

    @property
    def direction(self) -> str:
        return self.seq.direction


def eval_diff_inc(seq: SeqSpec) -> frozenset:
    if seq.direction != INCREASING:
        raise InvalidSpec("expected an increasing sequence")
    eta_par = parity(seq.length)
    result = set()
    for x in range(seq.size):
        g = seq.start(x)
        if g is not None and parity(g) != eta_par:
            result.add(x)
    return frozenset(result)


def eval_diff_dec(seq: SeqSpec) -> frozenset:
    if seq.direction != DECREASING:
        raise InvalidSpec("expected a decreasing sequence")
    result = set()
    for x in range(seq.size):
        g = seq.max_index(x)
        if g is not None and parity(g) == 0:
            result.add(x)
    return frozenset(result)


def eval_diff(seq: SeqSpec) -> frozenset:
    return eval_diff_inc(seq) if seq.direction == INCREASING else eval_diff_dec(seq)


def eval_hybrid(spec: HybridSpec, direction: str | None = None) -> tuple:
    """Per-element values of the hybrid operator."""
    seq = spec.seq
    if direction is not None and direction != seq.direction:
        raise InvalidSpec(f"spec is {seq.direction}, asked for {direction}")
    out = []
    for x in range(seq.size):
        g = seq.start(x) if seq.direction == INCREASING else seq.max_index(x)
        out.append(spec.c if g is None else spec.values.value(g, x))
    return tuple(out)


def delta_normalize(a: SeqSpec, b: SeqSpec) -> SeqSpec:
    """Intersect shifted levels so no element survives every level.

    ``a`` and ``b`` are decreasing length-omega sequences whose differences
    are complementary.  The result ``P`` has ``P_0 = A_0`` and
    ``P_n = A_n & B_(n-1)``: conceptually ``B`` is padded with two
    universe levels in front (which keeps its difference) and then
    ``P_n = A_n & B_(n+1)``.  An element then lies in only finitely many
    ``P_n`` and the difference of ``P`` equals that of ``A``.
    """
    from .ordinals import OMEGA

    for name, seq in (("first", a), ("second", b)):
        if seq.direction != DECREASING or seq.length != OMEGA:
            raise InvalidSpec(f"{name} argument must be a decreasing length-omega sequence")
        problems = validate_monotone(seq)
        if problems:
            raise InvalidSpec(f"{name} argument: {problems[0]}")
    if a.size != b.size:
        raise InvalidSpec("universes differ")
    da, db = eval_diff_dec(a), eval_diff_dec(b)
    overlap = [x for x in range(a.size) if (x in da) == (x in db)]
    if overlap:
        raise NotComplementary(f"differences agree on element {overlap[0]}")
    members = []
    for x in range(a.size):
        count_a = a.otype(x)
        count_b = add(b.otype(x), ONE)
        count = min(count_a, count_b)
        if not count.is_finite:
            raise AssertionError("complementary inputs cannot both survive every level")
        stages = []
        for n in range(int(count)):
            t = a.fact_stage(x, n)
            if n >= 1:
                t = stage_max(t, b.fact_stage(x, n - 1))
            stages.append(t)
        members.append(Member(DecSegment(ordinal(int(count))), Listed(tuple(stages))))
    return SeqSpec(OMEGA, DECREASING, tuple(members))
