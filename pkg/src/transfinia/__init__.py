"""Transfinite difference hierarchies simulated on finite universes with ordinal stages."""

from .ordinals import OMEGA, ONE, ZERO, Ordinal, add, compare, mul, ordinal, parity, parse
from .staged_sets import NEVER, CoStagedSet, SeqSpec, StagedSet, WellOrder, NON_WO
from .diff_core import UNDEFINED, HybridSpec, IndexValues, eval_diff, eval_diff_dec, eval_diff_inc, eval_hybrid

__version__ = "0.1.0"

__all__ = [
    "OMEGA",
    "ONE",
    "ZERO",
    "Ordinal",
    "add",
    "compare",
    "mul",
    "ordinal",
    "parity",
    "parse",
    "NEVER",
    "CoStagedSet",
    "SeqSpec",
    "StagedSet",
    "WellOrder",
    "NON_WO",
    "UNDEFINED",
    "HybridSpec",
    "IndexValues",
    "eval_diff",
    "eval_diff_dec",
    "eval_diff_inc",
    "eval_hybrid",
]
