"""Brute-force reference implementations used to cross-check the library.

Nothing here reuses the library's evaluators.  The ordinal oracle stores
ordinals below ``w^(w^w)`` as coefficient maps keyed by exponent
polynomials and applies the textbook addition and multiplication rules.
"""

from __future__ import annotations

from functools import total_ordering

from .ordinals import OMEGA, Ordinal, ordinal

__all__ = [
    "Poly",
    "BigOrd",
    "to_oracle",
    "from_oracle",
    "nested_diff_inc",
    "nested_diff_dec",
    "union_diff_inc",
    "union_diff_dec",
    "brute_min",
    "brute_count",
    "matrix_value_oracle",
    "coproduct_oracle",
    "nested_parity",
    "Membership",
    "dec_probe_indices",
]


def _strip(coeffs: tuple) -> tuple:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@total_ordering
class Poly:
    """An ordinal below ``w^w``: ``coeffs[k]`` is the coefficient of ``w^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _strip(coeffs)

    @classmethod
    def nat(cls, n: int) -> "Poly":
        return cls((n,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _key(self):
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        if not other.coeffs:
            return self
        d = other.degree
        out = list(other.coeffs)
        if d < len(self.coeffs):
            out[d] += self.coeffs[d]
            out[d + 1:] = self.coeffs[d + 1:]
        return Poly(out)

    def __repr__(self):
        return f"Poly({self.coeffs})"


@total_ordering
class BigOrd:
    """An ordinal below ``w^(w^w)`` as ``{exponent Poly: coefficient}``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def nat(cls, n: int) -> "BigOrd":
        return cls({Poly(): n})

    def _sorted(self):
        return sorted(self.terms.items(), key=lambda p: p[0], reverse=True)

    def __eq__(self, other):
        return isinstance(other, BigOrd) and self.terms == other.terms

    def __lt__(self, other):
        a, b = self._sorted(), other._sorted()
        for (ea, ca), (eb, cb) in zip(a, b):
            if ea != eb:
                return ea < eb
            if ca != cb:
                return ca < cb
        return len(a) < len(b)

    def __hash__(self):
        return hash(tuple(self._sorted()))

    def lead(self) -> Poly:
        return max(self.terms)

    def __add__(self, other: "BigOrd") -> "BigOrd":
        if not other.terms:
            return self
        d = other.lead()
        out = {e: c for e, c in self.terms.items() if d < e}
        out[d] = self.terms.get(d, 0)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return BigOrd(out)

    def __mul__(self, other: "BigOrd") -> "BigOrd":
        if not self.terms or not other.terms:
            return BigOrd()
        lead = self.lead()
        total = BigOrd()
        for e, c in other._sorted():
            if e.coeffs:
                piece = BigOrd({lead + e: c})
            else:
                piece = BigOrd({k: v for k, v in self.terms.items()})
                piece.terms[lead] = self.terms[lead] * c
            total = total + piece
        return total

    def __repr__(self):
        return f"BigOrd({dict(self._sorted())})"


def _poly_of(o: Ordinal) -> Poly:
    coeffs: dict = {}
    for e, c in o.terms:
        if not e.is_finite:
            raise ValueError(f"exponent {e} too large for the oracle")
        coeffs[int(e)] = c
    size = max(coeffs, default=-1) + 1
    return Poly(tuple(coeffs.get(k, 0) for k in range(size)))


def to_oracle(o) -> BigOrd:
    o = ordinal(o)
    return BigOrd({_poly_of(e): c for e, c in o.terms})


def _ord_of_poly(p: Poly) -> Ordinal:
    from .ordinals import add, mul, omega_pow

    total = ordinal(0)
    for k in range(len(p.coeffs) - 1, -1, -1):
        if p.coeffs[k]:
            total = add(total, mul(omega_pow(k), p.coeffs[k]))
    return total


def from_oracle(b: BigOrd) -> Ordinal:
    from .ordinals import add, mul, omega_pow

    total = ordinal(0)
    for e, c in b._sorted():
        total = add(total, mul(omega_pow(_ord_of_poly(e)), c))
    return total


# ---------------------------------------------------------------------------
# difference operators by nested set differences

def nested_diff_inc(sets) -> frozenset:
    """``A_n - (A_(n-1) - (... - (A_1 - A_0)))`` for ``sets = [A_0, ..., A_n]``."""
    acc: frozenset = frozenset()
    for s in sets:
        acc = frozenset(s) - acc
    return acc


def nested_diff_dec(sets) -> frozenset:
    """``B_0 - (B_1 - (... - (B_(n-1) - B_n)))`` for ``sets = [B_0, ..., B_n]``."""
    acc: frozenset = frozenset()
    for s in reversed(list(sets)):
        acc = frozenset(s) - acc
    return acc


def nested_parity(n) -> int:
    """Parity read off the constant term of the normal form."""
    terms = ordinal(n).terms
    if terms and terms[-1][0].is_zero:
        return terms[-1][1] % 2
    return 0


def union_diff_inc(length, indices, member) -> frozenset:
    """Union over probe indices ``xi`` of opposite parity to ``length`` of
    ``A_xi`` minus every earlier probe ``A_gamma``.

    ``member(x, xi)`` answers membership; the probes must include each
    element's least index for the result to be exact.
    """
    length = ordinal(length)
    indices = sorted(i for i in {ordinal(i) for i in indices} if i < length)
    out = set()
    universe = member.universe
    for xi in indices:
        if nested_parity(xi) == nested_parity(length):
            continue
        for x in universe:
            if member(x, xi) and not any(member(x, g) for g in indices if g < xi):
                out.add(x)
    return frozenset(out)


def union_diff_dec(length, indices, member) -> frozenset:
    """Union over even probe indices ``xi`` of ``B_xi - B_(xi+1)``."""
    from .ordinals import add

    length = ordinal(length)
    out = set()
    for xi in sorted({ordinal(i) for i in indices}):
        if not xi < length or nested_parity(xi) != 0:
            continue
        nxt = add(xi, 1)
        for x in member.universe:
            if member(x, xi) and not (nxt < length and member(x, nxt)):
                out.add(x)
    return frozenset(out)


class Membership:
    """Callable membership oracle over a segment-encoded sequence."""

    def __init__(self, seq):
        self.seq = seq
        self.universe = range(seq.size)

    def __call__(self, x, xi):
        return self.seq.contains(x, xi)


# ---------------------------------------------------------------------------
# least numbers, counts, matrices, coproducts

def brute_min(elements):
    best = None
    for e in elements:
        if best is None or e < best:
            best = e
    return best


def brute_count(elements) -> int:
    n = 0
    for _ in elements:
        n += 1
    return n


def matrix_value_oracle(m, x: int, depth: int = 64) -> int:
    """Evaluate the row recursion by scanning levels ``0..depth-1`` of every row.

    A row containing ``x`` at every scanned level counts as infinite, so
    ``depth`` must exceed every finite row length.
    """
    v = m.c
    for k, row in enumerate(m.rows):
        levels = [n for n in range(depth) if row.contains(x, n)]
        if len(levels) == depth:
            return v
        if levels:
            v = m.a(k, max(levels))
    return v


def coproduct_oracle(family, i: int, x: int) -> int:
    """Membership of ``(i, x)`` in the coproduct: a well-order code and ``x`` in the i-th set."""
    from .staged_sets import WellOrder

    e = family[i]
    if not isinstance(e.code, WellOrder):
        return 0
    seq = e.seq
    member = Membership(seq)
    idx = dec_probe_indices(seq)
    return int(x in union_diff_dec(seq.length, idx, member))


def dec_probe_indices(seq) -> list:
    from .ordinals import add

    idx = {ordinal(n) for n in range(4)}
    for m in seq.members:
        b = m.segment.bound
        idx.update({b, add(b, 1)})
        if b.is_successor:
            idx.add(b.pred())
    return sorted(i for i in idx if i < seq.length)

