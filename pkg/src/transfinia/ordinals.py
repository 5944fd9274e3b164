"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of ``(exponent, coefficient)`` terms with strictly
descending exponents.  Exponents are ordinals themselves.  Values are
immutable and hashable; finite ordinals hash and compare like ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = [
    "Ordinal",
    "OrdinalLike",
    "ParseError",
    "NotALimit",
    "Zero",
    "Successor",
    "Limit",
    "ZERO",
    "ONE",
    "OMEGA",
    "ordinal",
    "omega_pow",
    "compare",
    "add",
    "mul",
    "sub",
    "classify",
    "fundamental_seq",
    "parity",
    "parse",
    "to_json",
    "from_json",
]


class NotALimit(ValueError):
    """Raised when a fundamental sequence is requested for a non-limit."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str | None = None, position: int = 0):
        self.text = text
        self.position = position
        if text is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} at position {position}: {text!r}")


class Ordinal:
    """An ordinal below epsilon_0.

    ``terms`` is a tuple of ``(Ordinal, int)`` pairs.  Construct values with
    :func:`ordinal`, :func:`omega_pow`, :func:`parse` or arithmetic rather
    than calling the constructor with raw terms.
    """

    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, terms=()):
        terms = tuple(terms)
        prev = None
        for exp, coeff in terms:
            if not isinstance(exp, Ordinal):
                raise TypeError("exponents must be Ordinals")
            if not isinstance(coeff, int) or isinstance(coeff, bool) or coeff < 1:
                raise ValueError(f"coefficient must be a positive int, got {coeff!r}")
            if prev is not None and not exp._key < prev._key:
                raise ValueError("exponents must be strictly descending")
            prev = exp
        self._init(terms)

    def _init(self, terms):
        self.terms = terms
        self._key = tuple((e._key, c) for e, c in terms)
        if not terms:
            self._hash = 0
        elif len(terms) == 1 and not terms[0][0].terms:
            self._hash = hash(terms[0][1])
        else:
            self._hash = hash(self._key)

    @classmethod
    def _raw(cls, terms) -> "Ordinal":
        obj = cls.__new__(cls)
        obj._init(tuple(terms))
        return obj

    # comparisons -----------------------------------------------------
    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key == other._key

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __lt__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key < other._key

    def __le__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key <= other._key

    def __gt__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key > other._key

    def __ge__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self._key >= other._key

    def __hash__(self):
        return self._hash

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else add(self, other)

    def __radd__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else add(other, self)

    def __mul__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else mul(self, other)

    def __rmul__(self, other):
        other = _coerce_or_none(other)
        return NotImplemented if other is None else mul(other, self)

    # inspection ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    __index__ = __int__

    def finite_part(self) -> int:
        """The ``n`` in ``self = lambda + n`` with lambda zero or a limit."""
        if self.terms and not self.terms[-1][0].terms:
            return self.terms[-1][1]
        return 0

    def pred(self) -> "Ordinal":
        if not self.is_successor:
            raise ValueError(f"{self} has no predecessor")
        *head, (exp, coeff) = self.terms
        if coeff > 1:
            head.append((exp, coeff - 1))
        return Ordinal._raw(head)

    def succ(self) -> "Ordinal":
        return add(self, ONE)

    def __repr__(self):
        return f"Ordinal({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, coeff in self.terms:
            if not exp.terms:
                parts.append(str(coeff))
                continue
            if exp == ONE:
                base = "w"
            elif exp.is_finite or (len(exp.terms) == 1 and exp.terms[0][1] == 1 and exp.terms[0][0] == ONE):
                base = f"w^{exp}"
            else:
                base = f"w^({exp})"
            parts.append(base if coeff == 1 else f"{base}*{coeff}")
        return "+".join(parts)


OrdinalLike = Union[Ordinal, int]

_FINITE_CACHE: dict[int, Ordinal] = {}


def ordinal(value: OrdinalLike | str) -> Ordinal:
    """Coerce an int, string expression or Ordinal to an Ordinal."""
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not an ordinal")
    if isinstance(value, int):
        if value < 0:
            raise ValueError("ordinals are non-negative")
        cached = _FINITE_CACHE.get(value)
        if cached is None:
            cached = Ordinal._raw(((ZERO, value),)) if value else ZERO
            if value < 4096:
                _FINITE_CACHE[value] = cached
        return cached
    if isinstance(value, str):
        return parse(value)
    raise TypeError(f"cannot interpret {value!r} as an ordinal")


def _coerce_or_none(value):
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return ordinal(value)
    return None


ZERO = Ordinal._raw(())
ONE = Ordinal._raw(((ZERO, 1),))
OMEGA = Ordinal._raw(((ONE, 1),))


def omega_pow(exponent: OrdinalLike, coeff: int = 1) -> Ordinal:
    """``w^exponent * coeff``."""
    if coeff == 0:
        return ZERO
    return Ordinal((((ordinal(exponent)), coeff),))


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Successor:
    pred: Ordinal


@dataclass(frozen=True)
class Limit:
    pass


def compare(a: OrdinalLike, b: OrdinalLike) -> str:
    """Return ``"LT"``, ``"EQ"`` or ``"GT"``."""
    ka, kb = ordinal(a)._key, ordinal(b)._key
    if ka == kb:
        return "EQ"
    return "LT" if ka < kb else "GT"


def add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = ordinal(a), ordinal(b)
    if not b.terms:
        return a
    if not a.terms:
        return b
    lead_exp, lead_coeff = b.terms[0]
    lead_key = lead_exp._key
    head = []
    for exp, coeff in a.terms:
        if exp._key > lead_key:
            head.append((exp, coeff))
        elif exp._key == lead_key:
            lead_coeff += coeff
            break
        else:
            break
    head.append((lead_exp, lead_coeff))
    head.extend(b.terms[1:])
    return Ordinal._raw(head)


def mul(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = ordinal(a), ordinal(b)
    if not a.terms or not b.terms:
        return ZERO
    a_exp, a_coeff = a.terms[0]
    result = ZERO
    for exp, coeff in b.terms:
        if exp.terms:
            part = Ordinal._raw(((add(a_exp, exp), coeff),))
        else:
            part = Ordinal._raw(((a_exp, a_coeff * coeff),) + a.terms[1:])
        result = add(result, part)
    return result


def sub(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    """Left subtraction: the unique ``d`` with ``b + d == a``; needs ``b <= a``."""
    a, b = ordinal(a), ordinal(b)
    if b > a:
        raise ValueError(f"cannot subtract {b} from smaller {a}")
    i = 0
    while i < len(b.terms) and b.terms[i] == a.terms[i]:
        i += 1
    if i == len(b.terms):
        return Ordinal._raw(a.terms[i:])
    exp_b, coeff_b = b.terms[i]
    exp_a, coeff_a = a.terms[i]
    if exp_b == exp_a:
        return Ordinal._raw(((exp_a, coeff_a - coeff_b),) + a.terms[i + 1:])
    return Ordinal._raw(a.terms[i:])


def classify(a: OrdinalLike):
    a = ordinal(a)
    if not a.terms:
        return Zero()
    if a.is_successor:
        return Successor(a.pred())
    return Limit()


def fundamental_seq(a: OrdinalLike, k: int) -> Ordinal:
    """The ``k``-th element of the canonical sequence converging to limit ``a``."""
    a = ordinal(a)
    if not a.is_limit:
        raise NotALimit(f"{a} is not a limit ordinal")
    if k < 0:
        raise ValueError("k must be a natural number")
    *head, (exp, coeff) = a.terms
    if coeff > 1:
        head.append((exp, coeff - 1))
    prefix = Ordinal._raw(head)
    if exp.is_successor:
        tail = mul(omega_pow(exp.pred()), k)
    else:
        tail = omega_pow(fundamental_seq(exp, k))
    return add(prefix, tail)


def parity(a: OrdinalLike) -> int:
    return ordinal(a).finite_part() % 2


# serialization -------------------------------------------------------

def to_json(a: OrdinalLike):
    """Finite ordinals become ints; others a list of ``[exponent, coeff]``."""
    a = ordinal(a)
    if a.is_finite:
        return int(a)
    return [[to_json(exp), coeff] for exp, coeff in a.terms]


def from_json(data) -> Ordinal:
    if isinstance(data, bool):
        raise ParseError(f"not an ordinal term: {data!r}")
    if isinstance(data, int):
        if data < 0:
            raise ParseError(f"negative ordinal {data}")
        return ordinal(data)
    if isinstance(data, str):
        return parse(data)
    if isinstance(data, list):
        terms = []
        for item in data:
            if not (isinstance(item, list) and len(item) == 2):
                raise ParseError(f"ordinal term must be [exponent, coeff], got {item!r}")
            terms.append((from_json(item[0]), item[1]))
        try:
            return Ordinal(terms)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed ordinal {data!r}: {exc}") from None
    raise ParseError(f"not an ordinal term: {data!r}")


# parsing ---------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Ordinal:
        value = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() == "+":
            self.pos += 1
            value = add(value, self.term())
        return value

    def term(self):
        value = self.power()
        while self.peek() in ("*", "·", "."):
            self.pos += 1
            value = mul(value, self.power())
        return value

    def power(self):
        ch = self.peek()
        if ch in ("w", "ω"):
            self.pos += 1
            if self.peek() == "^":
                self.pos += 1
                return omega_pow(self.atom())
            return OMEGA
        return self.atom()

    def atom(self):
        ch = self.peek()
        if ch.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return ordinal(int(self.text[start:self.pos]))
        if ch == "(":
            self.pos += 1
            value = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return value
        if ch in ("w", "ω"):
            return self.power()
        self.error("expected a number, 'w' or '('" if ch else "unexpected end of input")


def parse(text: str) -> Ordinal:
    """Parse expressions such as ``"w^w"``, ``"w*2+3"`` or ``"w^(w+1)*4"``."""
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    return _Parser(text).parse()
