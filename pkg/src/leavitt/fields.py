"""Exact coefficient fields: the rationals and prime fields.

Rationals are :class:`fractions.Fraction` values; elements of F_p are
:class:`Residue` values. Both support the ordinary arithmetic operators,
so code working with coefficients never has to branch on the field.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldError, ParseError


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Residue:
    """An element of the prime field F_p, stored as an int in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise FieldError(f"mixing F_{self.p} and F_{other.p}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise FieldError(f"{other} has no image in F_{self.p}")
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


_SCALAR_RE = re.compile(r"\s*([+-]?)\s*(\d+)(?:\s*/\s*(\d+))?\s*$")


class Field:
    """The field Q (``characteristic == 0``) or F_p."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        characteristic = int(characteristic)
        if characteristic != 0 and not is_prime(characteristic):
            raise FieldError(
                f"characteristic {characteristic} is not 0 or a prime", code="NON_PRIME_CHAR"
            )
        self.characteristic = characteristic

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"F_{self.characteristic}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return f"Field({self.characteristic})"

    def __call__(self, value=0):
        """Coerce an int, Fraction, Residue or scalar literal into this field."""
        if isinstance(value, str):
            return self.parse(value)
        p = self.characteristic
        if p == 0:
            if isinstance(value, Residue):
                raise FieldError("cannot lift a residue to Q")
            return Fraction(value)
        if isinstance(value, Residue):
            if value.p != p:
                raise FieldError(f"mixing F_{p} and F_{value.p}")
            return value
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"{value} has no image in F_{p}")
            return Residue(value.numerator * pow(value.denominator, -1, p), p)
        return Residue(int(value), p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    # explicit operations mirror the operators, for callers that prefer them
    def add(self, a, b):
        return self(a) + self(b)

    def sub(self, a, b):
        return self(a) - self(b)

    def mul(self, a, b):
        return self(a) * self(b)

    def neg(self, a):
        return -self(a)

    def inv(self, a):
        a = self(a)
        if not a:
            raise ZeroDivisionError("division by zero")
        if self.characteristic == 0:
            return 1 / a
        return a.inverse()

    def div(self, a, b):
        return self(a) * self.inv(b)

    def parse(self, text: str):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ParseError(f"bad scalar literal {text!r}")
        sign, num, den = m.groups()
        value = Fraction(int(num), 1)
        if den is not None:
            if int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            value = Fraction(int(num), int(den))
        if sign == "-":
            value = -value
        return self(value)

    def format(self, value) -> str:
        value = self(value)
        if self.characteristic:
            return str(value.value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"


def _index_key(key):
    return str(key)


def solve_exact(columns, target, field: Field):
    """Find coefficients c with ``sum(c[i] * columns[i]) == target``.

    ``columns`` and ``target`` are finitely supported vectors given as
    mappings index -> scalar. Elimination is exact and pivots on the first
    nonzero entry in index order, so the returned witness is reproducible.
    Returns the coefficient list, or None when the system is inconsistent.
    """
    ncols = len(columns)
    indices = set(target)
    for col in columns:
        indices.update(col)
    order = sorted(indices, key=_index_key)
    zero = field.zero
    rows = []
    for idx in order:
        row = [field(col.get(idx, 0)) for col in columns]
        row.append(field(target.get(idx, 0)))
        rows.append(row)

    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break

    for i in range(r, len(rows)):
        if rows[i][ncols]:
            return None
    solution = [zero] * ncols
    for i, c in enumerate(pivots):
        solution[c] = rows[i][ncols]
    return solution
