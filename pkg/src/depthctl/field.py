"""Exact coefficient fields: the rationals and prime fields GF(p).

Polynomial code works on *raw* coefficients (``int`` / ``Fraction`` for QQ,
``int`` in ``[0, p)`` for GF(p)) and asks the field to normalize them;
:class:`FieldElem` is the checked, user-facing wrapper.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import DivisionByZero, InputError, MixedFields


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """``p == 0`` means QQ, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not (2 <= self.p < 2**31 and is_prime(self.p)):
            raise InputError(f"GF({self.p}): modulus must be a prime 2 <= p < 2^31")

    @classmethod
    def QQ(cls):
        return cls(0)

    @classmethod
    def GF(cls, p):
        return cls(p)

    @property
    def is_rational(self):
        return self.p == 0

    def __str__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    def __call__(self, value):
        """Coerce an int, Fraction or 'a/b' string into a raw coefficient."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise MixedFields(f"{value.field} element used in {self}")
            return value.value
        if isinstance(value, str):
            value = Fraction(value)
        if self.p:
            if isinstance(value, Fraction):
                if value.denominator % self.p == 0:
                    raise DivisionByZero(f"denominator vanishes in {self}")
                return value.numerator * pow(value.denominator, -1, self.p) % self.p
            return int(value) % self.p
        value = Fraction(value)
        return value.numerator if value.denominator == 1 else value

    def norm(self, v):
        if self.p:
            return v % self.p
        if isinstance(v, Fraction) and v.denominator == 1:
            return v.numerator
        return v

    def inv(self, v):
        if not v:
            raise DivisionByZero("inverse of zero")
        if self.p:
            return pow(v, -1, self.p)
        return self.norm(Fraction(1) / v)

    def neg(self, v):
        return (-v) % self.p if self.p else -v

    def elem(self, value):
        return FieldElem(self, self(value))

    def to_str(self, v):
        v = self.norm(v)
        if isinstance(v, Fraction):
            return f"{v.numerator}/{v.denominator}"
        return str(v)


@dataclass(frozen=True)
class FieldElem:
    field: Field
    value: object

    def _check(self, other):
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise MixedFields(f"{self.field} vs {other.field}")
            return other.value
        return self.field(other)

    def __add__(self, other):
        return FieldElem(self.field, self.field.norm(self.value + self._check(other)))

    def __sub__(self, other):
        return FieldElem(self.field, self.field.norm(self.value - self._check(other)))

    def __mul__(self, other):
        return FieldElem(self.field, self.field.norm(self.value * self._check(other)))

    def __truediv__(self, other):
        b = self._check(other)
        return FieldElem(self.field, self.field.norm(self.value * self.field.inv(b)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return bool(self.value)

    def __str__(self):
        return self.field.to_str(self.value)

    __repr__ = __str__


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Exact ``a op b`` for ``op`` in add/sub/mul/div."""
    if a.field != b.field:
        raise MixedFields(f"{a.field} vs {b.field}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")
