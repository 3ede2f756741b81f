"""Sparse multivariate polynomials over :class:`~depthctl.field.Field`.

A monomial is a tuple of exponents; a polynomial is a dict ``{monomial:
coefficient}`` with no zero entries, wrapped in :class:`Poly`. Term order is
only imposed when somebody asks for it (leading terms, printing), through a
:class:`MonomialOrder` whose ``key`` maps a monomial to a plain tuple that
Python compares in the right way.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegreeOverflow, InputError, LengthMismatch, MixedRings
from .field import Field

MAX_EXPONENT = 2**16


# -- monomials ---------------------------------------------------------------

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    """``a / b``; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


# -- orders ------------------------------------------------------------------

class MonomialOrder:
    """Base class; subclasses implement ``_key``. Keys are memoized."""

    name = "?"

    def __init__(self):
        self._memo = {}

    def key(self, m):
        k = self._memo.get(m)
        if k is None:
            k = self._memo[m] = self._key(m)
        return k

    def __repr__(self):
        return f"<{self.name}>"


class Lex(MonomialOrder):
    name = "lex"

    def _key(self, m):
        return m


class Grevlex(MonomialOrder):
    name = "grevlex"

    def _key(self, m):
        return (sum(m),) + tuple(-e for e in reversed(m))


class BlockOrder(MonomialOrder):
    """Grevlex inside each block, blocks compared left to right.

    ``blocks`` is a sequence of index lists partitioning the variables; the
    first block is eliminated first.
    """

    name = "block"

    def __init__(self, blocks):
        super().__init__()
        self.blocks = tuple(tuple(b) for b in blocks)

    def _key(self, m):
        out = ()
        for b in self.blocks:
            part = [m[i] for i in b]
            out += (sum(part),) + tuple(-e for e in reversed(part))
        return out


class ElimLast(MonomialOrder):
    """The last variable dominates; grevlex on the rest breaks ties."""

    name = "elim-last"

    def _key(self, m):
        rest = m[:-1]
        return (m[-1], sum(rest)) + tuple(-e for e in reversed(rest))


@lru_cache(maxsize=None)
def _named_order(name):
    if name == "grevlex":
        return Grevlex()
    if name == "lex":
        return Lex()
    if name == "elim-last":
        return ElimLast()
    raise InputError(f"unknown monomial order {name!r}")


def monomial_cmp(order, m1, m2):
    """Three-way comparison: -1, 0 or 1."""
    if len(m1) != len(m2):
        raise LengthMismatch(f"monomials of length {len(m1)} and {len(m2)}")
    if isinstance(order, str):
        order = _named_order(order)
    k1, k2 = order.key(tuple(m1)), order.key(tuple(m2))
    return (k1 > k2) - (k1 < k2)


# -- rings -------------------------------------------------------------------

@dataclass(frozen=True)
class Ring:
    field: Field
    vars: tuple
    order_name: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(self.vars))
        if not self.vars:
            raise InputError("a ring needs at least one variable")
        if len(set(self.vars)) != len(self.vars):
            raise InputError(f"duplicate variable names in {self.vars}")
        _named_order(self.order_name)

    @property
    def n(self):
        return len(self.vars)

    @property
    def order(self):
        return _named_order(self.order_name)

    def __str__(self):
        return f"{self.field}[{','.join(self.vars)}]"

    def compatible(self, other):
        return self.field == other.field and self.vars == other.vars

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self.field(c)
        return Poly(self, {(0,) * self.n: c} if c else {})

    def gen(self, i):
        if isinstance(i, str):
            i = self.index(i)
        m = [0] * self.n
        m[i] = 1
        return Poly(self, {tuple(m): 1})

    def gens(self):
        return [self.gen(i) for i in range(self.n)]

    def index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            from .errors import UnknownVariable
            raise UnknownVariable(f"unknown variable {name!r} in {self}") from None

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.n:
            raise LengthMismatch(f"{len(exps)} exponents for {self.n} variables")
        c = self.field(coeff)
        return Poly(self, {exps: c} if c else {})

    def from_dict(self, terms):
        out = {}
        f = self.field
        for m, c in terms.items():
            c = f(c)
            if c:
                out[tuple(m)] = c
        return Poly(self, out)

    def parse(self, text):
        from .parser import parse_poly
        return parse_poly(text, self)

    def with_order(self, order_name):
        return Ring(self.field, self.vars, order_name)

    def extend(self, names, front=False):
        """Ring with extra variables (appended, or prepended when ``front``)."""
        names = tuple(names)
        return Ring(self.field, names + self.vars if front else self.vars + names,
                    self.order_name)


# -- polynomials -------------------------------------------------------------

class Poly:
    """Immutable sparse polynomial. ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # structure
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lm(self, order=None):
        if order is None:
            if self._lm is None:
                self._lm = max(self.terms, key=self.ring.order.key)
            return self._lm
        return max(self.terms, key=order.key)

    def lc(self, order=None):
        return self.terms[self.lm(order)]

    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i):
        return max((m[i] for m in self.terms), default=-1)

    def support_vars(self):
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return used

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.n, 0)

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            if not self.ring.compatible(other.ring):
                raise MixedRings(f"{self.ring} vs {other.ring}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = f.norm(out.get(m, 0) + c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        f = self.ring.field
        return Poly(self.ring, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        f = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        result = {}
        for m, c in out.items():
            c = f.norm(c)
            if c:
                result[m] = c
        if result and max(max(m) for m in result) > MAX_EXPONENT:
            raise DegreeOverflow(f"exponent exceeds {MAX_EXPONENT}")
        return Poly(self.ring, result)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        if self.terms and k * max(max(m) for m in self.terms) > MAX_EXPONENT:
            raise DegreeOverflow(f"exponent exceeds {MAX_EXPONENT}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c):
        f = self.ring.field
        c = f(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: f.norm(v * c) for m, v in self.terms.items()})

    def mul_term(self, mono, c=1):
        f = self.ring.field
        return Poly(self.ring, {mono_mul(m, mono): f.norm(v * c) for m, v in self.terms.items()})

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring.compatible(other.ring) and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except (TypeError, ValueError, InputError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def evaluate(self, point):
        """Value at a point given as raw field values."""
        f = self.ring.field
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * x ** e
            total = total + v
        return f.norm(f(total) if isinstance(total, Fraction) and f.p else total)

    def substitute(self, images):
        """Replace variable i by ``images[i]`` (polys in a common ring)."""
        target = images[0].ring if images else self.ring
        result = target.zero()
        cache = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    if (i, e) not in cache:
                        cache[i, e] = images[i] ** e
                    term = term * cache[i, e]
            result = result + term
        return result

    def embed(self, ring, index_map):
        """Move to ``ring`` sending variable i to variable ``index_map[i]``."""
        n = ring.n
        out = {}
        for m, c in self.terms.items():
            new = [0] * n
            for i, e in enumerate(m):
                if e:
                    new[index_map[i]] = e
            out[tuple(new)] = c
        return Poly(ring, out)

    def __str__(self):
        return canonical_string(self)

    def __repr__(self):
        return f"Poly({canonical_string(self)!r})"


def _coeff_str(field, c):
    """Signed display value: symmetric residues for GF(p)."""
    if field.p:
        c = c % field.p
        if c > field.p // 2:
            c -= field.p
        return c
    return Fraction(c)


def canonical_string(f, monic=False):
    """Deterministic text form, e.g. ``x^2*y - 1/2*z + 3``."""
    if monic:
        f = f.monic()
    if not f.terms:
        return "0"
    ring = f.ring
    parts = []
    for m, c in f.sorted_terms():
        v = _coeff_str(ring.field, c)
        neg = v < 0
        a = -v if neg else v
        mono = "*".join(
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(ring.vars, m) if e
        )
        if isinstance(a, Fraction):
            a_str = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        else:
            a_str = str(a)
        if not mono:
            body = a_str
        elif a == 1:
            body = mono
        else:
            body = f"{a_str}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
