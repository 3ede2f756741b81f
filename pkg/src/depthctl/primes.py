"""Krull dimension, heights and minimal primes.

Minimal primes are found by splitting: monomial ideals decompose
combinatorially; otherwise a variable that occurs linearly is substituted
away, a reducible Gröbner basis element splits the variety, and what is left
is handled GTZ-style. A maximal independent set ``U`` is treated as
parameters, the ideal is saturated to its equidimensional part over
``K(U)``, and the components come from factoring the eliminant of a random
linear form. Each candidate is certified prime by a degree count, with a
fresh linear form tried when the check fails.

Over QQ only the monomial path (plus linear substitution) is available.
"""

import math
import os
import random
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    GeneralPositionFailure, InternalError, TooManyVariables, UnitIdeal,
    UnsupportedFieldForDecomposition,
)
from .factor import factor_gfp, gcd_gfp
from .groebner import (
    Ideal, eliminate, groebner_basis, intersect, radical_member, saturate,
)
from .poly import BlockOrder, Poly, mono_divides

INF = math.inf
MAX_DIM_VARS = 12
GENERAL_POSITION_TRIES = 8

# Set DEPTHCTL_CHECK=1 to verify every min_primes result by radical equality.
CHECK = os.environ.get("DEPTHCTL_CHECK", "") not in ("", "0")


# -- dimension ---------------------------------------------------------------

def _lead_masks(I):
    masks = set()
    for g in I.gb():
        m = g.lm()
        masks.add(sum(1 << i for i, e in enumerate(m) if e))
    return masks


def max_independent_set(I):
    """A largest variable subset (indices) containing no leading monomial's support.

    ``None`` for the unit ideal. Among subsets of the largest size the one
    using the latest variables wins.
    """
    n = I.ring.n
    if n > MAX_DIM_VARS:
        raise TooManyVariables(f"dimension scan limited to {MAX_DIM_VARS} variables, got {n}")
    if I.is_unit():
        return None
    masks = _lead_masks(I)
    for size in range(n, -1, -1):
        for subset in combinations(reversed(range(n)), size):
            y = sum(1 << i for i in subset)
            if all(mk & ~y for mk in masks):
                return tuple(sorted(subset))
    raise InternalError("no independent set found")


def krull_dim(I):
    """``dim S/I``; -1 for the unit ideal."""
    U = max_independent_set(I)
    return -1 if U is None else len(U)


def height_abs(I):
    """``ht I = n - dim S/I``; ``inf`` for the unit ideal."""
    d = krull_dim(I)
    return INF if d < 0 else I.ring.n - d


# -- prime ideals ------------------------------------------------------------

MONOMIAL = "MonomialCombinatorial"
ELIMINANT = "ZeroDimEliminant"
ASSERTED = "CallerAsserted"


@dataclass(frozen=True, eq=False)
class PrimeIdeal:
    ideal: Ideal
    certified: str
    key: tuple

    @classmethod
    def make(cls, ideal, certified):
        return cls(ideal, certified, ideal.canonical())

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Prime({', '.join(self.key) or '0'})"

    @property
    def ring(self):
        return self.ideal.ring

    def generators(self):
        return list(self.key)

    def contains(self, f):
        return self.ideal.contains(f)

    def contains_ideal(self, other):
        if isinstance(other, PrimeIdeal):
            other = other.ideal
        return self.ideal.contains_ideal(other)

    def contains_point(self, point):
        """Whether the prime lies inside the maximal ideal of ``point``."""
        return all(g.evaluate(point) == 0 for g in self.ideal.gb())


def as_prime(I, certified=None):
    """Wrap a caller-supplied prime; monomial ones are checked combinatorially."""
    if I.is_unit():
        raise UnitIdeal("the unit ideal is not prime")
    if I.is_monomial():
        if not all(sum(g.lm()) == 1 for g in I.gb()):
            from .errors import InputError
            raise InputError(f"monomial ideal {I} is not prime")
        return PrimeIdeal.make(Ideal.from_gb(I.ring, I.gb()), MONOMIAL)
    return PrimeIdeal.make(I, certified or ASSERTED)


def variable_prime(ring, idx):
    gens = [ring.gen(i) for i in sorted(idx)]
    return PrimeIdeal.make(Ideal(ring, gens), MONOMIAL)


# -- minimal primes ----------------------------------------------------------

def monomial_min_primes(I):
    """Minimal primes of a monomial ideal: minimal transversals of the supports."""
    supports = [frozenset(i for i, e in enumerate(g.lm()) if e) for g in I.gb()]
    covers = {frozenset()}
    for s in supports:
        new = set()
        for c in covers:
            if c & s:
                new.add(c)
            else:
                new.update(c | {v} for v in s)
        covers = {c for c in new if not any(o < c for o in new)}
    return [variable_prime(I.ring, c) for c in covers]


def min_primes(I, seed=0):
    """Minimal primes of a proper ideal, sorted by their canonical form."""
    if I.is_unit():
        raise UnitIdeal("min_primes of the unit ideal")
    ring = I.ring
    if I.is_monomial():
        out = monomial_min_primes(I)
    else:
        rng = random.Random(seed)
        if not ring.field.p:
            comps = _rational_components(I)
        else:
            comps = _components(I, rng)
        out = _minimal([PrimeIdeal.make(P, c) for P, c in comps])
    out = sorted(set(out), key=lambda P: (len(P.key), P.key))
    if CHECK:
        check_min_primes(I, out)
    return out


def _minimal(primes):
    uniq = {}
    for P in primes:
        uniq.setdefault(P.key, P)
    ps = list(uniq.values())
    return [P for P in ps if not any(Q is not P and P.contains_ideal(Q) for Q in ps)]


def check_min_primes(I, primes):
    """Radical equality and minimality checks; raises InternalError on failure."""
    for P in primes:
        if not P.contains_ideal(I):
            raise InternalError(f"{P} does not contain {I}")
        if P.ideal.is_unit():
            raise InternalError(f"{P} is the unit ideal")
        for Q in primes:
            if Q is not P and P.contains_ideal(Q):
                raise InternalError(f"{P} contains {Q}: not minimal")
    meet = None
    for P in primes:
        meet = P.ideal if meet is None else intersect(meet, P.ideal)
    for g in meet.gb():
        if not radical_member(g, I):
            raise InternalError(f"intersection of minimal primes is not in the radical of {I}")


def _linear_splits(I):
    """Yield ``(k, g, rest)`` with ``g = x_k - h`` in I, h and rest free of x_k, ``I = (g) + rest``.

    Later variables are tried first so that adjoined variables are eliminated early.
    """
    ring = I.ring
    n = ring.n
    for k in reversed(range(n)):
        if not any(g.degree_in(k) > 0 for g in I.gb()):
            continue
        order = BlockOrder([[k], [i for i in range(n) if i != k]])
        gb = groebner_basis(I.gens, ring, order)
        unit = tuple(1 if i == k else 0 for i in range(n))
        for g in gb:
            if g.lm(order) == unit:
                rest = [h for h in gb if h is not g]
                yield k, g, Ideal(ring, rest)
                break


def _linear_split(I):
    return next(_linear_splits(I), None)


def _rational_components(I):
    if I.is_unit():
        return []
    if I.is_zero():
        return [(Ideal(I.ring, []), MONOMIAL)]
    if I.is_monomial():
        return [(P.ideal, P.certified) for P in monomial_min_primes(I)]
    for k, g, rest in _linear_splits(I):
        try:
            return [(P + [g], c) for P, c in _rational_components(rest)]
        except UnsupportedFieldForDecomposition:
            continue
    raise UnsupportedFieldForDecomposition(
        f"minimal primes over QQ are only available for monomial ideals (up to "
        f"linear substitutions); got {I}")


def _components(I, rng):
    """Primes whose varieties cover V(I) (possibly redundant), as (Ideal, label)."""
    ring = I.ring
    if I.is_unit():
        return []
    if I.is_zero():
        return [(Ideal(ring, []), MONOMIAL)]
    if I.is_monomial():
        return [(P.ideal, P.certified) for P in monomial_min_primes(I)]
    split = _linear_split(I)
    if split is not None:
        k, g, rest = split
        return [(P + [g], c) for P, c in _components(rest, rng)]
    for g in I.gb():
        if g.is_constant():
            continue
        facs = factor_gfp(g)
        if len(facs) > 1 or facs[0][1] > 1:
            out = []
            for f, _ in facs:
                out.extend(_components(I + [f], rng))
            return out
    U = max_independent_set(I)
    X = [i for i in range(ring.n) if i not in U]
    h = _lead_coefficient_product(I, X, U)
    E = I if h.is_constant() else saturate(I, h)
    out = [(P, ELIMINANT) for P in _equidimensional_primes(E, U, X, rng)]
    if not h.is_constant():
        out.extend(_components(I + [h], rng))
    return out


def _split_lead(g, order, X):
    """``K[U]``-coefficient of the leading X-monomial of g."""
    lm = g.lm(order)
    xpart = tuple(lm[i] for i in X)
    terms = {}
    for m, c in g.terms.items():
        if tuple(m[i] for i in X) == xpart:
            u = list(m)
            for i in X:
                u[i] = 0
            terms[tuple(u)] = c
    return Poly(g.ring, terms), xpart


def _block_gb(I, X, U):
    order = BlockOrder([X, list(U)])
    return groebner_basis(I.gens, I.ring, order), order


def _lead_coefficient_product(I, X, U):
    gb, order = _block_gb(I, X, U)
    h = I.ring.one()
    seen = set()
    for g in gb:
        lc, _ = _split_lead(g, order, X)
        if lc.is_constant():
            continue
        lc = lc.monic()
        if lc not in seen:
            seen.add(lc)
            h = h * lc
    return h


def _count_standard(xparts):
    """Number of monomials not divisible by any of ``xparts``; None if infinite."""
    if not xparts:
        return None
    k = len(xparts[0])
    if k == 0:
        return 1 if not xparts else 0
    bounds = []
    for i in range(k):
        pure = [m[i] for m in xparts if all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return None
        bounds.append(min(pure))
    count = 0

    def rec(i, cur):
        nonlocal count
        if i == k:
            if not any(mono_divides(m, tuple(cur)) for m in xparts):
                count += 1
            return
        for e in range(bounds[i]):
            cur.append(e)
            rec(i + 1, cur)
            cur.pop()

    rec(0, [])
    return count


def _kU_degree(P, X, U):
    """``dim_{K(U)} K(U)[X] / P``, or None if P meets K[U] or is not zero-dim there."""
    gb, order = _block_gb(P, X, U)
    xparts = []
    for g in gb:
        _, xp = _split_lead(g, order, X)
        if not any(xp):
            return None
        xparts.append(xp)
    return _count_standard(xparts)


def _eliminant(I, keep_idx):
    """Nonzero generators of ``I ∩ K[keep]``."""
    return [g for g in eliminate(I, keep_idx).gens if not g.is_zero()]


def _positive_factors(polys, var):
    g = gcd_gfp(polys)
    return [f for f, _ in factor_gfp(g) if f.degree_in(var) > 0]


def _equidimensional_primes(E, U, X, rng):
    """Minimal primes of an ideal equidimensional over K(U) (zero-dim there)."""
    ring = E.ring
    p = ring.field.p
    big = ring.extend(("_w",))
    w_idx = ring.n
    w = big.gen(w_idx)
    up = list(range(ring.n))
    E_big = [g.embed(big, up) for g in E.gens]
    for attempt in range(GENERAL_POSITION_TRIES):
        if len(X) == 1:
            coeffs = {X[0]: 1}
        else:
            coeffs = {i: rng.randrange(1, p) for i in X}
        ell = ring.zero()
        for i, c in coeffs.items():
            ell = ell + ring.gen(i).scale(c)
        J = Ideal(big, E_big + [w - ell.embed(big, up)])
        elim = _eliminant(J, list(U) + [w_idx])
        if not elim:
            raise InternalError("eliminant vanished for an ideal of full parameter dimension")
        factors = _positive_factors(elim, w_idx)
        primes = []
        ok = True
        for f in factors:
            images = [big.gen(i) for i in range(ring.n)] + [ell.embed(big, up)]
            f_sub = Poly(ring, {m[:-1]: c for m, c in f.substitute(images).terms.items()})
            Q = E + [f_sub]
            for x in X:
                el = _eliminant(Q, list(U) + [x])
                sq = ring.one()
                for q in _positive_factors(el, x):
                    sq = sq * q
                Q = Q + [sq]
            h = _lead_coefficient_product(Q, X, U)
            P = Q if h.is_constant() else saturate(Q, h)
            if P.is_unit() or _kU_degree(P, X, U) != f.degree_in(w_idx):
                ok = False
                break
            primes.append(P)
        if ok:
            return primes
    raise GeneralPositionFailure(
        f"no separating linear form found after {GENERAL_POSITION_TRIES} tries")
