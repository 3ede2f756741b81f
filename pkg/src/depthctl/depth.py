"""Depth of an ideal on a module over ``R = S/J``, through the finite prime set.

For a finitely generated R-module M the set

    Lambda_M = union over i of  min Ass Ext^i_S(M, S)

controls every depth: ``depth_R(I, M)`` is the minimum over p in Lambda_M
of ``ht((I+p)/p) + depth M_p``. Minimal associated primes are the minimal
primes of annihilators, and ``depth M_p = ht p - max{i : p ∈ Supp Ext^i}``
by local duality over the regular local ring ``S_p``.

Two independent oracles compute the same grade: Koszul homology
(``s - max{i : H_i(f; M) != 0}``) and Rees' ``min{i : Ext^i(S/I, M) != 0}``.
``inf`` stands for an infinite depth (``IM = M``) everywhere.
"""

import math
import threading
from dataclasses import dataclass, field
from itertools import combinations

from .errors import (
    ErrNotAnnihilated, IndexOutOfRange, InputError, NotAnIsomorphismWitness,
    NotInSupport, PointNotOnVariety,
)
from .groebner import BlockOrder, Ideal, ModuleSub, RingMap, eliminate, groebner_basis
from .modules import (
    FPModule, Matrix, annihilator, cokernel_homology_vanishes, ext_modules,
    free_resolution, is_zero_module, support_member,
)
from .poly import Poly, Ring
from .primes import ASSERTED, INF, PrimeIdeal, as_prime, height_abs, krull_dim, min_primes


@dataclass
class Presentation:
    """``R = S / J``."""

    ring: object
    J: Ideal

    def __post_init__(self):
        if not self.J.ring.compatible(self.ring):
            raise InputError("J lives in a different ring")
        if self.J.is_unit():
            raise InputError("J must be a proper ideal")

    @classmethod
    def polynomial(cls, ring):
        return cls(ring, Ideal(ring, []))


class RModule:
    """A finitely presented S-module annihilated by J."""

    def __init__(self, pres, M):
        if not M.ring.compatible(pres.ring):
            raise InputError("module and presentation live in different rings")
        sub = M.submodule()
        zero = pres.ring.zero()
        for g in pres.J.gens:
            for j in range(M.rank):
                col = tuple(g if i == j else zero for i in range(M.rank))
                if not sub.contains(col):
                    raise ErrNotAnnihilated(f"{g} does not annihilate generator {j}")
        self.pres = pres
        self.M = M
        self._lock = threading.RLock()
        self._lambda = None

    @property
    def ring(self):
        return self.pres.ring

    @property
    def J(self):
        return self.pres.J

    def is_zero(self):
        return is_zero_module(self.M)

    def __repr__(self):
        return f"RModule({self.M!r} over {self.ring}/{self.J!r})"


def make_rmodule(pres, M):
    return RModule(pres, M)


def quot(pres, gens):
    """``S / J'`` as an R-module; J' must contain J."""
    I = gens if isinstance(gens, Ideal) else Ideal(pres.ring, gens)
    return RModule(pres, FPModule.quot(I))


# -- results -----------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    prime: PrimeIdeal
    height: object
    local_depth: object


@dataclass(frozen=True)
class DepthResult:
    value: object
    witness: Witness = None

    @property
    def infinite(self):
        return self.value == INF


@dataclass
class LambdaEntry:
    prime: PrimeIdeal
    ext_indices: tuple
    height: object
    local_depth: object


@dataclass
class LambdaSet:
    entries: list = field(default_factory=list)

    @property
    def primes(self):
        return [e.prime for e in self.entries]

    def keys(self):
        return {e.prime.key for e in self.entries}

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# -- the finite prime set ----------------------------------------------------

def lambda_set(M, seed=0):
    if M._lambda is None:
        with M._lock:
            if M._lambda is None:
                M._lambda = _lambda(M, seed)
    return M._lambda


def _lambda(M, seed):
    if M.is_zero():
        return LambdaSet([])
    found = {}
    for i, E in enumerate(ext_modules(M.M)):
        if is_zero_module(E):
            continue
        for P in min_primes(annihilator(E), seed=seed):
            if P.key not in found:
                found[P.key] = (P, [])
            found[P.key][1].append(i)
    entries = []
    for key in sorted(found, key=lambda k: (len(k), k)):
        P, idx = found[key]
        entries.append(LambdaEntry(P, tuple(idx), height_abs(P.ideal), depth_local(M, P)))
    return LambdaSet(entries)


def depth_local(M, p):
    """``depth M_p``; ``inf`` when p is outside the support."""
    if isinstance(p, Ideal):
        p = as_prime(p)
    if not support_member(M.M, p.ideal):
        return INF
    top = max(i for i, E in enumerate(ext_modules(M.M))
              if not is_zero_module(E) and support_member(E, p.ideal))
    return height_abs(p.ideal) - top


def height_mod(M, I, p):
    """``ht((I + p)/p) = dim S/p - dim S/(I + p + J)``; ``inf`` if that is the unit ideal."""
    if isinstance(p, PrimeIdeal):
        p = p.ideal
    q = Ideal(p.ring, p.gens + I.gens + M.J.gens)
    if q.is_unit():
        return INF
    return krull_dim(p) - krull_dim(q)


def depth_formula(M, I, primes=None):
    """Minimum of ``height_mod + depth_local`` over Lambda_M (or over ``primes``)."""
    entries = lambda_set(M).entries if primes is None else primes
    best = DepthResult(INF)
    for e in entries:
        h = height_mod(M, I, e.prime)
        total = h + e.local_depth
        if total < best.value:
            best = DepthResult(total, Witness(e.prime, h, e.local_depth))
    return best


# -- oracles -----------------------------------------------------------------

def koszul_matrix(fs, i, ring):
    """Koszul differential ``K_i -> K_{i-1}`` on generators ``fs``."""
    s = len(fs)
    src = list(combinations(range(s), i))
    tgt = {J: k for k, J in enumerate(combinations(range(s), i - 1))} if i >= 1 else {}
    zero = ring.zero()
    cols = []
    for J in src:
        col = [zero] * len(tgt)
        for k, j in enumerate(J):
            f = fs[j] if k % 2 == 0 else -fs[j]
            col[tgt[J[:k] + J[k + 1:]]] = f
        cols.append(tuple(col))
    return Matrix(ring, len(tgt), cols)


def koszul_homology_vanishes(M, fs, i):
    """Whether ``H_i(fs; M)`` is zero."""
    from math import comb
    ring = M.ring
    s = len(fs)
    if i < 0 or i > s:
        return True
    d_in = koszul_matrix(fs, i + 1, ring) if i + 1 <= s else Matrix.zero(ring, comb(s, i), 0)
    d_out = koszul_matrix(fs, i, ring) if i >= 1 else Matrix.zero(ring, 0, 1)
    return cokernel_homology_vanishes(M, d_in, d_out, comb(s, i), comb(s, i - 1) if i else 0)


def depth_oracle_koszul(M, I):
    fs = [g for g in I.gens if not g.is_zero()]
    s = len(fs)
    # every H_i is killed by I + Ann M, so H_0 = M/IM = 0 settles the infinite case
    if koszul_homology_vanishes(M.M, fs, 0):
        return DepthResult(INF)
    for i in range(s, -1, -1):
        if not koszul_homology_vanishes(M.M, fs, i):
            return DepthResult(s - i)
    return DepthResult(INF)


def depth_oracle_ext(M, I):
    Ip = Ideal(M.ring, I.gens + M.J.gens)
    C = free_resolution(FPModule.quot(Ip), prune=True)
    ranks = C.ranks
    for i in range(C.length + 1):
        d_in = C.d(i).transpose()
        d_out = C.d(i + 1).transpose()
        nxt = ranks[i + 1] if i + 1 < len(ranks) else 0
        if not cokernel_homology_vanishes(M.M, d_in, d_out, ranks[i], nxt):
            return DepthResult(i)
    return DepthResult(INF)


# -- local statements at rational points -------------------------------------

def point_ideal(ring, point):
    gens = [ring.gen(i) - a for i, a in enumerate(point)]
    return as_prime(Ideal(ring, gens), ASSERTED)


def _check_point(ring, point, ideals):
    point = [ring.field(a) for a in point]
    if len(point) != ring.n:
        raise PointNotOnVariety(f"point has {len(point)} coordinates, ring has {ring.n}")
    for I in ideals:
        for g in I.gens:
            if g.evaluate(point) != 0:
                raise PointNotOnVariety(f"{g} does not vanish at the point")
    return point


def below_point(M, point):
    """Entries of Lambda_M whose prime lies in the maximal ideal of ``point``."""
    return [e for e in lambda_set(M) if e.prime.contains_point(point)]


def depth_below_point(M, I, point):
    point = _check_point(M.ring, point, [I, M.J])
    return depth_formula(M, I, below_point(M, point))


def fdim_at_point(M, I, point, experimental_global=False):
    """Finiteness dimension ``f_I(M)`` localized at a rational point.

    Minimum of ``height_mod + depth_local`` over primes of Lambda_M below
    the point that do not contain I. With ``experimental_global`` the
    point filter is dropped and the minimum runs over all of Lambda_M \\ V(I).
    """
    if experimental_global:
        entries = lambda_set(M).entries
    else:
        point = _check_point(M.ring, point, [I, M.J])
        entries = below_point(M, point)
    entries = [e for e in entries if not e.prime.contains_ideal(I)]
    return depth_formula(M, I, entries).value


def att_min_at_point(M, point, i, seed=0):
    """Minimal attached primes of ``H^i_m(M)`` for m the maximal ideal of ``point``."""
    n = M.ring.n
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"cohomological index {i} outside 0..{n}")
    point = _check_point(M.ring, point, [M.J])
    E = ext_modules(M.M)[n - i]
    if is_zero_module(E):
        return []
    return [P for P in min_primes(annihilator(E), seed=seed) if P.contains_point(point)]


# -- property checks ---------------------------------------------------------

def check_depth_inequality(M, I, p, depth=None):
    """``depth(I, M) <= ht((I+p)/p) + depth M_p`` for p in Supp M."""
    if isinstance(p, Ideal):
        p = as_prime(p)
    if not support_member(M.M, p.ideal):
        raise NotInSupport(f"{p} is not in the support")
    if depth is None:
        depth = depth_oracle_koszul(M, I).value
    return depth <= height_mod(M, I, p) + depth_local(M, p)


def check_fdim_bounds(M, I, point):
    """f_I(M) against the depth restricted below ``point``.

    f >= depth always; equality when the depth witness avoids V(I); strict
    inequality when every minimizing prime lies in V(I).
    """
    point = _check_point(M.ring, point, [I, M.J])
    entries = below_point(M, point)
    d = depth_formula(M, I, entries)
    f = fdim_at_point(M, I, point)
    if f < d.value:
        return False
    if d.value == INF:
        return f == INF
    minimizers = [e for e in entries if height_mod(M, I, e.prime) + e.local_depth == d.value]
    outside = [e for e in minimizers if not e.prime.contains_ideal(I)]
    if not d.witness.prime.contains_ideal(I) and f != d.value:
        return False
    if not outside and not f > d.value:
        return False
    if outside and f != d.value:
        return False
    return True


# -- change of presentation --------------------------------------------------

def _graph(phi, J1):
    """Graph ideal of ``S2 -> S1/J1`` in ``S1 ⊗ S2`` (S1 variables first)."""
    S1, S2 = phi.target, phi.source
    names2 = []
    for v in S2.vars:
        name = v + "'"
        while name in S1.vars or name in names2:
            name += "'"
        names2.append(name)
    T = S1.extend(names2)
    n1 = S1.n
    up1 = list(range(n1))
    gens = [g.embed(T, up1) for g in J1.gens]
    for j, img in enumerate(phi.images):
        gens.append(T.gen(n1 + j) - img.embed(T, up1))
    return T, Ideal(T, gens)


def check_isomorphism(phi, J1, J2):
    """Raise unless ``phi : S2 -> S1`` induces ``S2/J2 ≅ S1/J1``."""
    S1, S2 = phi.target, phi.source
    for g in J2.gens:
        if not J1.contains(phi(g)):
            raise NotAnIsomorphismWitness(f"image of {g} is not in J1")
    T, G = _graph(phi, J1)
    n1, n2 = S1.n, S2.n
    kernel = eliminate(G, list(range(n1, n1 + n2)))
    back = [Poly(S2, {m[n1:]: c for m, c in g.terms.items()}) for g in kernel.gens]
    if not Ideal(S2, back) == J2:
        raise NotAnIsomorphismWitness("the induced map S2/J2 -> S1/J1 is not injective")
    order = BlockOrder([list(range(n1)), list(range(n1, n1 + n2))])
    gb = groebner_basis(G.gens, T, order)
    from .groebner import normal_form
    for i in range(n1):
        r = normal_form(T.gen(i), gb, order)
        if any(m[k] for m in r.terms for k in range(n1)):
            raise NotAnIsomorphismWitness(f"{S1.vars[i]} is not in the image")


def lambda_independence(M1, M2, phi):
    """Whether ``phi : S2 -> S1`` carries Lambda_{M2} onto Lambda_{M1}."""
    J1, J2 = M1.J, M2.J
    check_isomorphism(phi, J1, J2)
    A1, A2 = M1.M, M2.M
    if A1.rank != A2.rank:
        raise NotAnIsomorphismWitness("modules have different numbers of generators")
    b = A1.rank
    zero = M1.ring.zero()
    extra = [tuple(g if i == j else zero for i in range(b)) for g in J1.gens for j in range(b)]
    image = [tuple(phi(f) for f in col) for col in A2.pres.cols]
    span1 = ModuleSub(M1.ring, b, list(A1.pres.cols) + extra)
    span2 = ModuleSub(M1.ring, b, image + extra)
    if not (all(span2.contains(c) for c in span1.gens) and all(span1.contains(c) for c in span2.gens)):
        raise NotAnIsomorphismWitness("presentation matrices do not correspond")
    keys2 = set()
    for e in lambda_set(M2):
        P = Ideal(M1.ring, [phi(g) for g in e.prime.ideal.gens] + list(J1.gens))
        keys2.add(P.canonical())
    return keys2 == lambda_set(M1).keys()


def dummy_presentation(M, f, name="t"):
    """``S[t]``, ``J + (t - f)``, the same module with t acting as f, and ``S[t] -> S``."""
    S = M.ring
    while name in S.vars:
        name += "_"
    # t dominating keeps t - f a Groebner basis element with leading term t
    S2 = Ring(S.field, S.vars + (name,), "elim-last")
    up = list(range(S.n))
    t = S2.gen(S.n)
    tf = t - f.embed(S2, up)
    J2 = Ideal(S2, [g.embed(S2, up) for g in M.J.gens] + [tf])
    b = M.M.rank
    zero = S2.zero()
    cols = [tuple(g.embed(S2, up) for g in col) for col in M.M.pres.cols]
    cols += [tuple(tf if i == j else zero for i in range(b)) for j in range(b)]
    M2 = RModule(Presentation(S2, J2), FPModule(S2, b, Matrix(S2, b, cols)))
    phi = RingMap(S2, S, list(S.gens()) + [f])
    return M2, phi
