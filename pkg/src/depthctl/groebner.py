"""Buchberger's algorithm over free modules, and the ideal operations built on it.

Internally an element of a free module ``S^r`` is a dict ``{(comp, mono):
coeff}`` ("vec"). An ideal element is a vec living in component 0. Term
orders on vecs (:class:`TermOrder`) come in three flavours: ideal orders,
position-over-term, and Schreyer orders induced by a Gröbner basis one level
down. Every basis produced here is monic.
"""

import heapq
import threading

from .errors import InputError, InternalError, MixedFields, MixedRings, ZeroDivisorArgument
from .poly import (
    BlockOrder, Poly, Ring, mono_coprime, mono_div, mono_divides, mono_lcm, mono_mul,
)


# -- term orders on vecs -----------------------------------------------------

def _flatten(k, out):
    for x in k:
        if isinstance(x, tuple):
            _flatten(x, out)
        else:
            out.append(x)
    return out


class TermOrder:
    def __init__(self):
        self._memo = {}
        self._neg = {}

    def key(self, t):
        k = self._memo.get(t)
        if k is None:
            k = self._memo[t] = self._key(t)
        return k

    def neg_key(self, t):
        """Flat tuple sorting in the reverse order of ``key`` (min-heap friendly)."""
        k = self._neg.get(t)
        if k is None:
            k = self._neg[t] = tuple(-x for x in _flatten(self.key(t), []))
        return k


class IdealOrder(TermOrder):
    """Single component; compares monomials only."""

    def __init__(self, mono_order):
        super().__init__()
        self.mono = mono_order

    def _key(self, t):
        return self.mono.key(t[1])


class POT(TermOrder):
    """Position over term; a lower component index is larger."""

    def __init__(self, mono_order):
        super().__init__()
        self.mono = mono_order

    def _key(self, t):
        return (-t[0], self.mono.key(t[1]))


class SchreyerOrder(TermOrder):
    """``m e_i > n e_j`` iff ``m LT(g_i) > n LT(g_j)`` one level down, ties
    broken in favour of the smaller index."""

    def __init__(self, prev, leads):
        super().__init__()
        self.prev = prev
        self.leads = tuple(leads)
        self.mono = prev.mono

    def _key(self, t):
        c, m = self.leads[t[0]]
        return (self.prev.key((c, mono_mul(m, t[1]))), -t[0])


# -- vec helpers -------------------------------------------------------------

def lead(v, order):
    return max(v, key=order.key)


def vec_from_poly(f, comp=0):
    return {(comp, m): c for m, c in f.terms.items()}


def vec_from_column(col):
    v = {}
    for i, f in enumerate(col):
        for m, c in f.terms.items():
            v[i, m] = c
    return v


def poly_from_vec(v, ring):
    return Poly(ring, {m: c for (_, m), c in v.items()})


def column_from_vec(v, ring, rank):
    parts = [{} for _ in range(rank)]
    for (i, m), c in v.items():
        parts[i][m] = c
    return tuple(Poly(ring, p) for p in parts)


def _monic(v, order, field):
    c = v[lead(v, order)]
    if c == 1:
        return v
    inv = field.inv(c)
    p = field.p
    if p:
        return {t: a * inv % p for t, a in v.items()}
    return {t: field.norm(a * inv) for t, a in v.items()}


def _axpy(v, coef, mono, g, p):
    """``v -= coef * mono * g`` in place."""
    get = v.get
    for (c, m), a in g.items():
        t = (c, mono_mul(m, mono))
        val = get(t, 0) - coef * a
        if p:
            val %= p
        if val:
            v[t] = val
        else:
            del v[t]


class _Basis:
    """Monic vecs with their leading terms, indexed by component."""

    def __init__(self, order, field):
        self.order = order
        self.field = field
        self.vecs = []
        self.lts = []
        self.by_comp = {}

    def add(self, v):
        lt = lead(v, self.order)
        self.vecs.append(v)
        self.lts.append(lt)
        self.by_comp.setdefault(lt[0], []).append((lt[1], len(self.vecs) - 1))
        return len(self.vecs) - 1

    def divisor(self, t):
        for lm, j in self.by_comp.get(t[0], ()):
            if mono_divides(lm, t[1]):
                return j, lm
        return None

    def _walk(self, v, visit):
        """Visit the terms of ``v`` from the top while ``visit`` rewrites ``v``.

        ``visit(t)`` returns the vec subtracted (as ``(coef, mono, g)``) or
        None to keep the term. New terms are always below ``t``.
        """
        nk = self.order.neg_key
        heap = [(nk(t), t) for t in v]
        heapq.heapify(heap)
        p = self.field.p
        while heap:
            _, t = heapq.heappop(heap)
            if t not in v:
                continue
            step = visit(t)
            if step is None:
                continue
            coef, mono, g = step
            for (c, m), a in g.items():
                u = (c, mono_mul(m, mono))
                old = v.get(u)
                val = (0 if old is None else old) - coef * a
                if p:
                    val %= p
                if val:
                    v[u] = val
                    if old is None:
                        heapq.heappush(heap, (nk(u), u))
                elif old is not None:
                    del v[u]

    def reduce(self, v, full=True, skip=None):
        """Normal form of ``v``; ``skip`` excludes one basis index."""
        v = dict(v)
        rem = {}
        by_comp = self.by_comp
        done = [False]

        def visit(t):
            if done[0]:
                rem[t] = v.pop(t)
                return None
            for lm, j in by_comp.get(t[0], ()):
                if j != skip and mono_divides(lm, t[1]):
                    return v[t], mono_div(t[1], lm), self.vecs[j]
            rem[t] = v.pop(t)
            if not full:
                done[0] = True
            return None

        self._walk(v, visit)
        if not self.field.p:
            rem = {t: self.field.norm(c) for t, c in rem.items()}
        return rem

    def reduce_tracking(self, v):
        """Top-reduce ``v`` to zero, returning quotients ``{index: {mono: coeff}}``.

        Raises InternalError if ``v`` is not in the span (basis not a GB or
        ``v`` not a member).
        """
        v = dict(v)
        quot = {}
        p = self.field.p

        def visit(t):
            hit = self.divisor(t)
            if hit is None:
                raise InternalError("tracked reduction did not reach zero")
            j, lm = hit
            coef = v[t]
            q = mono_div(t[1], lm)
            qj = quot.setdefault(j, {})
            val = qj.get(q, 0) + coef
            if p:
                val %= p
            if val:
                qj[q] = val
            else:
                qj.pop(q, None)
            return coef, q, self.vecs[j]

        self._walk(v, visit)
        return quot


def _spoly(f, ltf, g, ltg, p):
    L = mono_lcm(ltf[1], ltg[1])
    s = {}
    _axpy(s, -1, mono_div(L, ltf[1]), f, p)
    _axpy(s, 1, mono_div(L, ltg[1]), g, p)
    return s


def buchberger(vecs, order, field, ideal=False):
    """Reduced Gröbner basis of the span of ``vecs`` (list of dict-vecs).

    Normal selection strategy with Gebauer-Möller pair elimination; the
    product criterion is only used for ideals. Output is monic, sorted by
    decreasing leading term.
    """
    p = field.p
    basis = _Basis(order, field)
    key = order.key
    pairs = {}          # (i, j) -> lcm term, alive pairs
    heap = []

    def update(v):
        lt_new = lead(v, order)
        c, m = lt_new
        lts = basis.lts
        for pair, (pc, L) in list(pairs.items()):
            if pc != c or not mono_divides(m, L):
                continue
            i, j = pair
            if mono_lcm(lts[i][1], m) != L and mono_lcm(lts[j][1], m) != L:
                del pairs[pair]
        groups = {}
        for lm, i in basis.by_comp.get(c, ()):
            groups.setdefault(mono_lcm(lm, m), []).append(i)
        new = basis.add(v)
        kept = []
        for L in sorted(groups, key=lambda L: key((c, L))):
            if not any(mono_divides(K, L) for K in kept):
                kept.append(L)
        for L in kept:
            members = groups[L]
            if ideal and any(mono_coprime(lts[i][1], m) for i in members):
                continue
            pair = (min(members), new)
            pairs[pair] = (c, L)
            heapq.heappush(heap, (key((c, L)), pair[1], pair[0]))

    for v in vecs:
        v = {t: a for t, a in v.items() if a}
        if not v:
            continue
        v = basis.reduce(v)
        if v:
            update(_monic(v, order, field))

    while heap:
        _, j, i = heapq.heappop(heap)
        if pairs.pop((i, j), None) is None:
            continue
        s = _spoly(basis.vecs[i], basis.lts[i], basis.vecs[j], basis.lts[j], p)
        s = basis.reduce(s)
        if s:
            update(_monic(s, order, field))

    return _reduced(basis, order, field)


def _reduced(basis, order, field):
    lts = basis.lts
    idx = list(range(len(basis.vecs)))
    keep = []
    for i in idx:
        ci, mi = lts[i]
        redundant = False
        for j in idx:
            if j == i or lts[j][0] != ci:
                continue
            if mono_divides(lts[j][1], mi) and (lts[j][1] != mi or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    minimal = _Basis(order, field)
    for i in keep:
        minimal.add(basis.vecs[i])
    out = []
    for k in range(len(minimal.vecs)):
        r = minimal.reduce(minimal.vecs[k], skip=k)
        out.append(_monic(r, order, field))
    out.sort(key=lambda v: order.key(lead(v, order)), reverse=True)
    return out


def is_groebner(vecs, order, field):
    """Buchberger criterion: every S-pair within a component reduces to 0."""
    basis = _Basis(order, field)
    for v in vecs:
        basis.add(v)
    n = len(vecs)
    for i in range(n):
        for j in range(i + 1, n):
            if basis.lts[i][0] != basis.lts[j][0]:
                continue
            s = _spoly(basis.vecs[i], basis.lts[i], basis.vecs[j], basis.lts[j], field.p)
            if basis.reduce(s):
                return False
    return True


# -- Schreyer syzygies -------------------------------------------------------

def schreyer_syzygies(G, order, field):
    """Syzygies of a monic Gröbner basis ``G`` from its S-pair reductions.

    Returns vecs in the free module with one basis vector per element of
    ``G``; they form a Gröbner basis for the induced Schreyer order, with
    leading term ``m_ji e_i`` for the pair ``i < j``. Pairs whose leading
    term is divisible by another's are skipped.
    """
    p = field.p
    basis = _Basis(order, field)
    for g in G:
        basis.add(g)
    lts = basis.lts
    r = len(G)
    out = []
    for i in range(r):
        ci, mi = lts[i]
        cands = {}
        for j in range(i + 1, r):
            if lts[j][0] != ci:
                continue
            L = mono_lcm(mi, lts[j][1])
            cands.setdefault(mono_div(L, mi), j)
        ms = sorted(cands, key=lambda m: (sum(m), m))
        minimal = []
        for m in ms:
            if not any(mono_divides(k, m) for k in minimal):
                minimal.append(m)
        for mji in minimal:
            j = cands[mji]
            mij = mono_div(mono_mul(mji, mi), lts[j][1])
            s = {}
            _axpy(s, -1, mji, G[i], p)
            _axpy(s, 1, mij, G[j], p)
            quot = basis.reduce_tracking(s)
            tau = {(i, mji): 1}
            neg1 = p - 1 if p else -1
            tau[(j, mij)] = tau.get((j, mij), 0) + neg1
            for k, q in quot.items():
                for m, c in q.items():
                    t = (k, m)
                    val = tau.get(t, 0) - c
                    if p:
                        val %= p
                    if val:
                        tau[t] = val
                    else:
                        tau.pop(t, None)
            if not p:
                tau = {t: field.norm(c) for t, c in tau.items()}
            out.append(tau)
    return out


# -- generic syzygies, lifting, colon ----------------------------------------

class Lifter:
    """Syzygies of arbitrary generators and coordinates w.r.t. them.

    Built from a Gröbner basis of the generators augmented with unit vectors
    in extra components (position-over-term, original components first).
    """

    def __init__(self, gens, rank, ring):
        self.rank = rank
        self.ring = ring
        self.order = POT(ring.order)
        zero = (0,) * ring.n
        aug = []
        for k, g in enumerate(gens):
            w = dict(g)
            w[(rank + k, zero)] = 1
            aug.append(w)
        self.gb = buchberger(aug, self.order, ring.field)
        self._basis = _Basis(self.order, ring.field)
        for v in self.gb:
            self._basis.add(v)

    def syzygies(self):
        r = self.rank
        out = []
        for v in self.gb:
            if lead(v, self.order)[0] >= r:
                out.append({(c - r, m): a for (c, m), a in v.items()})
        return out

    def lift(self, v):
        """Coefficients (a vec over generator indices) expressing ``v``, or None."""
        rem = self._basis.reduce(v)
        r = self.rank
        if any(c < r for (c, _) in rem):
            return None
        p = self.ring.field.p
        return {(c - r, m): (-a % p if p else -a) for (c, m), a in rem.items()}


# -- ideals ------------------------------------------------------------------

class Ideal:
    """Ideal of a polynomial ring, generators plus a lazily cached reduced GB."""

    def __init__(self, ring, gens=()):
        self.ring = ring
        self.gens = tuple(g for g in gens if not g.is_zero())
        for g in self.gens:
            if not g.ring.compatible(ring):
                raise MixedRings(f"{g.ring} vs {ring}")
        self._gb = None
        self._lock = threading.RLock()

    @classmethod
    def from_gb(cls, ring, gb):
        I = cls(ring, gb)
        I._gb = tuple(gb)
        return I

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def gb(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    self._gb = tuple(groebner_basis(self.gens, self.ring))
        return self._gb

    def reduce(self, f):
        return normal_form(f, self.gb())

    def contains(self, f):
        return self.reduce(f).is_zero()

    def is_unit(self):
        gb = self.gb()
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self):
        return not self.gens

    def is_monomial(self):
        return all(g.is_monomial() for g in self.gb())

    def contains_ideal(self, other):
        return all(self.contains(g) for g in other.gens)

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + tuple(other))

    def __eq__(self, other):
        return isinstance(other, Ideal) and ideal_equal(self, other)

    __hash__ = object.__hash__

    def canonical(self):
        """Generator strings of the reduced grevlex GB, by decreasing leading monomial."""
        from .poly import canonical_string
        ring = self.ring
        if ring.order_name != "grevlex":
            ring = ring.with_order("grevlex")
            gb = groebner_basis([Poly(ring, g.terms) for g in self.gens], ring)
        else:
            gb = self.gb()
        return tuple(canonical_string(g) for g in gb)


def groebner_basis(polys, ring=None, order=None):
    """Reduced, monic GB of the ideal spanned by ``polys`` (list of Poly)."""
    polys = [f for f in polys if not f.is_zero()]
    if ring is None:
        if not polys:
            return []
        ring = polys[0].ring
    mono = order or ring.order
    for f in polys:
        if not f.ring.compatible(ring):
            raise MixedRings(f"{f.ring} vs {ring}")
    gb = buchberger([vec_from_poly(f) for f in polys], IdealOrder(mono), ring.field, ideal=True)
    out = [poly_from_vec(v, ring) for v in gb]
    if order is not None:
        out.sort(key=lambda g: order.key(g.lm(order)), reverse=True)
    return out


def normal_form(f, G, order=None):
    """Complete reduction of ``f`` by a GB ``G`` (list of Poly)."""
    if not G:
        return f
    ring = f.ring
    mono = order or ring.order
    b = _Basis(IdealOrder(mono), ring.field)
    for g in G:
        b.add(vec_from_poly(g))
    return poly_from_vec(b.reduce(vec_from_poly(f)), ring)


def ideal_member(f, I):
    if not f.ring.compatible(I.ring):
        raise MixedRings(f"{f.ring} vs {I.ring}")
    return I.contains(f)


def ideal_equal(I1, I2):
    if not I1.ring.compatible(I2.ring):
        raise MixedRings(f"{I1.ring} vs {I2.ring}")
    return I1.contains_ideal(I2) and I2.contains_ideal(I1)


def syzygy_basis(G, ring):
    """Schreyer syzygies of an ideal GB ``G`` as tuples of Poly (length len(G))."""
    order = IdealOrder(ring.order)
    vecs = [vec_from_poly(g) for g in G]
    syz = schreyer_syzygies(vecs, order, ring.field)
    return [column_from_vec(s, ring, len(G)) for s in syz]


def eliminate(I, keep):
    """Generators of ``I ∩ k[keep]`` (still expressed in ``I.ring``)."""
    ring = I.ring
    keep_idx = [ring.index(v) if isinstance(v, str) else v for v in keep]
    drop = [i for i in range(ring.n) if i not in keep_idx]
    if not drop:
        return Ideal.from_gb(ring, I.gb())
    order = BlockOrder([drop, sorted(keep_idx)])
    gb = groebner_basis(I.gens, ring, order)
    kept = [g for g in gb if not (g.support_vars() & set(drop))]
    return Ideal(ring, kept)


def _with_extra_var(ring, name="_t"):
    while name in ring.vars:
        name = "_" + name
    return ring.extend((name,))


def _lift(f, big):
    n = f.ring.n
    return f.embed(big, list(range(n)))


def _drop_last(f, small):
    return Poly(small, {m[:-1]: c for m, c in f.terms.items()})


def saturate(I, f):
    """``I : f^∞`` by eliminating ``t`` from ``I + (t f - 1)``."""
    if f.is_zero():
        raise ZeroDivisorArgument("saturation by the zero polynomial")
    ring = I.ring
    big = _with_extra_var(ring)
    t = big.gen(ring.n)
    gens = [_lift(g, big) for g in I.gens] + [t * _lift(f, big) - 1]
    order = BlockOrder([[ring.n], list(range(ring.n))])
    gb = groebner_basis(gens, big, order)
    kept = [_drop_last(g, ring) for g in gb if g.degree_in(ring.n) <= 0]
    J = Ideal(ring, kept)
    J.gb()
    return J


def ideal_quotient(I, f):
    """``I : f`` via the syzygies of ``(f, g_1, ..., g_k)``."""
    if f.is_zero():
        raise ZeroDivisorArgument("quotient by the zero polynomial")
    ring = I.ring
    J = Ideal(ring, module_colon([vec_from_poly(g) for g in I.gens], vec_from_poly(f), ring))
    J.gb()
    return J


def module_colon(N, v, ring):
    """Generators (Poly) of ``{h : h v ∈ span N}`` for vecs in a free module."""
    if not v:
        return [ring.one()]
    rank = 1 + max(c for (c, _) in v)
    for w in N:
        if w:
            rank = max(rank, 1 + max(c for (c, _) in w))
    zero = (0,) * ring.n
    gens = [dict(w) for w in N if w]
    x = dict(v)
    x[(rank, zero)] = 1
    gens.append(x)
    order = POT(ring.order)
    gb = buchberger(gens, order, ring.field)
    out = []
    for w in gb:
        if lead(w, order)[0] == rank:
            out.append(Poly(ring, {m: a for (_, m), a in w.items()}))
    return out


def intersect(I, J):
    """``I ∩ J`` as the colon ``(I e_0 + J e_1) : (e_0 + e_1)``."""
    ring = I.ring
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    zero = (0,) * ring.n
    N = [vec_from_poly(g, 0) for g in I.gens] + [vec_from_poly(g, 1) for g in J.gens]
    K = Ideal(ring, module_colon(N, {(0, zero): 1, (1, zero): 1}, ring))
    K.gb()
    return K


def radical_member(f, I):
    """Rabinowitsch: ``f ∈ √I`` iff ``1 ∈ I + (t f - 1)``."""
    ring = I.ring
    if f.is_zero():
        return True
    big = _with_extra_var(ring)
    t = big.gen(ring.n)
    gens = [_lift(g, big) for g in I.gens] + [t * _lift(f, big) - 1]
    gb = groebner_basis(gens, big)
    return len(gb) == 1 and gb[0].is_constant()


# -- ring maps ---------------------------------------------------------------

class RingMap:
    """``source -> target`` given by one target polynomial per source variable."""

    def __init__(self, source, target, images):
        images = tuple(images)
        if source.field != target.field:
            raise MixedFields(f"{source.field} vs {target.field}")
        if len(images) != source.n:
            raise InputError(f"ring map needs {source.n} images, got {len(images)}")
        for f in images:
            if not f.ring.compatible(target):
                raise MixedRings(f"image {f} not in {target}")
        self.source = source
        self.target = target
        self.images = images

    @classmethod
    def from_pairs(cls, source, target, pairs):
        table = dict(pairs)
        missing = [v for v in source.vars if v not in table]
        extra = [v for v in table if v not in source.vars]
        if missing or extra:
            raise InputError(f"map does not match {source}: missing {missing}, unknown {extra}")
        return cls(source, target, [table[v] for v in source.vars])

    def __call__(self, f):
        if not f.ring.compatible(self.source):
            raise MixedRings(f"{f.ring} vs {self.source}")
        return f.substitute(list(self.images)) if self.images else f


def apply_ring_map(phi, I):
    return Ideal(phi.target, [phi(g) for g in I.gens])


# -- submodules of free modules ----------------------------------------------

class ModuleSub:
    """Submodule of ``S^rank`` spanned by columns (tuples of Poly)."""

    def __init__(self, ring, rank, gens=()):
        self.ring = ring
        self.rank = rank
        cols = []
        for g in gens:
            g = tuple(g)
            if len(g) != rank:
                raise InputError(f"vector of length {len(g)} in a rank {rank} module")
            cols.append(g)
        self.gens = tuple(cols)
        self._gb = None
        self._lock = threading.RLock()
        self.order = POT(ring.order)

    def gb_vecs(self):
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    vecs = [vec_from_column(c) for c in self.gens]
                    self._gb = buchberger(vecs, self.order, self.ring.field)
        return self._gb

    def gb(self):
        return [column_from_vec(v, self.ring, self.rank) for v in self.gb_vecs()]

    def _basis(self):
        b = _Basis(self.order, self.ring.field)
        for v in self.gb_vecs():
            b.add(v)
        return b

    def reduce(self, col):
        return column_from_vec(self._basis().reduce(vec_from_column(col)), self.ring, self.rank)

    def contains(self, col):
        return not self._basis().reduce(vec_from_column(col))
