"""Finitely presented modules, free resolutions and ``Ext^i_S(M, S)``.

Matrix convention everywhere: columns are relations, entry ``(i, j)`` is
the coefficient of basis vector ``e_i`` in column ``j``. A module
``FPModule(ring, b, A)`` is the cokernel of ``A : S^a -> S^b``.
"""

import threading
from dataclasses import dataclass

from .errors import InternalError, NotAComplex, ResolutionCapExceeded
from .groebner import (
    POT, Ideal, Lifter, ModuleSub, SchreyerOrder, _Basis, buchberger, column_from_vec,
    intersect, lead, module_colon, schreyer_syzygies, vec_from_column,
)


class Matrix:
    """Immutable matrix over a polynomial ring, stored by columns."""

    def __init__(self, ring, nrows, cols):
        self.ring = ring
        self.nrows = nrows
        self.cols = tuple(tuple(c) for c in cols)
        for c in self.cols:
            if len(c) != nrows:
                raise InternalError(f"column of length {len(c)} in a matrix with {nrows} rows")

    @property
    def ncols(self):
        return len(self.cols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @classmethod
    def from_rows(cls, ring, rows):
        rows = [list(r) for r in rows]
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls(ring, nrows, [tuple(rows[i][j] for i in range(nrows)) for j in range(ncols)])

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.zero()
        return cls(ring, nrows, [(z,) * nrows for _ in range(ncols)])

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero(), ring.one()
        return cls(ring, n, [tuple(o if i == j else z for i in range(n)) for j in range(n)])

    @classmethod
    def from_vecs(cls, ring, nrows, vecs):
        return cls(ring, nrows, [column_from_vec(v, ring, nrows) for v in vecs])

    def entry(self, i, j):
        return self.cols[j][i]

    def rows(self):
        return [[c[i] for c in self.cols] for i in range(self.nrows)]

    def vecs(self):
        return [vec_from_column(c) for c in self.cols]

    def transpose(self):
        return Matrix(self.ring, self.ncols, [tuple(c[i] for c in self.cols) for i in range(self.nrows)])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise InternalError(f"cannot multiply {self.shape} by {other.shape}")
        z = self.ring.zero()
        out = []
        for col in other.cols:
            acc = [z] * self.nrows
            for k, f in enumerate(col):
                if f.is_zero():
                    continue
                for i, g in enumerate(self.cols[k]):
                    if not g.is_zero():
                        acc[i] = acc[i] + g * f
            out.append(tuple(acc))
        return Matrix(self.ring, self.nrows, out)

    def is_zero(self):
        return all(f.is_zero() for c in self.cols for f in c)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.cols == other.cols

    __hash__ = object.__hash__

    def kron_identity(self, k):
        """``self ⊗ I_k``: block (i, j) is ``self[i, j] * I_k``."""
        z = self.ring.zero()
        cols = []
        for col in self.cols:
            for l in range(k):
                new = [z] * (self.nrows * k)
                for i, f in enumerate(col):
                    new[i * k + l] = f
                cols.append(tuple(new))
        return Matrix(self.ring, self.nrows * k, cols)

    def __repr__(self):
        return f"Matrix({[[str(f) for f in r] for r in self.rows()]})"


class FPModule:
    """``coker(pres : S^a -> S^rank)``."""

    def __init__(self, ring, rank, pres=None):
        if pres is None:
            pres = Matrix.zero(ring, rank, 0)
        if pres.nrows != rank:
            raise InternalError(f"presentation has {pres.nrows} rows for rank {rank}")
        self.ring = ring
        self.rank = rank
        self.pres = pres
        self._lock = threading.RLock()
        self._cache = {}

    @classmethod
    def quot(cls, I):
        """``S / I``."""
        ring = I.ring
        return cls(ring, 1, Matrix(ring, 1, [(g,) for g in I.gens]))

    @classmethod
    def free(cls, ring, rank):
        return cls(ring, rank)

    @classmethod
    def coker(cls, ring, rows):
        return cls(ring, len(rows), Matrix.from_rows(ring, rows))

    def __repr__(self):
        return f"FPModule(rank={self.rank}, relations={self.pres.ncols})"

    def _cached(self, name, fn):
        if name not in self._cache:
            with self._lock:
                if name not in self._cache:
                    self._cache[name] = fn()
        return self._cache[name]

    def submodule(self):
        return self._cached("sub", lambda: ModuleSub(self.ring, self.rank, self.pres.cols))

    def relation_vecs(self):
        return [v for v in self.pres.vecs() if v]


def is_zero_module(M):
    """Zero iff every unit vector lies in the relation span."""
    if M.rank == 0:
        return True
    gb = M.submodule().gb_vecs()
    order = M.submodule().order
    zero = (0,) * M.ring.n
    units = {lead(v, order) for v in gb}
    return all((j, zero) in units for j in range(M.rank))


# -- resolutions -------------------------------------------------------------

@dataclass
class FreeComplex:
    """``S^{b_L} -> ... -> S^{b_0}``; ``maps[i-1]`` is ``d_i : S^{b_i} -> S^{b_{i-1}}``."""

    ring: object
    ranks: tuple
    maps: tuple

    @property
    def length(self):
        return len(self.maps)

    def d(self, i):
        """``d_i`` with zero maps outside 1..L."""
        if 1 <= i <= self.length:
            return self.maps[i - 1]
        src = self.ranks[i] if 0 <= i < len(self.ranks) else 0
        tgt = self.ranks[i - 1] if 0 <= i - 1 < len(self.ranks) else 0
        return Matrix.zero(self.ring, tgt, src)

    def is_complex(self):
        return all((self.maps[i - 1] @ self.maps[i]).is_zero() for i in range(1, self.length))


def free_resolution(M, cap=None, prune=False):
    """Schreyer resolution of ``M``; ``coker d_1 ≅ M``.

    Generators at each level are sorted by the exponent of the next variable
    in their leading term, so leading terms lose one variable per step and
    the construction stops after at most ``n + 1`` maps. With ``prune`` the
    unit entries are cancelled afterwards (see ``prune_complex``).
    """
    C = M._cached("resolution", lambda: _schreyer_resolution(M, cap))
    if not prune:
        return C
    return M._cached("pruned", lambda: prune_complex(C))


def prune_complex(C):
    """Cancel unit entries by Gaussian elimination.

    A unit ``u = d_i[r, c]`` splits off ``S --u--> S`` as a direct summand;
    removing it keeps the homology. Clear row r of d_i with column c, drop
    column c and row r of d_i, column r of d_{i-1} and row c of d_{i+1}.
    """
    ring = C.ring
    field = ring.field
    ranks = list(C.ranks)
    maps = [[list(col) for col in d.cols] for d in C.maps]

    def unit_entry(A):
        for c, col in enumerate(A):
            for r, f in enumerate(col):
                if not f.is_zero() and f.is_constant():
                    return r, c
        return None

    for i, A in enumerate(maps):
        while True:
            hit = unit_entry(A)
            if hit is None:
                break
            r, c = hit
            inv = field.inv(A[c][r].constant_term())
            pivot = A[c]
            for j, col in enumerate(A):
                if j != c and not col[r].is_zero():
                    q = col[r].scale(inv)
                    A[j] = [a - q * b for a, b in zip(col, pivot)]
            del A[c]
            for col in A:
                del col[r]
            if i > 0:
                del maps[i - 1][r]
            if i + 1 < len(maps):
                for col in maps[i + 1]:
                    del col[c]
            ranks[i] -= 1
            ranks[i + 1] -= 1
    while len(maps) > 0 and ranks[-1] == 0:
        maps.pop()
        ranks.pop()
    out = tuple(Matrix(ring, ranks[i], [tuple(col) for col in A]) for i, A in enumerate(maps))
    return FreeComplex(ring, tuple(ranks), out)


def _schreyer_resolution(M, cap):
    ring = M.ring
    n = ring.n
    if cap is None:
        cap = 2 * n + 2
    order = POT(ring.order)
    G = buchberger(M.relation_vecs(), order, ring.field)
    ranks = [M.rank]
    maps = []
    level = 0
    while G:
        if level < n:
            G = sorted(G, key=lambda v: -lead(v, order)[1][level])
        level += 1
        if level > cap:
            raise ResolutionCapExceeded(f"resolution longer than {cap}")
        maps.append(Matrix.from_vecs(ring, ranks[-1], G))
        ranks.append(len(G))
        syz = schreyer_syzygies(G, order, ring.field)
        order = SchreyerOrder(order, [lead(v, order) for v in G])
        G = syz
    return FreeComplex(ring, tuple(ranks), tuple(maps))


def dualize_complex(C):
    """``Hom(C, S)``: transposed maps in reverse order."""
    maps = tuple(d.transpose() for d in reversed(C.maps))
    return FreeComplex(C.ring, tuple(reversed(C.ranks)), maps)


# -- homology ----------------------------------------------------------------

def kernel_vecs(D):
    """Generators of ``ker(D)`` as vecs in ``S^{D.ncols}``."""
    ring = D.ring
    if D.ncols == 0:
        return []
    if D.nrows == 0 or D.is_zero():
        zero = (0,) * ring.n
        return [{(j, zero): 1} for j in range(D.ncols)]
    return Lifter(D.vecs(), D.nrows, ring).syzygies()


def homology_at(d_in, d_out):
    """``ker(d_out) / im(d_in)`` as an FPModule."""
    ring = d_in.ring
    if d_out.ncols != d_in.nrows:
        raise NotAComplex(f"shapes {d_out.shape} and {d_in.shape} do not compose")
    if d_out.nrows and d_in.ncols and not (d_out @ d_in).is_zero():
        raise NotAComplex("d_out * d_in is not zero")
    r = d_in.nrows
    if r == 0:
        return FPModule(ring, 0)
    if d_out.nrows == 0 or d_out.is_zero():
        return FPModule(ring, r, Matrix(ring, r, [c for c in d_in.cols if any(c)]))
    K = kernel_vecs(d_out)
    return subquotient(ring, K, r, [v for v in d_in.vecs() if v])


def subquotient(ring, K, ambient_rank, L):
    """Present ``span(K) / span(L)`` inside ``S^ambient_rank`` (``L ⊆ span K``)."""
    if not K:
        return FPModule(ring, 0)
    lifter = Lifter(K, ambient_rank, ring)
    cols = list(lifter.syzygies())
    for v in L:
        c = lifter.lift(v)
        if c is None:
            raise NotAComplex("image is not contained in the kernel")
        if c:
            cols.append(c)
    r = len(K)
    return FPModule(ring, r, Matrix.from_vecs(ring, r, cols))


def ext_modules(M):
    """``[Ext^i_S(M, S) for i in 0..n]``; higher ones are checked to vanish."""
    return M._cached("ext", lambda: _ext(M))


def _ext(M):
    C = free_resolution(M, prune=True)
    n = M.ring.n
    L = C.length
    out = []
    for i in range(max(n, L) + 1):
        if i > L:
            E = FPModule(M.ring, 0)
        else:
            d_in = C.d(i).transpose()
            d_out = C.d(i + 1).transpose()
            E = homology_at(d_in, d_out)
        if i > n:
            if not is_zero_module(E):
                raise InternalError(f"Ext^{i} nonzero above n = {n}")
            continue
        out.append(E)
    return out


# -- annihilators and supports -----------------------------------------------

def annihilator(M):
    return M._cached("ann", lambda: _annihilator(M))


def _annihilator(M):
    ring = M.ring
    if M.rank == 0:
        return Ideal(ring, [ring.one()])
    N = M.relation_vecs()
    if M.rank == 1:
        I = Ideal(ring, [column_from_vec(v, ring, 1)[0] for v in N])
        I.gb()
        return I
    zero = (0,) * ring.n
    result = None
    for j in range(M.rank):
        Q = Ideal(ring, module_colon(N, {(j, zero): 1}, ring))
        result = Q if result is None else intersect(result, Q)
        if result.is_zero():
            break
    result.gb()
    return result


def support_member(M, p):
    """``p ∈ Supp M`` iff ``Ann M ⊆ p``."""
    return p.contains_ideal(annihilator(M))


# -- complexes of cokernels --------------------------------------------------

def relative_kernel(D, rel_target):
    """``{v : D v ∈ span(rel_target)}`` as vecs in ``S^{D.ncols}``."""
    ring = D.ring
    r = D.ncols
    if r == 0:
        return []
    if D.nrows == 0 or D.is_zero():
        zero = (0,) * ring.n
        return [{(j, zero): 1} for j in range(r)]
    gens = D.vecs() + list(rel_target)
    syz = Lifter(gens, D.nrows, ring).syzygies()
    out = []
    for s in syz:
        v = {t: a for t, a in s.items() if t[0] < r}
        if v:
            out.append(v)
    return out


def span_contains_all(ring, rank, span, vecs):
    """Whether every vec in ``vecs`` lies in the span of ``span``."""
    if not vecs:
        return True
    order = POT(ring.order)
    gb = buchberger([v for v in span if v], order, ring.field)
    b = _Basis(order, ring.field)
    for v in gb:
        b.add(v)
    return all(not b.reduce(v) for v in vecs)


def block_relations(M, copies):
    """Relation vecs of ``M^copies`` in ``S^(copies * rank)``, blockwise."""
    rels = M.relation_vecs()
    b = M.rank
    out = []
    for k in range(copies):
        for v in rels:
            out.append({(k * b + c, m): a for (c, m), a in v.items()})
    return out


def cokernel_homology_vanishes(M, d_in, d_out, copies_here, copies_next):
    """Homology at the middle of ``M^a --d_in⊗1--> M^r --d_out⊗1--> M^c``."""
    ring = M.ring
    b = M.rank
    if copies_here == 0 or b == 0:
        return True
    Dout = d_out.kron_identity(b)
    K = relative_kernel(Dout, block_relations(M, copies_next))
    if not K:
        return True
    image = [v for v in d_in.kron_identity(b).vecs() if v] + block_relations(M, copies_here)
    return span_contains_all(ring, copies_here * b, image, K)
