"""Polynomial factorization over prime fields.

Univariate: squarefree decomposition, distinct-degree splitting and the
Cantor-Zassenhaus equal-degree step, on dense coefficient lists (low degree
first). Multivariate factorization is delegated to FLINT's ``nmod_mpoly``.
"""

import random

from .errors import WrongField
from .poly import Poly

# -- dense univariate arithmetic mod p ---------------------------------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def _sub(a, b, p):
    return _add(a, [(-c) % p for c in b], p)


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod(a, b, p):
    a = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - db, 0)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _trim(q), _trim(a[:db])


def _mod(a, b, p):
    return _divmod(a, b, p)[1]


def _monic(a, p):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _deriv(a, p):
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def _powmod(base, e, m, p):
    result = [1]
    base = _mod(base, m, p)
    while e:
        if e & 1:
            result = _mod(_mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = _mod(_mul(base, base, p), m, p)
    return result


def _pth_root(a, p):
    """``a`` has only exponents divisible by p; return ``b`` with ``b^p = a``."""
    # coefficients of GF(p) are fixed by Frobenius
    return [a[i] for i in range(0, len(a), p)]


# -- factorization -----------------------------------------------------------


def squarefree_decomposition(f, p):
    """Monic ``f`` as ``[(g, k), ...]`` with ``f = prod g^k``, each g squarefree."""
    out = []
    _sqf(_monic(f, p), p, 1, out)
    merged = {}
    for g, k in out:
        if len(g) > 1:
            merged[tuple(g)] = merged.get(tuple(g), 0) + k
    return [(list(g), k) for g, k in merged.items()]


def _sqf(f, p, mult, out):
    if len(f) <= 1:
        return
    d = _deriv(f, p)
    if not d:
        _sqf(_pth_root(f, p), p, mult * p, out)
        return
    c = _gcd(f, d, p)
    w = _divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = _gcd(w, c, p)
        z = _divmod(w, y, p)[0]
        if len(z) > 1:
            out.append((_monic(z, p), i * mult))
        i += 1
        w = y
        c = _divmod(c, y, p)[0]
    if len(c) > 1:
        _sqf(_pth_root(c, p), p, mult * p, out)


def distinct_degree(f, p):
    """Squarefree monic ``f`` -> ``[(g, d)]``, g the product of its degree-d factors."""
    out = []
    x = [0, 1]
    h = x
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, f, p)
        g = _gcd(f, _sub(h, x, p), p)
        if len(g) > 1:
            out.append((g, d))
            f = _divmod(f, g, p)[0]
            h = _mod(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f, d, p, rng):
    """Split squarefree monic ``f`` whose factors all have degree ``d``."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = _trim([rng.randrange(p) for _ in range(n)])
        if len(a) <= 1:
            continue
        if p == 2:
            t = a
            acc = list(a)
            for _ in range(d - 1):
                t = _mod(_mul(t, t, p), f, p)
                acc = _add(acc, t, p)
            b = acc
        else:
            b = _sub(_powmod(a, (p ** d - 1) // 2, f, p), [1], p)
        g = _gcd(f, b, p)
        if 1 < len(g) < len(f):
            h = _divmod(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(h, d, p, rng)


def factor_dense(f, p, seed=0):
    """Monic irreducible factors with multiplicities of a dense polynomial."""
    rng = random.Random(seed)
    out = []
    for g, k in squarefree_decomposition(f, p):
        for h, d in distinct_degree(g, p):
            for q in equal_degree(h, d, p, rng):
                out.append((_monic(q, p), k))
    out.sort(key=lambda t: (len(t[0]), list(reversed(t[0])), t[1]))
    return out


def univar_factor_gfp(f, seed=0):
    """Factor a univariate :class:`Poly` over GF(p).

    Returns ``[(monic irreducible Poly, multiplicity), ...]``; the product
    reconstructs ``f`` up to its leading coefficient.
    """
    ring = f.ring
    p = ring.field.p
    if not p:
        raise WrongField(f"univariate factorization needs a prime field, got {ring.field}")
    if f.is_zero():
        raise WrongField("cannot factor the zero polynomial")
    used = f.support_vars()
    if len(used) > 1:
        raise WrongField(f"{f} is not univariate")
    if not used:
        return []
    (i,) = used
    dense = [0] * (f.degree_in(i) + 1)
    for m, c in f.terms.items():
        dense[m[i]] = c
    out = []
    for g, k in factor_dense(_trim(dense), p, seed):
        terms = {}
        for e, c in enumerate(g):
            if c:
                m = [0] * ring.n
                m[i] = e
                terms[tuple(m)] = c
        out.append((Poly(ring, terms), k))
    return out


# -- multivariate, via FLINT -------------------------------------------------


def _ctx(ring):
    import flint
    names = tuple(f"v{i}" for i in range(ring.n))
    return flint.nmod_mpoly_ctx.get(names, modulus=ring.field.p)


def _to_flint(f, ctx):
    return ctx.from_dict({m: int(c) for m, c in f.terms.items()})


def _from_flint(g, ring):
    return Poly(ring, {tuple(m): int(c) for m, c in g.to_dict().items() if int(c)})


def factor_gfp(f, seed=0):
    """Distinct monic irreducible factors with multiplicities of ``f`` over GF(p).

    Univariate input goes through :func:`univar_factor_gfp`.
    """
    ring = f.ring
    if not ring.field.p:
        raise WrongField(f"factorization needs a prime field, got {ring.field}")
    if len(f.support_vars()) <= 1:
        return univar_factor_gfp(f, seed)
    ctx = _ctx(ring)
    _, facs = _to_flint(f, ctx).factor()
    out = [(_from_flint(g, ring).monic(), int(k)) for g, k in facs]
    out.sort(key=lambda t: (t[0].total_degree(), str(t[0])))
    return out


def gcd_gfp(polys):
    ring = polys[0].ring
    ctx = _ctx(ring)
    g = None
    for f in polys:
        h = _to_flint(f, ctx)
        g = h if g is None else g.gcd(h)
    return _from_flint(g, ring).monic()
