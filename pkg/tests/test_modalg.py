import pytest

from depthctl.build import program_fpmodule
from depthctl.corpus import gen_random_instance
from depthctl.errors import NotAComplex
from depthctl.field import Field
from depthctl.groebner import Ideal, ModuleSub
from depthctl.modules import (
    FPModule, Matrix, annihilator, dualize_complex, ext_modules, free_resolution, homology_at,
    is_zero_module, prune_complex, support_member,
)
from depthctl.primes import height_abs, min_primes

QQ = Field.QQ()


def ring(names, field=QQ):
    from depthctl.poly import Ring
    return Ring(field, tuple(names))


R2 = ring("xy")
R1 = ring("x")
R4 = ring("xyuv")
x, y = R2.gens()


def quot(R, *gens):
    return FPModule.quot(Ideal(R, [R.parse(g) for g in gens]))


TWO_PLANES = quot(R4, "x*u", "x*v", "y*u", "y*v")


def exact_interior(C):
    for i in range(1, C.length):
        H = homology_at(C.d(i + 1), C.d(i))
        if not is_zero_module(H):
            return False
    return True


def presents(C, M):
    """coker d_1 equals M as a quotient of S^b (same relation span)."""
    if M.rank == 0:
        return C.ranks[0] == 0
    a = ModuleSub(M.ring, M.rank, C.d(1).cols)
    b = ModuleSub(M.ring, M.rank, M.pres.cols)
    return all(a.contains(c) for c in b.gens) and all(b.contains(c) for c in a.gens)


def test_resolution_examples():
    assert free_resolution(quot(R2, "x", "y")).ranks == (1, 2, 1)
    assert free_resolution(FPModule.free(R2, 1)).length == 0
    C = free_resolution(TWO_PLANES)
    assert C.ranks == (1, 4, 4, 1)
    assert C.is_complex() and exact_interior(C) and presents(C, TWO_PLANES)


def test_dualize_examples():
    C = free_resolution(quot(R2, "x", "y"))
    D = dualize_complex(C)
    assert D.ranks == (1, 2, 1) and D.is_complex()
    assert dualize_complex(free_resolution(FPModule.free(R2, 1))).length == 0
    assert all(a == b for a, b in zip(dualize_complex(D).maps, C.maps))


def test_homology_examples():
    H = homology_at(Matrix.from_rows(R2, [[x]]), Matrix.zero(R2, 0, 1))
    assert Ideal(R2, [x]) == annihilator(H)
    K = free_resolution(quot(R2, "x", "y"))
    assert is_zero_module(homology_at(K.d(2), K.d(1)))
    xx = R1.gen(0)
    d1 = Matrix.from_rows(R1, [[xx, xx]])
    d2 = Matrix.from_rows(R1, [[-xx], [xx]])
    H1 = homology_at(d2, d1)
    assert annihilator(H1) == Ideal(R1, [xx]) and not is_zero_module(H1)
    with pytest.raises(NotAComplex):
        homology_at(Matrix.from_rows(R2, [[x]]), Matrix.from_rows(R2, [[y]]))


def test_ext_examples():
    E = ext_modules(FPModule.free(R2, 1))
    assert not is_zero_module(E[0]) and annihilator(E[0]).is_zero()
    assert is_zero_module(E[1]) and is_zero_module(E[2])
    E = ext_modules(quot(R2, "x", "y"))
    assert [is_zero_module(e) for e in E] == [True, True, False]
    assert annihilator(E[2]) == Ideal(R2, [x, y])
    E = ext_modules(quot(R2, "x*y"))
    assert [is_zero_module(e) for e in E] == [True, False, True]
    assert annihilator(E[1]) == Ideal(R2, [x * y])


def test_annihilator_examples():
    assert annihilator(quot(R2, "x")) == Ideal(R2, [x])
    assert annihilator(FPModule.free(R2, 1)).is_zero()
    M = FPModule.coker(R2, [[x, y]])
    assert annihilator(M) == Ideal(R2, [x, y])


def test_zero_and_support_examples():
    assert is_zero_module(quot(R2, "1"))
    M = quot(R2, "x", "y")
    assert support_member(M, Ideal(R2, [x, y]))
    assert not support_member(M, Ideal(R2, [x]))
    E2 = ext_modules(TWO_PLANES)[2]
    assert support_member(E2, Ideal(R4, R4.gens()[:2]))


# -- invariants on corpus modules -------------------------------------------

CASES = [(s, p) for p in ("monomial-QQ", "monomial-GFp", "general-GFp") for s in range(1, 16)]


@pytest.mark.parametrize("seed,profile", CASES)
def test_resolution_and_ext_invariants(seed, profile):
    M = program_fpmodule(gen_random_instance(seed, profile), "M")
    C = free_resolution(M)
    assert C.is_complex() and exact_interior(C) and presents(C, M)
    assert len(C.ranks) <= M.ring.n + 2
    Pc = prune_complex(C)
    assert Pc.is_complex() and exact_interior(Pc)

    E = ext_modules(M)
    if is_zero_module(M):
        assert all(is_zero_module(e) for e in E)
        return
    A = annihilator(M)
    nonzero = [i for i, e in enumerate(E) if not is_zero_module(e)]
    assert min(nonzero) == height_abs(A)
    for i in nonzero:
        for P in min_primes(annihilator(E[i])):
            assert P.contains_ideal(A)


@pytest.mark.parametrize("seed", [1, 2, 3, 4, 5])
def test_ext_invariants_do_not_depend_on_resolution(seed):
    prog = gen_random_instance(seed, "general-GFp")
    M = program_fpmodule(prog, "M")
    cols = list(reversed(M.pres.cols))
    N = FPModule(M.ring, M.rank, Matrix(M.ring, M.rank, cols))
    for a, b in zip(ext_modules(M), ext_modules(N)):
        assert is_zero_module(a) == is_zero_module(b)
        if not is_zero_module(a):
            assert annihilator(a) == annihilator(b)
