import random

import pytest

from depthctl.build import program_ideal, program_rmodule
from depthctl.corpus import PROFILES, find_point, gen_random_instance, verify_corpus, verify_instance
from depthctl.errors import InputError
from depthctl.groebner import Ideal
from depthctl.parser import parse_input


@pytest.mark.parametrize("profile", PROFILES)
def test_deterministic(profile):
    assert gen_random_instance(1, profile).to_text() == gen_random_instance(1, profile).to_text()


@pytest.mark.parametrize("profile", PROFILES)
def test_seeds_differ(profile):
    texts = {gen_random_instance(s, profile).to_text() for s in range(1, 51)}
    assert len(texts) == 50


@pytest.mark.parametrize("profile", PROFILES)
def test_shape(profile):
    for s in range(1, 51):
        prog = gen_random_instance(s, profile)
        assert 3 <= len(prog.ring.vars) <= 4
        assert {"J", "I", "M"} <= prog.names()
        J = prog.ideals["J"]
        assert 2 <= len(J) <= 4 and all(g.total_degree() <= 3 for g in J)
        assert 1 <= len(prog.ideals["I"]) <= 3
        assert all(p.total_degree() <= 2 for p in prog.ideals["I"])
        if profile.startswith("monomial"):
            assert all(len(g.terms) == 1 for g in J)
        assert parse_input(prog.to_text()).to_text() == prog.to_text()


@pytest.mark.slow
@pytest.mark.parametrize("profile", PROFILES)
def test_every_program_validates(profile):
    # make_rmodule runs inside program_rmodule and raises if J does not kill M
    for s in range(1000):
        prog = gen_random_instance(s, profile)
        M = program_rmodule(prog, "M", "J")
        assert not M.J.is_unit()


def test_find_point_lies_on_variety():
    hits = 0
    for s in range(1, 30):
        prog = gen_random_instance(s, "general-GFp")
        M = program_rmodule(prog, "M", "J")
        I = program_ideal(prog, "I")
        pt = find_point(prog, [M.J, I], random.Random(s))
        if pt is None:
            continue
        hits += 1
        for g in list(M.J.gens) + list(I.gens):
            assert g.evaluate(pt) == 0
    assert hits > 0


def test_verify_small():
    rep = verify_corpus(42, 5, "monomial-QQ")
    assert rep.passed and rep.count == 5
    assert [r["index"] for r in rep.to_dict()["instances"]] == list(range(5))
    with pytest.raises(InputError):
        verify_corpus(42, 0, "monomial-QQ")
    with pytest.raises(InputError):
        gen_random_instance(1, "bogus")


def test_verify_parallel_matches_serial():
    a = verify_corpus(3, 6, "general-GFp").to_dict()
    b = verify_corpus(3, 6, "general-GFp", jobs=3).to_dict()
    assert a == b


def test_instance_report_fields():
    r = verify_instance(1, "monomial-GFp")
    assert r.error is None
    assert len(set(r.depth.values())) == 1
    assert set(r.properties) == {"agreement", "inequality", "fdim_bounds", "independence"}
    assert r.passed
