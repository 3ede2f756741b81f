import io
import json
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from depthctl.cli import run
from depthctl.errors import DuplicateName, InputSyntaxError, UnknownVariable
from depthctl.parser import parse_input

DATA = Path(__file__).resolve().parent.parent / "data"
PLANES = str(DATA / "two_planes.dep")
HYPER = str(DATA / "hypersurface.dep")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


# parser

def test_parse_examples():
    p = parse_input("ring QQ[x,y]; ideal I = x;")
    assert list(p.ideals) == ["I"]
    p = parse_input("ring GF(32003)[x]; ideal I = x^2 + 1;")
    assert p.ring.field.p == 32003
    with pytest.raises(InputSyntaxError) as e:
        parse_input("ideal I = x; ring QQ[x];")
    assert (e.value.line, e.value.column) == (1, 1)


def test_parse_errors_carry_position():
    with pytest.raises(InputSyntaxError) as e:
        parse_input("ring QQ[x,y];\nideal I = x +;\n")
    assert e.value.line == 2
    with pytest.raises(InputSyntaxError):
        parse_input("ring QQ[x]; ideal I = x")
    with pytest.raises(UnknownVariable):
        parse_input("ring QQ[x]; ideal I = z;")
    with pytest.raises(DuplicateName):
        parse_input("ring QQ[x]; ideal I = x; prime I = x;")
    with pytest.raises(DuplicateName):
        parse_input("ring QQ[x,x]; ideal I = x;")
    with pytest.raises(InputSyntaxError):
        parse_input("ring QQ[x]; module M = quot K;")


def test_parse_all_statement_kinds():
    text = """# comment
ring QQ[x,y,t];
ideal J = x*y;  # trailing comment
prime P = x, y;
module M = quot J;
module N = coker [[x, y^2, 0], [0, x, y]];
map phi : t -> x^2, x -> x, y -> y;
"""
    p = parse_input(text)
    assert set(p.names()) == {"J", "P", "M", "N", "phi"}
    assert p.modules["N"][0] == "coker" and len(p.modules["N"][1]) == 2
    assert parse_input(p.to_text()).to_text() == p.to_text()


_poly = st.lists(
    st.tuples(st.integers(-5, 5), st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=4
).map(lambda ts: " + ".join(f"({c})*x^{a}*y^{b}" for c, a, b in ts))


@given(st.lists(_poly, min_size=1, max_size=3))
def test_print_parse_round_trip(polys):
    p = parse_input("ring GF(7)[x,y]; ideal I = " + ", ".join(polys) + ";")
    text = p.to_text()
    q = parse_input(text)
    assert q.to_text() == text
    assert q.ideals["I"] == p.ideals["I"]


# commands

def test_depth_json_schema():
    doc = call_json("depth", "-f", PLANES, "-M", "M", "-J", "J", "-I", "m", "--json")
    assert list(doc)[:2] == ["command", "ring"]
    assert doc["ring"] == {"field": "QQ", "vars": ["x", "y", "u", "v"]}
    assert doc["value"] == 1 and doc["infinite"] is False
    assert doc["witness"] == {"prime": ["u", "v", "x", "y"] if doc["witness"]["prime"][0] == "u"
                              else ["x", "y", "u", "v"], "height": 0, "local_depth": 1}
    assert sorted(doc["witness"]["prime"]) == ["u", "v", "x", "y"]


def test_depth_method_all_and_hypersurface():
    doc = call_json("depth", "-f", PLANES, "-M", "M", "-J", "J", "-I", "m", "--method", "all", "--json")
    assert doc["value"] == 1
    doc = call_json("depth", "-f", HYPER, "-M", "M", "-J", "J", "-I", "D", "--method", "all", "--json")
    assert doc["value"] == 1


def test_lambda_of_free_module(tmp_path):
    f = tmp_path / "free.dep"
    f.write_text("ring QQ[x,y]; ideal Z = 0; module S = quot Z;\n")
    doc = call_json("lambda", "-f", str(f), "-M", "S", "--json")
    assert doc["lambda"] == [{"generators": []}]


def test_fdim_and_att():
    doc = call_json("fdim", "-f", PLANES, "-M", "M", "-J", "J", "-I", "m", "--point", "0,0,0,0")
    assert doc["value"] == 2
    doc = call_json("att", "-f", PLANES, "-M", "M", "-J", "J", "--point", "0,0,0,0", "-i", "2")
    assert sorted(doc["primes"]) == [["u", "v"], ["x", "y"]]


def test_exit_codes(tmp_path):
    code, _, err = call("fdim", "-f", PLANES, "-M", "M", "-J", "J", "-I", "m", "--point", "1,0,0,0")
    assert code == 1 and json.loads(err)["error"]["type"] == "PointNotOnVariety"
    code, _, err = call("depth", "-f", PLANES, "-M", "nope", "-I", "m")
    assert code == 1 and json.loads(err)["error"]["type"] == "UnknownName"
    code, _, _ = call("depth", "-f", PLANES)
    assert code == 1
    bad = tmp_path / "bad.dep"
    bad.write_text("ring QQ[x];\nideal I = x +;\n")
    code, _, err = call("lambda", "-f", str(bad), "-M", "I")
    assert code == 1 and json.loads(err)["error"]["line"] == 2
    circle = tmp_path / "circle.dep"
    circle.write_text("ring QQ[x,y]; ideal C = x^2 + y^2 - 1; module M = quot C;\n")
    code, _, err = call("lambda", "-f", str(circle), "-M", "M", "-J", "C")
    assert code == 2 and json.loads(err)["error"]["type"] == "UnsupportedFieldForDecomposition"
    code, _, _ = call("verify", "--seed", "1", "--count", "0", "--profile", "monomial-QQ")
    assert code == 1


def test_indep_command():
    s1, s2 = str(DATA / "pullback_s1.dep"), str(DATA / "pullback_s2.dep")
    doc = call_json("indep", "-f", s1, "-g", s2, "--map", "phi", "-M", "M", "-N", "N")
    assert doc["independent"] is True
    full = ("-M", "M", "-N", "N", "-J", "Z", "-K", "K")
    doc = call_json("indep", "-f", s1, "-g", s2, "--map", "phi", *full)
    assert doc["independent"] is True and doc["lambda_M"] == [["x", "y"]]
    # over Ann N both rings collapse to QQ, so only the full presentation exposes the bad map
    code, _, err = call("indep", "-f", s1, "-g", s2, "--map", "bad", *full)
    assert code == 1 and json.loads(err)["error"]["type"] == "NotAnIsomorphismWitness"


def test_seed_env_override(monkeypatch, tmp_path):
    monkeypatch.setenv("DEPTHCTL_SEED", "7")
    doc = call_json("lambda", "-f", HYPER, "-M", "M", "-J", "J", "--json", "--seed", "3")
    assert doc["seed"] == 7
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call("verify", "--seed", "1", "--count", "2", "--profile", "monomial-QQ", "--report", str(a))[0] == 0
    monkeypatch.delenv("DEPTHCTL_SEED")
    assert call("verify", "--seed", "7", "--count", "2", "--profile", "monomial-QQ", "--report", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv("DEPTHCTL_SEED", "x")
    assert call("verify", "--seed", "7", "--count", "2", "--profile", "monomial-QQ")[0] == 1


def test_json_key_order_deterministic():
    argv = ("depth", "-f", PLANES, "-M", "M", "-J", "J", "-I", "L", "--json")
    assert call(*argv)[1] == call(*argv)[1]
