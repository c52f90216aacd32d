import os
from pathlib import Path

import pytest

import msrec

FIXTURES = Path(os.environ.get("MSREC_FIXTURES", Path(__file__).resolve().parents[1] / "golden"))


@pytest.fixture
def r_par():
    return msrec.load(str(FIXTURES / "R_par.rec.yaml"))


def test_membership(r_par):
    assert r_par.accepts("g(g(c))")
    assert not r_par.accepts("g(c)")
    assert r_par.accepts("sigma(z, z)")
    assert r_par.run("x") == 0


def test_bad_term_raises(r_par):
    with pytest.raises(ValueError, match="arity mismatch"):
        r_par.accepts("sigma(c)")


def test_enumerate(r_par):
    assert r_par.enumerate(2) == {"s": ["c", "x", "g(z)"]}


def test_minimize_and_boolean(r_par):
    m = msrec.minimize(r_par)
    assert m.state_counts == {"s": 2}
    assert msrec.equivalent(m, r_par)
    assert msrec.combine("difference", r_par, r_par).is_empty()
    u = msrec.combine("union", r_par, msrec.complement(r_par))
    assert msrec.minimize(u).state_counts == {"s": 1}
    assert m.syntactic_indices() == {"s": 2}


def test_json_round_trip(r_par):
    again = msrec.loads(r_par.to_json(), str(FIXTURES))
    assert again == r_par


def test_closures(r_par):
    k = msrec.recognize_terms(r_par, ["sigma(x, x)"])
    c = msrec.recognize_terms(r_par, ["c"])
    out = msrec.substitute(k, {"x": c})
    assert out.accepts("sigma(c, c)")
    assert not out.accepts("sigma(x, x)")

    star = msrec.iterate(msrec.recognize_terms(r_par, ["sigma(z, z)"]), "z")
    assert star.accepts("sigma(sigma(z, z), z)")
    assert not star.accepts("sigma(c, z)")

    q = msrec.quotient(msrec.recognize_terms(r_par, ["sigma(c, c)"]), c, "z")
    assert sorted(q.enumerate(3)["s"]) == sorted(["sigma(c, c)", "sigma(c, z)", "sigma(z, c)", "sigma(z, z)"])

    odd = msrec.inverse_translation(r_par, "g(#)")
    assert odd.accepts("g(c)") and not odd.accepts("c")


def test_cli_entry(r_par):
    code, out, _ = msrec.run_cli(["member", str(FIXTURES / "R_par.rec.yaml"), "g(g(c))"])
    assert code == 0
    assert out.strip() == "true"
    code, _, err = msrec.run_cli(["member", str(FIXTURES / "missing.rec.yaml"), "c"])
    assert code == 1
    assert err.startswith("error:")
