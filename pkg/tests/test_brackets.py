import random

import pytest

from hforms.brackets import BracketPoly, bracket, gp_combination
from hforms.oracle import (
    BackendDisagreement,
    classical_eval,
    verify_bracket_identity,
)
from hforms.pbw import PBWPoly, x, y
from hforms.scalars import Scalar

h = Scalar.h()


def test_bracket_closed_form():
    assert bracket(1, 2) == x(1) * y(2) - y(1) * x(2) - h * y(1) * y(2)


def test_bracket_diagonal_and_antisymmetry():
    assert not bracket(1, 1)
    assert bracket(2, 1) == -bracket(1, 2)


def test_alternative_expressions():
    for i, j in [(1, 2), (2, 5), (3, 4)]:
        b = bracket(i, j)
        assert b == x(i) * y(j) - x(j) * y(i)
        assert b == y(j) * x(i) - y(i) * x(j)


def test_centrality_randomized():
    rng = random.Random(59)
    for _ in range(60):
        i, j, k = (rng.randint(1, 5) for _ in range(3))
        b = bracket(i, j)
        assert (x(k) * b) == (b * x(k))
        assert (y(k) * b) == (b * y(k))


def test_gp_relation_randomized():
    rng = random.Random(61)
    for _ in range(100):
        ii, jj, kk, ll = (rng.randint(1, 7) for _ in range(4))
        c = gp_combination(ii, jj, kk, ll)
        assert not c.expand()
        assert not classical_eval(c)


def test_bracketpoly_normalization():
    assert not BracketPoly.br(3, 3)
    assert BracketPoly.br(2, 1) == -BracketPoly.br(1, 2)
    e = BracketPoly.br(1, 2) * BracketPoly.br(2, 1)
    assert e.expand() == -(bracket(1, 2) * bracket(1, 2))


def test_classical_eval_shapes():
    from hforms.oracle import cx, cy

    b = BracketPoly.br(1, 2)
    assert classical_eval(b) == cx((0, 1)) * cy((0, 2)) - cy((0, 1)) * cx((0, 2))
    sq = classical_eval(b * b)
    assert sq == classical_eval(b) * classical_eval(b)


def _random_bracket_poly(rng, max_idx=6, max_factors=3, max_terms=3):
    out = BracketPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        t = BracketPoly.scalar(
            Scalar.rat(rng.randint(-3, 3)) + Scalar.h(1, rng.randint(-1, 1))
        )
        for _ in range(rng.randint(1, max_factors)):
            t = t * BracketPoly.br(rng.randint(1, max_idx), rng.randint(1, max_idx))
        out = out + t
    return out


def test_backend_agreement_randomized():
    rng = random.Random(67)
    checked = 0
    for _ in range(200):
        e = _random_bracket_poly(rng)
        verdict = verify_bracket_identity(e)
        assert verdict["engine_zero"] == verdict["classical_zero"]
        checked += 1
    assert checked == 200


def test_backend_agreement_on_engineered_zeroes():
    # GP combinations multiplied by random bracket polys stay zero
    rng = random.Random(71)
    for _ in range(25):
        z = gp_combination(*(rng.randint(1, 6) for _ in range(4)))
        e = z * _random_bracket_poly(rng, max_factors=2, max_terms=2)
        assert verify_bracket_identity(e)["holds"]


def test_nonidentity_detected():
    e = BracketPoly.br(1, 2) * BracketPoly.br(3, 4) - BracketPoly.br(1, 3) * BracketPoly.br(2, 4)
    v = verify_bracket_identity(e)
    assert not v["holds"]


def test_disagreement_raises(monkeypatch):
    # sabotage the classical backend for one call to prove the tripwire works
    import hforms.oracle as om

    e = gp_combination(1, 2, 3, 4)
    real = om.classical_eval
    monkeypatch.setattr(om, "classical_eval", lambda bp: om.CommPoly.one())
    with pytest.raises(BackendDisagreement):
        om.verify_bracket_identity(e)
    monkeypatch.setattr(om, "classical_eval", real)
    assert om.verify_bracket_identity(e)["holds"]


def test_clone_brackets():
    b = bracket(1, ("d", 2))
    assert b.degree_profile() == {1: 1, "d2": 1}
    assert bracket(("d", 2), 1) == -b
