"""Pencil construction, master differential identity, partial fractions, signs."""
from __future__ import annotations

import random
from types import SimpleNamespace

import pytest

from hforms import abel as A
from hforms import splitting as S
from hforms.action import act_E, act_F, act_H
from hforms.brackets import BracketPoly, bracket
from hforms.forms import base_point
from hforms.localization import dz, from_pbw, is_central, yinv
from hforms.oracle import classical_eval, classical_pbw
from hforms.pbw import PBWPoly, x, y
from hforms.polarize import index_degree


def test_data_validation():
    d = A.standard_data(1, 3, 0, 1)
    assert d.branch == (1, 2, 3, 4) and d.q_indices == (5,)
    assert d.k == 3 and d.moving_indices == {0, 5}
    # the defaulted q comes from the degree balance
    assert A.standard_data(1, 2).q_indices == ()
    assert A.standard_data(2, 5).q_indices == (8, 9)

    with pytest.raises(ValueError):  # p - q must equal g + 1 - s
        A.HyperellipticData(2, 5, (1, 2, 3, 4, 5, 6), (7,), (), (8,))
    with pytest.raises(ValueError):  # repeated letter
        A.HyperellipticData(1, 3, (1, 2, 3, 4), (), (), (4,))
    with pytest.raises(ValueError):  # base index is reserved
        A.HyperellipticData(1, 3, (0, 2, 3, 4), (), (), (5,))
    with pytest.raises(ValueError):  # wrong branch count
        A.HyperellipticData(1, 3, (1, 2, 3), (), (), (5,))
    with pytest.raises(ValueError):  # wrong U count
        A.HyperellipticData(2, 5, (1, 2, 3, 4, 5, 6), (), (), (8, 9))
    with pytest.raises(ValueError):  # g = 1, s = 3, p = 0 forces q = 1, not 0
        A.standard_data(1, 3, 0, 0)


def test_build_r_matches_display_and_degree():
    d = A.standard_data(1, 3, 0, 1)
    r = A.build_r(d)
    ref = bracket(0, 1) * bracket(0, 2) * bracket(0, 3) \
        - bracket(0, 4) * bracket(0, 5) * bracket(0, 5)
    assert not (r - ref)
    assert index_degree(r, 0) == 3

    # degenerate Q = 1: degree arithmetic still balances
    d2 = A.standard_data(1, 2)
    assert d2.k == 2 and index_degree(A.build_r(d2), 0) == 2

    # h = 0 image agrees with the classical product computed independently
    r_bp = BracketPoly.br(0, 1) * BracketPoly.br(0, 2) * BracketPoly.br(0, 3) \
        - BracketPoly.br(0, 4) * BracketPoly.br(0, 5) ** 2
    assert classical_eval(r_bp) == classical_pbw(r)


def test_differential_cleared_pair():
    d = A.standard_data(2, 4, 0, 1)
    diff = A.hyperelliptic_differential(d)
    rep = diff.invariance_report()
    assert rep["numerator_invariant"] and rep["w_squared_central"]
    assert not act_E(diff.numerator) and not act_F(diff.numerator) and not act_H(diff.numerator)
    assert diff.numerator == bracket(0, 7) * bracket(("d", 0), 0)
    assert is_central(diff.w_squared)

    # genus 1: the numerator is exactly y^2 dz
    e = A.hyperelliptic_differential(A.standard_data(1, 3, 0, 1))
    assert (from_pbw(e.numerator) * yinv(0, 2) - dz(0)).is_zero()

    # moved to a coordinate point the pair relabels letters and differentials
    at9 = A.hyperelliptic_differential(A.standard_data(1, 3, 0, 1), base_point(9))
    assert at9.numerator == bracket(("d", 9), 9)
    assert at9.w_squared == bracket(9, 1) * bracket(9, 2) * bracket(9, 3) * bracket(9, 4)
    with pytest.raises(ValueError):
        A.hyperelliptic_differential(d, A.Point(x(1) - x(3), y(1) - y(3)))


def test_master_identity_instances():
    for d in (
        A.standard_data(1, 3, 0, 1),   # Q moves
        A.standard_data(1, 1, 1, 0),   # P moves
        A.standard_data(1, 2),         # nothing moves but the base point
        A.standard_data(2, 4, 0, 1),
    ):
        rep = A.master_identity(d)
        assert rep["holds"], rep
        assert rep["core_zero"] and rep["display_zero"] and rep["oracle"]["holds"]
        assert rep["residual"] is None


def test_master_identity_second_instance_repairs():
    # the balanced repairs of the (g=2, s=5, p=0, q=1) tuple, both ways
    rep_q = A.master_identity(A.standard_data(2, 5, 0, 2))   # keep s, fix q
    assert rep_q["holds"] and rep_q["k"] == 5
    rep_s = A.master_identity(A.standard_data(2, 4, 0, 1))   # keep q, fix s
    assert rep_s["holds"] and rep_s["k"] == 4


def test_partial_fraction_small_cases():
    # k = 2, constant numerator: c/(X1X2) + c/(X2X1) = 0
    rep = A.partial_fraction_identity([1, 2], BracketPoly.scalar(3))
    assert rep["holds"] and rep["oracle"]["holds"] and rep["constructions_agree"]

    # k = 3 with g = (04) clears to the Grassmann-Pluecker trinomial
    gform = BracketPoly.br(0, 4)
    rep = A.partial_fraction_identity([1, 2, 3], gform)
    assert rep["holds"] and rep["oracle"]["holds"]
    p1, p2, p3 = base_point(1), base_point(2), base_point(3)
    cleared = (
        bracket(1, 4) * p2.bracket(p3)
        - bracket(2, 4) * p1.bracket(p3)
        + bracket(3, 4) * p1.bracket(p2)
    )
    trinomial = (
        bracket(1, 4) * bracket(2, 3)
        - bracket(1, 3) * bracket(2, 4)
        + bracket(1, 2) * bracket(3, 4)
    )
    assert not (cleared - trinomial)
    assert not trinomial

    # k = 4 with g = (04)(05)
    rep = A.partial_fraction_identity([1, 2, 3, 6], BracketPoly.br(0, 4) * BracketPoly.br(0, 5))
    assert rep["holds"] and rep["oracle"]["holds"]

    with pytest.raises(ValueError):
        A.partial_fraction_identity([1], BracketPoly.one())
    with pytest.raises(ValueError):  # degree must be k - 2
        A.partial_fraction_identity([1, 2, 3], BracketPoly.br(0, 4) * BracketPoly.br(0, 5))


def test_partial_fraction_randomized():
    rng = random.Random(20240830)
    for k in (4, 5):
        for _ in range(2):
            pool = rng.sample(range(1, 40), k + (k - 2))
            pts, letters = pool[:k], pool[k:]
            gform = BracketPoly.one()
            for i in letters:
                gform = gform * BracketPoly.br(0, i)
            rep = A.partial_fraction_identity(pts, gform)
            assert rep["holds"] and rep["oracle"]["holds"], (k, pts, letters)

    # Point-object path (no symbolic twin): same verdict through the engine only
    rep = A.partial_fraction_identity([base_point(1), base_point(2), base_point(3)],
                                      bracket(0, 4))
    assert rep["holds"] and "oracle" not in rep


def test_moving_form_clone_identification():
    gform, mapping = A.moving_form(A.standard_data(1, 3, 0, 1))
    assert mapping == {(1, 5): (0, 6)}
    assert gform == -BracketPoly.br(0, 6)

    d = A.standard_data(2, 5, 0, 2)
    gform, mapping = A.moving_form(d)
    assert set(mapping) == {(1, 8), (1, 9)}
    assert index_degree(gform.expand(), 0) == d.k - 2


def test_sign_relations_realizations():
    rep = A.sign_relations()
    assert rep["holds"]
    assert len(rep["quadratic"]["roots"]) == 2
    for root in rep["quadratic"]["roots"]:
        assert root["vanishes"] and root["branch_square"]
        assert root["zero_factor"] and root["other_factor_nonzero"]
        assert root["epsilon"] == 1
    eng = rep["engineered"]
    assert eng["point_axiom"] and eng["vanishes"] and eng["closed_form"]
    assert eng["branch_square"] and eng["zero_factor"] and eng["other_factor_nonzero"]


def test_splitting_tower_arithmetic():
    t = S.SplittingTower([-2, 0, 1])  # t^2 - 2
    r1, r2 = t.roots
    assert r1 + r2 == t.zero()
    assert r1 * r2 == -2
    assert r1 * r1 == 2
    assert (r1 + 1) * (r1 - 1) == 1

    cubic = S.SplittingTower([-2, 0, 0, 1])  # t^3 - 2
    a, b, c = cubic.roots
    assert a + b + c == cubic.zero()
    assert a * b + a * c + b * c == cubic.zero()
    assert a * b * c == 2
    assert a * a * a == 2

    with pytest.raises(ValueError):
        S.SplittingTower([1, 2])  # not monic at the top? (2t + 1)


def test_classical_sum_instances():
    for seed in (0, 1, 2):
        rep = S.pencil_sum_is_zero(A.standard_data(1, 3, 0, 1), seed=seed)
        assert rep["holds"] and not rep["nonzero"], rep
        assert rep["symbols"] == ["dx5", "dy5"]
    rep = S.pencil_sum_is_zero(A.standard_data(1, 1, 1, 0), seed=5)
    assert rep["holds"] and rep["symbols"] == ["dx5", "dy5"]
    rep = S.pencil_sum_is_zero(A.standard_data(2, 4, 0, 1), seed=5)
    assert rep["holds"] and rep["sign_square"]


def test_classical_sum_detects_second_kind():
    # a numerator of degree g (not g - 1) gives a differential of the second
    # kind, whose sum over the roots must NOT vanish: the oracle is sensitive
    fake = SimpleNamespace(g=1, s=3, branch=(1, 2, 3, 4), u_indices=(6,),
                           p_indices=(), q_indices=(5,))
    rep = S.pencil_sum_is_zero(fake, seed=0)
    assert not rep["holds"] and rep["nonzero"]


def test_abel_suite_end_to_end():
    steps = A.abel_suite(A.standard_data(1, 3, 0, 1), seed=11)
    assert [s["step"] for s in steps] == [
        "pencil",
        "differential",
        "master_identity",
        "partial_fraction",
        "sign_relations",
        "classical_sum",
    ]
    assert all(s["holds"] for s in steps)
    assert "skipped" not in steps[-1]

    steps = A.abel_suite(A.standard_data(2, 5, 0, 2), seed=11)
    assert all(s["holds"] for s in steps)
    assert steps[-1].get("skipped")  # k = 5 splitting gated out of the suite
