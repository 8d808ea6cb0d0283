"""Tests for numeric evaluation, sampling and the finite-difference oracles."""
from __future__ import annotations

import math

import pytest

from nilforms import numeric, ring
from nilforms.frames import quaternionic_heisenberg
from nilforms.gstruct import direct_torsion
from nilforms.profiles import profile
from nilforms.ring import expf, jet, jet_sym

BOX = ((-0.2, 0.2),) * 4


@pytest.fixture(scope="module")
def ball():
    return profile("ball", absA2=3)


@pytest.fixture(scope="module")
def ball_pts(ball):
    return numeric.profile_points(ball, n=6, seed=3, box=BOX)


def test_build_assignment_merges_consts(ball):
    assi = numeric.build_assignment(ball, (0, 0, 0, 0), {"q": 2, ("c", "p"): 3})
    assert assi[("c", "q")] == 2.0
    assert assi[("c", "p")] == 3.0
    assert assi[jet_sym()] == pytest.approx(0.5 * math.log(0.75))
    assert assi[jet_sym(1)] == 0.0


def test_eval_helpers(ball):
    x = (0.1, 0.0, -0.1, 0.0)
    g = float(ball.e2f(x))
    assert numeric.eval_coef(expf(2), ball, x) == pytest.approx(g)
    gh = quaternionic_heisenberg()
    form = gh.form(1, {(1,): expf(2), (2,): ring.rat(5)})
    vals = numeric.eval_form(form, ball, x)
    assert vals[(1,)] == pytest.approx(g) and vals[(2,)] == 5.0
    assert numeric.form_max_abs(form, ball, [x]) == 5.0


def test_halton_points_deterministic_and_boxed():
    a = numeric.halton_points(5, 11, ((-1, 1),) * 4)
    b = numeric.halton_points(5, 11, ((-1, 1),) * 4)
    assert a == b
    assert len(a) == 5
    assert all(-1 <= c <= 1 for p in a for c in p)
    c = numeric.halton_points(5, 12, ((-1, 1),) * 4)
    assert a != c


def test_halton_starvation():
    with pytest.raises(RuntimeError, match="admissible"):
        numeric.halton_points(3, 0, ((-1, 1),) * 4, accept=lambda p: False, max_rounds=2)


def test_profile_points_respect_domain(ball, ball_pts):
    assert len(ball_pts) == 6
    for p in ball_pts:
        assert ball.in_domain(p)
        assert ball.singular_distance(p) >= 1e-3


def test_fd_partial_check_small(ball, ball_pts):
    e = expf(2) * jet(1) + jet(1, 2)
    assert numeric.fd_partial_check(e, numeric.assigner(ball), ball_pts) < 1e-6


def test_fd_exterior_check_small(ball, ball_pts):
    T = direct_torsion(quaternionic_heisenberg())
    assert numeric.fd_exterior_check(T, numeric.assigner(ball), ball_pts) < 1e-6


def test_perturbed_assigner_breaks_the_check(ball, ball_pts):
    e = expf(2) * jet(1) + jet(1, 2)
    bad = numeric.perturbed_assigner(numeric.assigner(ball), jet_sym(1), 0.05)
    assert bad((0, 0, 0, 0))[jet_sym(1)] == pytest.approx(0.05)
    assert numeric.fd_partial_check(e, bad, ball_pts) > 1e-3
