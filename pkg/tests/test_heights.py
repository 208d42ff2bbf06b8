"""Heights: form evaluation, the gcd identity, projective and Cox heights."""

import random
from fractions import Fraction
from math import gcd

import pytest

from dp5count.heights import (
    BUILTIN_HEIGHT_SETS,
    P1,
    P2,
    P3,
    HeightSet,
    ProjectivePoint,
    QuadraticForm,
    comparison_constant,
    eval_form,
    gcd_identity_check,
    height_cox,
    height_projective,
    lift_ptilde,
    load_height_set,
    p1_combination,
    swap_symmetric,
)
from dp5count.torsor import CoxTuple, chart_lift

WORKED_TUPLE = CoxTuple(1, 1, 1, 1, 1, 3, 2, 2, 1, -1)  # blows down to (2:3:1)


def brute_sides_of_gcd_identity(ps, pt):
    """Independent evaluation of both sides of the gcd identity."""
    left = 0
    for form in ps.forms:
        left = gcd(left, abs(eval_form(form, pt)))
    right = gcd(pt.y1, pt.y2) * gcd(pt.y1 - pt.y2, pt.y1 - pt.y3)
    return left, abs(right)


def random_offline_points(n, box, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        coords = tuple(rng.randint(-box, box) for _ in range(3))
        if coords == (0, 0, 0):
            continue
        pt = ProjectivePoint(*coords)
        if pt.off_lines():
            out.append(pt)
    return out


class TestQuadraticForm:
    def test_builtin_forms_vanish_at_p3_p4(self):
        for ps in BUILTIN_HEIGHT_SETS.values():
            for form in ps.forms:
                assert form(0, 0, 1) == 0
                assert form(1, 1, 1) == 0

    def test_rejects_nonvanishing(self):
        with pytest.raises(ValueError):
            QuadraticForm(1, 0, 0, 0, 0, 0)  # Y1^2 alone: nonzero at (1,1,1)
        with pytest.raises(ValueError):
            QuadraticForm(0, 0, 1, 0, 0, -1)  # Y3^2 term: nonzero at (0,0,1)

    def test_eval_examples(self):
        f1 = P1.forms[0]  # Y1*(Y2-Y3)
        assert eval_form(f1, ProjectivePoint(2, 3, 1)) == 4
        assert eval_form(f1, ProjectivePoint(5, 7, 1)) == 30  # 5*(7-1)
        f2 = P1.forms[1]  # Y2*(Y1-Y3)
        assert eval_form(f2, ProjectivePoint(1, 2, 4)) == -6
        for ps in BUILTIN_HEIGHT_SETS.values():
            for form in ps.forms:
                assert eval_form(form, ProjectivePoint(0, 0, 1)) == 0

    def test_p1_combination_is_exact(self):
        rng = random.Random(3)
        for ps in BUILTIN_HEIGHT_SETS.values():
            for form in ps.forms:
                x1, x2, x3, x4 = p1_combination(form)
                for _ in range(20):
                    y = [rng.randint(-50, 50) for _ in range(3)]
                    combo = (
                        x1 * P1.forms[0](*y) + x2 * P1.forms[1](*y)
                        + x3 * P1.forms[2](*y) + x4 * P1.forms[3](*y)
                    )
                    assert combo == form(*y)


class TestProjectivePoint:
    def test_normalization(self):
        assert ProjectivePoint(2, 4, 6) == ProjectivePoint(1, 2, 3)
        assert ProjectivePoint(-1, -2, -4) == ProjectivePoint(1, 2, 4)
        assert ProjectivePoint(0, -3, 6) == ProjectivePoint(0, -1, 2)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            ProjectivePoint(0, 0, 0)

    def test_blown_up_points(self):
        for coords in ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)):
            assert ProjectivePoint(*coords).is_blown_up_point()
        assert not ProjectivePoint(2, 3, 1).is_blown_up_point()

    def test_off_lines(self):
        assert ProjectivePoint(2, 3, 1).off_lines()
        assert not ProjectivePoint(1, 1, 2).off_lines()
        assert not ProjectivePoint(0, 3, 1).off_lines()


class TestHeightSet:
    def test_p1_forms_exact(self):
        expected = {
            (0, 0, 0, 1, -1, 0),   # Y1*Y2 - Y1*Y3
            (0, 0, 0, 1, 0, -1),   # Y1*Y2 - Y2*Y3
            (1, 0, 0, -1, 0, 0),   # Y1^2 - Y1*Y2
            (0, -1, 0, 1, 0, 0),   # Y1*Y2 - Y2^2
        }
        assert {f.coefficients for f in P1.forms} == expected

    def test_p3_contains_p1_and_p2(self):
        p3set = {f.coefficients for f in P3.forms}
        assert {f.coefficients for f in P1.forms} <= p3set
        assert {f.coefficients for f in P2.forms} <= p3set
        assert len(P3.forms) == 10

    def test_nonspanning_rejected(self):
        with pytest.raises(ValueError):
            HeightSet("bad", (P1.forms[0], P1.forms[1]))

    def test_json_roundtrip(self, tmp_path):
        path = tmp_path / "forms.json"
        import json

        path.write_text(json.dumps(P2.to_json_obj()))
        assert load_height_set(f"file:{path}") is P2
        custom = dict(P2.to_json_obj(), id="mine")
        path.write_text(json.dumps(custom))
        loaded = load_height_set(f"file:{path}")
        assert loaded.id == "mine"
        assert loaded.forms == P2.forms

    def test_unknown_set_rejected(self):
        with pytest.raises(ValueError):
            load_height_set("p9")

    def test_swap_symmetry_of_builtins(self):
        assert swap_symmetric(P1) and swap_symmetric(P2) and swap_symmetric(P3)


class TestGcdIdentity:
    def test_examples(self):
        assert gcd_identity_check(P1, ProjectivePoint(1, 2, 4))
        # both sides independently at (1:2:4): values (-2,-6,-1,-2), gcds 1*1
        left, right = brute_sides_of_gcd_identity(P1, ProjectivePoint(1, 2, 4))
        assert left == right == 1
        assert gcd_identity_check(P1, ProjectivePoint(2, 3, 1))
        left, right = brute_sides_of_gcd_identity(P1, ProjectivePoint(2, 3, 1))
        assert left == right == 1

    def test_excluded_point(self):
        with pytest.raises(ValueError):
            gcd_identity_check(P1, ProjectivePoint(0, 0, 1))

    @pytest.mark.parametrize("ps", [P1, P2, P3], ids=lambda p: p.id)
    def test_sampled_identity(self, ps):
        # spec invariant: >= 1e4 random primitive points off the lines, |y_i| <= 1e6
        for pt in random_offline_points(10**4, 10**6, seed=hash(ps.id) % 2**31):
            assert gcd_identity_check(ps, pt), pt


class TestHeightProjective:
    def test_examples(self):
        assert height_projective(P1, ProjectivePoint(2, 3, 1)) == 4
        assert height_projective(P1, ProjectivePoint(1, 2, 4)) == 6
        assert height_projective(P1, ProjectivePoint(1, 2, 4)) == height_projective(
            P1, ProjectivePoint(-1, -2, -4)
        )

    def test_rescaling_invariance(self):
        rng = random.Random(5)
        for _ in range(200):
            pt = random_offline_points(1, 10**3, rng.randint(0, 10**9))[0]
            k = rng.choice([-7, -2, 3, 11])
            scaled = ProjectivePoint(k * pt.y1, k * pt.y2, k * pt.y3)
            assert height_projective(P1, scaled) == height_projective(P1, pt)

    def test_p3_dominates_p1(self):
        for pt in random_offline_points(300, 10**4, seed=17):
            assert height_projective(P3, pt) >= height_projective(P1, pt)

    def test_integrality_of_height_values(self):
        # the gcd divides every form value, so heights are integers
        for ps in (P1, P2, P3):
            for pt in random_offline_points(300, 10**4, seed=23):
                h = height_projective(ps, pt)
                assert h.denominator == 1 and h > 0

    def test_excluded_point(self):
        with pytest.raises(ValueError):
            height_projective(P1, ProjectivePoint(1, 1, 1))


class TestLiftPtilde:
    def test_monomial_identities_on_worked_tuple(self):
        a = WORKED_TUPLE
        # {Pt : P in P1} = the four monomials, in the P1 form order
        assert lift_ptilde(P1.forms[0], a) == a.a1 * a.a2 * a.a23 * a.a14 == 4
        assert lift_ptilde(P1.forms[1], a) == a.a1 * a.a2 * a.a13 * a.a24 == 3
        assert lift_ptilde(P1.forms[2], a) == a.a2 * a.a3 * a.a23 * a.a34 == -2
        assert lift_ptilde(P1.forms[3], a) == a.a1 * a.a3 * a.a13 * a.a34 == -3

    def test_monomial_identities_randomly(self):
        rng = random.Random(29)
        for pt in random_offline_points(200, 500, seed=31):
            a = chart_lift(pt)
            assert lift_ptilde(P1.forms[0], a) == a.a1 * a.a2 * a.a23 * a.a14
            assert lift_ptilde(P1.forms[1], a) == a.a1 * a.a2 * a.a13 * a.a24
            assert lift_ptilde(P1.forms[2], a) == a.a2 * a.a3 * a.a23 * a.a34
            assert lift_ptilde(P1.forms[3], a) == a.a1 * a.a3 * a.a13 * a.a34

    def test_zero_denominator_rejected(self):
        a = CoxTuple(1, 1, 0, 1, 1, 3, 2, 2, 1, -1)
        with pytest.raises(ValueError):
            lift_ptilde(P1.forms[0], a)

    def test_pluecker_violation_detected(self):
        a = CoxTuple(2, 3, 5, 7, 1, 1, 1, 1, 1, 1)
        with pytest.raises(ValueError):
            for form in P1.forms:
                lift_ptilde(form, a)


class TestHeightCox:
    def test_worked_tuple(self):
        assert height_cox(P1, WORKED_TUPLE) == 4

    def test_gcd_of_lifts_is_one(self):
        a = WORKED_TUPLE
        g = 0
        for form in P1.forms:
            g = gcd(g, lift_ptilde(form, a))
        assert g == 1

    def test_matches_projective_height(self):
        for ps in (P1, P2, P3):
            for pt in random_offline_points(200, 10**3, seed=37):
                a = chart_lift(pt)
                if abs(a.a12) != 1:
                    continue  # height equality needs the integral normalization
                assert height_cox(ps, a) == height_projective(ps, pt)

    def test_gcd_of_lifts_is_one_randomly(self):
        for ps in (P1, P2, P3):
            for pt in random_offline_points(100, 10**3, seed=41):
                a = chart_lift(pt)
                if abs(a.a12) != 1:
                    continue
                g = 0
                for form in ps.forms:
                    g = gcd(g, lift_ptilde(form, a))
                assert abs(g) == 1


class TestComparisonConstant:
    def test_builtin_values(self):
        assert comparison_constant(P1) == 1
        assert comparison_constant(P3) == 1
        assert comparison_constant(P2) == 2  # each P1 form is a half-combination of P2

    def test_kappa_bound_holds_pointwise(self):
        for ps in (P1, P2, P3):
            k = ps.kappa
            for pt in random_offline_points(500, 10**4, seed=43):
                lhs = max(abs(eval_form(f, pt)) for f in P1.forms)
                rhs = max(abs(eval_form(f, pt)) for f in ps.forms)
                assert lhs <= k * rhs
