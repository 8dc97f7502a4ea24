import random
from fractions import Fraction

import pytest

from diamopt.bpcore import (
    BinaryProgram,
    Constraint,
    enumerate_optimal_set,
    random_binary_program,
    solve_bnb,
)
from diamopt.diameter import (
    INTEGER_RULE,
    RATIONAL_RULE,
    EpsilonChoice,
    build,
    choose_epsilon,
    diameter_by_enumeration,
    result_to_dict,
    solve_diameter,
    theoretical_epsilon,
    verify_z_semantics,
)
from diamopt.errors import InfeasibleModelError


def feasible_random_model(rng, **kw):
    while True:
        bp = random_binary_program(rng, **kw)
        if solve_bnb(bp).status == "optimal":
            return bp


class TestEpsilon:
    def test_integer_rule(self):
        bp = BinaryProgram([3, -2, 0, 5], [])
        eps = choose_epsilon(bp)
        assert eps.value == Fraction(1, 8)
        assert eps.justification == INTEGER_RULE

    def test_rational_rule_scales_by_lcm(self):
        bp = BinaryProgram([Fraction(1, 6), Fraction(3, 4)], [])
        eps = choose_epsilon(bp)
        # lcm(6, 4) = 12, n = 2
        assert eps.value == Fraction(1, 2 * 2 * 12)
        assert eps.justification == RATIONAL_RULE

    def test_theoretical_gap(self):
        # optima at value 5, runner-up at 3: gap 2 over n=2
        bp = BinaryProgram([5, 3], [Constraint([1, 1], "<=", 1)])
        eps = theoretical_epsilon(bp)
        assert eps.value == Fraction(2, 2)

    def test_theoretical_when_all_values_tie(self):
        bp = BinaryProgram([0, 0], [])
        assert theoretical_epsilon(bp).value == 1


class TestBuild:
    def test_shape_full(self):
        bp = BinaryProgram([1, 2, 3], [Constraint([1, 1, 1], "<=", 2, "cap")])
        dp = build(bp, None, "full")
        assert dp.variant == "full"
        assert dp.derived.n == 9
        assert len(dp.derived.constraints) == 2 * 1 + 2 * 3
        assert dp.derived.variable_names[:4] == ("x_1_x", "x_2_x", "x_3_x", "x_1_y")
        names = [c.name for c in dp.derived.constraints]
        assert names[:2] == ["cap_x", "cap_y"]
        assert "pair_ub_x_2" in names and "pair_lb_x_2" in names

    def test_shape_conjugate(self):
        bp = BinaryProgram([1, 2, 3], [Constraint([1, 1, 1], "<=", 2)])
        dp = build(bp, None, "conjugate")
        assert dp.variant == "conjugate"
        assert len(dp.derived.constraints) == 2 + 3

    def test_objective_carries_penalty(self):
        bp = BinaryProgram([4, 7], [])
        dp = build(bp, Fraction(1, 10), "full")
        assert dp.derived.c == (4, 7, 4, 7, Fraction(-1, 10), Fraction(-1, 10))
        assert dp.epsilon_rule == "user-supplied"

    def test_epsilon_choice_is_respected(self):
        bp = BinaryProgram([1], [])
        dp = build(bp, EpsilonChoice(Fraction(1, 5), "handpicked"), "full")
        assert dp.epsilon == Fraction(1, 5)
        assert dp.epsilon_rule == "handpicked"

    def test_bad_inputs(self):
        bp = BinaryProgram([1], [])
        with pytest.raises(ValueError):
            build(bp, Fraction(0), "full")
        with pytest.raises(ValueError):
            build(bp, None, "medium")


class TestSolve:
    def test_unique_optimum_gives_zero(self):
        bp = BinaryProgram([3, 2], [Constraint([1, 1], "<=", 1)])
        res = solve_diameter(build(bp))
        assert res.diameter == 0
        assert res.x_star == res.y_star == (1, 0)

    def test_disjoint_ties_give_full_distance(self):
        bp = BinaryProgram([3, 3, 3, 3], [Constraint([1, 1, 1, 1], "<=", 2)])
        res = solve_diameter(build(bp))
        assert res.diameter == 4
        assert sorted((sum(res.x_star), sum(res.y_star))) == [2, 2]

    def test_infeasible_base(self):
        bp = BinaryProgram([1], [Constraint([1], ">=", 2)])
        with pytest.raises(InfeasibleModelError):
            solve_diameter(build(bp))

    @pytest.mark.parametrize("variant", ["full", "conjugate"])
    def test_z_semantics_on_random_models(self, variant):
        rng = random.Random(7 if variant == "full" else 8)
        for _ in range(20):
            bp = feasible_random_model(rng, max_n=7, max_rows=4)
            res = solve_diameter(build(bp, None, variant), cross_check=False)
            assert verify_z_semantics(res)
            if variant == "full":
                assert res.diameter == bp.n - sum(res.z_star)
                assert res.diameter_upper_bound is None
            else:
                assert res.diameter <= res.diameter_upper_bound

    def test_full_variant_matches_enumeration(self):
        rng = random.Random(11)
        for _ in range(30):
            bp = feasible_random_model(rng, max_n=8, max_rows=4)
            res = solve_diameter(build(bp), cross_check=False)
            opt = {s.assignment for s in enumerate_optimal_set(bp)}
            assert res.x_star in opt and res.y_star in opt
            assert res.diameter == diameter_by_enumeration(bp)

    def test_constant_norm_pins_conjugate_distance(self):
        rng = random.Random(13)
        for _ in range(15):
            bp = feasible_random_model(rng, max_n=7, max_rows=3)
            # force every feasible point to the same squared norm
            k = rng.randint(1, bp.n - 1)
            rows = list(bp.constraints) + [Constraint([1] * bp.n, "=", k, "norm")]
            pinned = BinaryProgram(bp.c, rows)
            if solve_bnb(pinned).status != "optimal":
                continue
            res = solve_diameter(build(pinned, None, "conjugate"), constant_norm=k, cross_check=False)
            assert res.diameter == diameter_by_enumeration(pinned)
            assert res.diameter == 2 * (k - sum(res.z_star))

    def test_relabeling_variables_preserves_diameter(self):
        rng = random.Random(17)
        for _ in range(10):
            bp = feasible_random_model(rng, max_n=7, max_rows=3)
            perm = list(range(bp.n))
            rng.shuffle(perm)
            c2 = [bp.c[j] for j in perm]
            rows2 = [
                Constraint(tuple(con.coeffs[j] for j in perm), con.sense, con.rhs)
                for con in bp.constraints
            ]
            d1 = solve_diameter(build(bp), cross_check=False).diameter
            d2 = solve_diameter(build(BinaryProgram(c2, rows2)), cross_check=False).diameter
            assert d1 == d2

    def test_oversized_epsilon_can_break_optimality(self):
        # the penalty rules exist for a reason: epsilon = 2 drags the pair
        # apart at the cost of base optimality
        bp = BinaryProgram([1, 0], [])
        res = solve_diameter(build(bp, Fraction(2), "full"), cross_check=False)
        opt = {s.assignment for s in enumerate_optimal_set(bp)}
        assert res.x_star not in opt or res.y_star not in opt

    def test_cross_check_runs_under_cap(self):
        bp = BinaryProgram([2, 1], [Constraint([1, 1], "<=", 1)])
        res = solve_diameter(build(bp), cross_check=True)
        assert res.diameter == 0

    def test_result_dict_shape(self):
        bp = BinaryProgram([1, 1], [])
        d = result_to_dict(solve_diameter(build(bp, None, "conjugate"), cross_check=False))
        assert set(d) == {
            "variant",
            "epsilon",
            "x",
            "y",
            "z",
            "diameter",
            "base_objective",
            "diameter_upper_bound",
        }
        assert d["epsilon"] == {"num": 1, "den": 4}
        full = result_to_dict(solve_diameter(build(bp), cross_check=False))
        assert "diameter_upper_bound" not in full
