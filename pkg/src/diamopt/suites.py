"""Named verification suites.

Each suite returns a list of claim records: plain dicts with a "claim"
string, an "ok" bool, and enough numbers to see what was computed against
what was expected.  The CLI renders them; the acceptance tests assert on
them.  Expected values are frozen here from independent enumeration, not
read off any solver output.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import lop, tsp
from .bpcore import BinaryProgram, random_binary_program, solve_bnb
from .diameter import (
    build as build_diameter,
    choose_epsilon,
    diameter_by_enumeration,
    solve_diameter,
)
from .polytope import (
    EquationSystem,
    check_disjoint_pair_condition,
    check_inequality,
    enumerate_points,
    facet_families,
    lift_equation_system,
    verify_minimal_system,
)

# hull dimensions and point counts pinned by independent scans: raw 0/1
# enumeration against the constraint rows for the small cases, structured
# pair generation cross-checked against those scans for the rest
LOP_EXPECTED = {2: {"dim": 4, "points": 12}, 3: {"dim": 12, "points": 1008}, 4: {"dim": 24, "points": 483840}}
TSP_EXPECTED = {4: {"dim": 10, "points": 108}, 5: {"dim": 20, "points": 35712}}


def _lop_points(n: int):
    dp = build_diameter(lop.build(lop.LopInstance.zero(n)), None, "conjugate")
    base = [lop.perm_to_incidence(p) for p in lop.all_permutations(n)]
    return enumerate_points(dp, base_points=base)


def _tsp_points(n: int):
    dp = build_diameter(tsp.build(tsp.TspInstance.zero(n)), None, "conjugate")
    base = [tsp.tour_to_incidence(t) for t in tsp.all_tours(n)]
    return enumerate_points(dp, base_points=base)


def suite_dimensions(long_running: bool = False) -> list[dict]:
    records = []
    lop_sizes = [2, 3] + ([4] if long_running else [])
    for n in lop_sizes:
        ps = _lop_points(n)
        exp = LOP_EXPECTED[n]
        records.append(
            {
                "claim": f"ordering n={n}: point count",
                "expected": exp["points"],
                "computed": ps.count,
                "ok": ps.count == exp["points"],
            }
        )
        dim = ps.hull_dimension()
        records.append(
            {
                "claim": f"ordering n={n}: hull dimension",
                "expected": exp["dim"],
                "computed": dim,
                "ok": dim == exp["dim"],
            }
        )
        sys_n = lift_equation_system(EquationSystem(*lop.pick_one_system(n)))
        ok = verify_minimal_system(ps, sys_n)
        records.append(
            {
                "claim": f"ordering n={n}: lifted pick-one system is minimal",
                "expected": True,
                "computed": ok,
                "ok": ok,
            }
        )
    for n in (4, 5):
        ps = _tsp_points(n)
        exp = TSP_EXPECTED[n]
        records.append(
            {
                "claim": f"tour n={n}: point count",
                "expected": exp["points"],
                "computed": ps.count,
                "ok": ps.count == exp["points"],
            }
        )
        dim = ps.hull_dimension()
        records.append(
            {
                "claim": f"tour n={n}: hull dimension",
                "expected": exp["dim"],
                "computed": dim,
                "ok": dim == exp["dim"],
            }
        )
        sys_n = lift_equation_system(EquationSystem(*tsp.degree_system(n)))
        ok = verify_minimal_system(ps, sys_n)
        records.append(
            {
                "claim": f"tour n={n}: lifted degree system is minimal",
                "expected": True,
                "computed": ok,
                "ok": ok,
            }
        )
    return records


def _extra_tour4_inequalities():
    from .polytope import Inequality

    es = tsp.edges(4)
    ix = {e: k for k, e in enumerate(es)}
    m = len(es)

    def mk(zedge, label):
        a = [Fraction(0)] * (3 * m)
        a[ix[(1, 2)]] += 1
        a[ix[(1, 3)]] += 1
        a[m + ix[(1, 2)]] += 1
        a[m + ix[(2, 4)]] += 1
        a[2 * m + ix[zedge]] += 1
        return Inequality(tuple(a), Fraction(3), ">=", label)

    return [mk((2, 3), "mixed_z_2_3"), mk((1, 4), "mixed_z_1_4")]


def suite_facets() -> list[dict]:
    records = []
    ps3 = _lop_points(3)
    for q in facet_families(6, lop.base_facets(3)):
        r = check_inequality(ps3, q)
        records.append(
            {
                "claim": f"ordering n=3 facet: {q.label}",
                "valid": r.valid,
                "face_dimension": r.face_dimension,
                "polytope_dimension": r.polytope_dimension,
                "ok": r.is_facet,
            }
        )
    ps5 = _tsp_points(5)
    for q in facet_families(10, tsp.base_facets(5)):
        r = check_inequality(ps5, q)
        records.append(
            {
                "claim": f"tour n=5 facet: {q.label}",
                "valid": r.valid,
                "face_dimension": r.face_dimension,
                "polytope_dimension": r.polytope_dimension,
                "ok": r.is_facet,
            }
        )
    ps4 = _tsp_points(4)
    for q in _extra_tour4_inequalities():
        r = check_inequality(ps4, q)
        records.append(
            {
                "claim": f"tour n=4 extra facet: {q.label}",
                "valid": r.valid,
                "face_dimension": r.face_dimension,
                "polytope_dimension": r.polytope_dimension,
                "ok": r.is_facet,
            }
        )
    conditions = [
        ("ordering n=3", lop.build(lop.LopInstance.zero(3)), True, True),
        ("tour n=4", tsp.build(tsp.TspInstance.zero(4)), False, False),
        ("tour n=5", tsp.build(tsp.TspInstance.zero(5)), True, True),
    ]
    for label, bp, want_exist, want_univ in conditions:
        rep = check_disjoint_pair_condition(bp)
        ok = rep.existential == want_exist and rep.universal == want_univ
        records.append(
            {
                "claim": f"{label}: disjoint-support conditions",
                "existential": rep.existential,
                "universal": rep.universal,
                "expected": [want_exist, want_univ],
                "ok": ok,
            }
        )
    return records


def suite_epsilon(trials: int = 50, seed: int = 1729) -> list[dict]:
    """Random integer models: the 1/(2n) penalty never disturbs optimality.

    Each trial solves the full-variant program and checks both halves
    against the enumerated optimal set and the distance against the
    enumerated diameter.
    """
    rng = random.Random(seed)
    records = []
    made = 0
    while made < trials:
        bp = random_binary_program(rng, max_n=10, max_rows=6)
        if solve_bnb(bp).status != "optimal":
            continue
        made += 1
        eps = choose_epsilon(bp)
        dp = build_diameter(bp, eps, "full")
        res = solve_diameter(dp, cross_check=False)
        from .bpcore import enumerate_optimal_set

        opt = {s.assignment for s in enumerate_optimal_set(bp)}
        oracle = diameter_by_enumeration(bp)
        ok = res.x_star in opt and res.y_star in opt and res.diameter == oracle
        records.append(
            {
                "claim": f"epsilon trial {made}: n={bp.n}, rows={len(bp.constraints)}",
                "epsilon": f"{eps.value.numerator}/{eps.value.denominator}",
                "diameter": res.diameter,
                "enumerated": oracle,
                "halves_optimal": res.x_star in opt and res.y_star in opt,
                "ok": ok,
            }
        )
    return records


def suite_lifting(long_running: bool = False) -> list[dict]:
    records = []
    steps = [(2, 3)] + ([(3, 4)] if long_running else [])
    cache = {}
    for n, m in steps:
        for k in (n, m):
            if k not in cache:
                cache[k] = _lop_points(k)
        small, big = cache[n], cache[m]
        for q in facet_families(n * (n - 1), lop.base_facets(n)):
            before = check_inequality(small, q)
            after = check_inequality(big, lop.lift_inequality(q, n))
            ok = before.is_facet and after.is_facet
            records.append(
                {
                    "claim": f"ordering facet lifts {n}->{m}: {q.label}",
                    "facet_before": before.is_facet,
                    "facet_after": after.is_facet,
                    "ok": ok,
                }
            )
    return records


SUITES = {
    "dimensions": suite_dimensions,
    "facets": suite_facets,
    "epsilon": suite_epsilon,
    "lifting": suite_lifting,
}


def run_suite(name: str, trials: int = 50, seed: int = 1729, long_running: bool = False) -> list[dict]:
    if name == "dimensions":
        return suite_dimensions(long_running)
    if name == "facets":
        return suite_facets()
    if name == "epsilon":
        return suite_epsilon(trials, seed)
    if name == "lifting":
        return suite_lifting(long_running)
    raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
