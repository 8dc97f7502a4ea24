"""Facet certification by definition: validity plus tight-face dimension.

Every inherited inequality family is certified against the full point set
of the paired ordering polytope at n=3, then two genuinely mixed x/y/z
inequalities are certified on the tour polytope at n=4; those two are not
inherited from either copy, so they show the paired polytopes have more
structure than two products glued together.
"""

from fractions import Fraction

from diamopt import lop, tsp
from diamopt.diameter import build as build_diameter
from diamopt.polytope import Inequality, check_inequality, enumerate_points, facet_families

dp = build_diameter(lop.build(lop.LopInstance.zero(3)), None, "conjugate")
base = [lop.perm_to_incidence(p) for p in lop.all_permutations(3)]
ps3 = enumerate_points(dp, base_points=base)

fams = facet_families(6, lop.base_facets(3))
certified = sum(check_inequality(ps3, q).is_facet for q in fams)
print(f"ordering n=3: {certified}/{len(fams)} facet families certified")
print(f"  polytope dimension {ps3.hull_dimension()}, {ps3.count} points")

sample = fams[0]
report = check_inequality(ps3, sample)
print(
    f"  example {sample.label!r}: valid={report.valid},"
    f" tight on {report.tight_point_count} points,"
    f" face dimension {report.face_dimension}/{report.polytope_dimension}"
)

# the two mixed inequalities at n=4: one tour fixing edges 12, 13, the
# other fixing 12, 24, coupled through a z variable
print()
print("tour n=4 mixed inequalities")
dp4 = build_diameter(tsp.build(tsp.TspInstance.zero(4)), None, "conjugate")
tours = [tsp.tour_to_incidence(t) for t in tsp.all_tours(4)]
ps4 = enumerate_points(dp4, base_points=tours)

edges = tsp.edges(4)
ix = {e: k for k, e in enumerate(edges)}
m = len(edges)
for zedge in [(2, 3), (1, 4)]:
    a = [Fraction(0)] * (3 * m)
    a[ix[(1, 2)]] += 1
    a[ix[(1, 3)]] += 1
    a[m + ix[(1, 2)]] += 1
    a[m + ix[(2, 4)]] += 1
    a[2 * m + ix[zedge]] += 1
    q = Inequality(tuple(a), Fraction(3), ">=", f"mixed_z_{zedge[0]}_{zedge[1]}")
    r = check_inequality(ps4, q)
    print(
        f"  {q.label}: valid={r.valid}, facet={r.is_facet},"
        f" tight on {r.tight_point_count} of {ps4.count} points"
    )
