"""Symmetric round-trip front end.

Cities 1..n, one binary variable per unordered edge {i, j} in lexicographic
order.  Minimization is folded into the canonical maximization form by
negating the costs, so reports translate back with a sign flip.  Degree
equalities plus one subtour row for every vertex set A with 2 <= |A| <= n-1
make the feasible set exactly the tour incidence vectors; the row count is
exponential, which is why build refuses n beyond a small cap.

Every tour has exactly n ones, so conjugate diameter solves certify
2*(n - sum(z)), twice the number of edges the two tours do not share.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Sequence

from .bpcore import BinaryProgram
from .diameter import build as build_diameter
from .diameter import choose_epsilon, solve_diameter
from .errors import CapExceededError, ParseError
from .polytope import Inequality
from .ratlinalg import as_rational

BUILD_CAP = 10


def edges(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def edge_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    if not (1 <= i < j <= n):
        raise ValueError(f"bad edge ({i}, {j}) for n={n}")
    return (i - 1) * n - i * (i + 1) // 2 + j - 1


class TspInstance:
    """Costs over the C(n,2) edges; missing edges default to 0."""

    __slots__ = ("n", "costs")

    def __init__(self, n: int, costs=None):
        if n < 3:
            raise ValueError("need at least three cities")
        self.n = n
        table = {e: Fraction(0) for e in edges(n)}
        if costs:
            for (i, j), w in dict(costs).items():
                key = (min(i, j), max(i, j))
                if key not in table:
                    raise ValueError(f"edge ({i}, {j}) out of range")
                table[key] = as_rational(w)
        self.costs = table

    @classmethod
    def zero(cls, n: int) -> "TspInstance":
        return cls(n)

    def cost_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.costs[e] for e in edges(n=self.n))

    def __repr__(self):
        return f"TspInstance(n={self.n})"


def build(inst: TspInstance, cap: int = BUILD_CAP) -> BinaryProgram:
    """max sum of negated costs, degree-2 equalities, all subtour rows.

    One subtour row per vertex set A with 2 <= |A| <= n-1 (singletons are
    implied by binariness; complements are kept, mirroring the defining
    index set).  Exponentially many rows, hence the cap.
    """
    n = inst.n
    if n > cap:
        raise CapExceededError(f"dense subtour build refused for n={n} (cap {cap})")
    es = edges(n)
    idx = {e: k for k, e in enumerate(es)}
    nv = len(es)
    rows = []
    for v in range(1, n + 1):
        a = [Fraction(0)] * nv
        for u in range(1, n + 1):
            if u != v:
                a[idx[(min(u, v), max(u, v))]] = Fraction(1)
        rows.append((tuple(a), "=", Fraction(2), f"deg_{v}"))
    for size in range(2, n):
        for subset in itertools.combinations(range(1, n + 1), size):
            a = [Fraction(0)] * nv
            for i, j in itertools.combinations(subset, 2):
                a[idx[(i, j)]] = Fraction(1)
            name = "sub_" + "_".join(str(v) for v in subset)
            rows.append((tuple(a), "<=", Fraction(size - 1), name))
    c = tuple(-w for w in inst.cost_vector())
    names = [f"x_{i}_{j}" for i, j in es]
    return BinaryProgram(c, rows, names)


def canonical_tour(seq: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at 1 and orient so the second city beats the last."""
    t = [int(v) for v in seq]
    n = len(t)
    if n < 3 or sorted(t) != list(range(1, n + 1)):
        raise ValueError(f"{seq!r} is not a tour of 1..{len(t)}")
    k = t.index(1)
    t = t[k:] + t[:k]
    if t[1] > t[-1]:
        t = [t[0]] + t[:0:-1]
    return tuple(t)


def tour_edges(t: Sequence[int]) -> frozenset[tuple[int, int]]:
    t = canonical_tour(t)
    n = len(t)
    out = set()
    for k in range(n):
        i, j = t[k], t[(k + 1) % n]
        out.add((min(i, j), max(i, j)))
    return frozenset(out)


def tour_to_incidence(t: Sequence[int]) -> tuple[int, ...]:
    es = tour_edges(t)
    n = len(tuple(t))
    return tuple(1 if e in es else 0 for e in edges(n))


def incidence_to_tour(x: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    """Invert tour_to_incidence; rejects anything but a single n-cycle."""
    x = tuple(int(v) for v in x)
    if n is None:
        n = round((1 + (1 + 8 * len(x)) ** 0.5) / 2)
    if len(x) != n * (n - 1) // 2:
        raise ValueError(f"{len(x)} coordinates do not form an edge vector")
    adj = {v: [] for v in range(1, n + 1)}
    for k, (i, j) in enumerate(edges(n)):
        if x[k]:
            adj[i].append(j)
            adj[j].append(i)
    if any(len(nb) != 2 for nb in adj.values()):
        raise ValueError("vector is not 2-regular")
    walk = [1]
    prev = None
    while True:
        cur = walk[-1]
        nxt = next(u for u in adj[cur] if u != prev)
        if nxt == 1:
            break
        walk.append(nxt)
        prev = cur
    if len(walk) != n:
        raise ValueError("vector splits into more than one cycle")
    return canonical_tour(walk)


def all_tours(n: int) -> list[tuple[int, ...]]:
    """All (n-1)!/2 canonical tours, lexicographically."""
    out = []
    for rest in itertools.permutations(range(2, n + 1)):
        if rest[0] < rest[-1]:
            out.append((1,) + rest)
    return out


def tour_cost(inst: TspInstance, t: Sequence[int]) -> Fraction:
    return sum((inst.costs[e] for e in tour_edges(t)), Fraction(0))


def discordant_edges(t1: Sequence[int], t2: Sequence[int]) -> frozenset[tuple[int, int]]:
    """Edges driven by t1 but not by t2 (half the symmetric difference)."""
    return tour_edges(t1) - tour_edges(t2)


def optimal_tours(inst: TspInstance) -> list[tuple[int, ...]]:
    """All minimum-cost tours, by full enumeration."""
    best = None
    out: list[tuple[int, ...]] = []
    for t in all_tours(inst.n):
        v = tour_cost(inst, t)
        if best is None or v < best:
            best, out = v, [t]
        elif v == best:
            out.append(t)
    return out


def verify_diameter_discordant(inst: TspInstance) -> bool:
    """Conjugate diameter solve vs. brute force over optimal tours.

    Both halves of the solved pair must be optimal tours and the certified
    distance must equal twice the maximum discordance over all optimal
    pairs.  Exact for n up to 8 (enumeration of (n-1)!/2 tours).
    """
    n = inst.n
    if n > 8:
        raise ValueError("verification enumerates (n-1)!/2 tours; n <= 8 only")
    bp = build(inst)
    dp = build_diameter(bp, choose_epsilon(bp), "conjugate")
    res = solve_diameter(dp, constant_norm=n, cross_check=False)
    opts = optimal_tours(inst)
    opt_inc = {tour_to_incidence(t) for t in opts}
    if res.x_star not in opt_inc or res.y_star not in opt_inc:
        return False
    max_d = max(
        len(discordant_edges(t1, t2)) for t1, t2 in itertools.product(opts, opts)
    )
    return res.diameter == 2 * max_d


def find_disjoint_tour(t: Sequence[int]) -> tuple[int, ...] | None:
    """An edge-disjoint tour on the same cities, when one exists.

    None for n in {3, 4} (the n tour edges plus n more will not fit in
    C(n,2)); the complement tour for n = 5; for larger n a backtracking
    walk in the complement graph, where minimum degree n - 3 is large
    enough that a tour always exists.
    """
    t = canonical_tour(t)
    n = len(t)
    if n in (3, 4):
        return None
    used = tour_edges(t)
    adj = {
        v: [u for u in range(1, n + 1) if u != v and (min(u, v), max(u, v)) not in used]
        for v in range(1, n + 1)
    }
    path = [1]
    seen = {1}

    def extend() -> bool:
        if len(path) == n:
            return 1 in adj[path[-1]]
        for u in adj[path[-1]]:
            if u not in seen:
                path.append(u)
                seen.add(u)
                if extend():
                    return True
                path.pop()
                seen.remove(u)
        return False

    if not extend():
        return None
    result = canonical_tour(path)
    if tour_edges(result) & used:
        raise RuntimeError("complement walk reused an edge")
    return result


def nonnegativity_facets(n: int) -> list[Inequality]:
    es = edges(n)
    out = []
    for k, (i, j) in enumerate(es):
        a = [Fraction(0)] * len(es)
        a[k] = Fraction(1)
        out.append(Inequality(tuple(a), Fraction(0), ">=", f"x_{i}_{j}_ge_0"))
    return out


def subtour_facets(n: int, sizes: Sequence[int] | None = None) -> list[Inequality]:
    """Subtour rows as inequalities; defaults to 2 <= |A| <= n-2."""
    es = edges(n)
    idx = {e: k for k, e in enumerate(es)}
    if sizes is None:
        sizes = range(2, n - 1)
    out = []
    for size in sizes:
        for subset in itertools.combinations(range(1, n + 1), size):
            a = [Fraction(0)] * len(es)
            for i, j in itertools.combinations(subset, 2):
                a[idx[(i, j)]] = Fraction(1)
            name = "sub_" + "_".join(str(v) for v in subset)
            out.append(Inequality(tuple(a), Fraction(size - 1), "<=", name))
    return out


def base_facets(n: int) -> list[Inequality]:
    return nonnegativity_facets(n) + subtour_facets(n)


def degree_system(n: int):
    """The degree equalities as (rows, rhs) over the C(n,2) coordinates."""
    es = edges(n)
    idx = {e: k for k, e in enumerate(es)}
    rows = []
    rhs = []
    for v in range(1, n + 1):
        a = [Fraction(0)] * len(es)
        for u in range(1, n + 1):
            if u != v:
                a[idx[(min(u, v), max(u, v))]] = Fraction(1)
        rows.append(tuple(a))
        rhs.append(Fraction(2))
    return rows, rhs


def tsp_from_json_dict(d: dict) -> TspInstance:
    try:
        n = int(d["n"])
        costs = {}
        for entry in d.get("costs", []):
            if len(entry) == 4:
                i, j, num, den = entry
                w = Fraction(int(num), int(den))
            elif len(entry) == 3:
                i, j, w = entry
                w = as_rational(w)
            else:
                raise ValueError(f"cost entry {entry!r} should be [i, j, num, den]")
            key = (min(int(i), int(j)), max(int(i), int(j)))
            if key in costs:
                raise ValueError(f"duplicate cost for edge {key}")
            costs[key] = w
        return TspInstance(n, costs)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad tour instance JSON: {e}") from e


def tsp_from_tsplib(text: str) -> TspInstance:
    """EXPLICIT full-matrix TSPLIB text; other weight types are rejected."""
    header: dict[str, str] = {}
    numbers: list[str] = []
    in_weights = False
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line == "EOF":
            continue
        if in_weights:
            up = line.upper().replace(" ", "")
            if ":" in line and not line[0].isdigit() and not up[0] == "-":
                in_weights = False  # another section header
            else:
                numbers.extend(line.split())
                continue
        if line.upper().startswith("EDGE_WEIGHT_SECTION"):
            in_weights = True
            continue
        if ":" in line:
            key, _, val = line.partition(":")
            header[key.strip().upper()] = val.strip()
        elif line.upper() in ("NODE_COORD_SECTION", "DISPLAY_DATA_SECTION"):
            raise ParseError("coordinate sections are not supported; EXPLICIT weights only")
    ewt = header.get("EDGE_WEIGHT_TYPE", "").upper()
    if ewt != "EXPLICIT":
        raise ParseError(f"EDGE_WEIGHT_TYPE {ewt or '(missing)'} unsupported; need EXPLICIT")
    fmt = header.get("EDGE_WEIGHT_FORMAT", "FULL_MATRIX").upper()
    if fmt != "FULL_MATRIX":
        raise ParseError(f"EDGE_WEIGHT_FORMAT {fmt} unsupported; need FULL_MATRIX")
    try:
        n = int(header["DIMENSION"])
    except (KeyError, ValueError) as e:
        raise ParseError("missing or bad DIMENSION") from e
    if len(numbers) != n * n:
        raise ParseError(f"expected {n * n} weight entries, found {len(numbers)}")
    costs = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            tok = numbers[(i - 1) * n + (j - 1)]
            try:
                w = Fraction(tok)
            except ValueError as e:
                raise ParseError(f"bad weight entry {tok!r}") from e
            if i == j:
                continue
            key = (min(i, j), max(i, j))
            if key in costs:
                if costs[key] != w:
                    raise ParseError(f"matrix is not symmetric at {key}")
            else:
                costs[key] = w
    return TspInstance(n, costs)


def load_tsp(path: str) -> TspInstance:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            return tsp_from_json_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: {e}") from e
    return tsp_from_tsplib(text)
