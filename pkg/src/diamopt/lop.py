"""Linear ordering front end.

Items 1..n, one binary variable per ordered pair (i, j), i != j, in
row-major order.  A ranking sigma (sigma[i-1] is the rank of item i) maps
to the incidence vector x_ij = 1 iff i is ranked before j.  Feasible points
of the model below are exactly these incidence vectors: the pick-one
equalities force a tournament and the 3-dicycle rows cut every directed
triangle, which kills all non-transitive tournaments.

Every incidence vector has exactly C(n,2) ones, so conjugate diameter
solves certify the exact value 2*(C(n,2) - sum(z)), and that distance is
twice the Kendall tau of the two rankings.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Iterable, Sequence

from .bpcore import BinaryProgram
from .diameter import build as build_diameter
from .diameter import choose_epsilon, solve_diameter
from .errors import ParseError
from .polytope import Inequality
from .ratlinalg import as_rational


def ordered_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]


def pair_index(i: int, j: int, n: int) -> int:
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ValueError(f"bad pair ({i}, {j}) for n={n}")
    return (i - 1) * (n - 1) + (j - 1) - (1 if j > i else 0)


class LopInstance:
    """Weights over all n(n-1) ordered pairs; missing pairs default to 0."""

    __slots__ = ("n_items", "weights")

    def __init__(self, n_items: int, weights=None):
        if n_items < 2:
            raise ValueError("need at least two items")
        self.n_items = n_items
        table = {p: Fraction(0) for p in ordered_pairs(n_items)}
        if weights:
            for (i, j), w in dict(weights).items():
                if (i, j) not in table:
                    raise ValueError(f"pair ({i}, {j}) out of range")
                table[(i, j)] = as_rational(w)
        self.weights = table

    @classmethod
    def zero(cls, n_items: int) -> "LopInstance":
        return cls(n_items)

    def weight_vector(self) -> tuple[Fraction, ...]:
        return tuple(self.weights[p] for p in ordered_pairs(self.n_items))

    def __repr__(self):
        return f"LopInstance(n_items={self.n_items})"


def build(inst: LopInstance) -> BinaryProgram:
    """max sum w_ij x_ij with pick-one equalities and all 3-dicycle rows.

    Dicycle index set: i < j, i < k, j != k; two rows per unordered
    triple, one for each orientation.
    """
    n = inst.n_items
    pairs = ordered_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}
    nv = len(pairs)
    rows = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        a = [Fraction(0)] * nv
        a[idx[(i, j)]] = a[idx[(j, i)]] = Fraction(1)
        rows.append((tuple(a), "=", Fraction(1), f"pick_{i}_{j}"))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(i + 1, n + 1):
                if j == k:
                    continue
                a = [Fraction(0)] * nv
                a[idx[(i, j)]] = a[idx[(j, k)]] = a[idx[(k, i)]] = Fraction(1)
                rows.append((tuple(a), "<=", Fraction(2), f"cyc_{i}_{j}_{k}"))
    names = [f"x_{i}_{j}" for i, j in pairs]
    return BinaryProgram(inst.weight_vector(), rows, names)


def _check_perm(sigma: Sequence[int]) -> tuple[int, ...]:
    s = tuple(int(v) for v in sigma)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise ValueError(f"{sigma!r} is not a permutation of 1..{len(s)}")
    return s


def perm_to_incidence(sigma: Sequence[int]) -> tuple[int, ...]:
    """x_ij = 1 iff sigma ranks item i before item j."""
    s = _check_perm(sigma)
    n = len(s)
    return tuple(1 if s[i - 1] < s[j - 1] else 0 for i, j in ordered_pairs(n))


def incidence_to_perm(x: Sequence[int], n_items: int | None = None) -> tuple[int, ...]:
    """Invert perm_to_incidence; rejects vectors that are not orderings."""
    x = tuple(int(v) for v in x)
    if n_items is None:
        # n(n-1) coordinates
        n_items = round((1 + (1 + 4 * len(x)) ** 0.5) / 2)
    if len(x) != n_items * (n_items - 1):
        raise ValueError(f"{len(x)} coordinates do not form an ordered-pair vector")
    n = n_items
    sigma = []
    for i in range(1, n + 1):
        before = sum(x[pair_index(j, i, n)] for j in range(1, n + 1) if j != i)
        sigma.append(1 + before)
    s = tuple(sigma)
    if sorted(s) != list(range(1, n + 1)) or perm_to_incidence(s) != x:
        raise ValueError("vector is not the incidence vector of an ordering")
    return s


def all_permutations(n: int) -> list[tuple[int, ...]]:
    return [tuple(p) for p in itertools.permutations(range(1, n + 1))]


def kendall_tau(s1: Sequence[int], s2: Sequence[int]) -> int:
    """Number of unordered item pairs the two rankings order oppositely."""
    a, b = _check_perm(s1), _check_perm(s2)
    if len(a) != len(b):
        raise ValueError("rankings of different sizes")
    n = len(a)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            if (a[i] < a[j]) != (b[i] < b[j]):
                count += 1
    return count


def objective_value(inst: LopInstance, sigma: Sequence[int]) -> Fraction:
    s = _check_perm(sigma)
    total = Fraction(0)
    for (i, j), w in inst.weights.items():
        if s[i - 1] < s[j - 1]:
            total += w
    return total


def optimal_permutations(inst: LopInstance) -> list[tuple[int, ...]]:
    """All maximizing rankings, by full n! enumeration."""
    best = None
    out: list[tuple[int, ...]] = []
    for p in all_permutations(inst.n_items):
        v = objective_value(inst, p)
        if best is None or v > best:
            best, out = v, [p]
        elif v == best:
            out.append(p)
    return out


def verify_diameter_kendall(inst: LopInstance) -> bool:
    """Conjugate diameter solve vs. brute force over optimal rankings.

    Both halves of the solved pair must be optimal rankings and the
    certified distance must equal twice the maximum Kendall tau over all
    optimal pairs.  Exact for n up to 6 (enumeration of n! rankings).
    """
    n = inst.n_items
    if n > 6:
        raise ValueError("verification enumerates n! rankings; n <= 6 only")
    bp = build(inst)
    dp = build_diameter(bp, choose_epsilon(bp), "conjugate")
    k = n * (n - 1) // 2
    res = solve_diameter(dp, constant_norm=k, cross_check=False)
    opts = optimal_permutations(inst)
    opt_inc = {perm_to_incidence(p) for p in opts}
    if res.x_star not in opt_inc or res.y_star not in opt_inc:
        return False
    max_tau = max(
        kendall_tau(p, q) for p, q in itertools.product(opts, opts)
    )
    return res.diameter == 2 * max_tau


def trivial_facets(n: int) -> list[Inequality]:
    """x_ij >= 0 for every ordered pair (each is x_ji <= 1 in disguise)."""
    pairs = ordered_pairs(n)
    nv = len(pairs)
    out = []
    for k, (i, j) in enumerate(pairs):
        a = [Fraction(0)] * nv
        a[k] = Fraction(1)
        out.append(Inequality(tuple(a), Fraction(0), ">=", f"x_{i}_{j}_ge_0"))
    return out


def dicycle_facets(n: int) -> list[Inequality]:
    """The 3-dicycle rows as inequalities (two per unordered triple)."""
    pairs = ordered_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(i + 1, n + 1):
                if j == k:
                    continue
                a = [Fraction(0)] * len(pairs)
                a[idx[(i, j)]] = a[idx[(j, k)]] = a[idx[(k, i)]] = Fraction(1)
                out.append(Inequality(tuple(a), Fraction(2), "<=", f"cyc_{i}_{j}_{k}"))
    return out


def base_facets(n: int) -> list[Inequality]:
    return trivial_facets(n) + dicycle_facets(n)


def pick_one_system(n: int):
    """The pick-one equalities as (rows, rhs) over the n(n-1) coordinates."""
    pairs = ordered_pairs(n)
    idx = {p: k for k, p in enumerate(pairs)}
    rows = []
    rhs = []
    for i, j in itertools.combinations(range(1, n + 1), 2):
        a = [Fraction(0)] * len(pairs)
        a[idx[(i, j)]] = a[idx[(j, i)]] = Fraction(1)
        rows.append(tuple(a))
        rhs.append(Fraction(1))
    return rows, rhs


def lift_inequality(ineq: Inequality, n_items: int) -> Inequality:
    """Zero-pad a 3-block inequality from n items to n+1 items.

    Coefficients on pairs among 1..n are copied in each of the x, y, z
    blocks; pairs involving the new item get 0; the right-hand side is
    unchanged.
    """
    n = n_items
    old_pairs = ordered_pairs(n)
    width = len(old_pairs)
    if len(ineq.a) != 3 * width:
        raise ValueError(f"expected {3 * width} coordinates for n_items={n}")
    new_pairs = ordered_pairs(n + 1)
    new_width = len(new_pairs)
    new_idx = {p: k for k, p in enumerate(new_pairs)}
    a = [Fraction(0)] * (3 * new_width)
    for block in range(3):
        for k, p in enumerate(old_pairs):
            a[block * new_width + new_idx[p]] = ineq.a[block * width + k]
    return Inequality(tuple(a), ineq.a0, ineq.sense, ineq.label)


def lop_from_json_dict(d: dict) -> LopInstance:
    try:
        n = int(d["n"])
        weights = {}
        for entry in d.get("weights", []):
            if len(entry) == 4:
                i, j, num, den = entry
                w = Fraction(int(num), int(den))
            elif len(entry) == 3:
                i, j, w = entry
                w = as_rational(w)
            else:
                raise ValueError(f"weight entry {entry!r} should be [i, j, num, den]")
            key = (int(i), int(j))
            if key in weights:
                raise ValueError(f"duplicate weight for pair {key}")
            weights[key] = w
        return LopInstance(n, weights)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad ordering instance JSON: {e}") from e


def lop_from_matrix_text(text: str) -> LopInstance:
    """Dense-matrix text: first number n, then n*n entries; diagonal ignored."""
    tokens = []
    for line in text.splitlines():
        line = line.split("#")[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens:
        raise ParseError("empty matrix text")
    try:
        n = int(tokens[0])
    except ValueError as e:
        raise ParseError(f"first token must be the size, got {tokens[0]!r}") from e
    if len(tokens) != 1 + n * n:
        raise ParseError(f"expected {n * n} matrix entries, found {len(tokens) - 1}")
    weights = {}
    pos = 1
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            tok = tokens[pos]
            pos += 1
            if i == j:
                continue
            try:
                weights[(i, j)] = Fraction(tok)
            except ValueError as e:
                raise ParseError(f"bad matrix entry {tok!r}") from e
    return LopInstance(n, weights)


def load_lop(path: str) -> LopInstance:
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".json"):
        try:
            return lop_from_json_dict(json.loads(text))
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: {e}") from e
    return lop_from_matrix_text(text)
