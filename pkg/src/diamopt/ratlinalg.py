"""Exact rational linear algebra.

Every rank decision in the polyhedral code runs through this module, and
every one of them is tolerance-free: scalars are `fractions.Fraction` or
arbitrary-precision integers.  numpy appears only as an int64 fast path for
bulk reductions; each vectorized step is guarded by an exact overflow bound
and falls back to Python integers when the guard trips, so no result ever
depends on floating point or on silent wraparound.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

# int64 headroom: one reduction step computes a*p - b*q from entries already
# bounded by the guard, so keeping everything below 2**62 is safe.
_INT64_GUARD = 1 << 62


def as_rational(x) -> Fraction:
    """Coerce ints, strings like '3/7' or '0.25', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, np.integer):
        return Fraction(int(x))
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def scaled_int_vector(coeffs: Sequence, rhs=None):
    """Clear denominators from a rational row.

    Returns (int_coeffs, int_rhs, scale) where scale > 0, so any comparison
    row . v <= rhs is equivalent to int_coeffs . v <= int_rhs.
    """
    cs = [as_rational(c) for c in coeffs]
    dens = [c.denominator for c in cs]
    if rhs is not None:
        rhs = as_rational(rhs)
        dens.append(rhs.denominator)
    scale = math.lcm(*dens) if dens else 1
    ints = tuple(int(c * scale) for c in cs)
    if rhs is None:
        return ints, None, scale
    return ints, int(rhs * scale), scale


def _vec_gcd(v) -> int:
    g = 0
    for a in v:
        g = math.gcd(g, a if a >= 0 else -a)
        if g == 1:
            return 1
    return g


class RatMatrix:
    """Dense matrix of Fractions.

    Construction normalizes every entry through Fraction, which keeps the
    lowest-terms / positive-denominator invariants for free.
    """

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Sequence]):
        rs = tuple(tuple(as_rational(x) for x in row) for row in rows)
        if rs:
            w = len(rs[0])
            for r in rs:
                if len(r) != w:
                    raise ValueError("ragged rows")
        else:
            w = 0
        self.rows = rs
        self.nrows = len(rs)
        self.ncols = w

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"RatMatrix({self.nrows}x{self.ncols})"

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self.rows)) if self.nrows else RatMatrix([])

    def rank(self) -> int:
        """Exact rank by Gaussian elimination with full pivoting.

        The pivot is the nonzero entry of smallest bit size in the remaining
        submatrix; every eliminated row is reduced immediately (Fraction
        arithmetic keeps lowest terms), which bounds coefficient growth.
        """
        work = [list(r) for r in self.rows]
        m, n = self.nrows, self.ncols
        done_cols: set[int] = set()
        rank = 0
        live = list(range(m))
        while True:
            best = None
            best_size = None
            for i in live:
                row = work[i]
                for j in range(n):
                    if j in done_cols:
                        continue
                    a = row[j]
                    if a:
                        size = a.numerator.bit_length() + a.denominator.bit_length()
                        if best_size is None or size < best_size:
                            best, best_size = (i, j), size
                            if size <= 2:
                                break
                if best_size is not None and best_size <= 2:
                    break
            if best is None:
                return rank
            pi, pj = best
            pivot_row = work[pi]
            pv = pivot_row[pj]
            live.remove(pi)
            done_cols.add(pj)
            rank += 1
            for i in live:
                f = work[i][pj]
                if f:
                    ratio = f / pv
                    work[i] = [a - ratio * b for a, b in zip(work[i], pivot_row)]


def rank(rows) -> int:
    """Rank of a matrix given as RatMatrix or an iterable of rational rows."""
    if isinstance(rows, RatMatrix):
        return rows.rank()
    return RatMatrix(rows).rank()


class RankBuilder:
    """Incremental exact rank of a growing set of vectors.

    Vectors are scaled to integers and folded into a reduced integer basis:
    rows are pairwise reduced, gcd-normalized, pivots positive.  feed()
    accepts one vector; feed_block() accepts a 2-D integer ndarray and does
    the bulk of the reduction in int64 with exact overflow guards.
    """

    def __init__(self, ncols: int | None = None):
        self.ncols = ncols
        self._rows: list[list[int]] = []
        self._pivots: list[int] = []
        self._np_stale = True
        self._np_rows = None

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def saturated(self) -> bool:
        """True once the basis spans the whole ambient space."""
        return self.ncols is not None and len(self._rows) == self.ncols

    def _check_width(self, width: int):
        if self.ncols is None:
            self.ncols = width
        elif width != self.ncols:
            raise ValueError(f"vector of length {width}, expected {self.ncols}")

    def feed(self, vec) -> int:
        """Fold one vector in; returns the rank afterwards."""
        if isinstance(vec, np.ndarray):
            if not np.issubdtype(vec.dtype, np.integer):
                raise ValueError("ndarray vectors must have an integer dtype")
            v = [int(a) for a in vec]
        else:
            v = list(vec)
        self._check_width(len(v))
        if any(not isinstance(a, int) for a in v):
            ints, _, _ = scaled_int_vector(v)
            v = list(ints)
        if self.saturated:
            return self.rank
        self._feed_ints(v)
        return self.rank

    def _feed_ints(self, v: list[int]):
        for row, p in zip(self._rows, self._pivots):
            f = v[p]
            if f:
                pv = row[p]
                v = [a * pv - b * f for a, b in zip(v, row)]
                g = _vec_gcd(v)
                if g > 1:
                    v = [a // g for a in v]
        pivot = next((j for j, a in enumerate(v) if a), None)
        if pivot is None:
            return
        if v[pivot] < 0:
            v = [-a for a in v]
        g = _vec_gcd(v)
        if g > 1:
            v = [a // g for a in v]
        # back-eliminate the new pivot column from the existing rows; their
        # own pivot entries are untouched because v is zero there
        for i, row in enumerate(self._rows):
            f = row[pivot]
            if f:
                pv = v[pivot]
                new = [a * pv - b * f for a, b in zip(row, v)]
                g = _vec_gcd(new)
                if g > 1:
                    new = [a // g for a in new]
                self._rows[i] = new
        at = next((k for k, q in enumerate(self._pivots) if q > pivot), len(self._pivots))
        self._rows.insert(at, v)
        self._pivots.insert(at, pivot)
        self._np_stale = True

    def _np_basis(self):
        if self._np_stale:
            if self._rows and max(abs(a) for row in self._rows for a in row) < _INT64_GUARD:
                self._np_rows = np.array(self._rows, dtype=np.int64)
            else:
                self._np_rows = None
            self._np_stale = False
        return self._np_rows

    def _reduce_block(self, work: np.ndarray) -> np.ndarray | None:
        """One pass of work against the current basis; None means the int64
        guard tripped and the caller must take the exact path."""
        basis = self._np_basis()
        if basis is None and self._rows:
            return None
        bound = int(np.abs(work).max(initial=0))
        if basis is not None:
            for k, p in enumerate(self._pivots):
                f = work[:, p]
                nz = f != 0
                if not nz.any():
                    continue
                pv = int(basis[k, p])
                row_max = int(np.abs(basis[k]).max())
                f_max = int(np.abs(f[nz]).max())
                step = bound * pv + f_max * row_max
                if step >= _INT64_GUARD:
                    # the running estimate is conservative; tighten it before
                    # giving up on the vectorized path
                    bound = int(np.abs(work).max(initial=0))
                    step = bound * pv + f_max * row_max
                    if step >= _INT64_GUARD:
                        return None
                bound = step
                work[nz] = work[nz] * pv - f[nz, None] * basis[k][None, :]
        return work

    def feed_block(self, block: np.ndarray) -> int:
        """Fold in every row of an integer 2-D array; returns the rank.

        Equivalent to feeding the rows one by one, just vectorized.
        """
        if block.ndim != 2:
            raise ValueError("feed_block wants a 2-D array")
        self._check_width(block.shape[1])
        if block.shape[0] == 0:
            return self.rank
        if not np.issubdtype(block.dtype, np.integer):
            raise ValueError("feed_block wants an integer dtype")
        work = block.astype(np.int64, copy=True)
        while work.shape[0]:
            if self.saturated:
                break
            reduced = self._reduce_block(work)
            if reduced is None:
                for r in work:
                    self.feed([int(a) for a in r])
                return self.rank
            work = reduced
            nonzero = np.any(work != 0, axis=1)
            work = work[nonzero]
            if work.shape[0] == 0:
                break
            g = np.gcd.reduce(np.abs(work), axis=1)
            g[g == 0] = 1
            work //= g[:, None]
            self._feed_ints([int(a) for a in work[0]])
            work = work[1:]
        return self.rank


def incremental_rank_builder(ncols: int | None = None) -> RankBuilder:
    return RankBuilder(ncols)


def affine_dimension(points) -> int:
    """Dimension of the affine hull of a nonempty point collection.

    A single point has dimension 0.  Accepts a 2-D integer ndarray (fast
    path) or any iterable of rational coordinate sequences.
    """
    if isinstance(points, np.ndarray):
        if points.ndim != 2:
            raise ValueError("expected a 2-D array of points")
        if points.shape[0] == 0:
            raise ValueError("affine hull of no points is undefined")
        base = points[0].astype(np.int64)
        rb = RankBuilder(points.shape[1])
        chunk = 1 << 15
        for lo in range(1, points.shape[0], chunk):
            if rb.saturated:
                break
            rb.feed_block(points[lo : lo + chunk].astype(np.int64) - base[None, :])
        return rb.rank

    pts = [tuple(as_rational(c) for c in p) for p in points]
    if not pts:
        raise ValueError("affine hull of no points is undefined")
    base = pts[0]
    rb = RankBuilder(len(base))
    for p in pts[1:]:
        if len(p) != len(base):
            raise ValueError("points of mixed dimension")
        if rb.saturated:
            break
        rb.feed([a - b for a, b in zip(p, base)])
    return rb.rank
