"""Brute-force separability oracle on dense amplitude vectors.

This module deliberately shares no code with the support/coefficient path:
it expands the state to all 2^n amplitudes, reshapes across a cut, and
computes the exact Schmidt rank by fraction-free (Bareiss) elimination over
the integers. It is meant for small n as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import lcm

import numpy as np

from .exact import ZERO, ExactComplex
from .state import PureState, QubitSubset

MAX_DENSE_QUBITS = 14
FLOAT_RANK_RTOL = 1e-9


@dataclass(frozen=True)
class DenseState:
    n: int
    amplitudes: tuple[ExactComplex, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DENSE_QUBITS:
            raise ValueError(f"dense states are limited to 1..{MAX_DENSE_QUBITS} qubits")
        if len(self.amplitudes) != 1 << self.n:
            raise ValueError("amplitude vector length must be 2**n")
        if not any(self.amplitudes):
            raise ValueError("the zero vector is not a state")

    @cached_property
    def nonzero(self) -> tuple[tuple[int, ExactComplex], ...]:
        return tuple((i, a) for i, a in enumerate(self.amplitudes) if a)

    def support(self) -> list[int]:
        return [i for i, _ in self.nonzero]


def dense_vector(s: PureState) -> DenseState:
    if s.n > MAX_DENSE_QUBITS:
        raise ValueError(f"{s.n} qubits is too many for dense expansion (max {MAX_DENSE_QUBITS})")
    amps = [ExactComplex(0)] * (1 << s.n)
    for label, c in s.terms:
        amps[label] = c
    return DenseState(s.n, tuple(amps))


def _split_index(index: int, n: int, left_qubits: list[int], right_qubits: list[int]):
    """Row and column of amplitude ``index`` when reshaped across the cut."""
    row = 0
    for q in left_qubits:
        row = (row << 1) | ((index >> (n - q)) & 1)
    col = 0
    for q in right_qubits:
        col = (col << 1) | ((index >> (n - q)) & 1)
    return row, col


def reshape(d: DenseState, subset: QubitSubset) -> list[list[ExactComplex]]:
    """The full ``2^|S| x 2^(n-|S|)`` amplitude matrix across ``subset``."""
    left, right = _sides(d, subset)
    mat = [[ExactComplex(0)] * (1 << len(right)) for _ in range(1 << len(left))]
    for i, a in enumerate(d.amplitudes):
        r, c = _split_index(i, d.n, left, right)
        mat[r][c] = a
    return mat


def _sides(d: DenseState, subset: QubitSubset):
    if subset.n != d.n:
        raise ValueError("subset and state disagree on the qubit count")
    if not subset.is_proper():
        raise ValueError("subset must be nonempty and proper")
    left = list(subset.qubits)
    right = [q for q in range(1, d.n + 1) if q not in left]
    return left, right


def schmidt_rank(
    d: DenseState, subset: QubitSubset, exact: bool = True, stop_above: int | None = None
) -> int:
    """Rank of the amplitudes reshaped with ``subset`` as row index.

    Only rows and columns holding a nonzero amplitude can contribute, so the
    elimination runs on that submatrix. With ``stop_above=k`` elimination
    quits as soon as the rank is known to exceed k and returns k + 1.
    ``exact=False`` switches to a floating-point SVD rank with a relative
    threshold of 1e-9; that mode is for speed comparisons and never used by
    the test gates.
    """
    left, right = _sides(d, subset)
    rows: dict[int, dict[int, ExactComplex]] = {}
    cols: set[int] = set()
    for i, a in d.nonzero:
        r, c = _split_index(i, d.n, left, right)
        rows.setdefault(r, {})[c] = a
        cols.add(c)
    col_order = sorted(cols)
    row_order = sorted(rows)
    if not exact:
        mat = np.zeros((len(row_order), len(col_order)), dtype=complex)
        cidx = {c: j for j, c in enumerate(col_order)}
        for i, r in enumerate(row_order):
            for c, a in rows[r].items():
                mat[i, cidx[c]] = complex(a)
        sv = np.linalg.svd(mat, compute_uv=False)
        return int(np.sum(sv > FLOAT_RANK_RTOL * sv[0]))
    mat = [[rows[r].get(c, ZERO) for c in col_order] for r in row_order]
    return complex_rank(mat, stop_above)


def complex_rank(mat: list[list[ExactComplex]], stop_above: int | None = None) -> int:
    """Exact rank of a Gaussian-rational matrix.

    ``A + iB`` has rank r over C iff the real block matrix
    ``[[A, -B], [B, A]]`` has rank 2r; denominators are cleared so the block
    matrix is integral and Bareiss elimination stays in the integers.
    """
    if not mat or not mat[0]:
        return 0
    dens = [x.re.denominator for row in mat for x in row] + [
        x.im.denominator for row in mat for x in row
    ]
    scale = lcm(*dens)
    re_part = [[x.re.numerator * (scale // x.re.denominator) for x in row] for row in mat]
    im_part = [[x.im.numerator * (scale // x.im.denominator) for x in row] for row in mat]
    if not any(any(r) for r in im_part):
        return bareiss_rank(re_part, stop_above)
    top = [a + [-b for b in bs] for a, bs in zip(re_part, im_part)]
    bottom = [b + a for a, b in zip(re_part, im_part)]
    r2 = bareiss_rank(top + bottom, None if stop_above is None else 2 * stop_above)
    if stop_above is not None and r2 > 2 * stop_above:
        return stop_above + 1
    assert r2 % 2 == 0
    return r2 // 2


def bareiss_rank(mat: list[list[int]], stop_above: int | None = None) -> int:
    """Rank of an integer matrix via fraction-free elimination.

    Returns ``stop_above + 1`` as soon as the rank is known to exceed it.
    """
    a = [list(row) for row in mat]
    nrows, ncols = len(a), len(a[0]) if a else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if a[r][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            f = a[r][col]
            row_r, row_p = a[r], a[rank]
            for c in range(col, ncols):
                row_r[c] = (row_r[c] * p - f * row_p[c]) // prev
        prev = p
        rank += 1
        if stop_above is not None and rank > stop_above:
            return rank
        if rank == nrows:
            break
    return rank


def oracle_classify(d: DenseState) -> int:
    """Family number (1-4) recomputed from the dense vector.

    1: a single qubit, or a qubit constant over the support;
    2: otherwise, some cut has Schmidt rank 1;
    4: otherwise, some cut splits the support into a Cartesian product of
       two sets, each with at least two elements;
    3: none of the above.
    """
    n = d.n
    support = d.support()
    if n == 1:
        return 1
    for q in range(1, n + 1):
        bits = {(i >> (n - q)) & 1 for i in support}
        if len(bits) == 1:
            return 1
    cuts = [QubitSubset(mask, n) for mask in range(1 << (n - 1), (1 << n) - 1)]
    if any(schmidt_rank(d, cut, stop_above=1) == 1 for cut in cuts):
        return 2
    for cut in cuts:
        left, right = _sides(d, cut)
        pairs = {_split_index(i, n, left, right) for i in support}
        lefts = {r for r, _ in pairs}
        rights = {c for _, c in pairs}
        if len(lefts) > 1 and len(rights) > 1 and pairs == {(r, c) for r in lefts for c in rights}:
            return 4
    return 3
