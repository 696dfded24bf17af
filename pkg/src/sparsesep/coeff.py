"""Coefficient matrices of canonical forms and the exact rank-1 test.

Given a canonical form with g left and h right patterns, the state's
coefficients fill a g x h matrix A. The state factors across the form's
bipartition exactly when A = alpha^T beta for some vectors alpha, beta,
i.e. when every pair of rows (equivalently, every pair of columns) is
proportional. All entries are nonzero coefficients, so the test reduces to
the minors anchored at entry (0, 0).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .bsm import CanonicalForm
from .exact import ONE, ExactComplex
from .state import PureState


@dataclass(frozen=True)
class CoefficientMatrix:
    """A g x h matrix of nonzero exact coefficients, g, h >= 2."""

    entries: tuple[tuple[ExactComplex, ...], ...]
    form: CanonicalForm | None = None

    def __post_init__(self):
        rows = self.entries
        if len(rows) < 2 or len(rows[0]) < 2:
            raise ValueError("coefficient matrix needs at least two rows and two columns")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged coefficient matrix")
        if any(not x for r in rows for x in r):
            raise ValueError("coefficient matrix entries must be nonzero")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], form: CanonicalForm | None = None):
        return cls(tuple(tuple(ExactComplex.coerce(x) for x in r) for r in rows), form)

    @property
    def g(self) -> int:
        return len(self.entries)

    @property
    def h(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, idx):
        s, t = idx
        return self.entries[s][t]

    def scaled(self, c) -> CoefficientMatrix:
        c = ExactComplex.coerce(c)
        return CoefficientMatrix(tuple(tuple(x * c for x in r) for r in self.entries), self.form)

    def transpose(self) -> CoefficientMatrix:
        return CoefficientMatrix(tuple(zip(*self.entries)))


@dataclass(frozen=True)
class RankOneFactors:
    alpha: tuple[ExactComplex, ...]
    beta: tuple[ExactComplex, ...]

    def outer(self) -> tuple[tuple[ExactComplex, ...], ...]:
        return tuple(tuple(a * b for b in self.beta) for a in self.alpha)


def coefficient_matrix(s: PureState, cf: CanonicalForm) -> CoefficientMatrix:
    """Fill the g x h grid of ``cf`` with the coefficients of ``s``.

    Raises:
        ValueError: if ``cf`` does not describe the support of ``s``.
    """
    if cf.subset.n != s.n or cf.g * cf.h != s.m:
        raise ValueError("stale canonical form: shape does not match the state")
    expected = cf.assembled_labels()
    rows = []
    for s_idx, row in enumerate(cf.index_map):
        out = []
        for t_idx, term_idx in enumerate(row):
            if not 0 <= term_idx < s.m:
                raise ValueError("stale canonical form: index out of range")
            label, c = s.terms[term_idx]
            if label != expected[s_idx][t_idx]:
                raise ValueError("stale canonical form: index map points at the wrong label")
            out.append(c)
        rows.append(tuple(out))
    return CoefficientMatrix(tuple(rows), cf)


def is_rank_one(a: CoefficientMatrix) -> bool:
    """True iff every 2x2 minor vanishes.

    With nonzero entries it suffices to check ``a[s,t] a[0,0] == a[s,0] a[0,t]``.
    """
    rows = a.entries
    a00 = rows[0][0]
    first = rows[0]
    for row in rows[1:]:
        lead = row[0]
        for t in range(1, len(row)):
            if row[t] * a00 != lead * first[t]:
                return False
    return True


def rows_proportional(a: CoefficientMatrix) -> bool:
    """Every pair of rows is proportional (all pairwise cross products agree)."""
    return all(_proportional(r1, r2) for r1, r2 in combinations(a.entries, 2))


def columns_proportional(a: CoefficientMatrix) -> bool:
    cols = list(zip(*a.entries))
    return all(_proportional(c1, c2) for c1, c2 in combinations(cols, 2))


def _proportional(u, v) -> bool:
    return all(u[i] * v[j] == u[j] * v[i] for i, j in combinations(range(len(u)), 2))


def solve_rank_one(a: CoefficientMatrix) -> RankOneFactors:
    """Factor ``a = alpha^T beta`` in the gauge ``alpha[0] = 1``.

    ``beta`` is the first row and ``alpha[s] = a[s,0] / a[0,0]``.

    Raises:
        ValueError: if ``a`` is not rank 1.
    """
    if not is_rank_one(a):
        raise ValueError("matrix is not rank 1; it has no outer-product factorization")
    rows = a.entries
    a00 = rows[0][0]
    alpha = (ONE,) + tuple(row[0] / a00 for row in rows[1:])
    return RankOneFactors(alpha=alpha, beta=tuple(rows[0]))
