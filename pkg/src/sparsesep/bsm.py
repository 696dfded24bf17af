"""Basis-state-matrix (BSM) tools.

The BSM of a state is the m x n 0/1 matrix whose rows are its basis labels.
Moving a set of columns to the left and reordering rows yields the
canonical block form when the support is a Cartesian product of g >= 2
distinct left patterns and h >= 2 distinct right patterns with g*h = m.
That support condition is necessary for a product state across the
corresponding bipartition.

Everything here looks only at labels, never at coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .state import PureState, QubitSubset, compress, deposit, format_label, qubit_bit


@dataclass(frozen=True)
class CanonicalForm:
    """A Cartesian factorization of a state's support.

    Attributes:
        subset: Qubits moved to the left block.
        left_patterns: The g distinct patterns on ``subset``, packed to
            ``subset.size`` bits, ascending.
        right_patterns: The h distinct patterns on the complement, packed and
            ascending.
        index_map: ``index_map[s][t]`` is the position in ``state.terms`` of
            the label combining left pattern s with right pattern t.
    """

    subset: QubitSubset
    left_patterns: tuple[int, ...]
    right_patterns: tuple[int, ...]
    index_map: tuple[tuple[int, ...], ...]

    @property
    def g(self) -> int:
        return len(self.left_patterns)

    @property
    def h(self) -> int:
        return len(self.right_patterns)

    def assembled_labels(self) -> list[list[int]]:
        """Full n-bit labels for every (left, right) pattern pair."""
        left = self.subset.positions
        right = self.subset.complement().positions
        return [
            [deposit(p, left) | deposit(q, right) for q in self.right_patterns]
            for p in self.left_patterns
        ]

    def describe(self) -> str:
        k, l = self.subset.size, self.subset.n - self.subset.size
        pi = ", ".join(format_label(p, k) for p in self.left_patterns)
        delta = ", ".join(format_label(q, l) for q in self.right_patterns)
        return f"subset {self.subset}: Pi = [{pi}], Delta = [{delta}] (g={self.g}, h={self.h})"


def constant_columns(s: PureState) -> list[tuple[int, int]]:
    """Qubits whose bit is the same in every basis label, with that bit.

    >>> constant_columns(PureState(3, [("000", 1), ("011", 1)]))
    [(1, 0)]
    """
    full = (1 << s.n) - 1
    ones, zeros = full, full
    for label in s.labels:
        ones &= label
        zeros &= ~label
    out = []
    for q in range(1, s.n + 1):
        bit = qubit_bit(q, s.n)
        if ones & bit:
            out.append((q, 1))
        elif zeros & bit:
            out.append((q, 0))
    return out


def has_constant_column(s: PureState) -> bool:
    full = (1 << s.n) - 1
    ones, zeros = full, full
    for label in s.labels:
        ones &= label
        zeros &= ~label
    return bool(ones | zeros)


def pattern_count(s: PureState, subset: QubitSubset) -> int:
    """Number of distinct patterns the support shows on ``subset``."""
    mask = subset.mask
    return len({label & mask for label in s.labels})


def try_canonical_form(s: PureState, subset: QubitSubset) -> CanonicalForm | None:
    """Canonical block form with ``subset`` as the left block, or None.

    Raises:
        ValueError: if ``s`` has a constant column or ``subset`` is not a
            nonempty proper subset of the state's qubits.
    """
    if subset.n != s.n:
        raise ValueError(f"subset is over {subset.n} qubits, state has {s.n}")
    if not subset.is_proper():
        raise ValueError(f"subset {subset} must be nonempty and proper")
    if has_constant_column(s):
        raise ValueError("state has a constant column; strip it before searching")
    return _canonical_form(s, subset.mask, subset)


def _canonical_form(s: PureState, mask: int, subset: QubitSubset | None = None):
    labels = s.labels
    m = len(labels)
    lefts = {label & mask for label in labels}
    g = len(lefts)
    if g < 2 or m % g:
        return None
    h = m // g
    if h < 2:
        return None
    rmask = ((1 << s.n) - 1) ^ mask
    rights = {label & rmask for label in labels}
    # labels are distinct, so m pairs inside a g x h grid fill it exactly
    if len(rights) != h:
        return None
    lefts = sorted(lefts)
    rights = sorted(rights)
    lpos = {v: i for i, v in enumerate(lefts)}
    rpos = {v: i for i, v in enumerate(rights)}
    grid = [[0] * h for _ in range(g)]
    for idx, label in enumerate(labels):
        grid[lpos[label & mask]][rpos[label & rmask]] = idx
    if subset is None:
        subset = QubitSubset(mask, s.n)
    lp = subset.positions
    rp = subset.complement().positions
    return CanonicalForm(
        subset=subset,
        left_patterns=tuple(compress(v, lp) for v in lefts),
        right_patterns=tuple(compress(v, rp) for v in rights),
        index_map=tuple(tuple(row) for row in grid),
    )


def qubit1_masks(n: int) -> Iterator[int]:
    """Masks of every proper subset containing qubit 1.

    Ordered by size, then by mask value. A bipartition and its complement
    describe the same cut, so fixing qubit 1 on the left loses nothing.
    """
    top = 1 << (n - 1)
    rest = list(range(n - 1))
    for size in range(0, n - 1):
        masks = [top | sum(1 << p for p in combo) for combo in combinations(rest, size)]
        masks.sort()
        yield from masks


def passes_divisor_prune(s: PureState, mask: int) -> bool:
    m = s.m
    g = len({label & mask for label in s.labels})
    return 1 < g < m and m % g == 0


def candidate_subsets(s: PureState) -> Iterator[QubitSubset]:
    """Qubit-1 subsets whose left pattern count g satisfies 1 < g, g | m, m/g > 1.

    Raises:
        ValueError: if ``s`` has fewer than two qubits or a constant column.
    """
    if s.n < 2:
        raise ValueError("need at least two qubits to bipartition")
    if has_constant_column(s):
        raise ValueError("state has a constant column; strip it before searching")
    for mask in qubit1_masks(s.n):
        if passes_divisor_prune(s, mask):
            yield QubitSubset(mask, s.n)
