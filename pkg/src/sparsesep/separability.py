"""Separability decisions and the four-family classification.

Families:

1. some qubit is constant over the support, so it factors off trivially;
2. no constant qubit, but some canonical form has a rank-1 coefficient
   matrix (separable);
3. no canonical form exists at all, so the state is genuinely entangled
   whatever its nonzero coefficients are;
4. canonical forms exist but none of their coefficient matrices is rank 1.

The families are not SLOCC classes: the Bell state (family 3) and
``(|00> + |01> + |10> - |11>)/2`` (family 4) are SLOCC-equivalent.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bsm import (
    CanonicalForm,
    _canonical_form,
    constant_columns,
    has_constant_column,
    qubit1_masks,
    try_canonical_form,
)
from .coeff import coefficient_matrix, is_rank_one, solve_rank_one
from .exact import ONE
from .state import (
    PureState,
    QubitSubset,
    complement_label,
    compress,
    deposit,
    restrict,
    tensor_product,
)

GAUGE_NOTE = "left factor has first amplitude 1; right factor carries the first coefficient row"
M4_NOTE = "factors rebuilt from the complementary pairs: left (d2, d4), right (d1/d2, 1)"
M4_NOTE_SWAPPED = "factors rebuilt from the complementary pairs: left (d1/d2, 1), right (d2, d4)"
STRIP_NOTE = "left factor is the constant qubit with amplitude 1; right factor keeps the coefficients"
SLOCC_NOTE = "family labels are not SLOCC invariants"


class Family(enum.IntEnum):
    FAMILY1 = 1
    FAMILY2 = 2
    FAMILY3 = 3
    FAMILY4 = 4

    @property
    def separable(self) -> bool:
        return self <= 2

    @property
    def description(self) -> str:
        return _FAMILY_TEXT[self]


_FAMILY_TEXT = {
    Family.FAMILY1: "separable: a qubit is constant over the support",
    Family.FAMILY2: "separable: a canonical form with rank-1 coefficient matrix",
    Family.FAMILY3: "genuinely entangled by support alone: no canonical form exists",
    Family.FAMILY4: "genuinely entangled by coefficients: canonical forms exist, none rank 1",
}


class FastPath(str, enum.Enum):
    PRIME_M = "prime-m"
    M4 = "m=4"
    NONE = "none"


@dataclass(frozen=True)
class SplitWitness:
    """A bipartition and exact factors whose product is the source state."""

    subset: QubitSubset
    left: PureState
    right: PureState
    scale_convention: str = GAUGE_NOTE

    def product(self) -> PureState:
        return tensor_product(self.left, self.right, self.subset)


@dataclass(frozen=True)
class SearchSummary:
    subsets_examined: int = 0
    canonical_forms: int = 0
    rank1_hits: int = 0

    @property
    def rank1_failures(self) -> int:
        return self.canonical_forms - self.rank1_hits


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    m: int
    family: Family
    witness: SplitWitness | None = None
    search: SearchSummary = field(default_factory=SearchSummary)
    fast_path: FastPath = FastPath.NONE
    note: str = SLOCC_NOTE

    @property
    def separable(self) -> bool:
        return self.family.separable


@dataclass(frozen=True)
class M4Verdict:
    separable: bool
    reason: str
    witness: SplitWitness | None = None


@dataclass(frozen=True)
class FactorTree:
    """Disjoint factors covering all qubits, ordered by their smallest qubit."""

    n: int
    factors: tuple[tuple[QubitSubset, PureState], ...]

    def product(self) -> PureState:
        terms = [(0, ONE)]
        for subset, f in self.factors:
            pos = subset.positions
            placed = [(deposit(b, pos), c) for b, c in f.terms]
            terms = [(x | y, c * d) for x, c in terms for y, d in placed]
        return PureState(self.n, terms)


# ---------------------------------------------------------------------------
# splitting


def _witness_from_form(s: PureState, cf: CanonicalForm) -> SplitWitness | None:
    a = coefficient_matrix(s, cf)
    if not is_rank_one(a):
        return None
    f = solve_rank_one(a)
    k = cf.subset.size
    return SplitWitness(
        subset=cf.subset,
        left=PureState(k, zip(cf.left_patterns, f.alpha)),
        right=PureState(s.n - k, zip(cf.right_patterns, f.beta)),
    )


def split_at(s: PureState, subset: QubitSubset) -> SplitWitness | None:
    """Factor ``s`` across ``subset`` and its complement, if possible.

    Succeeds exactly when a canonical form exists for ``subset`` and its
    coefficient matrix is rank 1.

    Raises:
        ValueError: on a constant column or an empty/full subset.
    """
    cf = try_canonical_form(s, subset)
    if cf is None:
        return None
    return _witness_from_form(s, cf)


def _mask_outcome(s: PureState, mask: int) -> int:
    """0: no canonical form, 1: form but not rank 1, 2: rank-1 form."""
    cf = _canonical_form(s, mask)
    if cf is None:
        return 0
    return 2 if is_rank_one(coefficient_matrix(s, cf)) else 1


def _chunk_outcomes(s: PureState, masks: list[int]) -> list[int]:
    return [_mask_outcome(s, mask) for mask in masks]


def _scan(s: PureState, stop_at_first: bool, workers: int = 1):
    """Walk the qubit-1 subsets in order; return (summary, first rank-1 mask)."""
    examined = forms = hits = 0
    first = None
    if workers > 1:
        masks = list(qubit1_masks(s.n))
        outcomes = _parallel_outcomes(s, masks, workers)
        pairs = zip(masks, outcomes)
    else:
        pairs = ((mask, _mask_outcome(s, mask)) for mask in qubit1_masks(s.n))
    for mask, outcome in pairs:
        examined += 1
        if outcome:
            forms += 1
        if outcome == 2:
            hits += 1
            if first is None:
                first = mask
            if stop_at_first:
                break
    return SearchSummary(examined, forms, hits), first


def _parallel_outcomes(s: PureState, masks: list[int], workers: int) -> list[int]:
    size = max(1, len(masks) // (workers * 4) + 1)
    chunks = [masks[i : i + size] for i in range(0, len(masks), size)]
    with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
        results = pool.map(_chunk_outcomes, [s] * len(chunks), chunks)
        return [x for chunk in results for x in chunk]


def _prefer(a: QubitSubset, b: QubitSubset) -> bool:
    """Whether to report side ``a`` of a cut rather than ``b``.

    Smaller side wins; on a tie, the side holding qubit 1.
    """
    return a.size < b.size or (a.size == b.size and 1 in a)


def _present(s: PureState, mask: int) -> SplitWitness:
    subset = QubitSubset(mask, s.n)
    other = subset.complement()
    if _prefer(other, subset):
        subset = other
    w = _witness_from_form(s, _canonical_form(s, subset.mask, subset))
    assert w is not None
    return w


def split_once(s: PureState, workers: int = 1) -> SplitWitness | None:
    """First bipartition (in search order) across which ``s`` factors.

    The witness subset is the smaller side of the cut found.

    Raises:
        ValueError: if ``s`` has a constant column.
    """
    if has_constant_column(s):
        raise ValueError("state has a constant column; strip it before splitting")
    if s.m < 2 or s.n < 2:
        return None
    _, first = _scan(s, stop_at_first=True, workers=workers)
    return None if first is None else _present(s, first)


def prime_m_shortcut(m: int) -> bool:
    """True iff ``m`` is prime; a constant-column-free state with prime m is entangled."""
    if m < 2:
        raise ValueError("m must be at least 2")
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def m4_verdict(s: PureState) -> M4Verdict:
    """Closed-form decision for four-term states without constant qubits.

    Terms are sorted, so labels 1..4 ascend. The state is separable iff the
    support splits into two complementary pairs and ``d1 d4 == d2 d3``.
    """
    if s.m != 4:
        raise ValueError(f"m4_verdict needs exactly four terms, got {s.m}")
    if has_constant_column(s):
        raise ValueError("state has a constant column")
    n = s.n
    (b1, d1), (b2, d2), (b3, d3), (b4, d4) = s.terms
    support = {b1, b2, b3, b4}
    if any(complement_label(b, n) not in support for b in support):
        return M4Verdict(False, "support is not two complementary pairs")
    # complementing reverses order, so sorted labels pair as (1,4) and (2,3)
    if complement_label(b1, n) != b4 or complement_label(b2, n) != b3:
        raise AssertionError("complementary pairs are not (1,4) and (2,3)")
    if d1 * d4 != d2 * d3:
        return M4Verdict(False, "complementary pairs present but d1*d4 != d2*d3")
    full = (1 << n) - 1
    shared = QubitSubset(full ^ (b1 ^ b2), n)
    differ = shared.complement()
    qpos, ppos = shared.positions, differ.positions
    mu = d1 / d2
    left = PureState(shared.size, [(compress(b1, qpos), d2), (compress(b4, qpos), d4)])
    right = PureState(differ.size, [(compress(b1, ppos), mu), (compress(b2, ppos), ONE)])
    if _prefer(differ, shared):
        witness = SplitWitness(differ, right, left, scale_convention=M4_NOTE_SWAPPED)
    else:
        witness = SplitWitness(shared, left, right, scale_convention=M4_NOTE)
    return M4Verdict(True, "two complementary pairs and d1*d4 == d2*d3", witness)


def _strip_witness(s: PureState, qubit: int, bit: int) -> SplitWitness:
    subset = QubitSubset.from_qubits([qubit], s.n)
    return SplitWitness(
        subset=subset,
        left=PureState(1, [(bit, ONE)]),
        right=restrict(s, subset.complement()),
        scale_convention=STRIP_NOTE,
    )


def classify(s: PureState, *, shortcuts: bool = True, workers: int = 1) -> ClassificationReport:
    """Assign ``s`` to one of the four families.

    Order of checks: single qubit or constant column (family 1), prime m
    (family 3), m = 4 closed form, then the exhaustive subset scan. The m = 4
    path only settles separability; telling family 3 from 4 still needs the
    scan. ``shortcuts=False`` skips the prime-m and m = 4 paths.
    """
    n, m = s.n, s.m
    if n == 1:
        return ClassificationReport(n, m, Family.FAMILY1)
    consts = constant_columns(s)
    if consts:
        q, bit = consts[0]
        return ClassificationReport(n, m, Family.FAMILY1, witness=_strip_witness(s, q, bit))
    if shortcuts and prime_m_shortcut(m):
        return ClassificationReport(n, m, Family.FAMILY3, fast_path=FastPath.PRIME_M)
    if shortcuts and m == 4:
        verdict = m4_verdict(s)
        if verdict.separable:
            return ClassificationReport(
                n, m, Family.FAMILY2, witness=verdict.witness, fast_path=FastPath.M4
            )
        summary, first = _scan(s, stop_at_first=False, workers=workers)
        if first is not None:
            raise AssertionError("m = 4 closed form disagrees with the subset scan")
        family = Family.FAMILY4 if summary.canonical_forms else Family.FAMILY3
        return ClassificationReport(n, m, family, search=summary, fast_path=FastPath.M4)
    summary, first = _scan(s, stop_at_first=True, workers=workers)
    if first is not None:
        return ClassificationReport(n, m, Family.FAMILY2, witness=_present(s, first), search=summary)
    family = Family.FAMILY4 if summary.canonical_forms else Family.FAMILY3
    return ClassificationReport(n, m, family, search=summary)


def factorize_fully(s: PureState, workers: int = 1) -> FactorTree:
    """Split ``s`` into unsplittable factors; their product is exactly ``s``."""
    n = s.n
    consts = constant_columns(s)
    factors: list[tuple[tuple[int, ...], PureState]] = [
        ((q,), PureState(1, [(bit, ONE)])) for q, bit in consts
    ]
    const_qubits = {q for q, _ in consts}
    rest = tuple(q for q in range(1, n + 1) if q not in const_qubits)
    if rest:
        residual = restrict(s, QubitSubset.from_qubits(rest, n)) if consts else s
        _factor_into(residual, rest, factors, workers)
    else:
        # every qubit constant: a single term whose coefficient goes on the first factor
        qubits, f = factors[0]
        factors[0] = (qubits, f.scale(s.terms[0][1]))
    factors.sort(key=lambda item: min(item[0]))
    return FactorTree(
        n, tuple((QubitSubset.from_qubits(qs, n), f) for qs, f in factors)
    )


def _factor_into(state: PureState, qubits: tuple[int, ...], out: list, workers: int) -> None:
    w = split_once(state, workers=workers) if len(qubits) > 1 else None
    if w is None:
        out.append((qubits, state))
        return
    left_q = tuple(qubits[i - 1] for i in w.subset.qubits)
    right_q = tuple(qubits[i - 1] for i in w.subset.complement().qubits)
    _factor_into(w.left, left_q, out, workers)
    _factor_into(w.right, right_q, out, workers)
