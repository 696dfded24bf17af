"""Cross-check the support/coefficient path against the dense oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bsm import constant_columns
from .oracle import dense_vector, oracle_classify, schmidt_rank
from .separability import classify, split_at
from .state import PureState, QubitSubset, compress, restrict


@dataclass(frozen=True)
class Concordance:
    family: int
    oracle_family: int
    cuts_checked: int
    cut_disagreements: tuple[QubitSubset, ...] = field(default_factory=tuple)

    @property
    def agree(self) -> bool:
        return self.family == self.oracle_family and not self.cut_disagreements


def _nonconstant(s: PureState) -> QubitSubset:
    consts = {q for q, _ in constant_columns(s)}
    return QubitSubset.from_qubits([q for q in range(1, s.n + 1) if q not in consts], s.n)


def residual(s: PureState) -> PureState | None:
    """``s`` with its constant qubits removed, or None if nothing is left."""
    keep = _nonconstant(s)
    if keep.size == s.n:
        return s
    if not keep.size:
        return None
    return restrict(s, keep)


def cut_separable(s: PureState, cut: QubitSubset, keep: QubitSubset | None = None) -> bool:
    """Primary-path verdict for one cut, constant qubits allowed.

    A constant qubit factors off from anything, so the cut is decided by
    its trace on the non-constant qubits: empty or everything means
    separable, otherwise ``split_at`` on the residual state decides.
    """
    keep = keep or _nonconstant(s)
    inner = compress(cut.mask, keep.positions)
    if inner == 0 or inner == (1 << keep.size) - 1:
        return True
    return split_at(restrict(s, keep), QubitSubset(inner, keep.size)) is not None


def cut_agreements(s: PureState) -> tuple[int, list[QubitSubset]]:
    """Compare the primary verdict with Schmidt rank 1 on every cut of ``s``.

    Each of the 2^(n-1)-1 bipartitions is visited once, through the side
    holding qubit 1.
    """
    n = s.n
    d = dense_vector(s)
    keep = _nonconstant(s)
    bad = []
    checked = 0
    for mask in range(1 << (n - 1), (1 << n) - 1):
        cut = QubitSubset(mask, n)
        primary = cut_separable(s, cut, keep)
        oracle = schmidt_rank(d, cut, stop_above=1) == 1
        checked += 1
        if primary != oracle:
            bad.append(cut)
    return checked, bad


def concordance(s: PureState, per_cut: bool = True) -> Concordance:
    """Family-level and (optionally) per-cut agreement for one state."""
    fam = int(classify(s).family)
    ofam = oracle_classify(dense_vector(s))
    checked, bad = 0, []
    if per_cut and s.n >= 2:
        checked, bad = cut_agreements(s)
    return Concordance(fam, ofam, checked, tuple(bad))
