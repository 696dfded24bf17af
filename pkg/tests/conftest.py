from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import strategies as st

from sparsesep.exact import ExactComplex
from sparsesep.state import PureState, parse_state

EX1_TEXT = "000 1/2\n010 1/2\n101 1/2\n111 1/2\n"


@pytest.fixture
def ex1() -> PureState:
    return parse_state(EX1_TEXT)


# ---------------------------------------------------------------------------
# hypothesis strategies

nonzero_fraction = st.builds(
    Fraction,
    st.integers(-9, 9).filter(bool),
    st.integers(1, 9),
)
small_fraction = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))
nonzero_complex = st.one_of(
    st.builds(ExactComplex, nonzero_fraction, st.just(0)),
    st.builds(ExactComplex, small_fraction, nonzero_fraction),
)


@st.composite
def pure_states(draw, min_n=1, max_n=6, max_m=8):
    n = draw(st.integers(min_n, max_n))
    m = draw(st.integers(1, min(1 << n, max_m)))
    labels = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=m, max_size=m, unique=True))
    coeffs = draw(st.lists(nonzero_complex, min_size=m, max_size=m))
    return PureState(n, zip(labels, coeffs))


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(1, n + 1))))


# ---------------------------------------------------------------------------
# string-level brute force, independent of the bit helpers under test


def label_strings(s: PureState) -> list[str]:
    return [format(b, f"0{s.n}b") for b in s.labels]


def project(bits: str, qubits) -> str:
    return "".join(bits[q - 1] for q in qubits)


def brute_cartesian(s: PureState, qubits) -> tuple[list[str], list[str]] | None:
    """(left, right) pattern lists if the support is their full product, else None."""
    rest = [q for q in range(1, s.n + 1) if q not in qubits]
    strs = label_strings(s)
    left = sorted({project(x, qubits) for x in strs})
    right = sorted({project(x, rest) for x in strs})
    pairs = {(project(x, qubits), project(x, rest)) for x in strs}
    if pairs == set(product(left, right)):
        return left, right
    return None


def brute_product(a: PureState, b: PureState, qubits, n: int) -> dict[str, ExactComplex]:
    """Tensor product computed character by character."""
    rest = [q for q in range(1, n + 1) if q not in qubits]
    out = {}
    for (x, c), (y, d) in product(a.terms, b.terms):
        xs, ys = format(x, f"0{a.n}b"), format(y, f"0{b.n}b")
        chars = [""] * n
        for q, ch in zip(qubits, xs):
            chars[q - 1] = ch
        for q, ch in zip(rest, ys):
            chars[q - 1] = ch
        out["".join(chars)] = c * d
    return out


def as_strings(s: PureState) -> dict[str, ExactComplex]:
    return {format(b, f"0{s.n}b"): c for b, c in s.terms}
