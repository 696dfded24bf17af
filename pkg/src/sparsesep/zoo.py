"""Named and seeded random test states.

Named states use unnormalized integer coefficients, except the two cluster
literals which keep their 1/2 amplitudes. Random generators take an explicit
seed and are reproducible bit for bit.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import ExactComplex
from .state import PureState, QubitSubset, tensor_product

KINDS = (
    "ghz",
    "w",
    "dicke",
    "c4",
    "linear_cluster",
    "bell",
    "c2",
    "random_product",
    "random_sparse",
)

HALF = Fraction(1, 2)


def ghz(n: int) -> PureState:
    _check_n(n, 2)
    return PureState(n, [(0, 1), ((1 << n) - 1, 1)])


def dicke(n: int, k: int) -> PureState:
    """Equal-weight sum of all labels with exactly ``k`` ones."""
    _check_n(n, 2)
    if not 1 <= k <= n - 1:
        raise ValueError(f"dicke needs 1 <= k <= n-1, got k={k}, n={n}")
    labels = [sum(1 << p for p in combo) for combo in combinations(range(n), k)]
    return PureState(n, [(b, 1) for b in labels])


def w(n: int) -> PureState:
    return dicke(n, 1)


def c4() -> PureState:
    """(|0000> + |0101> + |1010> - |1111>)/2."""
    return PureState(4, [("0000", HALF), ("0101", HALF), ("1010", HALF), ("1111", -HALF)])


def c2() -> PureState:
    """(|00> + |01> + |10> - |11>)/2."""
    return PureState(2, [("00", HALF), ("01", HALF), ("10", HALF), ("11", -HALF)])


def bell() -> PureState:
    return PureState(2, [("00", 1), ("11", 1)])


def linear_cluster(n: int) -> PureState:
    """Open-chain cluster state: sign (-1)^(number of adjacent 11 pairs).

    For n = 4 this is a local-unitary relative of :func:`c4`, not the same
    support.
    """
    _check_n(n, 2)
    if n > 20:
        raise ValueError("linear_cluster has 2^n terms; n is capped at 20")
    terms = []
    for b in range(1 << n):
        pairs = bin(b & (b >> 1)).count("1")
        terms.append((b, -1 if pairs % 2 else 1))
    return PureState(n, terms)


def random_coefficient(rng: random.Random, complex_prob: float = 0.5) -> ExactComplex:
    """Nonzero Gaussian rational with numerators in [-9, 9] \\ {0}, denominators in [1, 9]."""
    re = _random_fraction(rng)
    im = _random_fraction(rng) if rng.random() < complex_prob else Fraction(0)
    return ExactComplex(re, im)


def _random_fraction(rng: random.Random) -> Fraction:
    num = rng.choice([x for x in range(-9, 10) if x])
    return Fraction(num, rng.randint(1, 9))


def random_factor(rng: random.Random, width: int, max_terms: int = 4) -> PureState:
    """Random state on ``width`` qubits with no constant qubit."""
    if width < 1:
        raise ValueError("factor width must be positive")
    top = min(1 << width, max_terms)
    if top < 2:
        raise ValueError("a factor without constant qubits needs at least two terms")
    full = (1 << width) - 1
    while True:
        t = rng.randint(2, top)
        labels = rng.sample(range(1 << width), t)
        ones, zeros = full, full
        for b in labels:
            ones &= b
            zeros &= ~b
        if not (ones | zeros):
            return PureState(width, [(b, random_coefficient(rng)) for b in labels])


def random_product(blocks, seed: int, max_terms: int = 4) -> PureState:
    """Exact product of random factors on a random partition of the qubits.

    ``blocks`` lists the factor widths; the qubits of each block are drawn
    by shuffling 1..n with ``seed``, so blocks are usually not contiguous.
    """
    blocks = list(blocks)
    if len(blocks) < 1 or any(b < 1 for b in blocks):
        raise ValueError(f"invalid block sizes {blocks}")
    rng = random.Random(seed)
    n = sum(blocks)
    _check_n(n, 1)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    state = random_factor(rng, blocks[0], max_terms)
    placed = sorted(order[: blocks[0]])
    start = blocks[0]
    for width in blocks[1:]:
        factor = random_factor(rng, width, max_terms)
        new_qubits = sorted(order[start : start + width])
        start += width
        combined = sorted(placed + new_qubits)
        # positions of the new block inside the combined register
        sub = QubitSubset.from_qubits(
            [combined.index(q) + 1 for q in new_qubits], len(combined)
        )
        state = tensor_product(factor, state, sub)
        placed = combined
    return state


def random_sparse(n: int, m: int, seed: int) -> PureState:
    """``m`` distinct random labels with random nonzero coefficients."""
    _check_n(n, 1)
    if not 1 <= m <= (1 << n):
        raise ValueError(f"m={m} impossible on {n} qubits")
    rng = random.Random(seed)
    labels = _sample_labels(rng, n, m)
    return PureState(n, [(b, random_coefficient(rng)) for b in labels])


def _sample_labels(rng: random.Random, n: int, m: int) -> list[int]:
    if n <= 20:
        return rng.sample(range(1 << n), m)
    seen: set[int] = set()
    while len(seen) < m:
        seen.add(rng.getrandbits(n))
    return sorted(seen)


def _check_n(n: int, lo: int) -> None:
    if not isinstance(n, int) or not lo <= n <= 63:
        raise ValueError(f"qubit count must be in {lo}..63, got {n}")


@dataclass(frozen=True)
class GeneratorSpec:
    """Which state to build and with what parameters.

    ``n`` is needed by ghz, w, dicke, linear_cluster and random_sparse;
    ``k`` by dicke; ``m`` and ``seed`` by random_sparse; ``blocks`` and
    ``seed`` by random_product.
    """

    kind: str
    n: int | None = None
    k: int | None = None
    m: int | None = None
    blocks: tuple[int, ...] = field(default_factory=tuple)
    seed: int = 0
    max_terms: int = 4

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; choose from {', '.join(KINDS)}")
        needs_n = {"ghz", "w", "dicke", "linear_cluster", "random_sparse"}
        if self.kind in needs_n and self.n is None:
            raise ValueError(f"{self.kind} needs n")
        if self.kind == "dicke" and self.k is None:
            raise ValueError("dicke needs k")
        if self.kind == "random_sparse" and self.m is None:
            raise ValueError("random_sparse needs m")
        if self.kind == "random_product" and not self.blocks:
            raise ValueError("random_product needs blocks")


def generate(spec: GeneratorSpec) -> PureState:
    kind = spec.kind
    if kind == "ghz":
        return ghz(spec.n)
    if kind == "w":
        return w(spec.n)
    if kind == "dicke":
        return dicke(spec.n, spec.k)
    if kind == "c4":
        return c4()
    if kind == "linear_cluster":
        return linear_cluster(spec.n)
    if kind == "bell":
        return bell()
    if kind == "c2":
        return c2()
    if kind == "random_product":
        return random_product(spec.blocks, spec.seed, spec.max_terms)
    return random_sparse(spec.n, spec.m, spec.seed)

