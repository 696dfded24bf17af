"""Sparse pure states of n qubits.

A state is a sorted tuple of ``(label, coefficient)`` pairs. Labels are
plain integers read as n-bit strings: qubit 1 is the leftmost character and
the most significant bit, so ``"011"`` is the integer 3 with qubit 1 at 0.
Coefficients are :class:`~sparsesep.exact.ExactComplex`. Normalization is
never enforced; every procedure in the package is scale-invariant.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .exact import ExactComplex

MAX_QUBITS = 63
MAX_TERMS = 1 << 20


class StateError(ValueError):
    """Base class for invalid state input."""


class StateParseError(StateError):
    """Malformed state text or structured object."""


class StateInvariantError(StateError):
    """Well-formed input that violates a PureState invariant."""


# ---------------------------------------------------------------------------
# bit helpers


def qubit_bit(q: int, n: int) -> int:
    """Integer bit for 1-based qubit ``q`` in an ``n``-qubit label."""
    return 1 << (n - q)


def bit_positions(mask: int) -> list[int]:
    """Set bit positions of ``mask``, most significant first."""
    out = []
    while mask:
        p = mask.bit_length() - 1
        out.append(p)
        mask ^= 1 << p
    return out


def compress(label: int, positions: Sequence[int]) -> int:
    """Gather the bits of ``label`` at ``positions`` into a packed integer."""
    r = 0
    for p in positions:
        r = (r << 1) | ((label >> p) & 1)
    return r


def deposit(value: int, positions: Sequence[int]) -> int:
    """Scatter the low ``len(positions)`` bits of ``value`` onto ``positions``."""
    r = 0
    k = len(positions)
    for i, p in enumerate(positions):
        if (value >> (k - 1 - i)) & 1:
            r |= 1 << p
    return r


def format_label(bits: int, n: int) -> str:
    return format(bits, f"0{n}b") if n else ""


def complement_label(bits: int, n: int) -> int:
    """Bitwise complement of an n-bit label (``|0101>`` -> ``|1010>``)."""
    return bits ^ ((1 << n) - 1)


# ---------------------------------------------------------------------------
# qubit subsets


@dataclass(frozen=True, order=True)
class QubitSubset:
    """A set of qubit positions encoded as a mask over the label bits."""

    mask: int
    n: int

    def __post_init__(self):
        if not 1 <= self.n <= MAX_QUBITS:
            raise ValueError(f"qubit count {self.n} outside 1..{MAX_QUBITS}")
        if not 0 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask:#x} does not fit {self.n} qubits")

    @classmethod
    def from_qubits(cls, qubits: Iterable[int], n: int) -> QubitSubset:
        mask = 0
        for q in qubits:
            if not 1 <= q <= n:
                raise ValueError(f"qubit {q} outside 1..{n}")
            mask |= qubit_bit(q, n)
        return cls(mask, n)

    @property
    def qubits(self) -> tuple[int, ...]:
        return tuple(q for q in range(1, self.n + 1) if self.mask & qubit_bit(q, self.n))

    @property
    def size(self) -> int:
        return bin(self.mask).count("1")

    @property
    def positions(self) -> list[int]:
        return bit_positions(self.mask)

    def complement(self) -> QubitSubset:
        return QubitSubset(self.mask ^ ((1 << self.n) - 1), self.n)

    def is_proper(self) -> bool:
        return 0 < self.mask < (1 << self.n) - 1

    def __contains__(self, q: int) -> bool:
        return 1 <= q <= self.n and bool(self.mask & qubit_bit(q, self.n))

    def __str__(self):
        return "{" + ",".join(map(str, self.qubits)) + "}"


# ---------------------------------------------------------------------------
# states


class PureState:
    """An unnormalized sparse pure state.

    Args:
        n: Number of qubits, 1..63.
        terms: Iterable of ``(label, coefficient)``; labels are integers
            below ``2**n`` or bitstrings of length ``n``. Coefficients are
            anything :meth:`ExactComplex.coerce` accepts.

    Raises:
        StateInvariantError: duplicate labels, zero coefficients, no terms,
            or ``n`` out of range.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Iterable):
        if not isinstance(n, int) or not 1 <= n <= MAX_QUBITS:
            raise StateInvariantError(f"qubit count {n} outside 1..{MAX_QUBITS}")
        seen = {}
        for label, coeff in terms:
            if isinstance(label, str):
                if len(label) != n or set(label) - {"0", "1"}:
                    raise StateInvariantError(f"bitstring {label!r} is not {n} binary digits")
                label = int(label, 2)
            if not 0 <= label < (1 << n):
                raise StateInvariantError(f"label {label} does not fit {n} qubits")
            c = ExactComplex.coerce(coeff)
            if not c:
                raise StateInvariantError(f"zero coefficient on |{format_label(label, n)}>")
            if label in seen:
                raise StateInvariantError(f"duplicate basis label |{format_label(label, n)}>")
            seen[label] = c
        if not seen:
            raise StateInvariantError("a state needs at least one nonzero term")
        if len(seen) > MAX_TERMS:
            raise StateInvariantError(f"more than {MAX_TERMS} terms")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", tuple(sorted(seen.items())))

    def __setattr__(self, name, value):
        raise AttributeError("PureState is immutable")

    def __reduce__(self):
        return (PureState, (self.n, self.terms))

    @property
    def m(self) -> int:
        return len(self.terms)

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(label for label, _ in self.terms)

    @property
    def coefficients(self) -> tuple[ExactComplex, ...]:
        return tuple(c for _, c in self.terms)

    def as_dict(self) -> dict[int, ExactComplex]:
        return dict(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[int, ExactComplex]]:
        return iter(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PureState):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.terms))

    def __repr__(self):
        body = " + ".join(f"({c})|{format_label(b, self.n)}>" for b, c in self.terms[:8])
        if self.m > 8:
            body += f" + ... ({self.m} terms)"
        return f"PureState(n={self.n}: {body})"

    def scale(self, c) -> PureState:
        c = ExactComplex.coerce(c)
        return PureState(self.n, ((b, v * c) for b, v in self.terms))

    def is_proportional_to(self, other: PureState) -> bool:
        """Equal up to a nonzero scalar (same ray)."""
        if self.n != other.n or self.labels != other.labels:
            return False
        ratio = other.terms[0][1] / self.terms[0][1]
        return all(b * ratio == d for (_, b), (_, d) in zip(self.terms, other.terms))


# ---------------------------------------------------------------------------
# algebra


def tensor_product(a: PureState, b: PureState, placement: QubitSubset) -> PureState:
    """Product state with ``a`` on the qubits of ``placement`` and ``b`` elsewhere.

    Both factors keep their internal qubit order: qubit i of ``a`` lands on
    the i-th smallest qubit of ``placement``, and likewise for ``b`` on the
    complement.
    """
    n = placement.n
    if placement.size != a.n or n - placement.size != b.n:
        raise ValueError(
            f"placement {placement} of {n} qubits does not fit factors of width {a.n} and {b.n}"
        )
    left = placement.positions
    right = placement.complement().positions
    a_terms = [(deposit(x, left), c) for x, c in a.terms]
    b_terms = [(deposit(y, right), d) for y, d in b.terms]
    return PureState(n, ((x | y, c * d) for x, c in a_terms for y, d in b_terms))


def permute_qubits(s: PureState, perm: Sequence[int]) -> PureState:
    """Move the bit of qubit ``i`` to position ``perm[i-1]`` (1-based).

    ``permute_qubits(permute_qubits(s, p), q) == permute_qubits(s, q∘p)``.
    """
    n = s.n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError(f"{list(perm)} is not a permutation of 1..{n}")
    moves = [(n - i, n - perm[i - 1]) for i in range(1, n + 1)]
    out = []
    for label, c in s.terms:
        new = 0
        for src, dst in moves:
            if (label >> src) & 1:
                new |= 1 << dst
        out.append((new, c))
    return PureState(n, out)


def compose_permutations(q: Sequence[int], p: Sequence[int]) -> list[int]:
    """``q∘p``: apply ``p`` first, then ``q``."""
    return [q[p[i] - 1] for i in range(len(p))]


def flip_all(s: PureState) -> PureState:
    """Apply X to every qubit (complements every label)."""
    return PureState(s.n, ((complement_label(b, s.n), c) for b, c in s.terms))


def restrict(s: PureState, keep: QubitSubset) -> PureState:
    """Drop the qubits outside ``keep``; only valid when they are constant."""
    pos = keep.positions
    return PureState(keep.size, ((compress(b, pos), c) for b, c in s.terms))


# ---------------------------------------------------------------------------
# text and structured formats

_COMMENT = re.compile(r"#.*$")


def parse_state(text: str) -> PureState:
    """Parse the line format ``<bitstring> <re> [<im>]``.

    ``re`` and ``im`` are rationals (``-1/2``, ``3``) or finite decimals
    (``0.25``), all converted exactly. ``#`` starts a comment, blank lines are
    skipped. Duplicate bitstrings are rejected, never merged.
    """
    terms = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _COMMENT.sub("", raw).strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) not in (2, 3):
            raise StateParseError(f"line {lineno}: expected '<bits> <re> [<im>]', got {raw!r}")
        bits = fields[0]
        if not bits or set(bits) - {"0", "1"}:
            raise StateParseError(f"line {lineno}: {bits!r} is not a bitstring")
        if n is None:
            n = len(bits)
        elif len(bits) != n:
            raise StateParseError(f"line {lineno}: bitstring length {len(bits)} != {n}")
        try:
            re_part = _parse_rational(fields[1])
            im_part = _parse_rational(fields[2]) if len(fields) == 3 else Fraction(0)
        except ValueError as exc:
            raise StateParseError(f"line {lineno}: {exc}") from None
        terms.append((bits, ExactComplex(re_part, im_part)))
    if n is None:
        raise StateParseError("no terms found")
    return PureState(n, terms)


def _parse_rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"{tok!r} is not a finite rational") from None


def serialize_state(s: PureState) -> str:
    lines = []
    for b, c in s.terms:
        bits = format_label(b, s.n)
        lines.append(f"{bits} {c.re} {c.im}" if c.im else f"{bits} {c.re}")
    return "\n".join(lines) + "\n"


def state_to_dict(s: PureState) -> dict:
    """Structured-object form: ``{"n": ..., "terms": [{"basis", "re", "im"}]}``."""
    return {"n": s.n, "terms": terms_to_list(s)}


def terms_to_list(s: PureState) -> list[dict]:
    return [
        {"basis": format_label(b, s.n), "re": str(c.re), "im": str(c.im)} for b, c in s.terms
    ]


def state_from_dict(obj: Mapping) -> PureState:
    try:
        n = obj["n"]
        raw_terms = obj["terms"]
        terms = []
        for t in raw_terms:
            basis = t["basis"]
            if not isinstance(basis, str) or len(basis) != n or set(basis) - {"0", "1"}:
                raise StateParseError(f"basis {basis!r} is not {n} binary digits")
            terms.append((basis, ExactComplex(_parse_rational(str(t["re"])),
                                              _parse_rational(str(t.get("im", "0"))))))
    except (KeyError, TypeError) as exc:
        raise StateParseError(f"malformed state object: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, StateError):
            raise
        raise StateParseError(str(exc)) from None
    if not isinstance(n, int):
        raise StateParseError("field 'n' must be an integer")
    return PureState(n, terms)


def load_state(text: str) -> PureState:
    """Parse either format; a leading ``{`` selects the structured object."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise StateParseError(f"invalid JSON: {exc}") from None
        return state_from_dict(obj)
    return parse_state(text)


def state_from_strings(pairs: Mapping[str, object] | Iterable[tuple[str, object]]) -> PureState:
    """Build a state from bitstring keys, e.g. ``{"00": 1, "11": "-1/2"}``."""
    items = list(pairs.items()) if isinstance(pairs, Mapping) else list(pairs)
    if not items:
        raise StateInvariantError("a state needs at least one nonzero term")
    return PureState(len(items[0][0]), items)
