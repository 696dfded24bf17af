"""Exact separability testing and family classification for sparse qubit states."""

from .bsm import CanonicalForm, candidate_subsets, constant_columns, try_canonical_form
from .coeff import (
    CoefficientMatrix,
    RankOneFactors,
    coefficient_matrix,
    is_rank_one,
    solve_rank_one,
)
from .exact import ExactComplex
from .oracle import DenseState, dense_vector, oracle_classify, schmidt_rank
from .separability import (
    ClassificationReport,
    Family,
    FactorTree,
    SplitWitness,
    classify,
    factorize_fully,
    m4_verdict,
    prime_m_shortcut,
    split_at,
    split_once,
)
from .state import (
    PureState,
    QubitSubset,
    StateError,
    StateInvariantError,
    StateParseError,
    complement_label,
    load_state,
    parse_state,
    permute_qubits,
    serialize_state,
    tensor_product,
)
from .zoo import GeneratorSpec, generate

__version__ = "0.1.0"
