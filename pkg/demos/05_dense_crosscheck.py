"""
Cross-checking against Schmidt ranks
====================================

The dense oracle expands a state into all 2^n amplitudes and computes the
exact rank of every bipartition. It knows nothing about supports or
canonical forms, which makes it a useful independent referee.
"""

from sparsesep import QubitSubset, zoo
from sparsesep.oracle import dense_vector, oracle_classify, schmidt_rank
from sparsesep.verify import concordance

d = dense_vector(zoo.ghz(3))
print("GHZ_3 rank across {1}:", schmidt_rank(d, QubitSubset.from_qubits([1], 3)))

agree = 0
for seed in range(40):
    s = zoo.random_sparse(7, (4, 6, 8, 9, 12)[seed % 5], seed)
    c = concordance(s)
    agree += c.agree
print(f"random states in agreement: {agree}/40")

print("oracle family of C4:", oracle_classify(dense_vector(zoo.c4())))
