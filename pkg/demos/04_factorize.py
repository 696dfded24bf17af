"""
Full factorization
==================

Repeated splitting breaks a state into pieces that cannot be split further.
"""

from sparsesep import factorize_fully, zoo

state = zoo.random_product([2, 3, 2], seed=11)
print(state.n, "qubits,", state.m, "terms")

tree = factorize_fully(state)
for subset, factor in tree.factors:
    print(f"  qubits {subset}: {factor.m} terms")

assert tree.product() == state
