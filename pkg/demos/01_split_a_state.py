"""
Splitting a three-qubit state
=============================

A four-term state on three qubits turns out to be a product of a qubit and
a Bell pair. The search finds the cut, and the two factors multiply back to
the input exactly.
"""

from sparsesep import classify, parse_state
from sparsesep.state import serialize_state

psi = parse_state(
    """
    000 1/2
    010 1/2
    101 1/2
    111 1/2
    """
)
print(psi.n, "qubits,", psi.m, "terms")

report = classify(psi)
print("family:", int(report.family), "-", report.family.description)
print("cut:", report.witness.subset)
print("left factor:")
print(serialize_state(report.witness.left))
print("right factor:")
print(serialize_state(report.witness.right))

# exact arithmetic, so equality is literal
assert report.witness.product() == psi
