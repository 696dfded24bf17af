"""
The coefficient grid
====================

Once the support is a Cartesian product of left and right patterns, the
amplitudes fill a g x h grid. The state splits across that cut exactly when
the grid has rank 1.
"""

from sparsesep import QubitSubset, zoo
from sparsesep.bsm import try_canonical_form
from sparsesep.coeff import CoefficientMatrix, coefficient_matrix, is_rank_one, solve_rank_one

c4 = zoo.c4()
form = try_canonical_form(c4, QubitSubset.from_qubits([1, 3], 4))
print(form.describe())

grid = coefficient_matrix(c4, form)
for row in grid.entries:
    print("  ", [str(x) for x in row])
print("rank 1?", is_rank_one(grid))

# an outer product, and the gauge-fixed factors recovered from it
a = CoefficientMatrix.from_rows([[2, 4, -6], [3, 6, -9]])
f = solve_rank_one(a)
print("alpha:", [str(x) for x in f.alpha])
print("beta: ", [str(x) for x in f.beta])
assert f.outer() == a.entries
