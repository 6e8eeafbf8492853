# Quantizing the example and checking the braid identity
#
# quantize returns the R-matrix as a pair of series maps (star, circ) on
# X x X, truncated at hbar^N.

import time

from geoquant.fixtures import CIRC_E1, STAR_E1, example_cbcst, example_rmatrix
from geoquant.quantize import (check_braid, check_classical_limit, check_quantum_unitarity,
                               compare_closed_form, quantize)

t = time.perf_counter()
R = quantize(example_cbcst(1), 4)
print(f"quantized in {time.perf_counter() - t:.2f}s")
print(R.star[0])

# Coefficient-by-coefficient comparison with the known closed forms.
print(compare_closed_form(R, STAR_E1, CIRC_E1, eps=1).format())

# The hbar^1 term is the classical r; the braid identity holds on X^3.
print(check_classical_limit(R, example_rmatrix(1)).format())
print(check_braid(R).format())

# At eps = 1 R is not unitary; the witness says where R21 R first differs from 1.
print(check_quantum_unitarity(R).format())
print(check_quantum_unitarity(quantize(example_cbcst(0), 4)).format())
