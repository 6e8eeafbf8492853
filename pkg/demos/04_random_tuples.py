# Random 7-tuples as a stress test
#
# samples.random_cbcst draws a small tuple from a few families and disguises
# it with a change of basis and a nonlinear change of coordinates on X, so the
# vector fields and Psi stop being linear.

import random

from geoquant.cbcst import find_isomorphism, from_rmatrix, to_rmatrix
from geoquant.cybe import check_cybe
from geoquant.quantize import check_braid, quantize
from geoquant.samples import random_cbcst

rng = random.Random(3)
for _ in range(5):
    c = random_cbcst(rng)
    r = to_rmatrix(c)
    back = find_isomorphism(from_rmatrix(r), c)
    R = quantize(c, 2)
    print(c.a.dim, c.n, check_cybe(r).passed, back.passed, check_braid(R).passed)

print(c.psi)
