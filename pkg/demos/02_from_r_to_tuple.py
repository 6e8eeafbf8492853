# From a geometric r-matrix to its 7-tuple and back
#
# The built-in example lives on C^3.  It depends on a parameter eps: the Lie
# algebra a it produces is Heisenberg-like for eps != 0 and abelian at eps = 0.

from geoquant.cbcst import derived_is_central_line, find_isomorphism, from_rmatrix, to_rmatrix
from geoquant.cybe import check_cybe, check_unitarity, minimize
from geoquant.fixtures import example_cbcst, example_rmatrix

r = example_rmatrix()          # eps kept symbolic
print(check_cybe(r).format())

# Building the tuple solves for a, g, the actions, the cocycle pi and Psi.
c = from_rmatrix(r)
print(c.a, c.g, sep="\n")
print("derived algebra is a central line:", derived_is_central_line(c.a))

# The construction picks its own bases.  find_isomorphism recovers the basis
# change to the hand-written reference tuple and checks every structure map.
iso = find_isomorphism(c, example_cbcst())
print(iso.report.format())

# Going back gives the same r, up to rewriting the tensor in minimal form.
print(minimize(to_rmatrix(c)) == minimize(r))

# r is unitary exactly when a is abelian.
for eps in (1, 0):
    r_e = example_rmatrix(eps)
    print(eps, check_unitarity(r_e), from_rmatrix(r_e).a.is_abelian())
