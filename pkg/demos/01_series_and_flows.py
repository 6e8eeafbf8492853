# Exact polynomials, hbar-series and formal flows
#
# Everything in geoquant is exact: coefficients are rationals (optionally
# polynomials in a parameter eps) and series in hbar are truncated at a fixed
# order N.

from geoquant.polycore import MPoly, expand_expr, parse_poly
from geoquant.geomx import HVectorField, VectorField, compose, flow, invert

# Polynomials are parsed from plain strings in x1, x2, ... and eps.
p = parse_poly("(x1 + x2)*(x1 - x2)", 2)
print(p)
print(p.diff(0))

# Closed-form expressions in h expand into truncated series.  Division and
# logarithms are fine as long as the constant term is invertible.
s = expand_expr("ln((1 + h*x3 - h*x1/2)/(1 + h*x2))", 3, 3)
print(s)

# A vector field scaled by hbar has a flow: a formal diffeomorphism that is the
# identity mod hbar.  The Euler field x d/dx flows to x -> x exp(hbar).
euler = VectorField([MPoly.var(0, 1)])
F = flow(HVectorField.from_field(euler, 4))
print(F.images[0])

# compose(F, G) means "F, then G" on points; invert solves order by order.
G = invert(F)
print(compose(F, G).is_identity())
