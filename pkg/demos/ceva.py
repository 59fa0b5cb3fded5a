"""
The Ceva arrangement
====================

Six lines, four triple points.  One contributing face, one essential torus,
and the cover invariants it controls.
"""
from fractions import Fraction

from qav.catalog import ceva
from qav.charvariety import assemble, depth_at
from qav.covers import CoverSpec, Quotient, betti_branched, irregularity, milnor_b1

curve = ceva()
print([v.components for v in curve.vertices])

# faces of the whole arrangement, with their superabundance
cv = assemble(curve)
for rec in cv.faces_of(range(6)):
    print(rec.face.ident, "level", rec.face.level, "order", rec.order, "h1", rec.h1)

for comp in cv.components:
    tag = "essential" if comp.essential else "local"
    print(tag, comp.rows, "beta", comp.beta, "depth", comp.depth)

# the cube-root diagonal character sits on the essential torus
print(depth_at(cv.components, [Fraction(1, 3)] * 6))

# (Z/5)^6 modulo the diagonal: last meridian sent to minus the sum of the others
diag = Quotient((5,) * 5, tuple(tuple(int(i == j) for i in range(5)) + (4,) for j in range(5)))
spec = CoverSpec(quotient=diag)
print("irregularity", irregularity(cv, spec), "b1", betti_branched(cv, spec))
print("Milnor fiber b1", milnor_b1(cv))
