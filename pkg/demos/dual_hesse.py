"""
The dual Hesse arrangement
==========================

Nine lines over Q(w), w^2 + w + 1 = 0, meeting in twelve triple points.
The characteristic variety from faces of quasiadjunction is compared with
the resonance computed from the Aomoto complex.
"""
from collections import Counter

from qav.catalog import dual_hesse
from qav.charvariety import assemble
from qav.covers import CoverSpec, betti_branched, irregularity
from qav.resonance import resonance_components, verify_thm54

curve = dual_hesse()
print(Counter(v.multiplicity for v in curve.vertices))

# the blow-up bound skips every subcurve too light to carry superabundance
cv = assemble(curve, fast=True)
print(Counter((c.dimension, c.essential) for c in cv.components))

nine = [r for r in cv.faces_of(range(9)) if len(r.face.choices) == 9]
for rec in nine:
    print(rec.face.ident, "dim", rec.face.dimension, "h1 in degree", rec.twist, "=", rec.h1)

spec = CoverSpec.uniform(3, 9)
print("(Z/3)^9 cover: irregularity", irregularity(cv, spec), "b1", betti_branched(cv, spec))

res = resonance_components(curve)
ok, checks = verify_thm54(cv.components, res)
print(len(res), "resonance components; tangent spaces match:", ok)
