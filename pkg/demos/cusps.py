"""
Six cusps and a conic
=====================

A sextic with six cusps has an Alexander polynomial exactly when the cusps
lie on a conic.  Only the position of the cusps enters.
"""
from qav.catalog import six_cusp_sextic
from qav.charvariety import assemble
from qav.covers import CoverSpec, irregularity
from qav.sheafcoh import FatPointScheme, superabundance

for on_conic in (True, False):
    curve = six_cusp_sextic(on_conic)
    scheme = FatPointScheme.make((v.coords, 1) for v in curve.vertices)
    h = superabundance(2, scheme)
    cv = assemble(curve)
    print("on a conic" if on_conic else "generic   ", "h0", h.h0, "chi", h.chi, "h1", h.h1,
          "components", [c.beta for c in cv.components])
    # the cyclic cover of order 6 picks up the characters exp(2 pi i / 6)^{+-1}
    print("  irregularity of the 6-fold cover:", irregularity(cv, CoverSpec((6,))))
