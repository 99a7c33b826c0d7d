"""
One-port admittances with one damper, one inerter and few springs
=================================================================

"""

from fractions import Fraction

from mechsynth.exactalg import CoefficientVector
from mechsynth.netmodel import driving_point, dumps_netlist
from mechsynth.oneport.foster import foster_synthesize
from mechsynth.oneport.theorem5 import build_G, classify_theorem5
from mechsynth.oneport.theorem6 import Mode, classify_theorem6, synth_fig3

# quartic denominator: the G matrix, then a series-parallel realization
cv = CoefficientVector.of((1, 1, 2, 2), (2, 3, 5))
print(classify_theorem5(cv).label())
print(build_G(cv))
net = foster_synthesize(cv.to_rf())
print(dumps_netlist(net))
assert driving_point(net) == cv.to_rf()

# cubic denominator, written at twice its natural scale
cubic = CoefficientVector.of((2, 4, 4, 6), (2, 2, 4), beta4=0)
print(classify_theorem6(cubic, Mode.AS_WRITTEN))
res = classify_theorem6(cubic, Mode.SCALE_SEARCH)
print(res.label())
net = synth_fig3(cubic, res.condition, res.lam)
print({e.label: str(e.value) for e in net.elements})
assert driving_point(net) == cubic.to_rf()
assert res.lam == Fraction(1, 2)
