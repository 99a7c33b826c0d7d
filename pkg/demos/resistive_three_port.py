"""
Three-port resistive networks with at most three elements
=========================================================

Decide, synthesize, and check against the network's own admittance.
"""

from mechsynth.netmodel import admittance_matrix, dumps_netlist
from mechsynth.paramount3 import is_paramount, parse_matrix
from mechsynth.resistive3 import theorem1

# a matrix that a two-element star realizes
M = parse_matrix("[[1,1,0],[1,2,-1],[0,-1,1]]")
print("paramount:", is_paramount(M))

result = theorem1(M)
print(result.branch, result.certificate)
print(dumps_netlist(result.network))

# the admittance of the printed netlist is the input, exactly
print([[str(y) for y in row] for row in admittance_matrix(result.network)])

# paramount but not realizable with three elements: every slack is positive
print(theorem1(parse_matrix("[[3,1,1],[1,3,1],[1,1,3]]")))
