"""mlk: metaplectic dual groups, cocycle double-twists, and their verification.

Exact-arithmetic models of modified root data, bisector combinatorics,
local-field symbols, twisted Hopf algebras on finite Galois models, and
metaplectic torus parameterizations, together with brute-force checkers
for every cocycle identity involved.
"""

__version__ = "0.1.0"
