"""Exact Pauli-string algebra on a symplectic bit representation.

Every operator here is a phase times a tensor product of I, X, Y, Z,
stored as two bit masks plus a power of i. Products, commutators, and
Hermiticity are therefore exact integer arithmetic, never floating
point. This script walks through the basic moves and cross-checks a
couple of them against literal 2x2 matrices.
"""

import numpy as np

from clusterspt import OperatorSum, PauliString, anticommutator, commutator, commutes, multiply

# Build operators either from a letter string (site 1 is the leftmost
# letter) or from a sparse site: letter map.
p = PauliString.from_letters("XZIIZ")
q = PauliString.from_sites(5, {1: "Z", 3: "Y"})
print("p =", p)
print("q =", q)
print("support of q:", q.support())

# Products track the phase exactly: X.Z = -iY on a single site.
x = PauliString.from_letters("X")
z = PauliString.from_letters("Z")
print("\nX * Z =", multiply(x, z))

# Commutation is a parity count over the masks, no matrices involved.
print("[p, q] vanishes?", commutes(p, q))
print("commutator(X, Z) =", commutator(x, z))
print("anticommutator(X, Z) =", anticommutator(x, z))

# Cross-check the single-site product table against dense matrices.
mats = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
phases = (1, 1j, -1, -1j)
worst = 0.0
for a in "IXYZ":
    for b in "IXYZ":
        r = multiply(PauliString.from_letters(a), PauliString.from_letters(b))
        lhs = phases[r.display_phase_exp] * mats[r.letters]
        worst = max(worst, np.abs(lhs - mats[a] @ mats[b]).max())
print("\nsingle-site product table max deviation:", worst)

# Hermitian sums with complex coefficients collect like terms exactly.
h = OperatorSum.from_terms(3, [
    (1.0, PauliString.from_letters("ZXZ")),
    (0.5, PauliString.from_letters("XIX")),
    (-0.5, PauliString.from_letters("XIX")),
])
print("\nsum after exact cancellation:", h.term_count, "term(s)")
print(h)
print("norm bound:", h.norm_bound())
