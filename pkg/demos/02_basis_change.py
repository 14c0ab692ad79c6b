"""Disentangling the cluster chain with a circuit of CZ gates.

Conjugating the open cluster Hamiltonian by the product of CZ gates on
every bond maps each three-site ZXZ stabilizer to a single X, so the
whole model becomes a sum of independent single-site terms. The two
edge spins drop out entirely, which is where the fourfold ground
degeneracy lives. Everything below is symbolic; one dense cross-check
at the end confirms the matrices agree.
"""

import numpy as np

from clusterspt import (CzCircuit, LatticeSpec, PauliString,
                        cluster_hamiltonian, conjugate_circuit,
                        conjugate_ucp, dense_matrix)

lat = LatticeSpec(9, "open")
h = cluster_hamiltonian(lat)
print("cluster chain, open ends, 9 sites:")
for coeff, term in h.iter_terms():
    print(f"  {coeff.real:+.0f} * {term.letters}")

rotated = conjugate_ucp(h, lat)
print("\nafter conjugation by the bond CZ circuit:")
for coeff, term in rotated.iter_terms():
    print(f"  {coeff.real:+.0f} * {term.letters}")
print("sites 1 and 9 appear in no term: free edge spins")

# A single gate suffices to see the mechanism: CZ maps X1 to X1 Z2.
circ = CzCircuit(2, ((1, 2),))
for s in ("XI", "IX", "ZI", "XX"):
    img = conjugate_circuit(PauliString.from_letters(s), circ)
    print(f"CZ: {s} -> {img}")

# Dense confirmation at a size where matrices are cheap. The circuit is
# diagonal, so conjugation is an elementwise sign pattern.
lat6 = LatticeSpec(6, "open")
h6 = cluster_hamiltonian(lat6)
idx = np.arange(1 << 6)
d = np.ones(1 << 6)
for i, j in CzCircuit.chain(6).edges:
    bi, bj = 1 << (6 - i), 1 << (6 - j)
    d *= np.where(((idx & bi) > 0) & ((idx & bj) > 0), -1.0, 1.0)
lhs = dense_matrix(conjugate_ucp(h6, lat6))
rhs = np.outer(d, d) * dense_matrix(h6)
print("\ndense agreement at 6 sites:", np.abs(lhs - rhs).max())
