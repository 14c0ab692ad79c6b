"""Numerical backend: states, matrix-free operator action, low spectra,
degeneracy clusters, and ground-space projections.

Basis convention: computational basis |b_1 b_2 ... b_L> with site 1 as the
most significant bit of the index.  A term X^x Z^z acts on a basis index b as
a sign (-1)^popcount(z & b) followed by the bit flip b ^ x, so operator
application never materializes a matrix.  All golden values depend on this
ordering.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .clifford import CzCircuit
from .errors import ConvergenceError, DomainError, LengthMismatchError, ResourceLimitError
from .pauli import OperatorSum, PauliString

DENSE_SITE_CAP = 12
APPLY_SITE_CAP = 24

# Relative tolerance for grouping eigenvalues into degenerate clusters.  The
# desk-scale spectra keep clusters at least gap/100 apart; scans near a
# transition can override per call.
CLUSTER_RTOL = 1e-8

RESIDUAL_RTOL = 1e-9


def _as_sum(op) -> OperatorSum:
    return OperatorSum.from_pauli(op) if isinstance(op, PauliString) else op


class StateVector:
    """A 2^L amplitude vector over the computational basis."""

    __slots__ = ("length", "amps")

    def __init__(self, length: int, amps, normalize: bool = False, copy: bool = True):
        amps = np.array(amps, dtype=np.complex128, copy=copy)
        if amps.shape != (1 << length,):
            raise ValueError(
                f"amplitude vector must have length 2^{length}, got {amps.shape}")
        if normalize:
            n = np.linalg.norm(amps)
            if n == 0:
                raise ValueError("cannot normalize the zero vector")
            amps = amps / n
        self.length = length
        self.amps = amps
        self.amps.setflags(write=False)

    @classmethod
    def computational(cls, length: int, bits: int) -> "StateVector":
        """Basis state |b> for an L-bit integer with site 1 as the MSB."""
        amps = np.zeros(1 << length, dtype=np.complex128)
        amps[bits] = 1.0
        return cls(length, amps, copy=False)

    @classmethod
    def plus_state(cls, length: int) -> "StateVector":
        """Uniform superposition: every site in the +1 eigenstate of X."""
        dim = 1 << length
        return cls(length, np.full(dim, dim ** -0.5, dtype=np.complex128),
                   copy=False)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "StateVector":
        return StateVector(self.length, self.amps, normalize=True)

    def inner(self, other: "StateVector") -> complex:
        """<self|other>."""
        if self.length != other.length:
            raise LengthMismatchError("states live on different chains")
        return complex(np.vdot(self.amps, other.amps))

    def __repr__(self):
        return f"StateVector(L={self.length}, norm={self.norm:.6f})"


def apply(op, psi: StateVector) -> StateVector:
    """Exact linear action of an operator on a state (result unnormalized)."""
    op = _as_sum(op)
    if op.length != psi.length:
        raise LengthMismatchError("operator and state lengths differ")
    if psi.length > APPLY_SITE_CAP:
        raise ResourceLimitError(
            f"apply supports up to {APPLY_SITE_CAP} sites, got {psi.length}")
    dim = 1 << psi.length
    idx = np.arange(dim, dtype=np.uint64)
    out = np.zeros(dim, dtype=np.complex128)
    src = psi.amps
    for (x, z), coeff in op.items():
        signed = src * coeff if z == 0 else np.where(
            (np.bitwise_count(idx & np.uint64(z)) & 1).astype(bool),
            -coeff * src, coeff * src)
        if x == 0:
            out += signed
        else:
            # b -> b ^ x is a bijection, so fancy assignment cannot collide
            out[idx ^ np.uint64(x)] += signed
    return StateVector(psi.length, out, copy=False)


def expectation(psi: StateVector, op) -> complex:
    """<psi|op|psi>; real to ~1e-10 for Hermitian operators."""
    return psi.inner(apply(op, psi))


def pauli_matrix(p: PauliString) -> np.ndarray:
    """Dense matrix of one Pauli string (test oracles and small systems)."""
    if p.length > DENSE_SITE_CAP:
        raise ResourceLimitError(
            f"dense form capped at {DENSE_SITE_CAP} sites, got {p.length}")
    dim = 1 << p.length
    idx = np.arange(dim, dtype=np.uint64)
    signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(p.z_mask)) & 1)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[idx ^ np.uint64(p.x_mask), idx] = p.phase * signs
    return m


def dense_matrix(op, cap: int = DENSE_SITE_CAP) -> np.ndarray:
    """Dense matrix of an operator sum."""
    op = _as_sum(op)
    if op.length > cap:
        raise ResourceLimitError(
            f"dense form capped at {cap} sites, got {op.length}")
    dim = 1 << op.length
    idx = np.arange(dim, dtype=np.uint64)
    m = np.zeros((dim, dim), dtype=np.complex128)
    for (x, z), coeff in op.items():
        signs = 1.0 - 2.0 * (np.bitwise_count(idx & np.uint64(z)) & 1)
        m[idx ^ np.uint64(x), idx] += coeff * signs
    return m


def has_real_matrix(op, tol: float = 1e-12) -> bool:
    """True iff every matrix element is real in the computational basis.

    Each X^x Z^z block is a real signed permutation, so the matrix is real
    exactly when every stored coefficient is real.  This is the operator-level
    witness of time-reversal invariance.
    """
    op = _as_sum(op)
    return all(abs(c.imag) <= tol for _, c in op.items())


def cz_diagonal(circuit: CzCircuit) -> np.ndarray:
    """Diagonal (+-1) of the CZ circuit's unitary."""
    dim = 1 << circuit.length
    idx = np.arange(dim, dtype=np.uint64)
    diag = np.ones(dim)
    for (i, j) in circuit.edges:
        bi = np.uint64(1 << (circuit.length - i))
        bj = np.uint64(1 << (circuit.length - j))
        both = ((idx & bi) != 0) & ((idx & bj) != 0)
        diag[both] *= -1.0
    return diag


def build_cluster_state(lattice, k: int = 0, l: int = 0) -> StateVector:
    """Entangle the all-plus state along the bond circuit, then flip the edge
    labels: (Z_1)^k (Z_L)^l CZ_bonds |+...+>.

    The four (k, l) states on an open chain are joint +1 eigenstates of every
    stabilizer and are distinguished by the edge operators; a periodic ring
    has no free ends, so only k = l = 0 is defined there.
    """
    if k not in (0, 1) or l not in (0, 1):
        raise DomainError("edge labels k, l must be 0 or 1")
    if lattice.is_periodic and (k or l):
        raise DomainError("periodic rings admit only k = l = 0")
    L = lattice.length
    if L > APPLY_SITE_CAP:
        raise ResourceLimitError(f"state construction capped at {APPLY_SITE_CAP}")
    circuit = CzCircuit.chain(L, periodic=lattice.is_periodic)
    amps = cz_diagonal(circuit) * ((1 << L) ** -0.5)
    dim = 1 << L
    idx = np.arange(dim, dtype=np.uint64)
    if k:
        amps = amps * (1.0 - 2.0 * ((idx & np.uint64(1 << (L - 1))) != 0))
    if l:
        amps = amps * (1.0 - 2.0 * ((idx & np.uint64(1)) != 0))
    return StateVector(L, amps.astype(np.complex128), copy=False)


@dataclass(frozen=True)
class SpectrumResult:
    """Low-lying spectrum with its degeneracy structure.

    eigenvalues are ascending; the ground cluster is every eigenvalue within
    cluster_rtol * max(1, |E0|) of E0; gap is the first eigenvalue above the
    cluster minus E0 (nan when the requested count never left the cluster).
    """

    eigenvalues: np.ndarray
    states: tuple
    ground_degeneracy: int
    gap: float
    max_residual: float
    method: str
    cluster_rtol: float

    @property
    def ground_energy(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def ground_basis(self) -> tuple:
        return self.states[: self.ground_degeneracy]


def _cluster_width(e0: float, rtol: float) -> float:
    return rtol * max(1.0, abs(e0))


def eig_low(h, count: int = 6, method: str = "auto",
            cluster_rtol: float = CLUSTER_RTOL,
            maxiter: int = 20000) -> SpectrumResult:
    """Lowest `count` eigenpairs of a Hermitian operator sum.

    dense: full matrix, L <= 12.  iterative: implicitly restarted Lanczos on
    the matrix-free kernel, L <= 24.  Every reported pair must satisfy
    ||Hv - Ev|| <= 1e-9 * sum|coeff|.  The iterative path guarantees each
    returned pair is a true eigenpair but, like any Krylov method, may return
    fewer copies of a highly degenerate level than exist; ask for enough
    eigenvalues (count comfortably above the expected multiplicity) or use
    the dense path when exact multiplicities matter.
    """
    h = _as_sum(h)
    if not h.is_hermitian:
        raise DomainError("eig_low needs a Hermitian operator")
    L = h.length
    dim = 1 << L
    count = int(count)
    if count < 1:
        raise DomainError("count must be positive")
    count = min(count, dim)

    if method == "auto":
        method = "dense" if L <= DENSE_SITE_CAP else "iterative"
    if method == "dense" and L > DENSE_SITE_CAP:
        raise ResourceLimitError(
            f"dense diagonalization capped at {DENSE_SITE_CAP} sites, got {L}")
    if method == "iterative" and L > APPLY_SITE_CAP:
        raise ResourceLimitError(
            f"iterative diagonalization capped at {APPLY_SITE_CAP} sites, got {L}")
    if method not in ("dense", "iterative"):
        raise DomainError(f"unknown method {method!r}")

    if method == "iterative" and count > dim - 2:
        method = "dense"  # ARPACK needs k < dim-1; these are tiny anyway
        if L > DENSE_SITE_CAP:
            raise ResourceLimitError("count too close to the full dimension")

    if method == "dense":
        m = dense_matrix(h)
        if has_real_matrix(h):
            m = m.real
        vals, vecs = scipy.linalg.eigh(m, subset_by_index=[0, count - 1])
    else:
        linop = scipy.sparse.linalg.LinearOperator(
            shape=(dim, dim),
            matvec=lambda v: apply(h, StateVector(L, v, copy=False)).amps,
            dtype=np.complex128)
        # wide subspace improves capture of degenerate multiplets
        ncv = int(min(dim, max(4 * count + 1, 40)))
        try:
            vals, vecs = scipy.sparse.linalg.eigsh(
                linop, k=count, which="SA", maxiter=maxiter, tol=0, ncv=ncv)
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise ConvergenceError(
                f"Lanczos did not converge within {maxiter} iterations",
                residuals=getattr(exc, "eigenvalues", None)) from exc
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]

    vals = np.asarray(vals, dtype=float)
    vecs = np.asarray(vecs, dtype=np.complex128)

    norm_h = h.norm_bound()
    residuals = []
    for i in range(vals.size):
        v = vecs[:, i]
        r = np.linalg.norm(apply(h, StateVector(L, v, copy=False)).amps
                           - vals[i] * v)
        residuals.append(r)
    max_residual = float(max(residuals)) if residuals else 0.0
    if max_residual > RESIDUAL_RTOL * max(1.0, norm_h):
        raise ConvergenceError(
            f"residual {max_residual:.3e} exceeds "
            f"{RESIDUAL_RTOL:.1e} * ||H|| = {RESIDUAL_RTOL * norm_h:.3e}",
            residuals=residuals)

    width = _cluster_width(vals[0], cluster_rtol)
    degeneracy = int(np.sum(vals <= vals[0] + width))
    if degeneracy < vals.size:
        gap = float(vals[degeneracy] - vals[0])
    else:
        gap = float("nan")

    # re-orthonormalize the ground cluster; degenerate eigenvectors from the
    # solver are orthogonal only to solver precision
    q, _ = np.linalg.qr(vecs[:, :degeneracy])
    vecs = vecs.copy()
    vecs[:, :degeneracy] = q

    states = tuple(StateVector(L, vecs[:, i], copy=True)
                   for i in range(vals.size))
    return SpectrumResult(
        eigenvalues=vals, states=states, ground_degeneracy=degeneracy,
        gap=gap, max_residual=max_residual, method=method,
        cluster_rtol=cluster_rtol)


def ground_projector(spectrum: SpectrumResult, op) -> np.ndarray:
    """d x d matrix <v_a|O|v_b> over the ground cluster: the first-order
    splitting matrix of degenerate perturbation theory."""
    basis = spectrum.ground_basis
    d = len(basis)
    m = np.zeros((d, d), dtype=np.complex128)
    applied = [apply(op, v) for v in basis]
    for a in range(d):
        for b in range(d):
            m[a, b] = basis[a].inner(applied[b])
    return m


def splitting_class(m: np.ndarray, tol: float = 1e-10) -> str:
    """Classify a splitting matrix as 'zero', 'scalar', or 'non-scalar'."""
    d = m.shape[0]
    if np.linalg.norm(m) <= tol:
        return "zero"
    trace_part = (np.trace(m) / d) * np.eye(d)
    if np.linalg.norm(m - trace_part) <= tol:
        return "scalar"
    return "non-scalar"


def resolve_sectors(spectrum: SpectrumResult, sym,
                    atol: float = 1e-8) -> tuple:
    """Resolve a conserved +-1 symmetry inside each degenerate cluster.

    Eigensolvers return arbitrary mixtures within exactly degenerate clusters,
    so the symmetry is re-diagonalized block by block.  Returns (labels,
    states): labels[i] is the symmetry eigenvalue of the i-th level, states
    are rotated to be simultaneous eigenvectors.  Labels are only meaningful
    for clusters the window contains completely: if the last computed level
    sits inside a larger multiplet, the symmetry does not preserve the
    truncated slice and those labels land away from +-1.
    """
    vals = spectrum.eigenvalues
    n = vals.size
    if n == 0:
        return np.array([]), ()
    L = spectrum.states[0].length
    vec = np.column_stack([s.amps for s in spectrum.states])
    labels = np.zeros(n)
    i = 0
    while i < n:
        j = i
        while j + 1 < n and vals[j + 1] - vals[i] <= atol:
            j += 1
        block = vec[:, i:j + 1]
        applied = np.column_stack(
            [apply(sym, StateVector(L, block[:, c], copy=False)).amps
             for c in range(block.shape[1])])
        sym_block = block.conj().T @ applied
        eigvals, rot = np.linalg.eigh(sym_block)
        vec[:, i:j + 1] = block @ rot
        labels[i:j + 1] = eigvals
        i = j + 1
    states = tuple(StateVector(L, vec[:, c], copy=True) for c in range(n))
    return labels, states


def _as_columns(states) -> np.ndarray:
    """Column matrix from a list of StateVectors or a 2D array."""
    if isinstance(states, np.ndarray):
        return states if states.ndim == 2 else states[:, None]
    return np.column_stack([s.amps if isinstance(s, StateVector) else s
                            for s in states])


def gram_matrix(states) -> np.ndarray:
    m = _as_columns(states)
    return m.conj().T @ m


def subspace_distance(states_a, states_b) -> float:
    """Operator-norm distance between the projectors onto two spans.

    For spans of equal dimension this is sin of the largest principal angle.
    It is computed as the norm of the component of one orthonormal basis
    outside the other span, which stays accurate for tiny angles where the
    cosine formulation loses half the digits.  Unequal dimensions give
    distance 1.
    """
    a = _as_columns(states_a)
    b = _as_columns(states_b)
    qa, _ = np.linalg.qr(a)
    qb, _ = np.linalg.qr(b)
    if qa.shape[1] != qb.shape[1]:
        return 1.0
    resid = qb - qa @ (qa.conj().T @ qb)
    sines = np.linalg.svd(resid, compute_uv=False)
    return float(min(1.0, sines.max(initial=0.0)))
