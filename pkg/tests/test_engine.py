"""Numerical backend: matrix-free application, eigensolvers, cluster-state
construction, sector resolution, and projector analysis."""

import math

import numpy as np
import pytest

import clusterspt as cs
from clusterspt import LatticeSpec, OperatorSum, PauliString, StateVector
from clusterspt.errors import DomainError, ResourceLimitError

from conftest import oracle_sum_matrix, random_hermitian_sum, random_pauli


class TestStateVector:
    def test_computational(self):
        psi = StateVector.computational(3, 5)
        assert psi.amps[5] == 1.0 and psi.norm == pytest.approx(1.0)

    def test_plus_state(self):
        psi = StateVector.plus_state(4)
        assert np.allclose(psi.amps, 0.25)

    def test_normalization(self):
        psi = StateVector(2, np.array([3.0, 0, 0, 4.0]), normalize=True)
        assert psi.norm == pytest.approx(1.0)
        assert psi.amps[3] == pytest.approx(0.8)

    def test_inner(self):
        a = StateVector.computational(2, 0)
        b = StateVector.computational(2, 1)
        assert a.inner(b) == 0
        assert a.inner(a) == pytest.approx(1.0)

    def test_amps_read_only(self):
        psi = StateVector.plus_state(3)
        with pytest.raises(ValueError):
            psi.amps[0] = 9.0


class TestApply:
    def test_single_pauli_against_oracle(self, rng):
        for _ in range(80):
            L = int(rng.integers(1, 7))
            p = random_pauli(rng, L)
            vec = rng.normal(size=1 << L) + 1j * rng.normal(size=1 << L)
            psi = StateVector(L, vec)
            got = cs.apply(p, psi).amps
            want = oracle_sum_matrix(OperatorSum.from_pauli(p)) @ vec
            assert np.allclose(got, want, atol=1e-12)

    def test_sum_against_oracle(self, rng):
        for _ in range(30):
            op = random_hermitian_sum(rng, 5)
            vec = rng.normal(size=32) + 1j * rng.normal(size=32)
            psi = StateVector(5, vec)
            got = cs.apply(op, psi).amps
            assert np.allclose(got, oracle_sum_matrix(op) @ vec, atol=1e-10)

    def test_expectation(self, rng):
        op = random_hermitian_sum(rng, 4)
        vec = rng.normal(size=16)
        psi = StateVector(4, vec, normalize=True)
        v = psi.amps
        want = v.conj() @ (oracle_sum_matrix(op) @ v)
        assert cs.expectation(psi, op) == pytest.approx(want, abs=1e-10)

    def test_length_mismatch(self):
        with pytest.raises(cs.LengthMismatchError):
            cs.apply(PauliString.identity(3), StateVector.plus_state(4))


class TestDenseMatrices:
    def test_pauli_matrix_oracle(self, rng):
        for _ in range(40):
            p = random_pauli(rng, 4)
            assert np.allclose(
                cs.pauli_matrix(p),
                oracle_sum_matrix(OperatorSum.from_pauli(p)), atol=1e-12)

    def test_dense_matrix_cap(self):
        with pytest.raises(ResourceLimitError):
            cs.dense_matrix(OperatorSum.identity(13))

    def test_real_matrix_detection(self):
        lat = LatticeSpec(6, "open")
        assert cs.has_real_matrix(cs.cluster_hamiltonian(lat))
        # a YY pair is real, a lone Y is imaginary
        yy = OperatorSum.from_pauli(PauliString.from_sites(4, {1: "Y", 2: "Y"}))
        assert cs.has_real_matrix(yy)
        y = OperatorSum.from_pauli(PauliString.single(4, 2, "Y"))
        assert not cs.has_real_matrix(y)
        assert cs.has_real_matrix(
            cs.perturbed_hamiltonian(LatticeSpec(6, "periodic"), 0.8))

    def test_cz_diagonal_two_sites(self):
        d = cs.cz_diagonal(cs.CzCircuit(2, ((1, 2),)))
        assert np.array_equal(d, [1.0, 1.0, 1.0, -1.0])


class TestClusterStates:
    def test_open_states_orthonormal_eigenstates(self):
        lat = LatticeSpec(6, "open")
        states = [cs.build_cluster_state(lat, k, l)
                  for k in (0, 1) for l in (0, 1)]
        g = cs.gram_matrix(states)
        assert np.max(np.abs(g - np.eye(4))) <= 1e-12
        for i in range(2, 6):
            s = cs.stabilizer(i, lat)
            for st in states:
                assert cs.expectation(st, s) == pytest.approx(1.0, abs=1e-12)

    def test_edge_labels(self):
        # flipping with Z_1 / Z_L toggles the edge graph-state generators
        # X_1 Z_2 and Z_{L-1} X_L, which label the four ground states
        lat = LatticeSpec(6, "open")
        left = PauliString.from_sites(6, {1: "X", 2: "Z"})
        right = PauliString.from_sites(6, {5: "Z", 6: "X"})
        for k in (0, 1):
            for l in (0, 1):
                st = cs.build_cluster_state(lat, k, l)
                assert cs.expectation(st, left) == \
                    pytest.approx((-1.0) ** k, abs=1e-12)
                assert cs.expectation(st, right) == \
                    pytest.approx((-1.0) ** l, abs=1e-12)

    def test_periodic_single_state(self):
        lat = LatticeSpec(6, "periodic")
        st = cs.build_cluster_state(lat)
        for i in range(1, 7):
            assert cs.expectation(st, cs.stabilizer(i, lat)) == \
                pytest.approx(1.0, abs=1e-12)
        with pytest.raises(DomainError):
            cs.build_cluster_state(lat, 1, 0)

    def test_ground_energy(self):
        lat = LatticeSpec(7, "open")
        h = cs.cluster_hamiltonian(lat)
        st = cs.build_cluster_state(lat, 1, 1)
        assert cs.expectation(st, h) == pytest.approx(-5.0, abs=1e-12)


class TestEigLow:
    def test_dense_open_cluster(self):
        lat = LatticeSpec(8, "open")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=6)
        assert spect.ground_energy == pytest.approx(-6.0, abs=1e-10)
        assert spect.ground_degeneracy == 4
        assert spect.gap == pytest.approx(2.0, abs=1e-10)
        assert spect.max_residual <= 1e-9 * 6.0

    def test_dense_periodic_cluster(self):
        lat = LatticeSpec(8, "periodic")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=4)
        assert spect.ground_energy == pytest.approx(-8.0, abs=1e-10)
        assert spect.ground_degeneracy == 1
        assert spect.gap == pytest.approx(2.0, abs=1e-10)

    def test_iterative_agrees_with_dense(self):
        # fourfold ground space plus gap: the shape this solver must handle
        lat = LatticeSpec(7, "open")
        h = cs.perturbed_hamiltonian(lat, 0.3)
        d = cs.eig_low(h, count=6, method="dense")
        it = cs.eig_low(h, count=6, method="iterative")
        assert np.allclose(d.eigenvalues, it.eigenvalues, atol=1e-8)
        assert d.ground_degeneracy == it.ground_degeneracy

    def test_iterative_beyond_dense_cap(self):
        lat = LatticeSpec(13, "periodic")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=4,
                          method="iterative")
        assert spect.ground_energy == pytest.approx(-13.0, abs=1e-8)
        assert spect.ground_degeneracy == 1
        assert spect.gap == pytest.approx(2.0, abs=1e-8)

    def test_eigenvalues_against_oracle(self, rng):
        op = random_hermitian_sum(rng, 5)
        want = np.linalg.eigvalsh(oracle_sum_matrix(op))[:4]
        got = cs.eig_low(op, count=4).eigenvalues[:4]
        assert np.allclose(got, want, atol=1e-10)

    def test_residual_contract(self, rng):
        op = random_hermitian_sum(rng, 6)
        spect = cs.eig_low(op, count=4)
        bound = op.norm_bound()
        for e, st in zip(spect.eigenvalues[:4], spect.states[:4]):
            r = cs.apply(op, st).amps - e * st.amps
            assert np.linalg.norm(r) <= 1e-9 * bound

    def test_rejects_non_hermitian(self):
        op = OperatorSum.from_pauli(PauliString.from_letters("XZ"), 1j)
        with pytest.raises(DomainError):
            cs.eig_low(op, count=2)

    def test_resource_caps(self):
        with pytest.raises(ResourceLimitError):
            cs.eig_low(OperatorSum.identity(25), count=2)
        with pytest.raises(ResourceLimitError):
            cs.eig_low(OperatorSum.identity(20), count=2, method="dense")

    def test_gap_nan_when_cluster_fills_window(self):
        lat = LatticeSpec(4, "open")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=4)
        assert spect.ground_degeneracy == 4
        assert math.isnan(spect.gap)


class TestProjectorsAndSectors:
    def test_bulk_single_projects_to_zero(self):
        lat = LatticeSpec(9, "open")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=6)
        for name in ("X5", "Y4", "Z6"):
            op = OperatorSum.from_pauli(PauliString.from_compact(name, 9))
            m = cs.ground_projector(spect, op)
            assert np.linalg.norm(m) <= 1e-10, name

    def test_edge_z_projector_eigenvalues(self):
        lat = LatticeSpec(9, "open")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=6)
        m = cs.ground_projector(
            spect, OperatorSum.from_pauli(PauliString.single(9, 1, "Z")))
        eigs = np.sort(np.linalg.eigvalsh(m))
        assert np.allclose(eigs, [-1.0, -1.0, 1.0, 1.0], atol=1e-9)

    def test_splitting_class(self):
        assert cs.splitting_class(np.zeros((4, 4))) == "zero"
        assert cs.splitting_class(2.5 * np.eye(4)) == "scalar"
        assert cs.splitting_class(np.diag([1.0, -1.0, 1.0, -1.0])) == \
            "non-scalar"

    def test_resolve_sectors_within_degenerate_cluster(self):
        lat = LatticeSpec(6, "open")
        h = cs.cluster_hamiltonian(lat)
        spect = cs.eig_low(h, count=6)
        parity, _ = cs.spin_flip_symmetries(lat)
        labels, states = cs.resolve_sectors(spect, parity)
        # the fourfold ground cluster is complete, so its labels are +-1 and
        # the rotated states are simultaneous eigenvectors
        assert np.allclose(np.abs(labels[:4]), 1.0, atol=1e-9)
        for i in range(4):
            r = cs.apply(parity, states[i]).amps - labels[i] * states[i].amps
            assert np.linalg.norm(r) <= 1e-8
            rh = cs.apply(h, states[i]).amps \
                - spect.eigenvalues[i] * states[i].amps
            assert np.linalg.norm(rh) <= 1e-8

    def test_truncated_cluster_labels_flagged_by_magnitude(self):
        # the window cuts the excited multiplet; its slice is not parity
        # invariant and the labels betray that by leaving +-1
        lat = LatticeSpec(6, "open")
        spect = cs.eig_low(cs.cluster_hamiltonian(lat), count=6)
        parity, _ = cs.spin_flip_symmetries(lat)
        labels, _ = cs.resolve_sectors(spect, parity)
        assert not np.allclose(np.abs(labels[4:]), 1.0, atol=1e-3)

    def test_subspace_distance_basics(self):
        e = [StateVector.computational(3, 0), StateVector.computational(3, 1)]
        f = [StateVector.computational(3, 2), StateVector.computational(3, 3)]
        assert cs.subspace_distance(e, e) <= 1e-14
        assert cs.subspace_distance(e, f) == pytest.approx(1.0)

    def test_subspace_distance_small_angle(self):
        th = 1e-6
        v1 = np.zeros((8, 1)); v1[0, 0] = 1.0
        v2 = np.zeros((8, 1))
        v2[0, 0] = math.cos(th); v2[1, 0] = math.sin(th)
        assert cs.subspace_distance(v1, v2) == pytest.approx(math.sin(th),
                                                             rel=1e-6)
