import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import mp_q_factor
from qdicke import DeformationSpec, ModelParams, ParameterError, StateVector
from qdicke.model import LadderHamiltonian, build_hamiltonian, coupling_elements, eigenfrequencies


def mp_couplings(N, s, q):
    return [float(mp_q_factor(m + 1, q) * mpmath.sqrt((m + 1) * (s - m) * (N - s + m + 1))) for m in range(s)]


params_strategy = st.integers(1, 40).flatmap(
    lambda N: st.tuples(
        st.just(N),
        st.integers(1, min(N, 30)),
        st.floats(0.1, 5.0),
        st.sampled_from([1.0, 0.5, 2.0, 5.0, 20.0]),
    )
)


class TestParams:
    @pytest.mark.parametrize("N,s", [(6, 0), (3, 4), (0, 1)])
    def test_bad_counts(self, N, s):
        with pytest.raises(ParameterError, match="s must satisfy 1 <= s <= N|N must satisfy"):
            ModelParams(N, s)

    @pytest.mark.parametrize("g", [0.0, -1.0, float("nan")])
    def test_bad_g(self, g):
        with pytest.raises(ParameterError, match="g > 0"):
            ModelParams(6, 2, g)

    def test_non_integer(self):
        with pytest.raises(ParameterError):
            ModelParams(6.5, 2)


class TestCouplings:
    def test_n6_s2_undeformed(self):
        np.testing.assert_allclose(coupling_elements(ModelParams(6, 2)), [math.sqrt(10), math.sqrt(12)], rtol=1e-15)

    def test_single_atom(self):
        for q in (1.0, 3.0, 20.0):
            np.testing.assert_allclose(coupling_elements(ModelParams.qdeformed(1, 1, q)), [1.0])

    def test_n6_s3_q2(self):
        got = coupling_elements(ModelParams.qdeformed(6, 3, 2.0))
        np.testing.assert_allclose(got, mp_couplings(6, 3, 2.0), rtol=1e-14)
        # f(2) = sqrt(cosh ln 2) = sqrt(1.25), so the middle coupling is exactly 5
        np.testing.assert_allclose(got, [3.464102, 5.0, 5.612486], atol=1e-6)

    @pytest.mark.parametrize("N,s,q", [(6, 3, 5.0), (12, 7, 0.3), (40, 10, 20.0)])
    def test_against_high_precision(self, N, s, q):
        np.testing.assert_allclose(coupling_elements(ModelParams.qdeformed(N, s, q)), mp_couplings(N, s, q), rtol=1e-12)

    def test_q_one_equals_identity(self):
        for N, s in [(6, 2), (12, 5), (30, 30)]:
            np.testing.assert_allclose(
                coupling_elements(ModelParams.qdeformed(N, s, 1.0)), coupling_elements(ModelParams(N, s)), rtol=1e-12
            )

    def test_monotone_in_q(self):
        qs = [1.0, 1.5, 2.0, 5.0, 20.0]
        ks = np.array([coupling_elements(ModelParams.qdeformed(10, 5, q)) for q in qs])
        assert np.all(ks[:, 0] == ks[0, 0])
        assert np.all(np.diff(ks[:, 1:], axis=0) > 0)


class TestHamiltonian:
    def test_s1(self):
        h = build_hamiltonian(ModelParams.qdeformed(6, 1, 5.0))
        assert h.dim == 2
        np.testing.assert_allclose(h.off_diagonal, [math.sqrt(6)])

    def test_g_scaling(self):
        h = build_hamiltonian(ModelParams(6, 2, g=2.0))
        np.testing.assert_allclose(h.off_diagonal, [2 * math.sqrt(10), 2 * math.sqrt(12)])

    def test_n2_s2(self):
        np.testing.assert_allclose(build_hamiltonian(ModelParams(2, 2)).off_diagonal, [math.sqrt(2), 2.0])

    def test_dense_is_symmetric(self):
        m = build_hamiltonian(ModelParams.qdeformed(8, 5, 3.0)).dense()
        np.testing.assert_array_equal(m, m.T)
        assert np.all(np.diag(m) == 0)

    def test_rejects_nonpositive(self):
        with pytest.raises(ParameterError):
            LadderHamiltonian([1.0, 0.0])

    def test_immutable(self):
        h = build_hamiltonian(ModelParams(6, 2))
        with pytest.raises(ValueError):
            h.off_diagonal[0] = 3.0


class TestEigenfrequencies:
    def test_2x2(self):
        np.testing.assert_allclose(eigenfrequencies(LadderHamiltonian([math.sqrt(6)])), [-math.sqrt(6), math.sqrt(6)])

    def test_s2(self):
        ev = eigenfrequencies(build_hamiltonian(ModelParams(6, 2)))
        np.testing.assert_allclose(ev, [-math.sqrt(22), 0.0, math.sqrt(22)], atol=1e-12)

    def test_s3_against_quartic_roots(self):
        ev = eigenfrequencies(build_hamiltonian(ModelParams(6, 3)))
        with mpmath.workdps(40):
            roots = sorted(float(mpmath.re(r)) for r in mpmath.polyroots([1, 0, -50, 0, 216], maxsteps=200, extraprec=60))
        np.testing.assert_allclose(ev, roots, atol=1e-12)
        np.testing.assert_allclose(ev[2:], [2.185464, 6.724860], atol=1e-6)

    @pytest.mark.parametrize("N,s,q", [(64, 63, 1.0), (40, 20, 1.3), (10, 10, 2.0)])
    def test_against_dense_solver(self, N, s, q):
        h = build_hamiltonian(ModelParams.qdeformed(N, s, q))
        np.testing.assert_allclose(eigenfrequencies(h), np.linalg.eigvalsh(h.dense()), atol=1e-10 * max(1, h.gershgorin_bound()))

    @settings(max_examples=60, deadline=None)
    @given(params_strategy)
    def test_spectrum_symmetry(self, p):
        N, s, g, q = p
        ev = eigenfrequencies(build_hamiltonian(ModelParams.qdeformed(N, s, q, g)))
        scale = max(1.0, np.max(np.abs(ev)))
        np.testing.assert_allclose(np.sort(-ev), ev, atol=1e-10 * scale)
        smallest = np.min(np.abs(ev))
        if s % 2 == 0:
            assert smallest < 1e-12 * scale
        elif max(q, 1 / q) <= 2.0:
            # for strong deformation the smallest |lambda| of a long ladder falls
            # below double resolution relative to the largest (checked with mpmath)
            assert smallest > 1e-10 * scale

    @pytest.mark.parametrize("q", [1.0, 2.0, 5.0, 20.0])
    def test_equidistant_small_sectors(self, q):
        ev1 = eigenfrequencies(build_hamiltonian(ModelParams.qdeformed(6, 1, q)))
        assert ev1[0] == pytest.approx(-ev1[1])
        ev2 = eigenfrequencies(build_hamiltonian(ModelParams.qdeformed(6, 2, q)))
        assert np.diff(ev2)[0] == pytest.approx(np.diff(ev2)[1], rel=1e-12)


class TestStateVector:
    def test_excitation_order(self):
        sv = StateVector([1, 2, 3])
        np.testing.assert_array_equal(sv.excitation_order(), [3, 2, 1])
        assert sv.s == 2

    def test_rejects_nonfinite(self):
        with pytest.raises(ParameterError):
            StateVector([1.0, np.nan])
