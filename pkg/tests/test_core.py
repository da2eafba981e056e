import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfs.core import (
    AperiodicModel,
    build_aperiodic_model,
    evaluate_aperiodic,
    gfs_decompose,
    gfs_derivative,
    gfs_differentiate,
    model_jump,
    modes_from_symmetric,
    solve_elementary_symmetric,
)
from gfs.functions import get_function
from gfs.grid import make_grid, sample
from gfs.jumps import JumpData, jumps_from_analytic
from gfs.linalg import complex_principal_sqrt

PI = math.pi


def sine_sum_jumps(ks, amps, q):
    """Endpoint jumps of sum_j a_j sin(k_j x) on [-pi, pi], all orders < q."""
    J = np.zeros(q)
    for m in range(q):
        for k, a in zip(ks, amps):
            if m % 2 == 0:
                J[m] += a * (-k * k) ** (m // 2) * 2 * math.sin(k * PI)
    return JumpData(J=np.where(J == 0.0, 1e-15, J), source="analytic")


# ---------------------------------------------------------------------------
# Independent closed-form solutions for one and two modes per family.


def one_mode_oracle(J):
    k2 = -J[2] / J[0]
    k = complex_principal_sqrt(k2)
    u = J[0] / (2 * cmath.sin(k * PI))
    return k, u


def two_mode_oracle(J):
    den = J[2] ** 2 - J[0] * J[4]
    e1 = (J[0] * J[6] - J[2] * J[4]) / den
    e2 = (J[4] ** 2 - J[2] * J[6]) / den
    disc = cmath.sqrt(e1 * e1 - 4 * e2)
    k1sq, k2sq = (e1 + disc) / 2, (e1 - disc) / 2
    k1, k2 = complex_principal_sqrt(k1sq), complex_principal_sqrt(k2sq)
    u1 = (k2sq * J[0] + J[2]) / (2 * (k2sq - k1sq) * cmath.sin(k1 * PI))
    u2 = (k1sq * J[0] + J[2]) / (2 * (k1sq - k2sq) * cmath.sin(k2 * PI))
    return (k1, u1), (k2, u2)


class TestElementarySymmetric:
    def test_two_sine_even_family(self):
        jumps = sine_sum_jumps([0.5, 1.2], [1.0, 1.0], 8)
        e, rank = solve_elementary_symmetric(jumps, "even", 2)
        assert rank == 2
        np.testing.assert_allclose(e.real, [0.36, 1.69], atol=1e-10)

    def test_single_sine(self):
        jumps = sine_sum_jumps([0.5], [1.0], 4)
        e, rank = solve_elementary_symmetric(jumps, "even", 1)
        assert e[0].real == pytest.approx(0.25, abs=1e-12)

    def test_all_regularized_rank(self):
        jumps = JumpData(J=np.full(8, 1e-15), source="analytic")
        e, rank = solve_elementary_symmetric(jumps, "even", 2)
        assert rank <= 1 or np.max(np.abs(e)) < 1e-6


class TestModesFromSymmetric:
    def test_single(self):
        np.testing.assert_allclose(modes_from_symmetric([0.25], 1), [0.5])

    def test_pair(self):
        ks = np.sort(modes_from_symmetric([0.36, 1.69], 2).real)
        np.testing.assert_allclose(ks, [0.5, 1.2], atol=1e-12)

    def test_negative_root_becomes_imaginary(self):
        k = modes_from_symmetric([-1.0], 1)
        np.testing.assert_allclose(k, [1j])


class TestBuildModel:
    def test_regularized_jumps_give_empty_model(self):
        jumps = JumpData(J=np.full(8, 1e-15), source="analytic")
        model = build_aperiodic_model(jumps, 2)
        assert model.empty

    def test_trig_poly_empty(self):
        f = get_function("trig_poly", seed=5)
        model = build_aperiodic_model(jumps_from_analytic(f, 8), 2)
        assert model.empty

    def test_two_sine_recovery(self):
        jumps = sine_sum_jumps([0.5, 1.2], [1.0, 1.0], 8)
        model = build_aperiodic_model(jumps, 2)
        got = sorted(((k.real, a.real) for k, a in model.sine_modes))
        assert got[0][0] == pytest.approx(0.5, abs=1e-9)
        assert got[1][0] == pytest.approx(1.2, abs=1e-9)
        assert got[0][1] == pytest.approx(1.0, abs=1e-9)
        assert got[1][1] == pytest.approx(1.0, abs=1e-9)
        assert not model.cosine_modes

    def test_requires_enough_jumps(self):
        jumps = JumpData(J=np.ones(4), source="analytic")
        with pytest.raises(ValueError):
            build_aperiodic_model(jumps, 2)

    def test_realness_and_conjugate_pairing(self):
        f = get_function("gaussian")
        model = build_aperiodic_model(jumps_from_analytic(f, 12), 3)
        assert not model.empty
        xs = np.linspace(-PI, PI, 101)
        vals = evaluate_aperiodic(model, xs)
        assert np.all(np.isreal(vals)) or np.max(np.abs(np.imag(vals))) < 1e-10
        # every mode is real, purely imaginary, or half of a conjugate pair
        for fam in (model.sine_modes, model.cosine_modes):
            ks = [k for k, _ in fam]
            for k in ks:
                partner = any(abs(np.conj(k) - k2) < 1e-6 * (1 + abs(k))
                              for k2 in ks)
                assert (abs(k.imag) < 1e-9 or abs(k.real) < 1e-9 or partner)

    def test_distinct_squared_wavenumbers(self):
        f = get_function("multimode", n_modes=30)
        model = build_aperiodic_model(jumps_from_analytic(f, 16), 4)
        for fam in (model.sine_modes, model.cosine_modes):
            lams = np.array([k * k for k, _ in fam])
            for i in range(len(lams)):
                for j in range(i + 1, len(lams)):
                    assert abs(lams[i] - lams[j]) > 1e-8 * max(1, abs(lams[i]))


class TestSmallNOracles:
    def test_one_mode_equivalence(self):
        for k_true in (0.5, 2.7, 0.31):
            jumps = sine_sum_jumps([k_true], [1.4], 4)
            model = build_aperiodic_model(jumps, 1)
            k_or, u_or = one_mode_oracle(jumps.J)
            (k, a), = model.sine_modes
            assert k == pytest.approx(k_or, rel=1e-9)
            assert a == pytest.approx(u_or, rel=1e-9)

    def test_two_mode_equivalence(self):
        jumps = sine_sum_jumps([0.7, 2.3], [1.0, -0.6], 8)
        model = build_aperiodic_model(jumps, 2)
        oracle = sorted(two_mode_oracle(jumps.J), key=lambda p: abs(p[0]))
        got = sorted(model.sine_modes, key=lambda p: abs(p[0]))
        for (k_o, u_o), (k, a) in zip(oracle, got):
            assert k == pytest.approx(k_o, rel=1e-9)
            assert a == pytest.approx(u_o, rel=1e-9)

    @given(st.floats(0.2, 0.8), st.floats(1.3, 3.7), st.floats(1.3, 3.7),
           st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2))
    @settings(max_examples=30, deadline=None)
    def test_three_mode_equivalence(self, k1, dk2, dk3, a1, a2, a3):
        # independent route: direct Hankel solve + numpy roots
        ks = [k1, k1 + dk2, k1 + dk2 + dk3]
        amps = [a1 + 2.5, a2 + 2.5, a3 + 2.5]  # keep away from zero
        jumps = sine_sum_jumps(ks, amps, 12)
        J = jumps.J[0::2]
        H = np.array([[J[i + j] for j in range(3)] for i in range(3)])
        e = np.linalg.solve(H, -J[3:6])
        lams = np.sort(np.roots([1.0, -e[2], e[1], -e[0]]))
        model = build_aperiodic_model(jumps, 3)
        got = np.sort([(k * k).real for k, _ in model.sine_modes])
        np.testing.assert_allclose(got, lams, rtol=1e-6)
        got_k = np.sort([k.real for k, _ in model.sine_modes])
        np.testing.assert_allclose(got_k, np.sort(ks), rtol=1e-6)


class TestEvaluate:
    def test_empty_model_is_zero(self):
        m = AperiodicModel(sine_modes=(), cosine_modes=())
        assert evaluate_aperiodic(m, 1.3) == 0.0
        assert evaluate_aperiodic(m, 1.3, order=2) == 0.0

    def test_single_sine_value(self):
        m = AperiodicModel(sine_modes=((0.5 + 0j, 1.0 + 0j),), cosine_modes=())
        assert evaluate_aperiodic(m, PI) == pytest.approx(1.0)

    def test_single_sine_derivative(self):
        m = AperiodicModel(sine_modes=((0.5 + 0j, 1.0 + 0j),), cosine_modes=())
        assert evaluate_aperiodic(m, 0.0, order=1) == pytest.approx(0.5)

    def test_jump_matching(self):
        # the fitted model carries exactly the jumps it was built from
        f = get_function("gaussian")
        jumps = jumps_from_analytic(f, 12)
        model = build_aperiodic_model(jumps, 3)
        for m in range(12):
            assert model_jump(model, m) == pytest.approx(jumps.J[m], rel=1e-7,
                                                         abs=1e-9)

    @given(st.integers(0, 2 ** 32 - 1), st.integers(1, 3))
    @settings(max_examples=50, deadline=None)
    def test_jump_matching_random_mode_sums(self, seed, n):
        rng = np.random.default_rng(seed)
        ks = np.sort(rng.uniform(0.3, 8.0, size=n))
        if np.min(np.diff(ks, prepend=0.0)) < 0.15:
            ks = np.cumsum(np.full(n, 1.0)) + rng.uniform(0.1, 0.5)
        # keep clear of integers where sin(k pi) degenerates
        ks = np.floor(ks) + np.clip(ks - np.floor(ks), 0.15, 0.85)
        amps = rng.uniform(0.5, 2.0, size=n)
        jumps = sine_sum_jumps(ks, amps, 4 * n)
        model = build_aperiodic_model(jumps, n)
        for m in range(4 * n):
            scale = max(1.0, max(abs(a) * abs(k) ** m
                                 for k, a in model.sine_modes))
            assert abs(model_jump(model, m) - jumps.J[m]) <= 1e-6 * scale


class TestDecompose:
    def test_trig_poly_passthrough(self):
        f = get_function("trig_poly", seed=7)
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        dec = gfs_decompose(u, 2, jumps_from_analytic(f, 8))
        assert dec.aperiodic.empty
        np.testing.assert_allclose(dec.periodic, u.values)

    def test_splitting_is_exact(self):
        f = get_function("log_fn")
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        dec = gfs_decompose(u, 3, jumps_from_analytic(f, 12))
        from gfs.grid import to_standard_interval
        xs = to_standard_interval(g.nodes(), g)
        ua = evaluate_aperiodic(dec.aperiodic, xs)
        scale = np.max(np.abs(u.values))
        np.testing.assert_allclose(dec.periodic + ua, u.values,
                                   atol=1e-12 * scale)

    def test_periodic_part_continuous_at_seam(self):
        f = get_function("gaussian")
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        dec = gfs_decompose(u, 3, jumps_from_analytic(f, 12))
        assert abs(dec.periodic[0] - dec.periodic[-1]) <= 1e-10

    def test_modulated_sine_fully_aperiodic(self):
        f = get_function("modulated_sine")
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        dec = gfs_decompose(u, 2, jumps_from_analytic(f, 8))
        assert np.max(np.abs(dec.periodic)) <= 1e-12

    def test_ramp_aperiodic_part_is_ramp(self):
        f = get_function("monomial", m=1)
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        dec = gfs_decompose(u, 1, jumps_from_analytic(f, 4))
        from gfs.grid import to_standard_interval
        xs = to_standard_interval(g.nodes(), g)
        ua = evaluate_aperiodic(dec.aperiodic, xs)
        np.testing.assert_allclose(ua.real, g.nodes(), atol=1e-8)


class TestDerivative:
    def test_pure_harmonic(self):
        g = make_grid(-PI, PI, 64)
        u = sample(lambda x: math.sin(3 * x), g)
        jumps = JumpData(J=np.full(8, 1e-15), source="analytic")
        d = gfs_differentiate(u, 2, jumps)
        np.testing.assert_allclose(d.values, 3 * np.cos(3 * g.nodes()),
                                   atol=1e-11)

    def test_gaussian_accuracy(self):
        f = get_function("gaussian")
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        d = gfs_differentiate(u, 3, jumps_from_analytic(f, 12))
        exact = np.array([f.derivative(x, 1) for x in g.nodes()])
        assert np.max(np.abs(d.values - exact)) <= 1e-12

    def test_multimode_accuracy(self):
        f = get_function("multimode", n_modes=30)
        g = make_grid(-PI, PI, 128)
        u = sample(f, g)
        d = gfs_differentiate(u, 4, jumps_from_analytic(f, 16))
        exact = np.array([f.derivative(x, 1) for x in g.nodes()])
        assert np.max(np.abs(d.values - exact)) <= 1e-10

    def test_general_interval(self):
        # same function squeezed onto [0, 1]: errors stay spectral
        g = make_grid(0.0, 1.0, 64)
        f = lambda x: math.exp(-((x - 0.6) / 0.3) ** 2)
        u = sample(f, g)
        from gfs.jumps import estimate_jumps
        jumps = estimate_jumps(u, 8, 6)
        d = gfs_differentiate(u, 2, jumps)
        exact = np.array([-2 * (x - 0.6) / 0.3 ** 2 * f(x) for x in g.nodes()])
        assert np.max(np.abs(d.values - exact)) <= 1e-3

    @given(st.integers(0, 2 ** 32 - 1))
    @settings(max_examples=20, deadline=None)
    def test_periodic_fallback_equals_fft(self, seed):
        from gfs.baselines import fft_derivative
        f = get_function("trig_poly", seed=seed)
        g = make_grid(-PI, PI, 64)
        u = sample(f, g)
        d_gfs = gfs_differentiate(u, 2, jumps_from_analytic(f, 8))
        d_fft = fft_derivative(u)
        np.testing.assert_allclose(d_gfs.values, d_fft.values, atol=1e-12)
