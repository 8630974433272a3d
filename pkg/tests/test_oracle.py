import cmath
import math
import warnings

import numpy as np
import pytest
from scipy.integrate import IntegrationWarning, quad

from deltashell import (DeltaShellPotential, QuadratureSettings,
                        box_state, green_function, jost_function, lifetime,
                        propagator, residue_at_pole, resolvent_matrix_element,
                        survival_amplitude, survival_amplitude_exact)
from deltashell.errors import NearPoleError, QuadratureError
from deltashell.expansion import _overlap_quadrature
from deltashell.oracle import _extended_proper_poles


def test_jost_zero_at_poles(ps40, pot9):
    assert max(abs(jost_function(p.k, pot9)) for p in ps40) < 1e-10


def test_jost_origin_and_limits(pot9):
    b, a = pot9.b, pot9.a
    assert jost_function(0.0, pot9) == 1 - 1j * b * a
    # small-k behaviour follows the Taylor expansion of the removable point
    k_small = 1e-5
    series = 1 - 1j * b * a + a * a * b * k_small + (2j / 3) * b * a ** 3 * k_small ** 2
    assert abs(jost_function(k_small, pot9) - series) < 1e-12
    # weak shell: F -> 1 uniformly
    weak = DeltaShellPotential(b=1e-9, a=a)
    assert abs(jost_function(2.0, weak) - 1) < 1e-8
    # large real k: F - 1 = O(b/k)
    assert abs(jost_function(100.0, pot9) - 1) < pot9.b / 100.0


def test_green_symmetry(pot9):
    rs = np.linspace(0.1, 0.9, 10)
    for k in (0.7 + 0.2j, 2.0 + 0j, -1.3 + 0.8j, 3.7 - 0.4j, 0.15 + 0j):
        for r in rs:
            for rp in rs:
                g1 = green_function(float(r), float(rp), k, pot9)
                g2 = green_function(float(rp), float(r), k, pot9)
                assert abs(g1 - g2) < 1e-12


def test_green_boundary_conditions(pot9):
    k = 2.0 + 0.3j
    assert green_function(0.0, 0.5, k, pot9) == 0
    # outgoing log-derivative at the shell, one-sided difference from outside
    h = 1e-7
    g0 = green_function(1.0, 0.5, k, pot9)
    deriv = (green_function(1.0 + h, 0.5, k, pot9) - g0) / h
    assert abs(deriv - 1j * k * g0) < 1e-5 * abs(g0)


def test_green_distributional_identity(pot9):
    """(k^2 - H) G = delta(r - r'): away from r' and the shell, the second
    derivative must cancel k^2 G; the finite-difference residual vanishes
    quadratically with the step.
    """
    k, rp = 1.7 + 0.4j, 0.62
    r = 0.31
    res = []
    for h in (1e-3, 5e-4):
        lap = (green_function(r + h, rp, k, pot9) - 2 * green_function(r, rp, k, pot9)
               + green_function(r - h, rp, k, pot9)) / h ** 2
        res.append(abs(lap + k * k * green_function(r, rp, k, pot9)))
    assert res[0] < 1e-2
    assert res[1] < res[0] / 3  # ~h^2 decay


def test_green_exterior_region(pot9):
    # both points beyond the shell: regular solution continued past the jump
    k = 1.3 + 0.1j
    g = green_function(1.2, 1.4, k, pot9)
    g_swap = green_function(1.4, 1.2, k, pot9)
    assert abs(g - g_swap) < 1e-12
    assert np.isfinite(g.real) and np.isfinite(g.imag)


def test_green_near_pole_error(ps10, pot9):
    with pytest.raises(NearPoleError):
        green_function(0.3, 0.6, ps10.by_index(1).k, pot9)


def test_residue_identity(ps10, basis40, pot9):
    for p in range(1, 6):
        st = basis40.state(p)
        num = residue_at_pole(st.pole.k, 0.3, 0.6, pot9)
        assert abs(num - st(0.3) * st(0.6) / (2 * st.pole.k)) < 1e-8


def test_resolvent_large_k_limit(pot9):
    """k^2 <psi|(k^2-H)^{-1}|psi> -> <psi|psi> = 1 away from the spectrum."""
    from deltashell import SineInitialState
    init = box_state(1)
    for k in (300 + 300j, 500j):
        val = k * k * resolvent_matrix_element(k, pot9, init)
        assert abs(val - 1) < 2e-2
    init_ss = SineInitialState.from_wavenumber(4.5 * math.pi)
    val = ((1000 + 1000j) ** 2) * resolvent_matrix_element(1000 + 1000j, pot9, init_ss)
    assert abs(val - 1) < 2e-2


def test_resolvent_matches_brute_double_integral(pot9):
    """Closed-form matrix element against nested quadrature of psi G psi."""
    init = box_state(2)
    k = 2.0 + 0.5j

    def inner(rp):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            g1 = quad(lambda r: (init.amplitude(r) * green_function(r, rp, k, pot9)).real,
                      0, 1, points=[rp], epsabs=1e-11, limit=200)[0]
            g2 = quad(lambda r: (init.amplitude(r) * green_function(r, rp, k, pot9)).imag,
                      0, 1, points=[rp], epsabs=1e-11, limit=200)[0]
        return complex(g1, g2) * init.amplitude(rp)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        re = quad(lambda rp: inner(rp).real, 0, 1, epsabs=1e-9, limit=200)[0]
        im = quad(lambda rp: inner(rp).imag, 0, 1, epsabs=1e-9, limit=200)[0]
    assert abs(complex(re, im) - resolvent_matrix_element(k, pot9, init)) < 1e-8


def test_propagator_delta_resolution(pot9):
    """Applying g at tiny t to the initial state returns it: A -> 1."""
    init = box_state(1)
    quad_small = QuadratureSettings(t_min=1e-4)
    val = survival_amplitude_exact(pot9, init, 2e-4, N=80, quad_settings=quad_small)
    assert abs(val) == pytest.approx(1.0, abs=1e-3)


def test_propagator_residue_sum_saturates(pot9):
    tau = 1 / 2.2993614900940784
    g10 = propagator(0.3, 0.6, 5 * tau, pot9, N=10)
    g40 = propagator(0.3, 0.6, 5 * tau, pot9, N=40)
    assert abs(g40 - g10) < 1e-6


def test_propagator_matches_long_time_expansion(pot9, ctx_q1):
    """At 30 lifetimes the power-law kernel tracks the exact one.

    The residual difference is the next order of the asymptotic series,
    measured at 3.4% here and decaying like 1/t.
    """
    from deltashell.expansion import ETA
    tau = lifetime(ctx_q1.pole_set)
    t = 30 * tau
    g_exact = propagator(0.3, 0.6, t, pot9, N=40)
    basis = ctx_q1.basis
    tail = 0j
    g_exp = 0j
    for p in range(1, 41):
        st_m, st_p = basis.state(-p), basis.state(p)
        tail += st_m(0.3) * st_m(0.6) / (2 * st_m.pole.k ** 3)
        tail += st_p(0.3) * st_p(0.6) / (2 * st_p.pole.k ** 3)
        g_exp += st_p(0.3) * st_p(0.6) * cmath.exp(-1j * st_p.pole.k ** 2 * t)
    g_exp -= ETA * tail * t ** -1.5
    assert abs(g_exact - g_exp) / abs(g_exact) < 5e-2


def test_propagator_validation(pot9):
    with pytest.raises(ValueError):
        propagator(0.3, 0.6, 0.01, pot9)  # below t_min
    with pytest.raises(ValueError):
        propagator(1.5, 0.6, 1.0, pot9)


def test_quadrature_error_gate(pot9):
    strangled = QuadratureSettings(limit=3, max_error=1e-12)
    with pytest.raises(QuadratureError):
        propagator(0.3, 0.6, 0.06, pot9, N=10, quad_settings=strangled)


def test_free_limit_ray_against_image_formula():
    """b -> 0: the rotated-ray quadrature alone must reproduce the Dirichlet
    half-line propagator; this pins the 1/pi normalization and orientation.
    """
    pot = DeltaShellPotential(b=1e-12, a=1.0)
    for (r, rp, t) in [(0.3, 0.6, 0.1), (0.5, 0.5, 0.06), (0.2, 0.9, 1.0)]:
        g_ray = propagator(r, rp, t, pot, N=0)
        pref = 1 / cmath.sqrt(4j * math.pi * t)
        g_img = pref * (cmath.exp(1j * (r - rp) ** 2 / (4 * t))
                        - cmath.exp(1j * (r + rp) ** 2 / (4 * t)))
        assert abs(g_ray - g_img) < 1e-8


def test_tilted_contour_referee(pot9, ctx_q6):
    """Independent evaluation of the same Laplace inversion on a contour that
    hugs the spectrum (plus the explicit second-quadrant eigenvalue terms)
    must match the rotated-ray oracle. This certifies the residue bookkeeping
    of the ray representation to near machine precision.
    """
    init = ctx_q6.initial_state
    tau = lifetime(ctx_q6.pole_set)
    t = 0.75 * tau
    delta = 0.0087
    smax = math.sqrt(42.0 / (t * math.sin(2 * delta)))
    w_r = cmath.exp(-1j * delta)
    w_l = cmath.exp(1j * (math.pi - delta))

    def ray_piece(w):
        def f_re(s):
            k = s * w
            v = resolvent_matrix_element(k, pot9, init) * cmath.exp(-1j * k * k * t) * 2 * k * w
            return v.real

        def f_im(s):
            k = s * w
            v = resolvent_matrix_element(k, pot9, init) * cmath.exp(-1j * k * k * t) * 2 * k * w
            return v.imag

        with warnings.catch_warnings():
            warnings.simplefilter("ignore", IntegrationWarning)
            re = quad(f_re, 0, smax, epsabs=1e-12, epsrel=1e-10, limit=20000)[0]
            im = quad(f_im, 0, smax, epsabs=1e-12, epsrel=1e-10, limit=20000)[0]
        return complex(re, im)

    hairpin = (-ray_piece(w_r) + ray_piece(w_l)) / (2j * math.pi)
    # second-quadrant poles are bound-state-like complex eigenvalues above
    # this contour; they enter explicitly here (the rotated ray hides them)
    eigen = 0j
    for st in ctx_q6.basis.improper:
        k = st.pole.k
        if k.imag > abs(k.real) * math.tan(delta):
            c = _overlap_quadrature(st, init)
            eigen += c * c * cmath.exp(-1j * k * k * t)
    tilted = hairpin + eigen
    ray = survival_amplitude_exact(pot9, init, t, N=60)
    assert abs(tilted - ray) < 1e-9


def test_extended_pole_tail(pot9):
    poles = _extended_proper_poles(pot9, 300)
    assert len(poles) == 300
    alphas = np.array([p.k.real for p in poles])
    assert np.all(np.diff(alphas) > 2)
    assert [p.index for p in poles] == list(range(1, 301))
    # the head is the certified solver output
    from deltashell import find_poles
    head = find_poles(pot9, 10, 1).proper
    assert all(abs(poles[i].k - head[i].k) < 1e-12 for i in range(10))


def test_exact_long_time_cube_law(pot9, ctx_ss):
    """The inverse-cube decay emerges from the exact contour integral alone."""
    from deltashell import lifetime as _lifetime
    tau = _lifetime(ctx_ss.pole_set)
    ts = np.geomspace(50 * tau, 100 * tau, 12)
    S = [abs(survival_amplitude_exact(pot9, ctx_ss.initial_state, float(t), N=10)) ** 2
         for t in ts]
    slope = np.polyfit(np.log(ts), np.log(S), 1)[0]
    assert slope == pytest.approx(-3.0, abs=0.05)


def test_exact_reproduces_oscillation_phases(pot9, ctx_ss):
    """The exact survival probability rings in phase with the expansion: at
    each beat maximum of the expansion the exact value exceeds both adjacent
    expansion-minima locations.
    """
    from deltashell import lifetime as _lifetime
    from deltashell import survival_series
    tau = _lifetime(ctx_ss.pole_set)
    t = np.linspace(0.2 * tau, 2 * tau, 1200)
    S = survival_series(pot9, ctx_ss.initial_state, t, 40, context=ctx_ss).S
    i_max = [i for i in range(1, len(S) - 1) if S[i] > S[i - 1] and S[i] > S[i + 1]]
    i_min = [i for i in range(1, len(S) - 1) if S[i] < S[i - 1] and S[i] < S[i + 1]]
    assert len(i_max) >= 8

    def s_exact(i):
        return abs(survival_amplitude_exact(pot9, ctx_ss.initial_state,
                                            float(t[i]), N=40)) ** 2

    for im in i_max[1:6]:
        lower = max(j for j in i_min if j < im)
        upper = min(j for j in i_min if j > im)
        peak = s_exact(im)
        assert peak > s_exact(lower)
        assert peak > s_exact(upper)


def test_green_evaluation_record(pot9):
    from deltashell import GreenEvaluation
    ev = GreenEvaluation.compute(0.3, 0.6, 2.0 + 0j, pot9)
    assert ev.value == green_function(0.3, 0.6, 2.0 + 0j, pot9)
    assert (ev.r, ev.rp, ev.k) == (0.3, 0.6, 2.0 + 0j)


def test_exact_survival_series_schema(pot9, ctx_q1):
    from deltashell import exact_survival_series
    tau = lifetime(ctx_q1.pole_set)
    series = exact_survival_series(pot9, ctx_q1.initial_state, [tau, 2 * tau], N=40)
    assert series.source == "oracle"
    assert len(series.S) == 2
    expected = abs(survival_amplitude_exact(pot9, ctx_q1.initial_state, tau, N=40)) ** 2
    assert series.S[0] == pytest.approx(expected, rel=1e-12)
