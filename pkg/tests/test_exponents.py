from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from blockmap import exponents as ex
from blockmap.models import closed_form_count


@pytest.fixture(autouse=True)
def working_precision():
    with mp.workdps(ex.WORKING_DPS):
        yield


def _synthetic(N, growth, delta, corrections=(), eta=0):
    """``growth^n n^-delta (log n)^-eta (1 + sum c_k / n^k)`` for n >= 1."""
    out = [mp.mpf(1)]
    for n in range(1, N + 1):
        n_ = mp.mpf(n)
        tail = 1 + sum(c / n_ ** (k + 1) for k, c in enumerate(corrections))
        log_factor = mp.log(n_) ** -eta if eta and n > 1 else 1
        out.append(mp.mpf(growth) ** n * n_ ** -delta * log_factor * tail)
    return out


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=20)


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=6), st.lists(rationals, min_size=7, max_size=7),
       st.integers(min_value=1, max_value=5))
def test_accelerate_exact_on_polynomials_in_inverse_n(p, coeffs, start):
    # a_n = sum_{k <= p} c_k n^-k is mapped to the constant c_0
    coeffs = coeffs[:p + 1]
    seq = [sum(mp.mpf(c.numerator) / c.denominator / mp.mpf(n) ** k for k, c in enumerate(coeffs))
           for n in range(start, start + p + 8)]
    c0 = mp.mpf(coeffs[0].numerator) / coeffs[0].denominator
    for value in ex.accelerate(seq, p, start):
        assert abs(value - c0) < mp.mpf(10) ** -40


def test_accelerate_argument_checks():
    with pytest.raises(ValueError):
        ex.accelerate([1, 2], 2)
    with pytest.raises(ValueError):
        ex.accelerate([1, 2, 3], -1)
    with pytest.raises(ValueError):
        ex.accelerate([1, 2, 3], 1, start=0)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=0.5, max_value=4), st.floats(min_value=1, max_value=20),
       st.lists(st.floats(min_value=-0.3, max_value=0.3), min_size=3, max_size=3))
def test_synthetic_exponent_recovered(delta, growth, corrections):
    t = _synthetic(60, growth, delta, corrections)
    estimate = ex.np_estimate(ex.SequenceWindow(tuple(t)), 60, 6).estimate
    assert abs(estimate - delta) < 1e-6


def test_error_shrinks_with_p():
    t = _synthetic(50, 12, 2.5, (1.3, -0.7, 0.4, 0.2))
    window = ex.SequenceWindow(tuple(t))
    errors = [abs(ex.np_estimate(window, 50, p).estimate - mp.mpf(2.5)) for p in range(1, 6)]
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_log_correction_removed_by_premultiplier():
    t = _synthetic(40, 8, 1.5, (0.5,), eta=0.5)
    plain = ex.np_estimate(ex.SequenceWindow(tuple(t)), 40, 5).estimate
    corrected = ex.np_estimate(ex.SequenceWindow(tuple(t), "t", 0.5), 40, 5).estimate
    assert abs(corrected - mp.mpf(1.5)) < 1e-6
    assert abs(plain - mp.mpf(1.5)) > 1e-3


def test_window_rules():
    ex.SequenceWindow((0, 1, 2, 3))
    with pytest.raises(ValueError):
        ex.SequenceWindow((1, 0, 2, 3))
    w = ex.SequenceWindow(tuple(range(1, 12)))
    assert w.truncated(5).N == 5
    with pytest.raises(ValueError):
        w.truncated(20)


def test_np_estimate_argument_checks():
    w = ex.SequenceWindow(tuple(_synthetic(20, 2, 1.5)))
    with pytest.raises(ValueError):
        ex.np_estimate(w, 20, 0)
    with pytest.raises(ValueError):
        ex.np_estimate(w, 8, 6)


def test_report_indexing():
    w = ex.SequenceWindow(tuple(_synthetic(30, 2, 1.5, (0.3,))))
    report = ex.np_estimate(w, 30, 4)
    assert len(report.deltas) == 30 - 2
    assert report.estimate == report.accelerated[30 - 3 - 4]


def test_growth_rate_of_quadrangulations():
    counts = [closed_form_count("quad", n) for n in range(41)]
    g = ex.growth_rate_estimate(ex.SequenceWindow(tuple(counts)), 5)
    assert abs(g - mp.mpf(1) / 12) < 1e-10


def test_ucrit_extrapolation_quads():
    counts = [closed_form_count("quad", n) for n in range(51)]
    u = ex.ucrit_extrapolate(counts, Fraction(1, 12), p=5)
    assert abs(u - mp.mpf(9) / 5) < 1e-4


def test_ucrit_sequence_uses_partial_sums():
    seq = ex.ucrit_sequence([1, 2, 9], Fraction(1, 12))
    m, s = 1 + Fraction(2, 12), Fraction(2)
    assert abs(seq[0] - (m + 2 * s / 12) / (m * (1 - m) + 2 * s / 12)) < 1e-50


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=6))
def test_neville_with_theta_one_is_accelerate(p):
    counts = [closed_form_count("cubic", n) for n in range(25)]
    g1 = mp.mpf(1) / 16
    seq = ex.ucrit_sequence(counts, g1)
    via_neville = ex.ucrit_extrapolate(counts, g1, p=p, theta=1)
    via_accelerate = ex.accelerate(seq[-(p + 1):], p, start=len(seq) - p)[0]
    assert abs(via_neville - via_accelerate) < mp.mpf(10) ** -40


def test_neville_recovers_polynomial_limit():
    xs = [mp.mpf(1) / n for n in range(3, 8)]
    ys = [2 + 3 * x - x ** 4 for x in xs]
    assert abs(ex.neville_limit(xs, ys) - 2) < mp.mpf(10) ** -50


def test_evaluate_table_on_q_polynomials():
    from blockmap.series import Poly

    p = Poly({(1, 2): 3, (2, 0): 1}, ("u", "q"))
    assert ex.evaluate_table([p], u=2, q=Fraction(1, 2)) == [mp.mpf(3) * 2 / 4 + 4]


def test_delta_sequence_examples():
    geometric = ex.delta_sequence([mp.mpf(1) / 3 ** n for n in range(12)])
    assert len(geometric) == 9 and all(abs(d) < mp.mpf(10) ** -50 for d in geometric)
    t = [mp.mpf(1)] + [mp.mpf(1) / n ** 2 for n in range(1, 13)]
    assert abs(ex.delta_sequence(t)[9] - mp.mpf(241) / 144) < mp.mpf(10) ** -50
    assert ex.delta_sequence([1, 2, 3]) == []
    with pytest.raises(ValueError):
        ex.delta_sequence([1, 2])


def test_accelerate_examples():
    seq = [2 + mp.mpf(1) / n for n in range(1, 12)]
    assert all(abs(v - 2) < mp.mpf(10) ** -55 for v in ex.accelerate(seq, 1))
    assert all(abs(v - 7) < mp.mpf(10) ** -50 for v in ex.accelerate([7] * 10, 4))
    assert ex.accelerate(seq, 0) == seq


@settings(max_examples=40, deadline=None)
@given(st.fractions(min_value=Fraction(1, 12), max_value=20, max_denominator=12),
       st.fractions(min_value=Fraction(1, 2), max_value=4, max_denominator=12))
def test_pure_power_law_at_n40(rho, delta):
    rho_ = mp.mpf(rho.numerator) / rho.denominator
    delta_ = mp.mpf(delta.numerator) / delta.denominator
    t = [rho_ ** -n * mp.mpf(n) ** -delta_ if n else mp.mpf(1) for n in range(41)]
    window = ex.SequenceWindow(tuple(t))
    errors = [abs(ex.np_estimate(window, 40, p).estimate - delta_) for p in range(1, 6)]
    assert errors[-1] < 1e-6
    assert all(b <= a for a, b in zip(errors, errors[1:]))


def test_log_correction_at_n50():
    t = _synthetic(50, mp.mpf(3) / 2, 1.5, eta=0.5)
    corrected = ex.np_estimate(ex.SequenceWindow(tuple(t), "t", 0.5), 50, 5).estimate
    plain = ex.np_estimate(ex.SequenceWindow(tuple(t)), 50, 5).estimate
    assert abs(corrected - mp.mpf(1.5)) < 0.02
    assert abs(plain - mp.mpf(1.5)) > 0.02


def test_growth_rate_of_meanders():
    counts = [closed_form_count("meander", n) for n in range(31)]
    g = ex.growth_rate_estimate(ex.SequenceWindow(tuple(counts)), 5)
    assert abs(g - mp.mpf(1) / 16) < 1e-5


@pytest.mark.slow
def test_meander_q_half_has_larger_ucrit(table_cache):
    from blockmap.pipeline import brute_force_series

    table = brute_force_series("meander-q", 10, table_cache)
    estimates = {}
    for q in (Fraction(1, 2), 1):
        values = ex.evaluate_table(table, 1, q)
        g1 = ex.growth_rate_estimate(ex.SequenceWindow(tuple(values)), 5)
        estimates[q] = ex.ucrit_extrapolate(values, g1, p=5)
    assert mp.isfinite(estimates[Fraction(1, 2)])
    assert estimates[Fraction(1, 2)] > estimates[1]
