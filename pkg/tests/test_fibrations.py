from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from monodromy.fibrations import (
    FibrationSpec,
    NonIntegralHodgeDegree,
    TwistDatum,
    UnsupportedWordClass,
    adjunction_genus,
    donaldson_schedule,
    euler_characteristic,
    fibration_invariants,
    genus3_nonholomorphic,
    gw_section_index,
    h1_quotient,
    hyperelliptic_signature,
    separating_word_report,
    smoothing_criterion,
    taubes_moduli_dimension,
)


def nonsep(*c):
    return TwistDatum(False, tuple(c))


def test_euler_characteristic_examples():
    twelve = [nonsep(1, 0), nonsep(0, 1)] * 6
    assert euler_characteristic(FibrationSpec(1, 9, twelve)) == 3
    assert euler_characteristic(FibrationSpec(1, 0, twelve)) == 12
    assert euler_characteristic(FibrationSpec(0, 0, ())) == 4


def test_h1_quotient_examples():
    assert h1_quotient(FibrationSpec(1, 0, [nonsep(1, 0), nonsep(0, 1)])).is_trivial()
    g = h1_quotient(FibrationSpec(1, 0, [nonsep(1, 0), nonsep(1, 0)]))
    assert g.free_rank == 1 and not g.torsion
    assert h1_quotient(FibrationSpec(2, 0, ())).free_rank == 4
    with pytest.raises(ValueError):
        h1_quotient(FibrationSpec(1, 9, [nonsep(1, 0)]))


def test_spec_validation():
    with pytest.raises(ValueError):
        FibrationSpec(1, 0, [nonsep(1, 0, 0)])
    with pytest.raises(ValueError):
        FibrationSpec(1, 0, [nonsep(0, 0)])
    with pytest.raises(ValueError):
        FibrationSpec(1, 0, [TwistDatum(True, (), 1)])  # genus 1 has no separating split
    spec = FibrationSpec(3, 0, [TwistDatum(True, (), 1), nonsep(1, 0, 0, 0, 0, 0)])
    assert spec.counts() == (1, [1])
    assert FibrationSpec.from_json(spec.to_json()) == spec


def test_separating_word_report_examples():
    r = separating_word_report(2, 1)
    assert (r.sigma, r.c1_squared) == (-1, -9)
    assert separating_word_report(1, 12).c1_squared == -12
    with pytest.raises(ValueError):
        separating_word_report(3, 0)


def test_separating_report_counts_from_local_models():
    # independent count: chi = 4 - 4g + delta, each separating model gives sigma -1
    for g in (2, 5):
        for delta in (1, 7):
            r = separating_word_report(g, delta)
            chi = 4 - 4 * g + delta
            assert (r.chi, r.sigma) == (chi, -delta)
            assert r.c1_squared == 2 * chi - 3 * delta == 8 - 8 * g - delta
            assert r.b1 == 2 * g


def test_hyperelliptic_signature_examples():
    e1 = hyperelliptic_signature(1, 12)
    assert (e1.hodge_degree, e1.sigma) == (1, -8)
    g2 = hyperelliptic_signature(2, 20)
    assert (g2.hodge_degree, g2.sigma) == (2, -12)
    with pytest.raises(NonIntegralHodgeDegree):
        hyperelliptic_signature(3, 13)


def test_hyperelliptic_with_separating_counts():
    # genus 2, delta0 = 20 plus one separating fiber: (20*2 + 4*1*1*1)/20 = 11/5
    with pytest.raises(NonIntegralHodgeDegree):
        hyperelliptic_signature(2, 20, [1])
    r = hyperelliptic_signature(2, 10, [5])
    assert r.hodge_degree == Fraction(2 * 10 + 4 * 5, 20)
    assert r.sigma == 4 * 2 - 15
    with pytest.raises(ValueError):
        hyperelliptic_signature(2, 10, [1, 1])


def test_signature_of_blown_up_quadric_pencil():
    # CP1 x CP1 blown up in 12 points: sigma = 0 - 12, chi = 4 + 12
    chain = [(1, 0, 0, 0), (0, 1, 0, 0), (-1, 0, 1, 0), (0, 0, 0, 1), (0, 0, 1, 0)]
    spec = FibrationSpec(2, 0, [nonsep(*c) for c in (chain + chain[::-1]) * 2])
    r = fibration_invariants(spec)
    assert (r.chi, r.sigma, r.b1) == (16, -12, 0)
    pencil = fibration_invariants(FibrationSpec(2, 12, spec.twists))
    assert (pencil.chi, pencil.sigma) == (4, 0)


def test_fibration_invariants_e1():
    spec = FibrationSpec(1, 0, [nonsep(1, 0), nonsep(0, 1)] * 6)
    r = fibration_invariants(spec)
    assert (r.chi, r.sigma, r.c1_squared, r.b1, r.b2) == (12, -8, 0, 0, 10)
    cubic = fibration_invariants(FibrationSpec(1, 9, spec.twists))
    assert (cubic.chi, cubic.sigma, cubic.b2) == (3, 1, 1)


def test_general_genus3_word_is_unsupported():
    with pytest.raises(UnsupportedWordClass):
        fibration_invariants(FibrationSpec(3, 0, [nonsep(1, 0, 0, 0, 0, 0)]))


def test_genus3_examples():
    assert genus3_nonholomorphic(66, -44).nonholomorphic is True
    r = genus3_nonholomorphic(62, 0)
    assert r.nonholomorphic is False and r.condition_i is False
    r = genus3_nonholomorphic(66, 0)
    assert r.condition_i and not r.condition_ii


@given(st.integers(-10_000, 10_000), st.integers(-10_000, 10_000))
def test_genus3_pairing_condition(chi, sigma):
    r = genus3_nonholomorphic(chi, sigma)
    assert r.condition_ii == (9 * sigma + 5 * chi + 40 < 0)


def test_adjunction_examples():
    assert adjunction_genus(1, -3) == 0
    assert adjunction_genus(4, 4) == 1 + 4
    with pytest.raises(ValueError):
        adjunction_genus(0, 1)


def test_smoothing_examples():
    # a = 1, S^2 = 2 gives D.S = 2, so adjunction forces g = 3
    assert smoothing_criterion([1], [[2]], [3]).smoothable
    assert smoothing_criterion([1, 1], [[0, 0], [0, 0]]).smoothable
    r = smoothing_criterion([1], [[-1]], [0])
    assert not r.smoothable and r.components[0].exceptional_sphere
    with pytest.raises(ValueError):
        smoothing_criterion([1], [[2]], [2])
    with pytest.raises(ValueError):
        smoothing_criterion([1, 1], [[0, 1], [0, 0]])


def test_gw_and_taubes_formulas():
    assert gw_section_index(4, 3) == 4
    assert gw_section_index(6, 0) == 0
    assert gw_section_index(4, 1) == 0
    m = taubes_moduli_dimension(3, 0)
    assert (m.dimension, m.euler_sign) == (0, -1)
    assert taubes_moduli_dimension(7, 0).dimension == 2
    with pytest.raises(ValueError):
        taubes_moduli_dimension(2, 0)


def test_schedule_examples():
    poly = donaldson_schedule("poly", 2, 2, 200)
    assert not poly.survived and poly.first_failure is not None
    log = donaldson_schedule("log", 4, 2, 10_000)
    assert log.survived and log.first_violation == 0
    # still inside the initial violation run at 2000 steps
    assert not donaldson_schedule("log", 4, 2, 2000).survived
    one = donaldson_schedule("log", 1, 2, 1)
    assert len(one.log_inverse) == 2
    with pytest.raises(ValueError):
        donaldson_schedule("exp", 1, 2, 10)
    with pytest.raises(ValueError):
        donaldson_schedule("poly", 2, 2, 10, beta0=Fraction(1, 2))


def test_schedule_beta_recurrence():
    r = donaldson_schedule("poly", 2, 2, 5)
    b0, b1 = r.beta(0), r.beta(1)
    assert abs(float(b0) - 0.25) < 1e-15
    assert abs(float(b1) - 0.25 ** 2 / 2) < 1e-15
