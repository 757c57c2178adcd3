"""Hypothesis property tests for structural invariants."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from isokin.characteristics import char_set, frenet, identity_residuals
from isokin.fields import FieldJet2
from isokin.kinematics import (deviation_bound_ceil, deviation_bound_cosine,
                               empirical_max_deviation)

finite = st.floats(-1e3, 1e3, allow_nan=False)
jet_entries = st.tuples(*([finite] * 10))


def make_jet(entries) -> FieldJet2:
    value, dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy = entries
    return FieldJet2(value, dt, dtt, gx, gy, gxt, gyt, hxx, hxy, hyy)


@settings(max_examples=300, deadline=None)
@given(jet_entries)
def test_frame_orthonormal_and_right_handed(entries):
    jet = make_jet(entries)
    assume(jet.grad_norm() > 1e-6)
    f = frenet(jet)
    assert abs(f.tx * f.tx + f.ty * f.ty - 1.0) < 1e-12
    assert abs(f.nx * f.nx + f.ny * f.ny - 1.0) < 1e-12
    assert abs(f.tx * f.nx + f.ty * f.ny) < 1e-12
    # N is T turned a quarter turn counter-clockwise
    assert f.nx == -f.ty and f.ny == f.tx


@settings(max_examples=300, deadline=None)
@given(jet_entries)
def test_tangent_spin_identity_is_algebraic(entries):
    """omega = omega_grad - lam tau_rho holds to rounding for any jet with
    moderate magnitudes, not just for jets of actual fields."""
    jet = make_jet(entries)
    assume(jet.grad_norm() > 1e-3)
    c = char_set(jet)
    first, _ = identity_residuals(c)
    scale = 1.0 + abs(c.omega_grad) + abs(c.lam * c.tau_rho)
    assert abs(first) <= 1e-12 * scale


@settings(max_examples=200, deadline=None)
@given(st.floats(1e-6, 50.0), st.floats(0.1, 10.0), st.floats(0.1, 10.0))
def test_cosine_form_never_exceeds_ceiling_form(phi, v, w):
    assert deviation_bound_cosine(v, w, phi) <= deviation_bound_ceil(v, w, phi) + 1e-12


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 40.0), st.floats(0.0, 2.0))
def test_cosine_form_monotone_in_angle(phi, dphi):
    a = deviation_bound_cosine(1.0, 1.0, phi)
    b = deviation_bound_cosine(1.0, 1.0, phi + dphi)
    assert b >= a - 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0.05, 12.0))
def test_bang_bang_search_respects_ceiling(phi):
    found = empirical_max_deviation(1.0, 1.0, phi, 2)
    assert found <= deviation_bound_ceil(1.0, 1.0, phi) + 1e-9
    # and never undershoots the single-interval closed form
    full_on = 2.0 * math.sin(min(phi, math.pi) / 2.0)
    assert found >= full_on - 1e-7
