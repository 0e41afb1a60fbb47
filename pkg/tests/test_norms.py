import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vorocell import NormSpec, clarkson_angle, modulus, modulus_numeric, norm
from vorocell import strong_triangle_residual
from vorocell.errors import DomainError, ZeroSum, ZeroVector
from vorocell.norms import modulus_source, norm_rows

from conftest import ALL_NORMS, P_E, UC_NORMS

coord = st.floats(-1e3, 1e3, allow_nan=False)
vec2 = st.tuples(coord, coord)
p_values = st.one_of(st.floats(1.0, 12.0), st.just(math.inf))


def _oracle_norm(v, p):
    # plain python, no numpy, as an independent reference
    v = [abs(t) for t in v]
    if p == math.inf:
        return max(v)
    return sum(t ** p for t in v) ** (1.0 / p)


def test_norm_examples():
    assert norm((3, 4), NormSpec(2)) == 5.0
    assert norm((3, -4), NormSpec(math.inf)) == 4.0
    assert norm((3, -4), NormSpec(1)) == 7.0


def test_normspec_parsing_and_convexity():
    assert NormSpec.parse("inf").is_infinite
    assert NormSpec.parse(2).p == 2.0
    assert NormSpec(math.inf).to_json() == "inf"
    assert not NormSpec(1).is_uniformly_convex()
    assert not NormSpec(math.inf).is_uniformly_convex()
    assert NormSpec(1.01).is_uniformly_convex()
    with pytest.raises(DomainError):
        NormSpec(0.5)


@given(st.lists(coord, min_size=1, max_size=6), p_values)
def test_norm_matches_plain_oracle(v, p):
    got = norm(v, NormSpec(p))
    want = _oracle_norm(v, p)
    assert got == pytest.approx(want, rel=1e-12, abs=1e-12)


@given(vec2, vec2, st.floats(1e-3, 1e3), p_values)
def test_norm_homogeneous_and_subadditive(v, w, lam, p):
    n = NormSpec(p)
    v, w = np.array(v), np.array(w)
    assert norm(lam * v, n) == pytest.approx(lam * norm(v, n), rel=1e-12, abs=1e-12)
    assert norm(v + w, n) <= norm(v, n) + norm(w, n) + 1e-12 * (1 + norm(v, n) + norm(w, n))


def test_norm_rows_is_rowwise():
    V = np.array([[3.0, 4.0], [1.0, 0.0], [0.0, 0.0]])
    assert norm_rows(V, 2.0).tolist() == [5.0, 1.0, 0.0]


def test_clarkson_angle_examples():
    n = NormSpec(2)
    assert clarkson_angle((5, 0), (2, 0), n) == 0.0
    assert clarkson_angle((1, 0), (-3, 0), n) == 2.0
    assert clarkson_angle((1, 0), (0, 1), n) == pytest.approx(math.sqrt(2), abs=1e-15)
    with pytest.raises(ZeroVector):
        clarkson_angle((0, 0), (1, 0), n)


nonzero = vec2.filter(lambda v: max(abs(v[0]), abs(v[1])) > 1e-3)


@given(nonzero, nonzero, st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), p_values)
def test_clarkson_angle_scale_invariant_and_bounded(x, y, s, t, p):
    n = NormSpec(p)
    a = clarkson_angle(x, y, n)
    assert 0.0 <= a <= 2.0
    b = clarkson_angle(np.multiply(s, x), np.multiply(t, y), n)
    assert b == pytest.approx(a, abs=1e-12)
    assert clarkson_angle(y, x, n) == pytest.approx(a, abs=1e-15)


def test_modulus_examples():
    two = NormSpec(2)
    assert modulus(two, 0.0) == 0.0
    assert modulus(two, 2.0) == 1.0
    assert modulus(NormSpec(3), 1.0) == pytest.approx(1 - (1 - 0.125) ** (1 / 3), abs=1e-15)
    assert modulus(NormSpec(3), 1.0) == pytest.approx(0.04367, abs=1e-3)
    assert modulus(NormSpec(1.5), 1.0) == pytest.approx(0.5 / 8)
    assert modulus(NormSpec(1), 1.5) == 0.0
    assert modulus(NormSpec(math.inf), 2.0) == 0.0
    assert modulus_source(two) == "closed-form"
    assert modulus_source(NormSpec(1.5)) == "lower-bound"
    for bad in (-0.1, 2.1, math.nan):
        with pytest.raises(DomainError):
            modulus(two, bad)


@pytest.mark.parametrize("n", ALL_NORMS, ids=str)
def test_modulus_monotone_from_zero(n):
    eps = np.linspace(0.0, 2.0, 100)
    d = modulus(n, eps)
    assert d[0] == 0.0
    assert np.all(np.diff(d) >= 0.0)
    assert np.all((0.0 <= d) & (d <= 1.0))
    if n.is_uniformly_convex():
        assert np.all(d[1:] > 0.0)


def test_modulus_numeric_examples():
    assert modulus_numeric(NormSpec(2), 1.0, 2048) == pytest.approx(1 - math.sqrt(3) / 2, abs=1e-3)
    assert modulus_numeric(NormSpec(math.inf), 1.0, 2048) == pytest.approx(0.0, abs=1e-12)
    assert modulus_numeric(NormSpec(2), 2.0, 2048) == pytest.approx(1.0, abs=1e-3)
    with pytest.raises(DomainError):
        modulus_numeric(NormSpec(2), 0.0, 64)
    with pytest.raises(DomainError):
        modulus_numeric(NormSpec(2), 1.0, 8)


@pytest.mark.parametrize("p", [1.5, 2.0, P_E, 3.0, 5.0])
@pytest.mark.parametrize("eps", [0.25, 0.5, 1.0, 1.5, 2.0])
def test_modulus_sound_against_brute_force(p, eps):
    n = NormSpec(p)
    assert modulus(n, eps) <= modulus_numeric(n, eps, 2048) + 1e-3


def test_residual_examples():
    two = NormSpec(2)
    assert strong_triangle_residual((1, 0), (1, 0), two) == pytest.approx(0.0, abs=1e-15)
    a1 = math.hypot(1 - 1 / math.sqrt(2), 1 / math.sqrt(2))
    # |x1| = |x2| = 1 and alpha1 = alpha2, so the delta terms add to 4 delta
    want = 2 - math.sqrt(2) - 4 * (1 - math.sqrt(1 - a1 * a1 / 4))
    got = strong_triangle_residual((1, 0), (0, 1), two)
    assert got == pytest.approx(want, abs=1e-14)
    assert got > 0
    assert strong_triangle_residual((1, 0), (-1, 1e-6), two) >= -1e-12
    with pytest.raises(ZeroVector):
        strong_triangle_residual((0, 0), (1, 0), two)
    with pytest.raises(ZeroSum):
        strong_triangle_residual((1, 2), (-1, -2), two)


@pytest.mark.parametrize("n", UC_NORMS, ids=str)
@given(x1=st.lists(coord, min_size=3, max_size=3), x2=st.lists(coord, min_size=3, max_size=3))
def test_residual_nonnegative(n, x1, x2):
    x1, x2 = np.array(x1), np.array(x2)
    if min(norm(x1, n), norm(x2, n), norm(x1 + x2, n)) < 1e-6:
        return
    scale = norm(x1, n) + norm(x2, n)
    assert strong_triangle_residual(x1, x2, n) >= -1e-12 * max(1.0, scale)
