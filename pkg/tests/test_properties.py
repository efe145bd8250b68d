"""Property tests over generated diagrams and random Laurent polynomials."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from surfskein.geometry_bounds import Coefficients, volume_bounds_thickened
from surfskein.kauffman_states import A, B, apply_state, is_bks_adequate, is_geometrically_adequate, side_state
from surfskein.laurent import DELTA, LaurentPolynomial
from surfskein.link_diagram import is_alternating, is_checkerboard_colorable, mirror, parse_spd, to_spd, twist_regions
from surfskein.oracle.generator import GeneratorSpec, generate
from surfskein.oracle.recursive import bracket_recursive
from surfskein.skein_poly import bracket_decomposition, bracket_zero, jones_j0

COMMON = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def diagrams(draw, max_crossings=9):
    genus = draw(st.integers(0, 3))
    c = draw(st.integers(max(1, 2 * genus), max_crossings))
    seed = draw(st.integers(0, 10_000))
    alternating = draw(st.booleans())
    return generate(GeneratorSpec(genus, c, seed, require_alternating=alternating))


polys = st.lists(st.tuples(st.integers(-12, 12), st.integers(-5, 5)), max_size=6).map(LaurentPolynomial.from_pairs)


@COMMON
@given(diagrams(max_crossings=8))
def test_dual_path_agrees(d):
    _, rec = bracket_recursive(d)
    dec = bracket_decomposition(d)
    assert rec.zero == dec.zero and rec.terms == dec.terms


@COMMON
@given(diagrams())
def test_engines_agree(d):
    assert bracket_zero(d, engine="python") == bracket_zero(d, engine="compiled")


@COMMON
@given(diagrams())
def test_mirror_inverts_variable(d):
    assert bracket_zero(mirror(d)).polynomial == bracket_zero(d).polynomial.bar()


@COMMON
@given(diagrams())
def test_states_partition(d):
    assert bracket_decomposition(d).total_states == 1 << d.num_crossings


@COMMON
@given(diagrams())
def test_multicurve_keys_shape(d):
    keys = bracket_decomposition(d).terms
    if d.genus == 0:
        assert not keys
    for key in keys:
        assert key.genus == d.genus and key.classes
        if d.genus == 1:
            # disjoint essential curves on a torus are parallel
            assert len(set(key.classes)) == 1 and not key.signature_only
        else:
            assert key.signature_only


@COMMON
@given(diagrams())
def test_euler_identity(d):
    if is_alternating(d) and is_checkerboard_colorable(d):
        sa = apply_state(d, side_state(d, A)).count
        sb = apply_state(d, side_state(d, B)).count
        assert sa - d.num_crossings + sb == d.euler_characteristic


@COMMON
@given(diagrams())
def test_adequacy_implication(d):
    for side in (A, B):
        if is_geometrically_adequate(d, side):
            assert is_bks_adequate(d, side)


@COMMON
@given(diagrams())
def test_spd_round_trip(d):
    assert parse_spd(to_spd(d)) == d


@COMMON
@given(diagrams())
def test_twist_regions_partition(d):
    regions = twist_regions(d).regions
    assert sorted(x for r in regions for x in r) == list(range(d.num_crossings))


@COMMON
@given(diagrams())
def test_j0_exponents_are_quarter_integers(d):
    for e, _ in jones_j0(d).terms():
        assert (4 * e).denominator == 1


@settings(max_examples=200, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert p * (q + r) == p * q + p * r
    assert (p * q).bar() == p.bar() * q.bar()
    assert p - p == LaurentPolynomial.zero()


@settings(max_examples=200, deadline=None)
@given(polys)
def test_exact_division_inverts_multiplication(p):
    assert (p * DELTA).divmod_exact(DELTA) == p


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 1), st.integers(0, 1))
def test_thickened_bounds_scale_with_beta(a1, b1, am, bn):
    c = Coefficients(am, a1, b1, bn)
    pair = volume_bounds_thickened(c, 1)
    assert pair.lower == pytest.approx(3.66386 / 2 * c.beta)
    assert pair.upper == pytest.approx(10 * 1.01494 * c.beta)
    assert (pair.lower < pair.upper) == (c.beta > 0)
