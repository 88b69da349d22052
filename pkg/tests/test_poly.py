from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given

from bicaloric.poly import (
    NEG_INF,
    Poly,
    PolyParseError,
    bilaplacian,
    gradient,
    growth_degrees,
    heat_op,
    laplacian,
    parse,
    partial,
    render,
)

from tests.strategies import poly_triples, polys, spatial_polys


def x(n, k):
    return Poly.x(n, k)


class TestArithmetic:
    def test_additive_inverse(self):
        assert x(1, 1) + (-x(1, 1)) == Poly.zero(1)

    def test_difference_of_squares(self):
        a = x(2, 1) + x(2, 2)
        b = x(2, 1) - x(2, 2)
        assert a * b == x(2, 1) ** 2 - x(2, 2) ** 2

    def test_scale_by_inverse(self):
        p = 3 * x(1, 1) ** 2
        assert p * Fraction(1, 3) == x(1, 1) ** 2

    def test_dimension_mismatch_raises(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            x(1, 1) + x(2, 1)
        with pytest.raises(ValueError, match="dimension mismatch"):
            x(1, 1) * x(2, 1)

    def test_no_zero_terms_stored(self):
        p = x(1, 1) - x(1, 1)
        assert p.terms == {}

    @given(poly_triples())
    def test_ring_axioms(self, triple):
        a, b, c = triple
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)


class TestDerivatives:
    def test_power_rule(self):
        assert partial(x(1, 1) ** 3, 1) == 3 * x(1, 1) ** 2

    def test_time_derivative(self):
        p = Poly.t(1) ** 2 * x(1, 1)
        assert partial(p, "t") == 2 * Poly.t(1) * x(1, 1)

    def test_constant_derivative(self):
        assert partial(Poly.constant(2, 7), 2) == Poly.zero(2)

    def test_bad_variable(self):
        with pytest.raises(ValueError):
            partial(x(2, 1), 3)

    def test_laplacian_of_square_sum(self):
        p = x(2, 1) ** 2 + x(2, 2) ** 2
        assert laplacian(p) == Poly.constant(2, 4)

    def test_bilaplacian_x4(self):
        # oracle: four explicit derivatives
        p = x(1, 1) ** 4
        expected = partial(partial(partial(partial(p, 1), 1), 1), 1)
        assert expected == Poly.constant(1, 24)
        assert bilaplacian(p) == expected

    def test_heat_op_on_solution(self):
        # d/dt gives -24, the bilaplacian gives +24
        u = parse("x1^4 - 24*t", 1)
        assert heat_op(u) == Poly.zero(1)

    def test_gradient(self):
        p = x(2, 1) ** 2 * x(2, 2)
        assert gradient(p) == (2 * x(2, 1) * x(2, 2), x(2, 1) ** 2)

    def test_gradient_of_time_power(self):
        assert gradient(Poly.t(3) ** 3) == (Poly.zero(3),) * 3

    def test_gradient_spec_solution(self):
        assert gradient(parse("x1^4 - 24*t", 1)) == (4 * x(1, 1) ** 3,)

    @given(polys())
    def test_laplacian_commutes_with_time_derivative(self, p):
        assert laplacian(partial(p, "t")) == partial(laplacian(p), "t")

    @given(polys())
    def test_bilaplacian_is_laplacian_squared(self, p):
        assert bilaplacian(p) == laplacian(laplacian(p))


class TestDegrees:
    def test_biparabolic_degree_rule(self):
        # 4 per t power plus one per spatial power
        p = Poly.t(1) * x(1, 1) ** 2
        assert p.biparabolic_degree == 6

    def test_constant_degree(self):
        assert Poly.constant(1, 1).biparabolic_degree == 0

    def test_zero_degree_is_sentinel(self):
        z = Poly.zero(2)
        assert z.biparabolic_degree == NEG_INF
        assert z.space_degree == NEG_INF
        assert z.time_degree == NEG_INF

    def test_growth_degrees(self):
        assert growth_degrees(parse("x1^4 - 24*t", 1)) == (4, 3)

    def test_growth_degrees_of_spatial_constant(self):
        assert growth_degrees(Poly.t(2)) == (4, NEG_INF)

    @given(polys(n=2))
    def test_bilaplacian_lowers_space_degree_by_four(self, p):
        for j in range(0, 12):
            comp = p.homogeneous_component(j, "space")
            img = bilaplacian(comp)
            if img:
                assert img.space_degree == j - 4

    @given(polys(n=2))
    def test_heat_op_lowers_biparabolic_degree_by_four(self, p):
        for j in range(0, 16):
            comp = p.homogeneous_component(j, "biparabolic")
            img = heat_op(comp)
            if img:
                assert img.biparabolic_degree == j - 4


class TestHomogeneousComponents:
    def test_space_component(self):
        p = x(1, 1) ** 2 + x(1, 1)
        assert p.homogeneous_component(2, "space") == x(1, 1) ** 2

    def test_biparabolic_component_mixes_t(self):
        u = parse("x1^4 - 24*t", 1)
        assert u.homogeneous_component(4, "biparabolic") == u

    def test_absent_component_is_zero(self):
        assert Poly.constant(1, 5).homogeneous_component(3, "space") == Poly.zero(1)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            Poly.constant(1, 1).homogeneous_component(0, "parabolic")

    @given(polys())
    def test_components_sum_back(self, p):
        for mode in ("space", "biparabolic"):
            total = Poly.zero(p.n)
            for j in range(0, 30):
                total = total + p.homogeneous_component(j, mode)
            assert total == p


class TestTextForm:
    def test_parse_solution(self):
        p = parse("x1^4 - 24*t", 1)
        assert p == x(1, 1) ** 4 - 24 * Poly.t(1)

    def test_parse_fraction_coefficient(self):
        p = parse("1/2*x1*x2", 2)
        assert p == Fraction(1, 2) * x(2, 1) * x(2, 2)

    def test_variable_out_of_range(self):
        with pytest.raises(PolyParseError) as err:
            parse("x3", 2)
        assert err.value.position == 0

    def test_syntax_error_position(self):
        with pytest.raises(PolyParseError) as err:
            parse("x1 + @", 1)
        assert err.value.position == 5

    def test_dangling_sign(self):
        with pytest.raises(PolyParseError):
            parse("x1 +", 1)

    def test_whitespace_insensitive(self):
        assert parse(" x1 ^ 4-24 * t ", 1) == parse("x1^4 - 24*t", 1)

    def test_repeated_variable_in_term(self):
        assert parse("x1*x1", 1) == x(1, 1) ** 2

    def test_render_examples(self):
        assert render(parse("x1^4 - 24*t", 1)) == "x1^4 - 24*t"
        assert render(parse("1/2*x1*x2^3 + 7", 2)) == "1/2*x1*x2^3 + 7"
        assert render(Poly.zero(3)) == "0"
        assert render(-x(1, 1)) == "-x1"

    def test_render_orders_biparabolic_blocks(self):
        u = parse("20160*t^2 + x1^8 - 1680*t*x1^4", 1)
        assert render(u) == "x1^8 - 1680*t*x1^4 + 20160*t^2"

    @given(polys())
    def test_parse_render_roundtrip(self, p):
        assert parse(render(p), p.n) == p


class TestSubstitutions:
    def test_substitute_t(self):
        u = parse("x1^4 - 24*t", 1)
        assert u.substitute_t(Fraction(-1)) == parse("x1^4 + 24", 1)

    def test_parabolic_scale(self):
        u = parse("x1^4 - 24*t", 1)
        assert u.parabolic_scale(2) == 16 * u

    def test_translate(self):
        p = x(1, 1) ** 2
        assert p.translate([1]) == parse("x1^2 + 2*x1 + 1", 1)

    def test_translate_keeps_t(self):
        u = parse("x1^2 + t", 1)
        assert u.translate([Fraction(1, 2)]) == parse("x1^2 + x1 + 1/4 + t", 1)

    def test_evaluate(self):
        u = parse("x1^4 - 24*t", 1)
        assert u.evaluate([2], Fraction(-1, 2)) == 28

    @given(spatial_polys(n=2))
    def test_translate_round_trip(self, p):
        shifted = p.translate([1, -2]).translate([-1, 2])
        assert shifted == p
