from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from bicaloric.ancient import (
    Decomposition,
    caloric_extension,
    coefficient_degree_bounds,
    decompose,
    default_sample_times,
    growth_membership,
    heat_op_preimage,
    minimal_growth_orders,
    solution_from_top_coefficient,
    time_derivative_vanishes,
    vandermonde_extract,
    verify_recurrence,
)
from bicaloric.poly import Poly, bilaplacian, heat_op, parse, partial

from tests.strategies import polys, spatial_polys


def sample_times(count: int) -> list[Fraction]:
    # distinct rationals inside (-1, -1/2)
    return [Fraction(-1) + Fraction(i + 1, 2 * (count + 1)) for i in range(count)]


class TestCaloricExtension:
    def test_quartic_seed(self):
        assert caloric_extension(parse("x1^4", 1)) == parse("x1^4 - 24*t", 1)

    def test_biharmonic_seed_is_fixed(self):
        q = parse("x1^3*x2", 2)
        assert caloric_extension(q) == q

    def test_degree_eight_seed(self):
        assert caloric_extension(parse("x1^8", 1)) == parse(
            "x1^8 - 1680*t*x1^4 + 20160*t^2", 1
        )

    def test_rejects_time_dependent_seed(self):
        with pytest.raises(ValueError, match="must not contain t"):
            caloric_extension(parse("x1 + t", 1))

    def test_restriction_to_time_zero_is_seed(self):
        q = parse("x1^6 + 2*x1^2*x2^4", 2)
        assert caloric_extension(q).substitute_t(0) == q

    @given(spatial_polys())
    def test_extension_is_bicaloric(self, q):
        assert heat_op(caloric_extension(q)) == Poly.zero(q.n)

    @given(spatial_polys())
    def test_coefficients_are_iterated_bilaplacians(self, q):
        u = caloric_extension(q)
        power = q
        for m, coef in enumerate(decompose(u).coefficients):
            assert coef == Fraction((-1) ** m, math.factorial(m)) * power
            power = bilaplacian(power)


class TestHeatOpPreimage:
    def test_constant(self):
        assert heat_op_preimage(Poly.constant(1, 1)) == Poly.t(1)

    def test_quartic(self):
        v = heat_op_preimage(parse("x1^4", 1))
        assert v == parse("t*x1^4 - 12*t^2", 1)
        assert heat_op(v) == parse("x1^4", 1)

    def test_linear(self):
        assert heat_op_preimage(Poly.x(2, 1)) == Poly.t(2) * Poly.x(2, 1)

    @given(polys())
    @settings(max_examples=60)
    def test_preimage_property(self, u):
        assert heat_op(heat_op_preimage(u)) == u


class TestDecompose:
    def test_solution(self):
        dec = decompose(parse("x1^4 - 24*t", 1))
        assert [str(p) for p in dec.coefficients] == ["x1^4", "-24"]
        assert dec.time_degree == 1

    def test_time_free(self):
        q = parse("x1^2 - x2^2", 2)
        dec = decompose(q)
        assert dec.coefficients == (q,)
        assert dec.time_degree == 0

    def test_degree_two_in_time(self):
        dec = decompose(parse("x1^8 - 1680*t*x1^4 + 20160*t^2", 1))
        assert [str(p) for p in dec.coefficients] == ["x1^8", "-1680*x1^4", "20160"]

    def test_coefficients_must_be_time_free(self):
        with pytest.raises(ValueError):
            Decomposition((Poly.t(1),))

    @given(polys())
    def test_reconstitution(self, u):
        assert decompose(u).reconstitute() == u


class TestRecurrence:
    def test_valid_pair(self):
        assert verify_recurrence(decompose(parse("x1^4 - 24*t", 1)))

    def test_single_biharmonic_coefficient(self):
        assert verify_recurrence(Decomposition((parse("x1^3*x2", 2),)))

    def test_invalid_pair(self):
        assert not verify_recurrence(
            Decomposition((parse("x1^4", 1), Poly.constant(1, 1)))
        )

    @given(spatial_polys())
    def test_recurrence_for_every_constructed_solution(self, q):
        assert verify_recurrence(decompose(caloric_extension(q)))

    def test_recurrence_for_kernel_basis_solutions(self):
        # solutions produced by exact linear algebra, not by the series
        from bicaloric.spaces import bicaloric_kernel

        for n in (1, 2):
            for d in range(9):
                for u in bicaloric_kernel(n, d).basis:
                    assert verify_recurrence(decompose(u))


class TestVandermondeExtract:
    def test_leading_coefficient(self):
        u = parse("x1^4 - 24*t", 1)
        got = vandermonde_extract(u, [Fraction(-1), Fraction(-1, 2)], 0)
        assert got == parse("x1^4", 1)

    def test_constant_solution(self):
        u = Poly.constant(2, 9)
        assert vandermonde_extract(u, [Fraction(-1)], 0) == u

    def test_rescaled_identity(self):
        u = parse("x1^4 - 24*t", 1)
        got = vandermonde_extract(u, [Fraction(-1), Fraction(-1, 2)], 1, scale=2)
        assert got == Poly.constant(1, -24)

    def test_too_few_samples(self):
        u = parse("x1^4 - 24*t", 1)
        with pytest.raises(ValueError, match="too few samples"):
            vandermonde_extract(u, [Fraction(-1)], 0)

    def test_duplicate_samples(self):
        u = parse("x1^4 - 24*t", 1)
        with pytest.raises(ValueError, match="distinct"):
            vandermonde_extract(u, [Fraction(-1), Fraction(-1)], 0)

    def test_index_out_of_range(self):
        u = parse("x1^4 - 24*t", 1)
        with pytest.raises(ValueError, match="out of range"):
            vandermonde_extract(u, [Fraction(-1), Fraction(-1, 2)], 2)

    def test_default_sample_times(self):
        times = default_sample_times(3)
        assert times == [Fraction(-1), Fraction(-5, 6), Fraction(-2, 3)]
        assert len(set(times)) == 3
        u = parse("x1^4 - 24*t", 1)
        assert vandermonde_extract(u, None, 0) == parse("x1^4", 1)
        assert vandermonde_extract(u, None, 1) == Poly.constant(1, -24)

    @given(spatial_polys(max_degree=8))
    @settings(max_examples=40)
    def test_extraction_matches_decomposition(self, q):
        u = caloric_extension(q)
        dec = decompose(u)
        samples = sample_times(dec.time_degree + 1)
        for scale in (1, 2, 3):
            for j, expected in enumerate(dec.coefficients):
                assert vandermonde_extract(u, samples, j, scale=scale) == expected


class TestPreimageConstruction:
    def test_constant_top_coefficient(self):
        # top coefficient 1 at t^1: one solve gives a quartic below it
        u = solution_from_top_coefficient(Poly.constant(1, -24), 1)
        assert heat_op(u) == Poly.zero(1)
        assert decompose(u).coefficients[1] == Poly.constant(1, -24)

    def test_chain_of_solves(self):
        top = parse("x1*x2", 2)  # harmonic, hence biharmonic
        u = solution_from_top_coefficient(top, 2)
        assert heat_op(u) == Poly.zero(2)
        dec = decompose(u)
        assert dec.time_degree == 2
        assert dec.coefficients[2] == top
        assert verify_recurrence(dec)

    def test_agrees_with_series_route_on_solutions(self):
        # both routes produce solutions sharing the leading coefficient
        for n, seed in ((1, "x1^4"), (2, "x1^4 + x2^4")):
            series = caloric_extension(parse(seed, n))
            dec = decompose(series)
            rebuilt = solution_from_top_coefficient(
                dec.coefficients[-1], dec.time_degree
            )
            rebuilt_dec = decompose(rebuilt)
            assert heat_op(rebuilt) == Poly.zero(n)
            assert rebuilt_dec.coefficients[-1] == dec.coefficients[-1]
            assert verify_recurrence(rebuilt_dec)

    def test_rejects_non_biharmonic_top(self):
        with pytest.raises(ValueError, match="biharmonic"):
            solution_from_top_coefficient(parse("x1^4", 1), 1)

    def test_rejects_inhomogeneous_top(self):
        with pytest.raises(ValueError, match="homogeneous"):
            solution_from_top_coefficient(parse("x1^3 + x1", 1), 1)


class TestGrowthMembership:
    def test_quartic_solution(self):
        u = parse("x1^4 - 24*t", 1)
        report = growth_membership(u, 1, 1)
        assert report.in_space
        assert report.time_degree == 1

    def test_constant(self):
        report = growth_membership(Poly.constant(1, 3), 0, 0)
        assert report.in_space
        assert report.time_degree == 0

    def test_degree_eight_fails_at_scale_one(self):
        u = parse("x1^8 - 1680*t*x1^4 + 20160*t^2", 1)
        assert not growth_membership(u, 1, 1).in_space

    def test_rejects_non_solution(self):
        with pytest.raises(ValueError, match="not bicaloric"):
            growth_membership(parse("t", 1), 1, 1)

    def test_minimal_orders(self):
        u = parse("x1^4 - 24*t", 1)
        assert minimal_growth_orders(u) == (1, 1)
        assert minimal_growth_orders(Poly.constant(2, 5)) == (0, 0)


class TestHighTimeDerivatives:
    def test_quartic_case(self):
        # smallest m with 8m > 8 + 8 + 1 + 6 = 23 is 3
        u = parse("x1^4 - 24*t", 1)
        assert time_derivative_vanishes(u, 1, 1)

    def test_constant_case(self):
        c = Poly.constant(3, 2)
        assert partial(c, "t") == Poly.zero(3)
        assert time_derivative_vanishes(c, 0, 0)

    def test_degree_eight_case(self):
        # smallest m with 8m > 16 + 16 + 1 + 6 = 39 is 5
        u = parse("x1^8 - 1680*t*x1^4 + 20160*t^2", 1)
        assert time_derivative_vanishes(u, 2, 2)

    def test_requires_membership(self):
        u = parse("x1^8 - 1680*t*x1^4 + 20160*t^2", 1)
        with pytest.raises(ValueError, match="growth class"):
            time_derivative_vanishes(u, 1, 1)

    @given(spatial_polys(max_degree=8))
    @settings(max_examples=40)
    def test_vanishing_and_time_degree_bound(self, q):
        u = caloric_extension(q)
        k, ell = minimal_growth_orders(u)
        report = growth_membership(u, k, ell)
        assert report.in_space
        assert report.time_degree <= min(k, ell + 1)
        assert time_derivative_vanishes(u, k, ell)


class TestCoefficientBounds:
    def test_quartic_solution(self):
        u = parse("x1^4 - 24*t", 1)
        assert coefficient_degree_bounds(u, 1, 1)

    @given(spatial_polys(max_degree=8))
    @settings(max_examples=40)
    def test_bounds_hold_for_constructions(self, q):
        u = caloric_extension(q)
        k, ell = minimal_growth_orders(u)
        assert coefficient_degree_bounds(u, k, ell)
