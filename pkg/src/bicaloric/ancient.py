"""Construction, decomposition, and classification of ancient bicaloric polynomials.

A bicaloric polynomial (a polynomial solution of d/dt u + Lap^2 u = 0) is a
finite sum u = p_0(x) + t p_1(x) + ... + t^d p_d(x) whose spatial coefficients
satisfy the exact recurrence

    Lap^2 p_d = 0    and    Lap^2 p_j = -(j+1) p_{j+1}   for j < d.

Running the recurrence backwards from a spatial seed q gives the caloric
extension u = sum_m ((-t)^m / m!) (Lap^2)^m q, a terminating series because
the bilaplacian drops the degree by four; it is the unique bicaloric
polynomial equal to q at t = 0.  The coefficients can also be recovered from
time samples alone: with d+1 distinct sample times, inverse-Vandermonde
coefficients reproduce each p_j exactly, including after rescaling time by
R^4 and space by R.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import solve, vandermonde_coefficients
from .poly import (
    Monomial,
    NEG_INF,
    Poly,
    bilaplacian,
    gradient,
    growth_degrees,
    heat_op,
    partial,
)
from .spaces import homogeneous_basis, operator_matrix

Scalar = Fraction | int


@dataclass(frozen=True)
class Decomposition:
    """Spatial coefficients [p_0, ..., p_d] of u = sum_j t^j p_j(x)."""

    coefficients: tuple[Poly, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ValueError("a decomposition has at least one coefficient")
        if any(p.time_degree not in (NEG_INF, 0) for p in self.coefficients):
            raise ValueError("decomposition coefficients must be t-free")

    @property
    def time_degree(self) -> int:
        return len(self.coefficients) - 1

    def reconstitute(self) -> Poly:
        out = Poly.zero(self.coefficients[0].n)
        for j, p in enumerate(self.coefficients):
            out = out + p.times_t(j)
        return out


@dataclass(frozen=True)
class MembershipReport:
    """Result of testing u against the growth class with exponents (4k, 4ell).

    ``in_space`` holds when the biparabolic degree of u is at most 4k and the
    biparabolic degree of its spatial gradient is at most 4*ell; for
    polynomials this is exactly the sup-growth condition on heat cylinders.
    """

    k: int
    ell: int
    time_degree: int
    in_space: bool


def caloric_extension(seed: Poly) -> Poly:
    """The bicaloric polynomial whose value at t = 0 is the t-free seed.

    Computed as the terminating series sum_m ((-t)^m / m!) (Lap^2)^m seed; the
    result satisfies the coefficient recurrence by construction and
    ``heat_op`` annihilates it exactly.
    """
    if seed.time_degree not in (NEG_INF, 0):
        raise ValueError("seed must not contain t")
    out = Poly.zero(seed.n)
    power = seed
    m = 0
    while power:
        coef = Fraction((-1) ** m, math.factorial(m))
        out = out + (coef * power).times_t(m)
        power = bilaplacian(power)
        m += 1
    return out


def heat_op_preimage(u: Poly) -> Poly:
    """An explicit v with heat_op(v) = u, witnessing surjectivity.

    Uses the terminating series t u - (1/2) t^2 Lu + (1/6) t^3 L^2 u - ...
    with L the heat operator, which telescopes exactly under L.
    """
    out = Poly.zero(u.n)
    power = u
    m = 1
    while power:
        coef = Fraction((-1) ** (m + 1), math.factorial(m))
        out = out + (coef * power).times_t(m)
        power = heat_op(power)
        m += 1
    return out


def decompose(u: Poly) -> Decomposition:
    """Collect the t-powers of u into spatial coefficients [p_0, ..., p_d]."""
    top = u.time_degree
    d = 0 if top == NEG_INF else int(top)
    buckets: list[dict[Monomial, Fraction]] = [{} for _ in range(d + 1)]
    for mono, coef in u.terms.items():
        buckets[mono.texp][Monomial(mono.xexp)] = coef
    coeffs = tuple(Poly(u.n, b) for b in buckets)
    return Decomposition(coeffs)


def verify_recurrence(dec: Decomposition) -> bool:
    """Exact check of Lap^2 p_d = 0 and Lap^2 p_j = -(j+1) p_{j+1}."""
    coeffs = dec.coefficients
    d = dec.time_degree
    if bilaplacian(coeffs[d]):
        return False
    for j in range(d):
        if bilaplacian(coeffs[j]) != -(j + 1) * coeffs[j + 1]:
            return False
    return True


def default_sample_times(count: int) -> list[Fraction]:
    """Evenly spaced rational sample times -1 + i/(2*count) for i = 0..count-1.

    All lie in [-1, -1/2) and are distinct, which is the only property the
    extraction identity needs.
    """
    if count < 1:
        raise ValueError("need at least one sample time")
    return [Fraction(-1) + Fraction(i, 2 * count) for i in range(count)]


def vandermonde_extract(
    u: Poly,
    samples: Sequence[Scalar] | None,
    j: int,
    scale: Scalar = 1,
) -> Poly:
    """Recover the coefficient of t^j in u from time samples alone.

    With distinct sample times t_1..t_{d+1} (at least time_degree(u)+1 of
    them; ``default_sample_times`` is used when None) and the
    inverse-Vandermonde coefficients b, the combination
    sum_i b[i][j] u(x, R^4 t_i) equals R^{4j} p_j(x) for any rational R > 0;
    this returns that combination divided by R^{4j}, which must equal
    ``decompose(u).coefficients[j]`` exactly.
    """
    top = u.time_degree
    needed = (0 if top == NEG_INF else int(top)) + 1
    if samples is None:
        samples = default_sample_times(needed)
    pts = [Fraction(s) for s in samples]
    if len(pts) < needed:
        raise ValueError(f"too few samples: need at least {needed}, got {len(pts)}")
    if len(set(pts)) != len(pts):
        raise ValueError("sample values must be distinct")
    degree = len(pts) - 1
    if not 0 <= j <= degree:
        raise ValueError(f"coefficient index {j} out of range 0..{degree}")
    big_r = Fraction(scale)
    if big_r <= 0:
        raise ValueError("scale must be positive")
    b = vandermonde_coefficients(pts, degree)
    out = Poly.zero(u.n)
    for i, ti in enumerate(pts):
        out = out + b[i, j] * u.substitute_t(big_r**4 * ti)
    return out * big_r ** (-4 * j)


def solution_from_top_coefficient(p_top: Poly, time_degree: int) -> Poly:
    """Preimage-route construction: build a solution downward from t^d.

    Starting from a space-homogeneous biharmonic p_d, each lower coefficient
    is one exact linear solve of Lap^2 p_j = -(j+1) p_{j+1} in the next
    homogeneous grade (possible because the graded bilaplacian is onto), and
    the assembled sum t^j p_j is bicaloric by the recurrence.  Complements the
    series constructor, which runs the recurrence in the other direction; the
    two routes generally produce different solutions sharing the leading
    coefficient.
    """
    if time_degree < 0:
        raise ValueError("time degree must be nonnegative")
    if p_top.time_degree not in (NEG_INF, 0):
        raise ValueError("leading coefficient must be t-free")
    if not p_top:
        return Poly.zero(p_top.n)
    degree = p_top.space_degree
    if p_top.homogeneous_component(degree, "space") != p_top:
        raise ValueError("leading coefficient must be space-homogeneous")
    if bilaplacian(p_top):
        raise ValueError("leading coefficient must be biharmonic")
    n = p_top.n
    coeffs = [p_top]
    current = p_top
    for j in range(time_degree - 1, -1, -1):
        deg = int(current.space_degree)
        domain = homogeneous_basis(n, deg + 4)
        codomain = homogeneous_basis(n, deg)
        matrix = operator_matrix(bilaplacian, domain, codomain)
        target = -(j + 1) * current
        rhs = [target.terms.get(m, Fraction(0)) for m in codomain.monomials]
        coords = solve(matrix, rhs)
        assert coords is not None  # the graded bilaplacian is onto
        current = domain.poly(coords)
        coeffs.append(current)
    coeffs.reverse()
    return Decomposition(tuple(coeffs)).reconstitute()


def growth_membership(u: Poly, k: int, ell: int) -> MembershipReport:
    """Classify a bicaloric polynomial against the growth exponents (4k, 4ell)."""
    if k < 0 or ell < 0:
        raise ValueError("growth orders must be nonnegative")
    if heat_op(u):
        raise ValueError("input is not bicaloric")
    d, dprime = growth_degrees(u)
    in_space = d <= 4 * k and dprime <= 4 * ell
    top = u.time_degree
    time_degree = 0 if top == NEG_INF else int(top)
    if in_space:
        # the time degree of a member never exceeds min(k, ell+1)
        assert time_degree <= min(k, ell + 1)
    return MembershipReport(k=k, ell=ell, time_degree=time_degree, in_space=in_space)


def minimal_growth_orders(u: Poly) -> tuple[int, int]:
    """Smallest (k, ell) whose growth class contains the bicaloric u."""
    d, dprime = growth_degrees(u)
    k = 0 if d == NEG_INF else -(-int(d) // 4)
    ell = 0 if dprime == NEG_INF else -(-int(dprime) // 4)
    return k, ell


def time_derivative_vanishes(
    u: Poly, k: int, ell: int, volume_growth: int | None = None
) -> bool:
    """Check that a high time derivative of u vanishes identically.

    For a member of the (4k, 4ell) growth class on a space with polynomial
    volume growth exponent d_V (which is n in flat space, the default), the
    m-th time derivative vanishes once 8m > 8k + 8ell + d_V + 6.  This applies
    d/dt symbolically m times for the smallest such m and returns whether the
    result is exactly zero.
    """
    if not growth_membership(u, k, ell).in_space:
        raise ValueError("u is not in the requested growth class")
    d_v = u.n if volume_growth is None else volume_growth
    m = (8 * k + 8 * ell + d_v + 6) // 8 + 1
    deriv = u
    for _ in range(m):
        deriv = partial(deriv, "t")
    return not deriv


def coefficient_degree_bounds(u: Poly, k: int, ell: int) -> bool:
    """Exact degree form of the coefficient growth bounds.

    For u in the (4k, 4ell) growth class with coefficients p_j: each nonzero
    p_j has biparabolic degree at most 4(k-j); for j <= ell its gradient
    components have degree at most 4(ell-j); and p_{ell+1}, when present, has
    vanishing gradient (it is a constant).
    """
    if not growth_membership(u, k, ell).in_space:
        raise ValueError("u is not in the requested growth class")
    dec = decompose(u)
    for j, p in enumerate(dec.coefficients):
        if p.biparabolic_degree > 4 * (k - j):
            return False
        grad_deg = max((g.biparabolic_degree for g in gradient(p)), default=NEG_INF)
        if j <= ell and grad_deg > 4 * (ell - j):
            return False
        if j == ell + 1 and grad_deg != NEG_INF:
            return False
    return True
