"""Space-time integrals over heat cylinders and reverse-Poincare ratio checks.

The heat cylinder at scale s around a center p is B_s(p) x [-s^4, 0], the
natural parabolically scaled domain for a fourth-order heat flow.  All
integrands here are polynomials, so the ball integral of each monomial has a
closed form: odd exponents integrate to zero by symmetry, and for even
exponents

    integral over B_1 of x^a dx
        = 2 * prod_i Gamma((a_i+1)/2) / ((n+|a|) * Gamma((n+|a|)/2)),

which is an exact rational multiple of pi^(n//2).  The time direction
integrates exactly as well, so every cylinder integral is computed as an
exact rational and converted to float only at the very end; no Monte Carlo,
no quadrature error.

The ratio checks compare weighted higher-derivative energies on an inner
cylinder against the function and gradient energies on the full cylinder.
The weights (r^4 on the Hessian, r^6 on the gradient of the Laplacian, r^8 on
the time derivative, r^10 on its gradient) make each ratio invariant under
the parabolic rescaling u(x, t) -> u(lam*x, lam^4*t), so for homogeneous
solutions the ratios are constant in r and for general polynomial solutions
they stabilize as r grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import NEG_INF, Poly, bilaplacian, gradient, heat_op, laplacian, partial

Number = Fraction | int | float


@dataclass(frozen=True)
class CylinderSpec:
    """A heat cylinder family: center, outer scale r, and inner fraction epsilon."""

    n: int
    r: Number
    epsilon: Number
    center: tuple[Number, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not self.r > 0:
            raise ValueError("radius must be positive")
        if not 0 < self.epsilon < 1:
            raise ValueError("epsilon must lie strictly between 0 and 1")
        if self.center and len(self.center) != self.n:
            raise ValueError("center must have length n")


@dataclass(frozen=True)
class EnergyBundle:
    """Squared-derivative energies of one solution over one cylinder."""

    e_u: float
    e_grad: float
    e_hess: float
    e_graddelta: float
    e_ut: float
    e_gradut: float


def _half_gamma_ratio(a: int) -> Fraction:
    # Gamma((a+1)/2) / sqrt(pi) for even a >= 0.
    h = a // 2
    return Fraction(math.factorial(a), 4**h * math.factorial(h))


def _ball_moment_unit(n: int, xexp: tuple[int, ...]) -> Fraction:
    """Rational part of the unit-ball integral of x^xexp; implicit pi^(n//2)."""
    if any(e % 2 for e in xexp):
        return Fraction(0)
    total = sum(xexp)
    num = Fraction(2)
    for e in xexp:
        num *= _half_gamma_ratio(e)
    s = n + total
    if s % 2 == 0:
        gam = Fraction(math.factorial(s // 2 - 1))
    else:
        gam = _half_gamma_ratio(s - 1)
    return num / (s * gam)


def _ball_integral_exact(p: Poly, radius: Fraction) -> Fraction:
    """Rational part of the integral of a t-free p over B_radius(0)."""
    total = Fraction(0)
    for mono, coef in p.terms.items():
        if mono.texp:
            raise ValueError("spatial integral requires a t-free polynomial")
        moment = _ball_moment_unit(p.n, mono.xexp)
        if moment:
            total += coef * moment * radius ** (p.n + mono.space_degree)
    return total


def _cylinder_integral_exact(p: Poly, scale: Fraction) -> Fraction:
    """Rational part of the integral of p over B_scale(0) x [-scale^4, 0]."""
    total = Fraction(0)
    for mono, coef in p.terms.items():
        moment = _ball_moment_unit(p.n, mono.xexp)
        if moment:
            m = mono.texp
            time_part = Fraction((-1) ** m, m + 1) * scale ** (4 * (m + 1))
            total += coef * moment * time_part * scale ** (p.n + mono.space_degree)
    return total


def _centered(p: Poly, center: Sequence[Number]) -> Poly:
    if not center or not any(center):
        return p
    return p.translate([Fraction(c) for c in center])


def _region_scale(spec: CylinderSpec, region: str) -> Fraction:
    r = Fraction(spec.r)
    if region == "outer":
        return r
    if region == "inner":
        return r * Fraction(spec.epsilon)
    raise ValueError(f"region must be 'inner' or 'outer', got {region!r}")


def cylinder_integral(p: Poly, spec: CylinderSpec, region: str = "outer") -> float:
    """Integral of p over the inner or outer heat cylinder of the spec.

    The rational part is exact; the only floating-point step is the final
    multiplication by the power of pi.
    """
    scale = _region_scale(spec, region)
    shifted = _centered(p, spec.center)
    exact = _cylinder_integral_exact(shifted, scale)
    return float(exact) * math.pi ** (spec.n // 2)


def ball_integral(
    p: Poly, radius: Number, center: Sequence[Number] = ()
) -> float:
    """Spatial-only integral of a t-free polynomial over B_radius(center)."""
    if not radius > 0:
        raise ValueError("radius must be positive")
    shifted = _centered(p, center)
    exact = _ball_integral_exact(shifted, Fraction(radius))
    return float(exact) * math.pi ** (p.n // 2)


def _squared_norm(polys: Sequence[Poly], n: int) -> Poly:
    out = Poly.zero(n)
    for q in polys:
        out = out + q * q
    return out


def _energy_integrands(u: Poly) -> dict[str, Poly]:
    n = u.n
    grad = gradient(u)
    hess = [partial(g, k) for g in grad for k in range(1, n + 1)]
    lap_grad = gradient(laplacian(u))
    ut = partial(u, "t")
    return {
        "e_u": u * u,
        "e_grad": _squared_norm(grad, n),
        "e_hess": _squared_norm(hess, n),
        "e_graddelta": _squared_norm(lap_grad, n),
        "e_ut": ut * ut,
        "e_gradut": _squared_norm(gradient(ut), n),
    }


def energy_bundle(u: Poly, spec: CylinderSpec) -> tuple[EnergyBundle, EnergyBundle]:
    """All six energies on the inner cylinder and on the outer cylinder.

    Raises if u is not bicaloric; the ratio statements only apply to exact
    solutions.
    """
    if heat_op(u):
        raise ValueError("input is not bicaloric")
    integrands = _energy_integrands(u)
    inner = EnergyBundle(
        **{k: cylinder_integral(q, spec, "inner") for k, q in integrands.items()}
    )
    outer = EnergyBundle(
        **{k: cylinder_integral(q, spec, "outer") for k, q in integrands.items()}
    )
    return inner, outer


def _denominator(outer: EnergyBundle, r: float) -> float:
    return outer.e_u + r * r * outer.e_grad


def rp_ratio(u: Poly, spec: CylinderSpec) -> float:
    """Combined reverse-Poincare ratio on one cylinder pair.

    Numerator: r^4 (inner Hessian energy + r^2 inner grad-Laplacian energy)
    plus r^8 (inner time-derivative energy + r^2 its gradient energy).
    Denominator: outer u^2 energy + r^2 outer gradient energy.  Bounded above
    uniformly in r for ancient polynomial solutions, with no curvature term
    in flat space.
    """
    if not u:
        raise ValueError("ratio undefined for the zero solution")
    inner, outer = energy_bundle(u, spec)
    r = float(spec.r)
    lhs = r**4 * (inner.e_hess + r**2 * inner.e_graddelta) + r**8 * (
        inner.e_ut + r**2 * inner.e_gradut
    )
    return lhs / _denominator(outer, r)


def rp_sublemma_ratios(
    u: Poly, spec: CylinderSpec
) -> tuple[float, float, float, float]:
    """The four individually weighted ratios sharing the combined denominator.

    Order: (r^4 Hessian, r^8 time derivative, r^6 grad-Laplacian,
    r^10 grad of time derivative).
    """
    if not u:
        raise ValueError("ratio undefined for the zero solution")
    inner, outer = energy_bundle(u, spec)
    r = float(spec.r)
    den = _denominator(outer, r)
    return (
        r**4 * inner.e_hess / den,
        r**8 * inner.e_ut / den,
        r**6 * inner.e_graddelta / den,
        r**10 * inner.e_gradut / den,
    )


def rp_biharmonic_ratio(
    u: Poly,
    r: Number,
    epsilon: Number,
    center: Sequence[Number] = (),
) -> float:
    """Spatial-only ratio for a time-independent biharmonic polynomial.

    A t-free biharmonic u is an ancient solution with all time slices equal,
    so the estimate collapses to a statement on balls: r^4 times the Hessian
    and (r^6-weighted) grad-Laplacian energies on the inner ball, against the
    u^2 and r^2-weighted gradient energies on the full ball.
    """
    if u.time_degree not in (NEG_INF, 0):
        raise ValueError("expected a t-free polynomial")
    if bilaplacian(u):
        raise ValueError("input is not biharmonic")
    if not u:
        raise ValueError("ratio undefined for the zero function")
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie strictly between 0 and 1")
    n = u.n
    grad = gradient(u)
    hess = [partial(g, k) for g in grad for k in range(1, n + 1)]
    hess_sq = _squared_norm(hess, n)
    gradlap_sq = _squared_norm(gradient(laplacian(u)), n)
    u_sq = u * u
    grad_sq = _squared_norm(grad, n)

    inner_r = Fraction(r) * Fraction(epsilon)
    outer_r = Fraction(r)
    rf = float(r)
    lhs = rf**4 * (
        ball_integral(hess_sq, inner_r, center)
        + rf**2 * ball_integral(gradlap_sq, inner_r, center)
    )
    rhs = ball_integral(u_sq, outer_r, center) + rf**2 * ball_integral(
        grad_sq, outer_r, center
    )
    return lhs / rhs
