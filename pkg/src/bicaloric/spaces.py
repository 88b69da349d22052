"""Bases, kernels, and dimension bookkeeping for graded polynomial spaces.

Two gradings are in play.  The space-homogeneous grade of degree j collects
the t-free monomials of spatial degree j (dimension C(j+n-1, n-1)).  The
biparabolic grade of degree d additionally admits t-powers weighted four at a
time, so it decomposes as the degree-d block, plus t times the degree-(d-4)
block, plus t^2 times the degree-(d-8) block, and so on.

On these grades the Laplacian drops the spatial degree by 2, the bilaplacian
by 4, and the heat operator d/dt + Laplacian^2 drops the biparabolic degree
by 4.  Their matrices in the monomial bases are exact integer matrices, and
every dimension statement here is checked two ways: a closed-form binomial
count, and the rank of the corresponding exact kernel computation.  Those two
paths are independent, and a disagreement raises rather than warns.

For degrees below 4 the fourth-order operators map into the zero space; the
convention here is that the codomain is the trivial space and the kernel is
the whole grade, which keeps the dimension formulas total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .linalg import RationalMatrix, kernel, rank
from .poly import Monomial, Poly, bilaplacian, heat_op, laplacian


class DimensionMismatchError(RuntimeError):
    """Closed-form dimension and exact kernel rank disagree (never expected)."""


@dataclass(frozen=True)
class SpaceBasis:
    """Ordered monomial basis of one grade.

    ``mode`` is "space" for the t-free homogeneous grade and "biparabolic"
    for the grade that includes t-powers.
    """

    n: int
    degree: int
    mode: str
    monomials: tuple[Monomial, ...]

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def poly(self, coords: Sequence[Fraction]) -> Poly:
        """Linear combination of the basis monomials with the given coordinates."""
        if len(coords) != self.dim:
            raise ValueError("coordinate length must equal the basis dimension")
        terms = {m: Fraction(c) for m, c in zip(self.monomials, coords)}
        return Poly(self.n, terms)


@dataclass(frozen=True)
class GradedKernel:
    """Exact basis of the solutions of one operator inside one grade.

    ``kind`` is "biharmonic" (bilaplacian kernel in a space-homogeneous grade)
    or "bicaloric" (heat-operator kernel in a biparabolic grade).
    """

    n: int
    degree: int
    kind: str
    basis: tuple[Poly, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def _exponent_vectors(n: int, total: int) -> Iterator[tuple[int, ...]]:
    # Descending lexicographic enumeration, matching the canonical term order.
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exponent_vectors(n - 1, total - first):
            yield (first,) + rest


def homogeneous_dim(n: int, degree: int) -> int:
    """dim of the t-free homogeneous grade: C(degree+n-1, n-1), 0 below zero."""
    if degree < 0:
        return 0
    return math.comb(degree + n - 1, n - 1)


def biparabolic_dim(n: int, degree: int) -> int:
    if degree < 0:
        return 0
    return sum(homogeneous_dim(n, degree - 4 * m) for m in range(degree // 4 + 1))


@lru_cache(maxsize=None)
def homogeneous_basis(n: int, degree: int) -> SpaceBasis:
    """All monomials of spatial degree exactly ``degree`` in n variables, no t."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if degree < 0:
        return SpaceBasis(n, degree, "space", ())
    monos = tuple(Monomial(e) for e in _exponent_vectors(n, degree))
    return SpaceBasis(n, degree, "space", monos)


@lru_cache(maxsize=None)
def biparabolic_basis(n: int, degree: int) -> SpaceBasis:
    """Monomial basis of the biparabolic grade: t^m blocks with m ascending."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    if degree < 0:
        return SpaceBasis(n, degree, "biparabolic", ())
    monos: list[Monomial] = []
    for m in range(degree // 4 + 1):
        for mono in homogeneous_basis(n, degree - 4 * m).monomials:
            monos.append(Monomial(mono.xexp, m))
    return SpaceBasis(n, degree, "biparabolic", tuple(monos))


def operator_matrix(
    op: Callable[[Poly], Poly], domain: SpaceBasis, codomain: SpaceBasis
) -> RationalMatrix:
    """Exact matrix of a linear operator between two monomial bases.

    Raises if the image of a domain monomial leaves the codomain grade.
    """
    if domain.n != codomain.n:
        raise ValueError("domain and codomain must share the dimension n")
    index = {mono: i for i, mono in enumerate(codomain.monomials)}
    nrows = codomain.dim
    data = [[Fraction(0)] * domain.dim for _ in range(nrows)]
    for col, mono in enumerate(domain.monomials):
        image = op(Poly.from_monomial(domain.n, mono))
        for m2, coef in image.terms.items():
            row = index.get(m2)
            if row is None:
                raise ValueError(
                    f"grade mismatch: image term {m2} not in the codomain basis"
                )
            data[row][col] = coef
    return RationalMatrix(nrows, domain.dim, data)


def laplacian_onto(n: int, degree: int) -> bool:
    """Whether the Laplacian maps the (degree+2)-grade onto the degree-grade."""
    mat = operator_matrix(
        laplacian, homogeneous_basis(n, degree + 2), homogeneous_basis(n, degree)
    )
    return rank(mat) == homogeneous_dim(n, degree)


def bilaplacian_onto(n: int, degree: int) -> bool:
    """Whether the bilaplacian maps the (degree+4)-grade onto the degree-grade."""
    mat = operator_matrix(
        bilaplacian, homogeneous_basis(n, degree + 4), homogeneous_basis(n, degree)
    )
    return rank(mat) == homogeneous_dim(n, degree)


def heat_op_onto(n: int, degree: int) -> bool:
    """Whether the heat operator maps biparabolic degree+4 onto degree."""
    mat = operator_matrix(
        heat_op, biparabolic_basis(n, degree + 4), biparabolic_basis(n, degree)
    )
    return rank(mat) == biparabolic_dim(n, degree)


@lru_cache(maxsize=None)
def biharmonic_kernel(n: int, degree: int) -> GradedKernel:
    """Basis of the homogeneous biharmonic polynomials of the given degree."""
    domain = homogeneous_basis(n, degree)
    codomain = homogeneous_basis(n, degree - 4)
    mat = operator_matrix(bilaplacian, domain, codomain)
    vectors = kernel(mat).vectors
    basis = tuple(domain.poly(v) for v in vectors)
    return GradedKernel(n, degree, "biharmonic", basis)


@lru_cache(maxsize=None)
def bicaloric_kernel(n: int, degree: int) -> GradedKernel:
    """Basis of the biparabolic-homogeneous solutions of d/dt u + Lap^2 u = 0."""
    domain = biparabolic_basis(n, degree)
    codomain = biparabolic_basis(n, degree - 4)
    mat = operator_matrix(heat_op, domain, codomain)
    vectors = kernel(mat).vectors
    basis = tuple(domain.poly(v) for v in vectors)
    return GradedKernel(n, degree, "bicaloric", basis)


def biharmonic_kernel_dim_formula(n: int, degree: int) -> int:
    """Closed-form kernel dimension: dim of grade d minus dim of grade d-4."""
    return homogeneous_dim(n, degree) - homogeneous_dim(n, degree - 4)


def biharmonic_space_dim(n: int, degree: int) -> int:
    """Dimension of the polynomially bounded biharmonic space at growth degree.

    Counts all biharmonic polynomials of degree <= ``degree``.  Computed from
    the closed formula (the top four homogeneous dimensions) and from summed
    exact kernel ranks; the two must agree.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    formula = sum(homogeneous_dim(n, degree - i) for i in range(4))
    oracle = sum(biharmonic_kernel(n, j).dim for j in range(degree + 1))
    if formula != oracle:
        raise DimensionMismatchError(
            f"biharmonic dimension mismatch at n={n}, degree={degree}: "
            f"formula {formula} vs kernel ranks {oracle}"
        )
    return formula


def bicaloric_space_dim(n: int, degree: int) -> int:
    """Dimension of the polynomially bounded bicaloric space at growth degree.

    Counts ancient solutions of d/dt u + Lap^2 u = 0 of biparabolic degree
    <= ``degree``; equals the full count of homogeneous spatial polynomials up
    to that degree.  Cross-checked against summed exact kernel ranks.
    """
    if degree < 0:
        raise ValueError("degree must be >= 0")
    formula = sum(homogeneous_dim(n, j) for j in range(degree + 1))
    oracle = sum(bicaloric_kernel(n, j).dim for j in range(degree + 1))
    if formula != oracle:
        raise DimensionMismatchError(
            f"bicaloric dimension mismatch at n={n}, degree={degree}: "
            f"formula {formula} vs kernel ranks {oracle}"
        )
    return formula


@dataclass(frozen=True)
class SharpnessReport:
    """Both sides of the dimension equality at growth scale 4k.

    ``lhs`` counts ancient bicaloric polynomials of biparabolic degree up to
    4k; ``terms`` lists the biharmonic space dimensions at degrees 4k, 4(k-1),
    ..., 4, 0 (the last entry is the constants, dimension 1) and ``rhs`` is
    their sum.  A successful run has ``equal`` true.
    """

    n: int
    k: int
    lhs: int
    rhs: int
    terms: tuple[int, ...]

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs


def sharpness_report(n: int, k: int) -> SharpnessReport:
    """Compare the bicaloric space dimension with the stacked biharmonic ones."""
    if k < 1:
        raise ValueError("k must be >= 1")
    lhs = bicaloric_space_dim(n, 4 * k)
    terms = tuple(biharmonic_space_dim(n, 4 * (k - i)) for i in range(k + 1))
    return SharpnessReport(n=n, k=k, lhs=lhs, rhs=sum(terms), terms=terms)
