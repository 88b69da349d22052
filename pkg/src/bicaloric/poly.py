"""Exact sparse polynomial arithmetic in the spatial variables x1..xn and time t.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``)
throughout: every identity checked downstream is an exact integer or rational
identity, and a single rounded coefficient would silently corrupt kernel
ranks.  Floats only appear in the numerical cylinder checks, never here.

A polynomial is a sparse map from monomials to nonzero coefficients.  The
monomial t^m * x1^a1 * ... * xn^an has

* space degree        a1 + ... + an
* biparabolic degree  4*m + a1 + ... + an

reflecting the t ~ |x|^4 scaling of a fourth-order heat operator.  The degree
of the zero polynomial is ``NEG_INF``, keeping max-based degree formulas
total.

Variables are named x1..xn in text form and are 1-indexed in the public API
(``partial(p, 1)`` differentiates by x1); ``"t"`` selects the time variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

NEG_INF = float("-inf")

Scalar = Fraction | int


@dataclass(frozen=True)
class Monomial:
    """Exponent data of one term: spatial exponents plus a power of t."""

    xexp: tuple[int, ...]
    texp: int = 0

    def __post_init__(self) -> None:
        if self.texp < 0 or any(e < 0 for e in self.xexp):
            raise ValueError("monomial exponents must be nonnegative")

    @property
    def space_degree(self) -> int:
        return sum(self.xexp)

    @property
    def biparabolic_degree(self) -> int:
        return 4 * self.texp + sum(self.xexp)


def _term_key(m: Monomial) -> tuple:
    # Canonical term order: biparabolic degree descending, then t-power
    # ascending, then descending lexicographic on the spatial exponents.
    # Keeps biparabolic-homogeneous blocks contiguous and t-free terms first.
    return (-m.biparabolic_degree, m.texp, tuple(-e for e in m.xexp))


class Poly:
    """Sparse multivariate polynomial over the rationals in x1..xn and t.

    Instances are immutable values: all operations return new polynomials and
    never store zero coefficients, so ``==`` is canonical-form equality.
    """

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Monomial, Fraction] | None = None):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        clean: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            if len(mono.xexp) != n:
                raise ValueError(
                    f"monomial has {len(mono.xexp)} spatial exponents, expected {n}"
                )
            c = Fraction(coef)
            if c:
                clean[mono] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> Poly:
        return cls(n)

    @classmethod
    def constant(cls, n: int, c: Scalar) -> Poly:
        return cls(n, {Monomial((0,) * n): Fraction(c)})

    @classmethod
    def x(cls, n: int, k: int) -> Poly:
        """The coordinate polynomial xk, with 1 <= k <= n."""
        if not 1 <= k <= n:
            raise ValueError(f"variable index {k} out of range 1..{n}")
        exp = tuple(1 if i == k - 1 else 0 for i in range(n))
        return cls(n, {Monomial(exp): Fraction(1)})

    @classmethod
    def t(cls, n: int) -> Poly:
        return cls(n, {Monomial((0,) * n, 1): Fraction(1)})

    @classmethod
    def from_monomial(cls, n: int, mono: Monomial, coef: Scalar = 1) -> Poly:
        return cls(n, {mono: Fraction(coef)})

    # -- ring operations ---------------------------------------------------

    def _check_same_space(self, other: Poly) -> None:
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_space(other)
        terms = dict(self.terms)
        for mono, coef in other.terms.items():
            terms[mono] = terms.get(mono, Fraction(0)) + coef
        return Poly(self.n, terms)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-other if isinstance(other, Poly) else -Fraction(other))

    def __rsub__(self, other: Scalar) -> Poly:
        return -self + Fraction(other)

    def __mul__(self, other: Poly | Scalar) -> Poly:
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(self.n, {m: c * v for m, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_same_space(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = Monomial(
                    tuple(a + b for a, b in zip(m1.xexp, m2.xexp)),
                    m1.texp + m2.texp,
                )
                terms[prod] = terms.get(prod, Fraction(0)) + c1 * c2
        return Poly(self.n, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(self.n, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.n, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"Poly({self.n}, {render(self)!r})"

    # -- degrees -----------------------------------------------------------

    @property
    def space_degree(self) -> int | float:
        return max((m.space_degree for m in self.terms), default=NEG_INF)

    @property
    def biparabolic_degree(self) -> int | float:
        return max((m.biparabolic_degree for m in self.terms), default=NEG_INF)

    @property
    def time_degree(self) -> int | float:
        return max((m.texp for m in self.terms), default=NEG_INF)

    # -- structure ---------------------------------------------------------

    def homogeneous_component(self, j: int, mode: str = "space") -> Poly:
        """Sum of the terms of degree exactly j in the given grading.

        ``mode`` is "space" (spatial degree, t ignored) or "biparabolic".
        Summing over all j reconstitutes the polynomial.
        """
        if mode == "space":
            deg = lambda m: m.space_degree
        elif mode == "biparabolic":
            deg = lambda m: m.biparabolic_degree
        else:
            raise ValueError(f"unknown grading mode {mode!r}")
        return Poly(self.n, {m: c for m, c in self.terms.items() if deg(m) == j})

    def sorted_terms(self) -> Iterator[tuple[Monomial, Fraction]]:
        """Terms in canonical order (highest biparabolic degree first)."""
        for mono in sorted(self.terms, key=_term_key):
            yield mono, self.terms[mono]

    def times_t(self, m: int = 1) -> Poly:
        """Multiply by t^m."""
        if m < 0:
            raise ValueError("t power must be nonnegative")
        return Poly(
            self.n,
            {Monomial(mono.xexp, mono.texp + m): c for mono, c in self.terms.items()},
        )

    def substitute_t(self, value: Scalar) -> Poly:
        """Evaluate the time variable at a rational value; result is t-free."""
        v = Fraction(value)
        terms: dict[Monomial, Fraction] = {}
        for mono, coef in self.terms.items():
            key = Monomial(mono.xexp)
            terms[key] = terms.get(key, Fraction(0)) + coef * v**mono.texp
        return Poly(self.n, terms)

    def parabolic_scale(self, lam: Scalar) -> Poly:
        """The rescaled polynomial u(lam*x, lam^4*t)."""
        s = Fraction(lam)
        return Poly(
            self.n,
            {m: c * s**m.biparabolic_degree for m, c in self.terms.items()},
        )

    def translate(self, offsets: Iterable[Scalar]) -> Poly:
        """The shifted polynomial p(x + c, t) for a rational offset vector c."""
        offs = [Fraction(c) for c in offsets]
        if len(offs) != self.n:
            raise ValueError("offset vector length must equal the dimension")
        out = Poly.zero(self.n)
        for mono, coef in self.terms.items():
            piece = Poly.constant(self.n, coef).times_t(mono.texp)
            for i, a in enumerate(mono.xexp):
                if a:
                    piece = piece * (Poly.x(self.n, i + 1) + offs[i]) ** a
            out = out + piece
        return out

    def evaluate(self, point: Iterable[Scalar], tval: Scalar = 0) -> Fraction:
        """Exact evaluation at a rational space-time point."""
        xs = [Fraction(v) for v in point]
        if len(xs) != self.n:
            raise ValueError("point length must equal the dimension")
        tv = Fraction(tval)
        total = Fraction(0)
        for mono, coef in self.terms.items():
            term = coef * tv**mono.texp
            for x, e in zip(xs, mono.xexp):
                if e:
                    term *= x**e
            total += term
        return total


# -- differential operators ------------------------------------------------


def partial(p: Poly, var: int | str) -> Poly:
    """Formal partial derivative by x_var (1-indexed) or by "t"."""
    if var == "t":
        terms = {
            Monomial(m.xexp, m.texp - 1): c * m.texp
            for m, c in p.terms.items()
            if m.texp
        }
        return Poly(p.n, terms)
    if not isinstance(var, int) or not 1 <= var <= p.n:
        raise ValueError(f"variable must be 1..{p.n} or 't', got {var!r}")
    i = var - 1
    terms = {}
    for m, c in p.terms.items():
        e = m.xexp[i]
        if e:
            lowered = m.xexp[:i] + (e - 1,) + m.xexp[i + 1 :]
            terms[Monomial(lowered, m.texp)] = c * e
    return Poly(p.n, terms)


def gradient(p: Poly) -> tuple[Poly, ...]:
    """Spatial gradient (no t-component)."""
    return tuple(partial(p, k) for k in range(1, p.n + 1))


def laplacian(p: Poly) -> Poly:
    out = Poly.zero(p.n)
    for k in range(1, p.n + 1):
        out = out + partial(partial(p, k), k)
    return out


def bilaplacian(p: Poly) -> Poly:
    return laplacian(laplacian(p))


def heat_op(p: Poly) -> Poly:
    """d/dt + Laplacian^2; its exact kernel is the bicaloric polynomials."""
    return partial(p, "t") + bilaplacian(p)


def growth_degrees(p: Poly) -> tuple[int | float, int | float]:
    """Biparabolic degrees (d, d') of p and of its spatial gradient.

    For polynomials these are the growth exponents on heat cylinders: the sup
    of a degree-D biparabolic-homogeneous polynomial over B_R x [-R^4, 0]
    grows like R^D.  The zero polynomial reports NEG_INF in each slot.
    """
    d = p.biparabolic_degree
    dprime = max((g.biparabolic_degree for g in gradient(p)), default=NEG_INF)
    return d, dprime


# -- text form ---------------------------------------------------------------


class PolyParseError(ValueError):
    """Syntax or range error in polynomial text, with a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|(x\d+)|(t)|([+\-*/^]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            bad = len(text) - len(text[pos:].lstrip())
            raise PolyParseError(f"unexpected character {text[bad]!r}", bad)
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("var", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("t", "t", m.start(3)))
        else:
            tokens.append((m.group(4), m.group(4), m.start(4)))
        pos = m.end()
    return tokens


def parse(text: str, n: int) -> Poly:
    """Parse polynomial text over x1..xn and t.

    Grammar: terms separated by + or -; a term is an optional rational
    coefficient (``int`` or ``int/int``) followed by optional ``*``-separated
    factors ``xK`` / ``t``, each optionally raised with ``^int``.  Whitespace
    is insignificant.  Examples: ``x1^4 - 24*t``, ``1/2*x1*x2^3 + 7``.
    """
    tokens = _tokenize(text)
    length = len(tokens)
    idx = 0

    def peek() -> tuple[str, str, int] | None:
        return tokens[idx] if idx < length else None

    def take() -> tuple[str, str, int]:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_exponent(default: int = 1) -> int:
        nonlocal idx
        tok = peek()
        if tok is not None and tok[0] == "^":
            take()
            num = peek()
            if num is None or num[0] != "int":
                raise PolyParseError("expected integer exponent after '^'",
                                     tok[2] + 1)
            take()
            return int(num[1])
        return default

    def parse_factor(xexp: list[int], texp: list[int]) -> None:
        tok = take()
        if tok[0] == "var":
            k = int(tok[1][1:])
            if not 1 <= k <= n:
                raise PolyParseError(f"variable {tok[1]} out of range 1..{n}",
                                     tok[2])
            xexp[k - 1] += parse_exponent()
        elif tok[0] == "t":
            texp[0] += parse_exponent()
        else:
            raise PolyParseError("expected a variable factor", tok[2])

    terms: dict[Monomial, Fraction] = {}
    if length == 0:
        raise PolyParseError("empty polynomial text", 0)

    while idx < length:
        sign = Fraction(1)
        tok = peek()
        if tok[0] in "+-":
            take()
            if tok[0] == "-":
                sign = Fraction(-1)
            if peek() is None:
                raise PolyParseError("dangling sign", tok[2])
        coef = sign
        xexp = [0] * n
        texp = [0]
        saw_factor = False

        tok = peek()
        if tok is not None and tok[0] == "int":
            take()
            numer = int(tok[1])
            denom = 1
            nxt = peek()
            if nxt is not None and nxt[0] == "/":
                take()
                dtok = peek()
                if dtok is None or dtok[0] != "int":
                    raise PolyParseError("expected integer denominator", nxt[2] + 1)
                take()
                denom = int(dtok[1])
                if denom == 0:
                    raise PolyParseError("zero denominator", dtok[2])
            coef *= Fraction(numer, denom)
            nxt = peek()
            if nxt is not None and nxt[0] == "*":
                take()
                parse_factor(xexp, texp)
                saw_factor = True
            elif nxt is not None and nxt[0] in ("var", "t"):
                parse_factor(xexp, texp)
                saw_factor = True
        elif tok is not None and tok[0] in ("var", "t"):
            parse_factor(xexp, texp)
            saw_factor = True
        else:
            pos = tok[2] if tok is not None else len(text)
            raise PolyParseError("expected a term", pos)

        while saw_factor:
            nxt = peek()
            if nxt is not None and nxt[0] == "*":
                take()
                parse_factor(xexp, texp)
            else:
                break

        mono = Monomial(tuple(xexp), texp[0])
        terms[mono] = terms.get(mono, Fraction(0)) + coef

        nxt = peek()
        if nxt is not None and nxt[0] not in "+-":
            raise PolyParseError("expected '+' or '-' between terms", nxt[2])

    return Poly(n, terms)


def render(p: Poly) -> str:
    """Canonical text form; ``parse(render(p), p.n) == p`` for every p."""
    if not p.terms:
        return "0"
    pieces = []
    for mono, coef in p.sorted_terms():
        factors = []
        if mono.texp:
            factors.append("t" if mono.texp == 1 else f"t^{mono.texp}")
        for i, e in enumerate(mono.xexp, start=1):
            if e:
                factors.append(f"x{i}" if e == 1 else f"x{i}^{e}")
        mag = abs(coef)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        pieces.append(("-" if coef < 0 else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
