"""Exact polynomial algebra in three variables over the rationals.

Polynomials are sparse dictionaries mapping exponent triples (a, b, c) to
``fractions.Fraction`` coefficients, so every computation in the package is
exact.  The module also provides quasi-homogeneous weight systems: a weight
system assigns positive integer weights (w1, w2, w3) to (x, y, z) and grades
monomials by w1*a + w2*b + w3*c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Union

Exponents = tuple[int, int, int]
ScalarLike = Union["Fraction", int]

VARIABLE_NAMES = ("x", "y", "z")


class PolyParseError(ValueError):
    """Raised when a polynomial expression cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class WeightInferenceError(ValueError):
    """Raised when no unique primitive weight system fits a polynomial."""


def _as_fraction(value: ScalarLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an integer or Fraction, got {type(value).__name__}")


def monomial_key(exponents: Exponents) -> tuple[int, tuple[int, int, int]]:
    """Total-degree-then-reverse-lexicographic sort key for monomials.

    Orders first by total degree, then by exponents of x, y, z descending,
    so e.g. 1 < x < y < z < x^2 < x*y < x*z < y^2 < ...
    """
    a, b, c = exponents
    return (a + b + c, (-a, -b, -c))


class Poly:
    """Immutable sparse polynomial in x, y, z with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Exponents, ScalarLike]] = None):
        cleaned: dict[Exponents, Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                frac = _as_fraction(coeff)
                if frac:
                    a, b, c = exps
                    if a < 0 or b < 0 or c < 0:
                        raise ValueError(f"negative exponent in monomial {exps}")
                    cleaned[(a, b, c)] = frac
        self._terms = cleaned
        self._hash: Optional[int] = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls({(0, 0, 0): 1})

    @classmethod
    def constant(cls, value: ScalarLike) -> "Poly":
        return cls({(0, 0, 0): value})

    @classmethod
    def variable(cls, index: int) -> "Poly":
        exps = [0, 0, 0]
        exps[index] = 1
        return cls({tuple(exps): 1})

    @classmethod
    def monomial(cls, exponents: Exponents, coeff: ScalarLike = 1) -> "Poly":
        return cls({exponents: coeff})

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponents: Exponents) -> Fraction:
        return self._terms.get(tuple(exponents), Fraction(0))

    def exponents(self) -> list[Exponents]:
        """Exponent triples in canonical (degree, revlex) order."""
        return sorted(self._terms, key=monomial_key)

    def items(self) -> list[tuple[Exponents, Fraction]]:
        """(exponents, coefficient) pairs in canonical order."""
        return [(e, self._terms[e]) for e in self.exponents()]

    def total_degree(self) -> Optional[int]:
        if not self._terms:
            return None
        return max(a + b + c for (a, b, c) in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0, 0, 0), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._terms:
            return other
        if not other._terms:
            return self
        terms = dict(self._terms)
        for exps, coeff in other._terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = coeff
            else:
                acc = acc + coeff
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        result = Poly.__new__(Poly)
        result._terms = terms
        result._hash = None
        return result

    def __neg__(self) -> "Poly":
        result = Poly.__new__(Poly)
        result._terms = {e: -c for e, c in self._terms.items()}
        result._hash = None
        return result

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Poly", ScalarLike]) -> "Poly":
        if isinstance(other, Poly):
            if not self._terms or not other._terms:
                return Poly.zero()
            terms: dict[Exponents, Fraction] = {}
            for (a1, b1, c1), f1 in self._terms.items():
                for (a2, b2, c2), f2 in other._terms.items():
                    exps = (a1 + a2, b1 + b2, c1 + c2)
                    acc = terms.get(exps)
                    prod = f1 * f2
                    if acc is None:
                        terms[exps] = prod
                    else:
                        acc = acc + prod
                        if acc:
                            terms[exps] = acc
                        else:
                            del terms[exps]
            result = Poly.__new__(Poly)
            result._terms = terms
            result._hash = None
            return result
        if isinstance(other, (int, Fraction)):
            frac = _as_fraction(other)
            if not frac:
                return Poly.zero()
            result = Poly.__new__(Poly)
            result._terms = {e: c * frac for e, c in self._terms.items()}
            result._hash = None
            return result
        return NotImplemented

    def __rmul__(self, other: ScalarLike) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial powers take nonnegative integer exponents")
        result = Poly.one()
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def diff(self, index: int) -> "Poly":
        """Partial derivative with respect to x (0), y (1) or z (2)."""
        terms: dict[Exponents, Fraction] = {}
        for exps, coeff in self._terms.items():
            e = exps[index]
            if e:
                lowered = list(exps)
                lowered[index] = e - 1
                terms[tuple(lowered)] = coeff * e
        result = Poly.__new__(Poly)
        result._terms = terms
        result._hash = None
        return result

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self) -> str:
        return poly_str(self)

    def __repr__(self) -> str:
        return f"Poly({poly_str(self)!r})"


X = Poly.variable(0)
Y = Poly.variable(1)
Z = Poly.variable(2)
VARIABLE_POLYS = (X, Y, Z)


# -- printing ---------------------------------------------------------------


def _monomial_str(exponents: Exponents) -> str:
    factors = []
    for name, e in zip(VARIABLE_NAMES, exponents):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


def poly_str(p: Poly) -> str:
    """Render a polynomial in the grammar accepted by :func:`parse_poly`."""
    if p.is_zero():
        return "0"
    pieces: list[str] = []
    for exps, coeff in p.items():
        mono = _monomial_str(exps)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(pieces)


# -- parsing ----------------------------------------------------------------

_TOKEN_CHARS = {"+", "-", "*", "^", "/", "(", ")"}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into (kind, value, position) tokens; kinds: int, name, op."""
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in _TOKEN_CHARS:
            tokens.append(("op", ch, i))
            i += 1
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    """Recursive-descent parser for +, -, *, ^ over x, y, z and rationals.

    Implicit multiplication is rejected: "2x" is an error, "2*x" is required.
    Exponents must be nonnegative integer literals.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def advance(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise PolyParseError("unexpected end of expression", len(self.text))
        self.pos += 1
        return token

    def parse(self) -> Poly:
        result = self.expression()
        token = self.peek()
        if token is not None:
            raise PolyParseError(f"unexpected token {token[1]!r}", token[2])
        return result

    def expression(self) -> Poly:
        sign = 1
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] in "+-":
            self.advance()
            sign = -1 if token[1] == "-" else 1
        result = self.term() * sign
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] not in "+-":
                return result
            self.advance()
            term = self.term()
            result = result + (term if token[1] == "+" else -term)

    def term(self) -> Poly:
        result = self.factor()
        while True:
            token = self.peek()
            if token is None or token[0] != "op" or token[1] != "*":
                self._reject_implicit_multiplication()
                return result
            self.advance()
            result = result * self.factor()

    def _reject_implicit_multiplication(self) -> None:
        token = self.peek()
        if token is not None and (token[0] in ("int", "name") or token[1] == "("):
            raise PolyParseError(
                "implicit multiplication is not allowed; write '*' explicitly",
                token[2],
            )

    def factor(self) -> Poly:
        base = self.atom()
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] == "^":
            self.advance()
            exp_token = self.advance()
            if exp_token[0] != "int":
                raise PolyParseError(
                    "'^' takes a nonnegative integer exponent", exp_token[2]
                )
            return base ** int(exp_token[1])
        return base

    def atom(self) -> Poly:
        token = self.advance()
        kind, value, position = token
        if kind == "int":
            numerator = int(value)
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.advance()
                den_token = self.advance()
                if den_token[0] != "int":
                    raise PolyParseError(
                        "expected an integer denominator after '/'", den_token[2]
                    )
                denominator = int(den_token[1])
                if denominator == 0:
                    raise PolyParseError("zero denominator in rational literal",
                                         den_token[2])
                return Poly.constant(Fraction(numerator, denominator))
            return Poly.constant(numerator)
        if kind == "name":
            if value in VARIABLE_NAMES:
                return VARIABLE_POLYS[VARIABLE_NAMES.index(value)]
            raise PolyParseError(
                f"unknown symbol {value!r}; variables are x, y, z", position
            )
        if kind == "op" and value == "(":
            inner = self.expression()
            closing = self.advance()
            if closing[0] != "op" or closing[1] != ")":
                raise PolyParseError("expected ')'", closing[2])
            return inner
        raise PolyParseError(f"unexpected token {value!r}", position)


def parse_poly(text: str) -> Poly:
    """Parse a polynomial from text.

    Grammar: variables x, y, z; integer and p/q rational literals; operators
    +, -, * and ^ (with nonnegative integer exponents); parentheses; unary
    minus.  Whitespace is insignificant and implicit multiplication is not
    allowed.
    """
    return _Parser(text).parse()


# -- weight systems ----------------------------------------------------------


@dataclass(frozen=True)
class WeightSystem:
    """Positive integer weights for (x, y, z) with gcd 1."""

    weights: tuple[int, int, int]

    def __post_init__(self):
        if len(self.weights) != 3:
            raise ValueError("a weight system needs exactly three weights")
        if any((not isinstance(w, int)) or w <= 0 for w in self.weights):
            raise ValueError(f"weights must be positive integers, got {self.weights}")
        if math.gcd(*self.weights) != 1:
            raise ValueError(f"weights must have gcd 1, got {self.weights}")

    @property
    def total(self) -> int:
        """Sum of the three variable weights."""
        return sum(self.weights)

    def monomial_weight(self, exponents: Exponents) -> int:
        a, b, c = exponents
        w1, w2, w3 = self.weights
        return a * w1 + b * w2 + c * w3

    def __str__(self) -> str:
        return ",".join(str(w) for w in self.weights)


def weighted_degree(p: Poly, weights: WeightSystem) -> Optional[int]:
    """Weighted degree of a weight-homogeneous polynomial, else None.

    Returns None both for the zero polynomial and for inhomogeneous input.
    """
    degree: Optional[int] = None
    for exps in p.exponents():
        w = weights.monomial_weight(exps)
        if degree is None:
            degree = w
        elif degree != w:
            return None
    return degree


def weight_parts(p: Poly, weights: WeightSystem) -> dict[int, Poly]:
    """Split a polynomial into its weight-homogeneous parts."""
    buckets: dict[int, dict[Exponents, Fraction]] = {}
    for exps, coeff in p.items():
        buckets.setdefault(weights.monomial_weight(exps), {})[exps] = coeff
    return {w: Poly(terms) for w, terms in sorted(buckets.items())}


def euler_apply(p: Poly, weights: WeightSystem) -> Poly:
    """Apply the weighted Euler vector field w1*x*d/dx + w2*y*d/dy + w3*z*d/dz.

    On a monomial this multiplies by its weight, so a weight-homogeneous
    polynomial of weight d is an eigenvector with eigenvalue d.
    """
    terms: dict[Exponents, Fraction] = {}
    for exps, coeff in p.items():
        w = weights.monomial_weight(exps)
        if w:
            terms[exps] = coeff * w
    return Poly(terms)


def infer_weights(p: Poly, bound: int = 64) -> WeightSystem:
    """Find the unique primitive weight system making ``p`` homogeneous.

    Searches positive integer triples with entries at most ``bound`` and
    gcd 1.  Raises WeightInferenceError if none fits or if more than one
    does (e.g. for a single monomial, which every weight system grades
    homogeneously).
    """
    if p.is_zero():
        raise WeightInferenceError("cannot infer weights for the zero polynomial")
    exps = p.exponents()
    base = exps[0]
    constraints: list[Exponents] = []
    for e in exps[1:]:
        delta = (e[0] - base[0], e[1] - base[1], e[2] - base[2])
        if delta != (0, 0, 0):
            constraints.append(delta)
    pinned = [c for c in constraints if c[2] != 0]
    solutions: list[tuple[int, int, int]] = []
    for w1 in range(1, bound + 1):
        for w2 in range(1, bound + 1):
            if pinned:
                c1, c2, c3 = pinned[0]
                numerator = -(c1 * w1 + c2 * w2)
                if numerator % c3 != 0:
                    continue
                w3 = numerator // c3
                if not 1 <= w3 <= bound:
                    continue
                candidates: Iterable[int] = (w3,)
            else:
                candidates = range(1, bound + 1)
            for w3 in candidates:
                if math.gcd(w1, w2, w3) != 1:
                    continue
                if all(c[0] * w1 + c[1] * w2 + c[2] * w3 == 0 for c in constraints):
                    solutions.append((w1, w2, w3))
                    if len(solutions) > 1:
                        raise WeightInferenceError(
                            "ambiguous weight system: at least "
                            f"{solutions[0]} and {solutions[1]} both fit"
                        )
    if not solutions:
        raise WeightInferenceError(
            f"no positive weight system with entries <= {bound} fits"
        )
    return WeightSystem(solutions[0])
