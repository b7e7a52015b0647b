"""
Exact scalar layer: rationals, polynomials with rational coefficients and
eventually polynomial sequences indexed from 1.

Nothing in this module uses floating point. The only non-integer marker is
``NEG_INF``, the degree of the zero polynomial, which orders below every
integer so that "degree at most -1" reads as "identically zero".
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _AbstractRational
from typing import Sequence, Union

import sympy as sp

from .errors import DomainError

Rational = Fraction
RationalLike = Union[Fraction, int, str]

NEG_INF = -math.inf
"""Degree of the zero polynomial."""

NOT_POLYNOMIAL = math.inf
"""Degree reported for a sequence that agrees with no single polynomial."""

_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(/\d+)?")


def as_rational(value: RationalLike) -> Fraction:
    """
    Converts an integer, a fraction or a string "n/d" / "n" to a Fraction.

    Floats and booleans are rejected, since they would silently introduce
    binary rounding or truth values into exact arithmetic.

    Examples
    --------
    >>> as_rational("5/3")
    Fraction(5, 3)
    >>> as_rational(-2)
    Fraction(-2, 1)
    >>> as_rational(0.5)
    Traceback (most recent call last):
    ...
    pyquasiiso.errors.DomainError: not an exact rational: 0.5

    """
    if isinstance(value, (bool, float)):
        raise DomainError(f"not an exact rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_PATTERN.fullmatch(text):
            raise DomainError(f"not an exact rational: {value!r}")
        try:
            return Fraction(text)
        except ZeroDivisionError:
            raise DomainError(f"zero denominator: {value!r}") from None
    if isinstance(value, _AbstractRational):
        return Fraction(value.numerator, value.denominator)
    raise DomainError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Returns "n/d", or "n" for integers."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_degree(degree: Union[int, float]) -> str:
    """Renders a degree, including the two infinite markers."""
    if degree == NEG_INF:
        return "-inf"
    if degree == NOT_POLYNOMIAL:
        return "inf"
    return str(degree)


def alt_binomial_sum(values: Sequence[RationalLike]) -> Fraction:
    """
    Returns sum_{p=0}^{m} (-1)^p C(m, p) values[p], where m = len(values) - 1.

    For consecutive sequence terms s(n), ..., s(n+m) this equals
    (-1)^m (delta^m s)(n).

    Examples
    --------
    >>> alt_binomial_sum(["7/5", "9/5", "11/5"])
    Fraction(0, 1)
    >>> alt_binomial_sum([1, 0, 0])
    Fraction(1, 1)

    """
    if not values:
        raise DomainError("alternating binomial sum needs at least one value")
    m = len(values) - 1
    total = Fraction(0)
    for p, value in enumerate(values):
        term = math.comb(m, p) * as_rational(value)
        total += -term if p % 2 else term
    return total


@dataclass(frozen=True)
class Polynomial:
    """
    Polynomial with rational coefficients, stored lowest degree first.

    The representation is canonical: trailing zero coefficients are removed
    on construction, so the empty tuple is the zero polynomial and two
    polynomials are equal exactly when their coefficient tuples are.

    Examples
    --------
    >>> square = Polynomial([0, 0, 1])
    >>> square.compose_shift(2)
    Polynomial(4 + 4*j + j^2)
    >>> square.difference()
    Polynomial(1 + 2*j)
    >>> Polynomial([3, 0, 0]).degree
    0
    >>> Polynomial([]).degree
    -inf

    """

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coefficients = [as_rational(c) for c in self.coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        object.__setattr__(self, "coefficients", tuple(coefficients))

    @staticmethod
    def constant(value: RationalLike) -> Polynomial:
        return Polynomial((as_rational(value),))

    @property
    def degree(self) -> Union[int, float]:
        return len(self.coefficients) - 1 if self.coefficients else NEG_INF

    @property
    def leading(self) -> Fraction:
        """Leading coefficient; zero for the zero polynomial."""
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * x + c
        return result

    def __add__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(
            tuple(c + (b[n] if n < len(b) else 0) for n, c in enumerate(a))
        )

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: Polynomial) -> Polynomial:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if self.is_zero() or other.is_zero():
                return Polynomial()
            result = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for n, a in enumerate(self.coefficients):
                for l, b in enumerate(other.coefficients):
                    result[n + l] += a * b
            return Polynomial(result)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Polynomial(tuple(c * other for c in self.coefficients))
        return NotImplemented

    __rmul__ = __mul__

    def compose_shift(self, d: RationalLike) -> Polynomial:
        """Returns the polynomial x -> self(x + d)."""
        step = Polynomial((as_rational(d), 1))
        result = Polynomial()
        for c in reversed(self.coefficients):
            result = result * step + Polynomial((c,))
        return result

    def difference(self) -> Polynomial:
        """Returns the forward difference x -> self(x + 1) - self(x)."""
        return self.compose_shift(1) - self

    def derivative(self) -> Polynomial:
        return Polynomial(tuple(n * c for n, c in enumerate(self.coefficients))[1:])

    def real_root_brackets(self) -> list[tuple[Fraction, Fraction]]:
        """
        Returns rational intervals [a, b] of width below 1/2, one around each
        distinct real root, by exact isolation.

        Examples
        --------
        >>> Polynomial([-2, 0, 1]).real_root_brackets()[1][0] <= 1.5
        True
        >>> Polynomial([3]).real_root_brackets()
        []

        """
        if self.degree == NEG_INF or self.degree < 1:
            return []
        x = sp.Symbol("x")
        poly = sp.Poly(
            [sp.Rational(c.numerator, c.denominator) for c in reversed(self.coefficients)],
            x,
            domain=sp.QQ,
        )
        return [
            (Fraction(int(a.p), int(a.q)), Fraction(int(b.p), int(b.q)))
            for (a, b), _ in poly.intervals(eps=sp.Rational(1, 2))
        ]

    def integers_near_roots(self, start: int) -> list[int]:
        """
        Returns, in increasing order, the integers n >= start that lie within
        distance 1 of a real root: floor and ceiling of every root.
        """
        near = set()
        for a, b in self.real_root_brackets():
            near.update(range(math.floor(a), math.ceil(b) + 1))
        return sorted(n for n in near if n >= start)

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coefficients]

    def __str__(self) -> str:
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            magnitude = abs(c)
            if power == 0:
                body = format_rational(magnitude)
            else:
                var = "j" if power == 1 else f"j^{power}"
                body = var if magnitude == 1 else f"{format_rational(magnitude)}*{var}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        sign, body = terms[0]
        text = f"-{body}" if sign == "-" else body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _as_polynomial(tail) -> Polynomial:
    return tail if isinstance(tail, Polynomial) else Polynomial(tuple(tail))


@dataclass(frozen=True)
class EventuallyPolynomialSeq:
    """
    A sequence indexed by j = 1, 2, ... given by a finite prefix and a
    polynomial tail.

    ``seq(j) = prefix[j - 1]`` for ``1 <= j <= len(prefix)`` and
    ``seq(j) = tail(j)`` afterwards. This is how branch measures are
    described finitely, and every condition over all ``j`` reduces to a
    finite check on the prefix plus a polynomial identity on the tail.

    Examples
    --------
    >>> s = EventuallyPolynomialSeq([9, 9], [0, 0, 1])
    >>> print(s.at(1), s.at(3))
    9 9
    >>> s.shift(2)
    EventuallyPolynomialSeq([], 4 + 4*j + j^2)
    >>> EventuallyPolynomialSeq(["5/3"], [1]).delta()
    EventuallyPolynomialSeq([-2/3], 0)
    >>> EventuallyPolynomialSeq([1, 3], [-1, 2]).is_polynomial_of_degree_at_most(1)
    True

    """

    prefix: tuple[Fraction, ...] = ()
    tail: Polynomial = field(default_factory=Polynomial)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(as_rational(v) for v in self.prefix))
        object.__setattr__(self, "tail", _as_polynomial(self.tail))

    @staticmethod
    def constant(value: RationalLike) -> EventuallyPolynomialSeq:
        return EventuallyPolynomialSeq((), Polynomial.constant(value))

    @property
    def horizon(self) -> int:
        """Number of explicit prefix values; the tail applies beyond it."""
        return len(self.prefix)

    def at(self, j: int) -> Fraction:
        """Returns the value at index j >= 1."""
        if isinstance(j, bool) or not isinstance(j, int) or j < 1:
            raise DomainError(f"sequence index must be a positive integer, got {j!r}")
        if j <= len(self.prefix):
            return self.prefix[j - 1]
        return self.tail(j)

    __call__ = at

    def values(self, n: int, start: int = 1) -> list[Fraction]:
        """Returns the n consecutive values starting at index ``start``."""
        return [self.at(j) for j in range(start, start + n)]

    def shift(self, d: int) -> EventuallyPolynomialSeq:
        """Returns the sequence j -> self(j + d)."""
        if d < 0:
            raise DomainError(f"shift must be nonnegative, got {d}")
        return EventuallyPolynomialSeq(self.prefix[d:], self.tail.compose_shift(d))

    def delta(self, order: int = 1) -> EventuallyPolynomialSeq:
        """Returns the forward difference applied ``order`` times."""
        if order < 0:
            raise DomainError(f"difference order must be nonnegative, got {order}")
        seq = self
        for _ in range(order):
            seq = EventuallyPolynomialSeq(
                [seq.at(j + 1) - seq.at(j) for j in range(1, seq.horizon + 1)],
                seq.tail.difference(),
            )
        return seq

    def __add__(self, other: EventuallyPolynomialSeq) -> EventuallyPolynomialSeq:
        if not isinstance(other, EventuallyPolynomialSeq):
            return NotImplemented
        n = max(self.horizon, other.horizon)
        return EventuallyPolynomialSeq(
            [self.at(j) + other.at(j) for j in range(1, n + 1)],
            self.tail + other.tail,
        )

    def __mul__(self, scalar) -> EventuallyPolynomialSeq:
        if isinstance(scalar, bool) or not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return EventuallyPolynomialSeq(
            [v * scalar for v in self.prefix], self.tail * scalar
        )

    __rmul__ = __mul__

    def __neg__(self) -> EventuallyPolynomialSeq:
        return self * -1

    def __sub__(self, other: EventuallyPolynomialSeq) -> EventuallyPolynomialSeq:
        if not isinstance(other, EventuallyPolynomialSeq):
            return NotImplemented
        return self + (-other)

    def polynomial_degree(self) -> Union[int, float]:
        """
        Degree of the single polynomial the whole sequence agrees with.

        Returns ``NEG_INF`` for the zero sequence and ``NOT_POLYNOMIAL`` when
        some prefix value disagrees with the tail.
        """
        for j, value in enumerate(self.prefix, start=1):
            if value != self.tail(j):
                return NOT_POLYNOMIAL
        return self.tail.degree

    def is_polynomial_of_degree_at_most(self, d: int) -> bool:
        """True iff the sequence agrees with one polynomial of degree <= d."""
        return self.polynomial_degree() <= d

    def is_zero(self) -> bool:
        return self.polynomial_degree() == NEG_INF

    def __repr__(self) -> str:
        prefix = ", ".join(format_rational(v) for v in self.prefix)
        return f"EventuallyPolynomialSeq([{prefix}], {self.tail})"
