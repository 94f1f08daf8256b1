"""Exact scalars, dense univariate polynomials and normalized rational functions.

Every other module computes on top of these three types:

- ``Rat`` is ``fractions.Fraction`` (always reduced, positive denominator).
- ``Poly`` is an immutable dense coefficient tuple, index i = coefficient of var^i.
- ``RatFunc`` is a quotient of two ``Poly`` kept in canonical form
  (gcd-reduced, monic denominator), so equality of values is structural equality.
"""
import math
import re
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .errors import ClosureError, RationalParseError, ZeroDenominatorError

Rat = Fraction
Scalar = Union[int, Fraction]

_RAT_LITERAL = re.compile(r"(-?)(\d+)(?:/(\d+))?")


def parse_rat(text: str) -> Fraction:
    """Parse the rational literal format: optional '-', integer, optional '/positive integer'."""
    match = _RAT_LITERAL.fullmatch(text.strip()) if isinstance(text, str) else None
    if match is None:
        raise RationalParseError(str(text))
    sign, num, den = match.groups()
    if den is not None and int(den) == 0:
        raise RationalParseError(text)
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign else value


def format_rat(value: Scalar) -> str:
    return str(Fraction(value))


def binomial(n: int, k: int) -> Fraction:
    """C(n, k) as an integer-valued Rat; 0 when k > n."""
    if n < 0 or k < 0:
        raise ValueError(f"binomial needs nonnegative arguments, got ({n}, {k})")
    if k > n:
        return Fraction(0)
    return Fraction(math.comb(n, k))


class Poly:
    """Dense polynomial over Rat. Trailing zeros are stripped; the zero polynomial is ()."""

    __slots__ = ("_coeffs", "_var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "x"):
        values = [Fraction(c) for c in coeffs]
        while values and values[-1] == 0:
            values.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(values)
        self._var = var

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, var: str = "x") -> "Poly":
        return cls([value], var)

    @classmethod
    def monomial(cls, coefficient: Scalar, power: int, var: str = "x") -> "Poly":
        return cls([0] * power + [coefficient], var)

    @classmethod
    def variable(cls, var: str = "x") -> "Poly":
        return cls([0, 1], var)

    # ------------------------------------------------------------------
    # Shape
    # ------------------------------------------------------------------

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def var(self) -> str:
        return self._var

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial."""
        return len(self._coeffs) - 1 if self._coeffs else None

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return len(self._coeffs) <= 1

    def coefficient(self, power: int) -> Fraction:
        return self._coeffs[power] if 0 <= power < len(self._coeffs) else Fraction(0)

    def with_var(self, var: str) -> "Poly":
        return Poly(self._coeffs, var)

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self._var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self._coeffs), len(other._coeffs))
        return Poly(
            (self.coefficient(i) + other.coefficient(i) for i in range(size)), self._var
        )

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly((-c for c in self._coeffs), self._var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, RatFunc):
            return NotImplemented
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Poly((), self._var)
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] += a * b
        return Poly(out, self._var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDenominatorError("polynomial divided by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, Poly):
            return RatFunc(self, other)
        return NotImplemented

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = Poly.constant(1, self._var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Scalar) -> "Poly":
        factor = Fraction(factor)
        return Poly((c * factor for c in self._coeffs), self._var)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if isinstance(other, RatFunc):
            return other == self
        if not isinstance(other, Poly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    # ------------------------------------------------------------------
    # Evaluation and substitution
    # ------------------------------------------------------------------

    def eval(self, point: Scalar) -> Fraction:
        """Horner evaluation at a rational point."""
        point = Fraction(point)
        acc = Fraction(0)
        for c in reversed(self._coeffs):
            acc = acc * point + c
        return acc

    __call__ = eval

    def compose_linear(self, factor: Scalar) -> "Poly":
        """Substitute var -> factor*var."""
        factor = Fraction(factor)
        power = Fraction(1)
        out = []
        for c in self._coeffs:
            out.append(c * power)
            power *= factor
        return Poly(out, self._var)

    def compose(self, inner: "Poly") -> "Poly":
        """Substitute var -> inner (Horner over polynomials)."""
        acc = Poly((), inner.var)
        for c in reversed(self._coeffs):
            acc = acc * inner + c
        return acc

    def derivative(self) -> "Poly":
        return Poly((i * c for i, c in enumerate(self._coeffs) if i > 0), self._var)

    # ------------------------------------------------------------------
    # Division
    # ------------------------------------------------------------------

    def divmod(self, divisor: "Poly") -> Tuple["Poly", "Poly"]:
        if divisor.is_zero():
            raise ZeroDenominatorError("polynomial division by the zero polynomial")
        remainder = list(self._coeffs)
        dd = len(divisor._coeffs) - 1
        lead = divisor.leading
        quotient = [Fraction(0)] * max(len(remainder) - dd, 0)
        while len(remainder) - 1 >= dd and remainder:
            shift = len(remainder) - 1 - dd
            factor = remainder[-1] / lead
            quotient[shift] = factor
            for i, c in enumerate(divisor._coeffs):
                remainder[i + shift] -= factor * c
            remainder.pop()
            while remainder and remainder[-1] == 0:
                remainder.pop()
        return Poly(quotient, self._var), Poly(remainder, self._var)

    def exact_div(self, divisor: "Poly") -> "Poly":
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise ClosureError(
                f"({self.to_text()}) is not divisible by ({divisor.to_text()}); "
                f"remainder {remainder.to_text()}"
            )
        return quotient

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(Fraction(1) / self.leading)

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def to_text(self, var: Optional[str] = None) -> str:
        """Sparse ascending form: '1 + 1*a^1', constant term without a power."""
        var = var or self._var
        terms = []
        for power, c in enumerate(self._coeffs):
            if c == 0:
                continue
            terms.append(format_rat(c) if power == 0 else f"{format_rat(c)}*{var}^{power}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Poly({self.to_text()})"


def parse_poly_text(text: str, var: str = "x") -> Poly:
    """Inverse of Poly.to_text."""
    text = text.strip()
    if text == "0":
        return Poly((), var)
    coeffs: dict = {}
    for term in text.split(" + "):
        if "*" in term:
            c_text, power_text = term.split("*", 1)
            name, _, power = power_text.partition("^")
            if name != var or not power.isdigit():
                raise RationalParseError(term)
            power = int(power)
        else:
            c_text, power = term, 0
        if power in coeffs:
            raise RationalParseError(term)
        coeffs[power] = parse_rat(c_text)
    top = max(coeffs)
    return Poly((coeffs.get(i, 0) for i in range(top + 1)), var)


# ----------------------------------------------------------------------
# Polynomial gcd: primitive (fraction-free) remainder sequence
# ----------------------------------------------------------------------


def _integer_primitive(coeffs: Sequence[Fraction]) -> List[int]:
    if not coeffs:
        return []
    lcm = reduce(lambda acc, c: acc * c.denominator // math.gcd(acc, c.denominator), coeffs, 1)
    ints = [int(c * lcm) for c in coeffs]
    content = reduce(math.gcd, ints, 0)
    ints = [v // content for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return ints


def _pseudo_remainder(a: List[int], b: List[int]) -> List[int]:
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic gcd of p and q; the zero polynomial only when both are zero."""
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    a = _integer_primitive(p.coeffs)
    b = _integer_primitive(q.coeffs)
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return Poly.constant(1, p.var)
        r = _pseudo_remainder(a, b)
        a, b = b, _integer_primitive([Fraction(v) for v in r])
    return Poly(a, p.var).monic()


def poly_arith(op: str, lhs: Poly, rhs: Union[Poly, Scalar]):
    """Dispatcher over the polynomial operations exposed to callers."""
    if op == "add":
        return lhs + rhs
    if op == "mul":
        return lhs * rhs
    if op == "scale":
        return lhs.scale(rhs)
    if op == "eval":
        return lhs.eval(rhs)
    if op == "compose_linear":
        return lhs.compose_linear(rhs)
    raise ValueError(f"unknown polynomial operation {op!r}")


# ----------------------------------------------------------------------
# Rational functions
# ----------------------------------------------------------------------


class RatFunc:
    """num/den in canonical form: gcd(num, den) = 1 and den monic."""

    __slots__ = ("_num", "_den")

    def __init__(self, num: Union[Poly, Scalar], den: Union[Poly, Scalar, None] = None):
        var = num.var if isinstance(num, Poly) else (den.var if isinstance(den, Poly) else "x")
        if not isinstance(num, Poly):
            num = Poly.constant(num, var)
        if den is None:
            den = Poly.constant(1, var)
        elif not isinstance(den, Poly):
            den = Poly.constant(den, var)
        self._num, self._den = _canonicalize(num, den)

    @classmethod
    def _from_canonical(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj._num = num
        obj._den = den
        return obj

    @property
    def num(self) -> Poly:
        return self._num

    @property
    def den(self) -> Poly:
        return self._den

    @property
    def var(self) -> str:
        return self._num.var

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def is_polynomial(self) -> bool:
        return self._den.is_constant()

    def to_poly(self) -> Poly:
        if not self.is_polynomial():
            raise ClosureError(f"{self.to_text()} is not a polynomial")
        return self._num

    # ------------------------------------------------------------------
    # Field operations
    # ------------------------------------------------------------------

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc._from_canonical(other, Poly.constant(1, other.var))
        if isinstance(other, (int, Fraction)):
            return RatFunc._from_canonical(
                Poly.constant(other, self.var), Poly.constant(1, self.var)
            )
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._den == other._den:
            return RatFunc(self._num + other._num, self._den)
        return RatFunc(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc._from_canonical(-self._num, self._den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFunc(Poly((), self.var))
            return RatFunc._from_canonical(self._num.scale(other), self._den)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RatFunc(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def reciprocal(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDenominatorError("reciprocal of the zero rational function")
        return RatFunc(self._den, self._num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.reciprocal()

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return self.reciprocal() ** (-exponent)
        return RatFunc._from_canonical(self._num ** exponent, self._den ** exponent)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    # ------------------------------------------------------------------
    # Evaluation and substitution
    # ------------------------------------------------------------------

    def eval(self, point: Scalar) -> Fraction:
        den = self._den.eval(point)
        if den == 0:
            raise ZeroDenominatorError(f"{format_rat(point)} is a pole of {self.to_text()}")
        return self._num.eval(point) / den

    __call__ = eval

    def compose_reciprocal(self) -> "RatFunc":
        """Substitute var -> 1/var, cleared to canonical form."""
        top = max(self._num.degree or 0, self._den.degree or 0)
        # x^top f(1/x): pad to top + 1 coefficients, then reverse
        num = list(self._num.coeffs) + [0] * (top + 1 - len(self._num.coeffs))
        den = list(self._den.coeffs) + [0] * (top + 1 - len(self._den.coeffs))
        return RatFunc(Poly(num[::-1], self.var), Poly(den[::-1], self.var))

    def compose(self, inner: Poly) -> "RatFunc":
        return RatFunc(self._num.compose(inner), self._den.compose(inner))

    def derivative(self) -> "RatFunc":
        num = self._num.derivative() * self._den - self._num * self._den.derivative()
        return RatFunc(num, self._den * self._den)

    def to_text(self) -> str:
        if self.is_polynomial():
            return self._num.to_text()
        return f"({self._num.to_text()}) / ({self._den.to_text()})"

    def __repr__(self) -> str:
        return f"RatFunc({self.to_text()})"


def _canonicalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDenominatorError("rational function with a zero denominator")
    var = num.var
    if num.is_zero():
        return Poly((), var), Poly.constant(1, var)
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    lead = den.leading
    return num.scale(1 / lead).with_var(var), den.scale(1 / lead).with_var(var)


def ratfunc_simplify(num: Poly, den: Poly) -> RatFunc:
    """Canonical (gcd-reduced, monic-denominator) form of num/den."""
    return RatFunc(num, den)


def as_ratfunc(value: Union[RatFunc, Poly, Scalar], var: str = "x") -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc(value)
    return RatFunc(Poly.constant(value, var))


def ratfunc_sum(terms: Iterable[RatFunc], var: str = "x") -> RatFunc:
    """Sum over a common denominator with a single final canonicalization."""
    terms = [t for t in terms if not t.is_zero()]
    if not terms:
        return RatFunc(Poly((), var))
    den = terms[0].den
    for term in terms[1:]:
        if term.den != den:
            den = den * term.den.exact_div(poly_gcd(den, term.den))
    num = Poly((), terms[0].var)
    for term in terms:
        num = num + term.num * den.exact_div(term.den)
    return RatFunc(num, den)
