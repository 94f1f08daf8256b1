"""Truncated formal power series in t over an exact coefficient ring.

The ring is either Rat (``Fraction``) or rational functions in one symbol
(``RatFunc``); nothing here depends on which. The series oracle is the
independent route against which every recurrence in the package is checked.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Sequence, Tuple, Union

from .errors import NonInvertibleError
from .exact_arith import Poly, RatFunc, format_rat, ratfunc_sum

logger = logging.getLogger(__name__)

Ring = Union[Fraction, RatFunc]

GF_IDS = (
    "classical_eulerian",
    "generalized",
    "bernstein",
    "euler",
    "bernoulli",
    "genocchi",
    "minus_one",
)

# Coefficients computed past the requested order before extraction.
TRUNCATION_MARGIN = 2


def _lift(value) -> Ring:
    return Fraction(value) if isinstance(value, int) else value


def _zero_like(value: Ring) -> Ring:
    return value * 0


def _ring_sum(values: Sequence[Ring], zero: Ring) -> Ring:
    if isinstance(zero, RatFunc):
        return ratfunc_sum(values, zero.var)
    total = zero
    for v in values:
        total = total + v
    return total


def _describe(value: Ring) -> str:
    return value.to_text() if isinstance(value, RatFunc) else format_rat(value)


class Series:
    """Coefficients of t^0..t^order; immutable."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Sequence, order: Optional[int] = None):
        values = [_lift(c) for c in coeffs]
        if order is None:
            order = len(values) - 1
        if order < 0:
            raise ValueError(f"series order must be nonnegative, got {order}")
        zero = _zero_like(values[0]) if values else Fraction(0)
        values = values[: order + 1]
        values += [zero] * (order + 1 - len(values))
        self._coeffs: Tuple[Ring, ...] = tuple(values)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> Tuple[Ring, ...]:
        return self._coeffs

    def __getitem__(self, index: int) -> Ring:
        return self._coeffs[index]

    def zero(self) -> Ring:
        return _zero_like(self._coeffs[0])

    def _check_order(self, other: "Series") -> int:
        return min(self.order, other.order)

    def __add__(self, other: "Series") -> "Series":
        order = self._check_order(other)
        return Series([self[i] + other[i] for i in range(order + 1)])

    def __neg__(self) -> "Series":
        return Series([-c for c in self._coeffs])

    def __sub__(self, other: "Series") -> "Series":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return self.scale(other)
        order = self._check_order(other)
        zero = self.zero()
        return Series(
            [
                _ring_sum([self[i] * other[n - i] for i in range(n + 1)], zero)
                for n in range(order + 1)
            ]
        )

    def scale(self, factor) -> "Series":
        return Series([c * factor for c in self._coeffs])

    def add_constant(self, value) -> "Series":
        return Series([self._coeffs[0] + value] + list(self._coeffs[1:]))

    def shift(self, k: int) -> "Series":
        """Multiply by t^k, keeping the order."""
        zero = self.zero()
        return Series([zero] * k + list(self._coeffs), self.order)

    def truncate(self, order: int) -> "Series":
        return Series(self._coeffs, order)

    def reciprocal(self) -> "Series":
        return series_reciprocal(self)

    def factorial_normalized(self) -> List[Ring]:
        """n!·[t^n] for every stored coefficient."""
        return [c * factorial(n) for n, c in enumerate(self._coeffs)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __repr__(self) -> str:
        return "Series(" + ", ".join(_describe(c) for c in self._coeffs) + ")"


def series_exp(c, order: int) -> Series:
    """sum_{m<=order} c^m t^m / m!"""
    if order < 0:
        raise ValueError(f"series order must be nonnegative, got {order}")
    c = _lift(c)
    term = c * 0 + 1
    coeffs = [term]
    for m in range(1, order + 1):
        term = term * c * Fraction(1, m)
        coeffs.append(term)
    return Series(coeffs)


def series_reciprocal(s: Series) -> Series:
    """r with s*r = 1 + O(t^(order+1))."""
    head = s[0]
    if head == 0:
        raise NonInvertibleError(_describe(head))
    inverse = 1 / head
    zero = s.zero()
    out = [inverse]
    for n in range(1, s.order + 1):
        acc = _ring_sum([s[i] * out[n - i] for i in range(1, n + 1)], zero)
        out.append(-(acc * inverse))
    return Series(out)


# ----------------------------------------------------------------------
# Generating functions
# ----------------------------------------------------------------------


def _symbol(name: str) -> RatFunc:
    return RatFunc(Poly.variable(name))


def _eulerian_kernel(x: Ring, order: int) -> Series:
    """(1-x)/(e^{t(1-x)} - x)"""
    one_minus = 1 - x
    denominator = series_exp(one_minus, order).add_constant(-x)
    return denominator.reciprocal().scale(one_minus)


def _gf_series(gf_id: str, order: int, point: Optional[Fraction], k: Optional[int]) -> Series:
    if gf_id == "classical_eulerian":
        x = _symbol("x") if point is None else Fraction(point)
        return _eulerian_kernel(x, order)
    if gf_id == "generalized":
        # tau = t·ln b; the grade (ln b)^n is reattached by the caller
        a = _symbol("a") if point is None else Fraction(point)
        return _eulerian_kernel(a, order)
    if gf_id == "bernstein":
        if k is None or k < 0:
            raise ValueError("bernstein generating function needs k >= 0")
        x = _symbol("x") if point is None else Fraction(point)
        weight = x ** k * Fraction(1, factorial(k))
        return series_exp(1 - x, order).shift(k).scale(weight)
    if gf_id == "euler":
        half = series_exp(1, order).add_constant(1).scale(Fraction(1, 2))
        return half.reciprocal()
    if gf_id == "bernoulli":
        # (e^t - 1)/t is a unit series: coefficient of t^m is 1/(m+1)!
        unit = Series([Fraction(1, factorial(m + 1)) for m in range(order + 1)])
        return unit.reciprocal()
    if gf_id == "genocchi":
        half = series_exp(1, order).add_constant(1).scale(Fraction(1, 2))
        return half.reciprocal().shift(1)
    if gf_id == "minus_one":
        half = series_exp(2, order).add_constant(1).scale(Fraction(1, 2))
        return half.reciprocal()
    raise ValueError(f"unknown generating function {gf_id!r}; known: {', '.join(GF_IDS)}")


@lru_cache(maxsize=256)
def _cached_coefficients(
    gf_id: str, order: int, point: Optional[Fraction], k: Optional[int]
) -> Tuple[Ring, ...]:
    logger.debug("series oracle miss: %s order=%d point=%s k=%s", gf_id, order, point, k)
    series = _gf_series(gf_id, order + TRUNCATION_MARGIN, point, k)
    return tuple(series.factorial_normalized()[: order + 1])


def gf_coefficients(
    gf_id: str, order: int, point: Optional[Fraction] = None, k: Optional[int] = None
) -> List[Ring]:
    """Factorial-normalized coefficients c_0..c_order with GF = sum c_n t^n/n!.

    Symbolic families (no point) return canonical ``RatFunc`` values in x
    (classical, bernstein) or a (generalized); numeric families return Rat.
    """
    if order < 0:
        raise ValueError(f"truncation order must be nonnegative, got {order}")
    if point is not None:
        point = Fraction(point)
    return list(_cached_coefficients(gf_id, order, point, k))
