"""Classical number and polynomial families.

Each family has an authoritative route and, where the audit needs one, an
independent second route:

- A(n,k): explicit alternating binomial sum; descent counting as the oracle.
- B_n, E_n, G_n: series oracle; binomial recurrences as the second route.
- S(n,k): triangular recurrence; explicit inclusion-exclusion sum as the second route.
- Li_{-n}(x): Stirling closed form; (x d/dx)^n x/(1-x) as the second route.

Two Eulerian polynomial conventions coexist and are never converted silently:
suffix S is the summation convention (A_1 = x), suffix G the generating-function
convention (A_1 = -1).
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Tuple

from .exact_arith import Poly, RatFunc, binomial
from .power_series import gf_coefficients

logger = logging.getLogger(__name__)

CONVENTIONS = ("S", "G")

_X = Poly.variable("x")
_ONE_MINUS_X = 1 - _X


@dataclass(frozen=True)
class EulerianTriangleRow:
    """A(n, 0..n); A(n, 0) = 1 by convention."""

    n: int
    entries: Tuple[Fraction, ...]


class NamedNumberKind(str, Enum):
    BERNOULLI = "bernoulli"
    EULER = "euler"
    GENOCCHI = "genocchi"
    STIRLING2 = "stirling2"


# ----------------------------------------------------------------------
# Eulerian numbers and polynomials
# ----------------------------------------------------------------------


def eulerian_number(n: int, k: int) -> Fraction:
    """A(n,k) = sum_{j<=k} C(n+1,j)(-1)^j (k-j)^n for 1 <= k <= n; A(n,0) = 1."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if k == 0:
        return Fraction(1)
    if k < 0 or k > n:
        return Fraction(0)
    return sum(
        (binomial(n + 1, j) * (-1) ** j * (k - j) ** n for j in range(k + 1)), Fraction(0)
    )


def eulerian_triangle_row(n: int) -> EulerianTriangleRow:
    return EulerianTriangleRow(n, tuple(eulerian_number(n, k) for k in range(n + 1)))


def eulerian_row_by_descents(n: int) -> List[int]:
    """Brute-force oracle: entry k (1 <= k <= n) counts permutations with k-1 descents."""
    counts = [0] * (n + 1)
    counts[0] = 1
    if n == 0:
        return counts
    for perm in itertools.permutations(range(n)):
        descents = sum(1 for i in range(n - 1) if perm[i] > perm[i + 1])
        counts[descents + 1] += 1
    return counts


def eulerian_poly_S(n: int) -> Poly:
    """Summation convention: sum_{k=1..n} A(n,k) x^k, and 1 for n = 0."""
    if n == 0:
        return Poly.constant(1, "x")
    return Poly([0] + [eulerian_number(n, k) for k in range(1, n + 1)], "x")


@lru_cache(maxsize=None)
def eulerian_poly_G(n: int) -> Poly:
    """Generating-function convention, from A_n = (1/(x-1)) sum_{k<n} C(n,k) A_k (1-x)^(n-k)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return Poly.constant(1, "x")
    total = Poly((), "x")
    for k in range(n):
        total = total + eulerian_poly_G(k) * _ONE_MINUS_X ** (n - k) * binomial(n, k)
    return total.exact_div(_X - 1)


def eulerian_poly(n: int, convention: str) -> Poly:
    if convention == "S":
        return eulerian_poly_S(n)
    if convention == "G":
        return eulerian_poly_G(n)
    raise ValueError(f"unknown Eulerian convention {convention!r}; expected one of {CONVENTIONS}")


def eulerian_fraction(n: int, convention: str) -> RatFunc:
    """alpha_n(x) = A_n(x) / (1-x)^(n+1)."""
    return RatFunc(eulerian_poly(n, convention), _ONE_MINUS_X ** (n + 1))


# ----------------------------------------------------------------------
# Named numbers
# ----------------------------------------------------------------------

_SERIES_KIND = {
    NamedNumberKind.BERNOULLI: "bernoulli",
    NamedNumberKind.EULER: "euler",
    NamedNumberKind.GENOCCHI: "genocchi",
}


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> Fraction:
    """S(n,k) = k S(n-1,k) + S(n-1,k-1), S(0,0) = 1."""
    if n < 0 or k < 0:
        raise ValueError(f"Stirling arguments must be nonnegative, got ({n}, {k})")
    if n == 0 and k == 0:
        return Fraction(1)
    if n == 0 or k == 0 or k > n:
        return Fraction(0)
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def stirling2_explicit(n: int, k: int) -> Fraction:
    """S(n,k) = (1/k!) sum_j (-1)^j C(k,j) (k-j)^n."""
    total = sum((binomial(k, j) * (-1) ** j * (k - j) ** n for j in range(k + 1)), Fraction(0))
    return total / factorial(k)


def named_number(kind, n: int, k: Optional[int] = None) -> Fraction:
    kind = NamedNumberKind(kind)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if kind is NamedNumberKind.STIRLING2:
        if k is None:
            raise ValueError("stirling2 needs k")
        return stirling2(n, k)
    if k is not None:
        raise ValueError(f"k is only meaningful for stirling2, not {kind.value}")
    return gf_coefficients(_SERIES_KIND[kind], n)[n]


@lru_cache(maxsize=None)
def bernoulli_by_recurrence(n: int) -> Fraction:
    """sum_{j=0..n} C(n+1, j) B_j = 0 for n >= 1."""
    if n == 0:
        return Fraction(1)
    total = sum((binomial(n + 1, j) * bernoulli_by_recurrence(j) for j in range(n)), Fraction(0))
    return -total / (n + 1)


@lru_cache(maxsize=None)
def euler_by_recurrence(n: int) -> Fraction:
    """From (e^t + 1)·sum E_n t^n/n! = 2: E_n + sum_{j<=n} C(n,j) E_j = 2 delta_{n,0}."""
    if n == 0:
        return Fraction(1)
    total = sum((binomial(n, j) * euler_by_recurrence(j) for j in range(n)), Fraction(0))
    return -total / 2


def genocchi_by_bernoulli(n: int) -> Fraction:
    """G_n = 2 (1 - 2^n) B_n."""
    return 2 * (1 - 2 ** n) * bernoulli_by_recurrence(n)


# ----------------------------------------------------------------------
# Bernstein polynomials
# ----------------------------------------------------------------------


def bernstein_poly(k: int, n: int) -> Poly:
    """C(n,k) x^k (1-x)^(n-k)"""
    if k < 0 or n < 0:
        raise ValueError(f"Bernstein indices must be nonnegative, got ({k}, {n})")
    if k > n:
        raise ValueError(f"Bernstein polynomial needs k <= n, got k={k}, n={n}")
    return Poly.monomial(binomial(n, k), k, "x") * _ONE_MINUS_X ** (n - k)


# ----------------------------------------------------------------------
# Polylogarithms at negative integers
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def polylog_neg(n: int) -> RatFunc:
    """Li_{-n}(x) = sum_{k=0..n} k! S(n+1,k+1) (x/(1-x))^(k+1), over (1-x)^(n+1)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    numerator = Poly((), "x")
    for k in range(n + 1):
        weight = factorial(k) * stirling2(n + 1, k + 1)
        numerator = numerator + _X ** (k + 1) * _ONE_MINUS_X ** (n - k) * weight
    return RatFunc(numerator, _ONE_MINUS_X ** (n + 1))


def polylog_neg_derivative(n: int) -> RatFunc:
    """(x d/dx)^n applied to x/(1-x)."""
    value = RatFunc(_X, _ONE_MINUS_X)
    for _ in range(n):
        value = value.derivative() * _X
    return value


def _geometric_tail(z_abs: Fraction, power: int, last: int) -> Fraction:
    """Bound sum_{k>last} |z|^k k^power with a term-ratio geometric majorant.

    The ratio |z| ((k+1)/k)^power decreases in k for power > 0 and increases
    towards |z| for power < 0, so its supremum over k >= start is the value at
    start or |z| respectively.
    """
    if z_abs == 0:
        return Fraction(0)

    def term(k: int) -> Fraction:
        return z_abs ** k * Fraction(k) ** power

    def sup_ratio(k: int) -> Fraction:
        if power <= 0:
            return z_abs
        return z_abs * Fraction(k + 1, k) ** power

    start = last + 1
    ratio = sup_ratio(start)
    partial = Fraction(0)
    while ratio >= 1:
        partial += term(start)
        start += 1
        ratio = sup_ratio(start)
    return partial + term(start) / (1 - ratio)


def polylog_partial(n: int, z, terms: int) -> Tuple[Fraction, Fraction]:
    """Exact partial sum of sum_{k>=1} z^k / k^n over the first `terms` terms, plus a tail bound."""
    z = Fraction(z)
    if abs(z) >= 1:
        raise ValueError(f"polylog series needs |z| < 1, got z={z}")
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    value = sum((z ** k * Fraction(k) ** (-n) for k in range(1, terms + 1)), Fraction(0))
    return value, _geometric_tail(abs(z), -n, terms)


def eulerian_series_partial(n: int, x, terms: int) -> Tuple[Fraction, Fraction]:
    """sum_{l=0..terms} l^n x^l with a tail bound; the l = 0 term is 0^n (1 when n = 0)."""
    value, tail = polylog_partial(-n, x, terms)
    return value + (1 if n == 0 else 0), tail


def euler_zeta_neg(n: int) -> Fraction:
    """Abel-summed zeta_E(-n) = 2 Li_{-n}(-1)."""
    return 2 * polylog_neg(n).eval(-1)
