"""p-adic valuations and the fermionic integral as alternating partial sums.

No p-adic number type: everything stays exact rational arithmetic, with vp()
as the convergence gauge.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import List, Optional, Tuple

from .classical_seq import named_number
from .errors import CapExceededError, NotAPrimeError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 10 ** 7


@total_ordering
@dataclass(frozen=True)
class PadicValuation:
    """Integer valuation, or infinity (value None) for zero."""

    value: Optional[int]

    @classmethod
    def infinity(cls) -> "PadicValuation":
        return cls(None)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __add__(self, other: "PadicValuation") -> "PadicValuation":
        if self.is_infinite or other.is_infinite:
            return PadicValuation.infinity()
        return PadicValuation(self.value + other.value)

    def __lt__(self, other: "PadicValuation") -> bool:
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def to_text(self) -> str:
        return "inf" if self.is_infinite else str(self.value)

    def __str__(self) -> str:
        return self.to_text()


def is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _require_odd_prime(p: int) -> None:
    if not is_odd_prime(p):
        raise NotAPrimeError(p)


def _int_valuation(m: int, p: int) -> int:
    count = 0
    m = abs(m)
    while m % p == 0:
        m //= p
        count += 1
    return count


def vp(x, p: int) -> PadicValuation:
    _require_odd_prime(p)
    x = Fraction(x)
    if x == 0:
        return PadicValuation.infinity()
    return PadicValuation(_int_valuation(x.numerator, p) - _int_valuation(x.denominator, p))


def _modulus(p: int, levels: int, cap: int) -> int:
    _require_odd_prime(p)
    if levels < 1:
        raise ValueError(f"level N must be positive, got {levels}")
    modulus = p ** levels
    if modulus > cap:
        raise CapExceededError(p, levels, cap)
    return modulus


def fermionic_partial(n: int, p: int, levels: int, cap: int = DEFAULT_CAP) -> Fraction:
    """S_N = sum_{v < p^N} (-1)^v v^n"""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    modulus = _modulus(p, levels, cap)
    total = sum(v ** n if v % 2 == 0 else -(v ** n) for v in range(modulus))
    return Fraction(total)


def check_functional_equation(
    n: int, p: int, levels: int, cap: int = DEFAULT_CAP
) -> Tuple[Fraction, PadicValuation]:
    """Residual of I(f_1) + I(f) = 2 f(0) at level N for f(v) = v^n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    modulus = _modulus(p, levels, cap)
    total = 0
    for v in range(modulus):
        term = (v + 1) ** n + v ** n
        total += term if v % 2 == 0 else -term
    residual = Fraction(total - 2 * 0 ** n)
    return residual, vp(residual, p)


@dataclass(frozen=True)
class WittRow:
    p: int
    n: int
    level: int
    partial_sum: Fraction
    valuation_of_gap: PadicValuation
    residual_valuation: PadicValuation


def _witt_row(n: int, p: int, level: int, cap: int, target: Fraction) -> WittRow:
    partial = fermionic_partial(n, p, level, cap)
    _, residual_valuation = check_functional_equation(n, p, level, cap)
    return WittRow(p, n, level, partial, vp(partial - target, p), residual_valuation)


def witt_table(n: int, p: int, n_levels: int, cap: int = DEFAULT_CAP, workers: int = 1) -> List[WittRow]:
    """Rows for N = 1..n_levels of the partial sums against E_n."""
    _require_odd_prime(p)
    _modulus(p, n_levels, cap)
    target = named_number("euler", n)
    logger.info("Witt table p=%d n=%d levels=1..%d", p, n, n_levels)
    levels = range(1, n_levels + 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda level: _witt_row(n, p, level, cap, target), levels))
    else:
        rows = [_witt_row(n, p, level, cap, target) for level in levels]
    return sorted(rows, key=lambda row: row.level)


def gap_growth_constant(rows: List[WittRow]) -> Optional[int]:
    """Smallest c with v_p(gap) >= N - c on every row; None when every gap is 0."""
    finite = [row.level - row.valuation_of_gap.value for row in rows if not row.valuation_of_gap.is_infinite]
    if not finite:
        return None
    return max(0, max(finite))


def gaps_nondecreasing(rows: List[WittRow]) -> bool:
    valuations = [row.valuation_of_gap for row in rows]
    return all(a <= b for a, b in zip(valuations, valuations[1:]))
