"""Generalized Eulerian family A_n(a,b) = q_n(a)·(ln b)^n and the identity audit battery.

ln b never appears as a second variable: every value carries an integer grade
(the power of L = ln b) next to a polynomial or rational function in a.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .classical_seq import (
    bernstein_poly,
    euler_zeta_neg,
    eulerian_fraction,
    eulerian_poly_G,
    named_number,
    polylog_neg,
    polylog_neg_derivative,
    stirling2,
)
from .errors import CandidateRejectedError
from .exact_arith import Poly, RatFunc, as_ratfunc, binomial, ratfunc_sum
from .identity_registry import get_descriptor, registry_map
from .models import Form, IdentityDescriptor, IdentityVerdict, Status, VerdictRow, Witness
from .power_series import gf_coefficients

logger = logging.getLogger(__name__)

Coefficient = Union[RatFunc, Poly, Fraction, int]

_A = Poly.variable("a")
_X = Poly.variable("x")

# One series expansion serves every oracle request up to this n.
ORACLE_BATCH = 16


class GradedExpr:
    """Finite sum of c_g(var)·L^g with canonical rational-function coefficients."""

    __slots__ = ("_terms", "_var")

    def __init__(self, terms: Optional[Mapping[int, Coefficient]] = None, var: str = "a"):
        clean: Dict[int, RatFunc] = {}
        for grade, value in (terms or {}).items():
            value = as_ratfunc(value, var)
            if not value.is_zero():
                clean[grade] = value
        self._terms = clean
        self._var = var

    @classmethod
    def single(cls, value: Coefficient, grade: int = 0, var: str = "a") -> "GradedExpr":
        return cls({grade: value}, var)

    @property
    def terms(self) -> Dict[int, RatFunc]:
        return dict(self._terms)

    @property
    def grades(self) -> FrozenSet[int]:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def _coerce(self, other) -> "GradedExpr":
        if isinstance(other, GradedExpr):
            return other
        return GradedExpr.single(other, 0, self._var)

    def __add__(self, other) -> "GradedExpr":
        other = self._coerce(other)
        merged: Dict[int, RatFunc] = dict(self._terms)
        for grade, value in other._terms.items():
            merged[grade] = merged[grade] + value if grade in merged else value
        return GradedExpr(merged, self._var)

    __radd__ = __add__

    def __neg__(self) -> "GradedExpr":
        return GradedExpr({g: -c for g, c in self._terms.items()}, self._var)

    def __sub__(self, other) -> "GradedExpr":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "GradedExpr":
        other = self._coerce(other)
        out: Dict[int, List[RatFunc]] = {}
        for g1, c1 in self._terms.items():
            for g2, c2 in other._terms.items():
                out.setdefault(g1 + g2, []).append(c1 * c2)
        return GradedExpr({g: ratfunc_sum(cs, self._var) for g, cs in out.items()}, self._var)

    __rmul__ = __mul__

    def at_unit_grade(self) -> RatFunc:
        """Value at L = 1: the coefficient content with grades forgotten."""
        return ratfunc_sum(self._terms.values(), self._var)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedExpr):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._terms.items())))

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for grade in sorted(self._terms):
            text = self._terms[grade].to_text()
            parts.append(text if grade == 0 else f"({text})*L^{grade}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"GradedExpr({self.to_text()})"


@dataclass(frozen=True)
class LGraded:
    """q(a)·L^grade"""

    grade: int
    q: Poly

    def expr(self) -> GradedExpr:
        return GradedExpr.single(self.q, self.grade, "a")

    def at(self, point) -> GradedExpr:
        """Specialize a to a rational point, keeping the grade."""
        return GradedExpr.single(self.q.eval(point), self.grade, "a")

    def reflected(self) -> "LGraded":
        """A_n(-a, b)"""
        return LGraded(self.grade, self.q.compose_linear(-1))

    def squared_base(self) -> "LGraded":
        """A_n(a^2, b^2): a -> a^2 and ln(b^2) = 2 ln b."""
        return LGraded(self.grade, self.q.compose(_A * _A).scale(2 ** self.grade))

    def to_text(self) -> str:
        return f"({self.q.to_text('a')})*L^{self.grade}"


@lru_cache(maxsize=None)
def gen_eulerian(n: int) -> LGraded:
    """A_n = (1/(a-1)) sum_{k<n} C(n,k) A_k ((1-a)L)^(n-k), seeded A_0 = 1.

    Every summand has grade n, so the recurrence runs on the q-polynomials and
    the division by (a-1) must be exact.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    if n == 0:
        return LGraded(0, Poly.constant(1, "a"))
    total = Poly((), "a")
    for k in range(n):
        total = total + gen_eulerian(k).q * (1 - _A) ** (n - k) * binomial(n, k)
    return LGraded(n, total.exact_div(_A - 1))


@lru_cache(maxsize=None)
def _oracle_q(n: int) -> Poly:
    coefficients = gf_coefficients("generalized", max(n, ORACLE_BATCH))
    return coefficients[n].to_poly().with_var("a")


def gen_eulerian_oracle(n: int) -> LGraded:
    """n!·[tau^n] of (1-a)/(e^{tau(1-a)} - a) over rational functions in a, graded by L^n."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return LGraded(n, _oracle_q(n))


class FamilySource(str, Enum):
    RECURRENCE = "recurrence"
    ORACLE = "oracle"


def generalized_family(n: int, source: FamilySource = FamilySource.RECURRENCE) -> LGraded:
    if FamilySource(source) is FamilySource.ORACLE:
        return gen_eulerian_oracle(n)
    return gen_eulerian(n)


# ----------------------------------------------------------------------
# Sides of each audited identity
# ----------------------------------------------------------------------

Side = Tuple[Optional[str], GradedExpr, GradedExpr]
SideBuilder = Callable[[int, FamilySource], List[Side]]


def _x(value: Coefficient) -> GradedExpr:
    return GradedExpr.single(value, 0, "x")


def _g(value: Coefficient, grade: int = 0) -> GradedExpr:
    return GradedExpr.single(value, grade, "a")


def _in_a(value: RatFunc) -> RatFunc:
    return RatFunc(value.num.with_var("a"), value.den.with_var("a"))


def _polylog_at_reciprocal(n: int) -> RatFunc:
    """Li_{-n}(1/a)"""
    return _in_a(polylog_neg(n)).compose_reciprocal()


def _stirling_sum(n: int) -> Poly:
    """sum_{k<=n} k! S(n+1,k+1) (a-1)^(n-k)"""
    total = Poly((), "a")
    for k in range(n + 1):
        total = total + (_A - 1) ** (n - k) * (factorial(k) * stirling2(n + 1, k + 1))
    return total


def _eq15(n: int, source: FamilySource) -> List[Side]:
    lhs = -(generalized_family(n, source).expr() * _A)
    for k in range(n + 1):
        umbral = _g((1 - _A) ** (n - k) * binomial(n, k), n - k)
        lhs = lhs + generalized_family(k, source).expr() * umbral
    return [(None, lhs, _g(1 - _A if n == 0 else 0))]


def _thm3(n: int, source: FamilySource) -> List[Side]:
    return [(None, gen_eulerian(n).expr(), gen_eulerian_oracle(n).expr())]


def _eq4(n: int, source: FamilySource) -> List[Side]:
    return [(None, _x(eulerian_poly_G(n)), _x(gf_coefficients("classical_eulerian", n)[n]))]


def _eq5_sides(n: int, member: Callable[[int], Poly]) -> List[Side]:
    lhs = _x(-(_X * member(n)))
    for k in range(n + 1):
        lhs = lhs + _x(member(k) * (_X - 1) ** (n - k) * binomial(n, k))
    return [(None, lhs, _x(1 - _X if n == 0 else 0))]


def _eq5(n: int, source: FamilySource) -> List[Side]:
    return _eq5_sides(n, eulerian_poly_G)


def _eq5_candidate(n: int, source: FamilySource) -> List[Side]:
    return _eq5_sides(n, lambda k: gen_eulerian_oracle(k).q.with_var("x").scale((-1) ** k))


def _eq6(convention: str) -> SideBuilder:
    def build(n: int, source: FamilySource) -> List[Side]:
        rhs = polylog_neg(n) + (1 if n == 0 else 0)
        return [(None, _x(eulerian_fraction(n, convention)), _x(rhs))]

    return build


def _eq7(n: int, source: FamilySource) -> List[Side]:
    return [
        (f"k={k}", _x(bernstein_poly(k, n)), _x(gf_coefficients("bernstein", n, k=k)[n]))
        for k in range(n + 1)
    ]


def _eqaa(n: int, source: FamilySource) -> List[Side]:
    return [(None, _x(polylog_neg(n)), _x(polylog_neg_derivative(n)))]


def _thm2(n: int, source: FamilySource) -> List[Side]:
    terms = [
        RatFunc(eulerian_poly_G(k) * bernstein_poly(k, n), _X ** (k + 1) - _X ** k)
        for k in range(n)
    ]
    return [(None, _x(eulerian_poly_G(n)), _x(ratfunc_sum(terms, "x")))]


def _eq19(n: int, source: FamilySource) -> List[Side]:
    rhs = _g(0)
    for k in range(n + 1):
        weight = (1 + _A) ** k * (1 - _A) ** (n - k) * binomial(n, k)
        rhs = rhs + (
            generalized_family(k, source).expr()
            * generalized_family(n - k, source).reflected().expr()
            * weight
        )
    return [(None, generalized_family(n, source).squared_base().expr(), rhs)]


def _cor6(n: int, source: FamilySource) -> List[Side]:
    rhs = _g(0)
    for k in range(n + 1):
        weight = RatFunc((1 + _A) ** k, _A ** k) * bernstein_poly(k, n).with_var("a")
        rhs = rhs + (
            generalized_family(k, source).expr()
            * generalized_family(n - k, source).reflected().expr()
            * weight
        )
    return [(None, generalized_family(n, source).squared_base().expr(), rhs)]


def _thm7(n: int, source: FamilySource) -> List[Side]:
    lhs = generalized_family(n, source).expr() * RatFunc(Poly.constant(1, "a"), (_A - 1) ** n)
    rhs = _g(RatFunc(1 - _A, _A) * _polylog_at_reciprocal(n), n)
    return [(None, lhs, rhs)]


def _thm7_candidate(n: int, source: FamilySource) -> List[Side]:
    rhs = _g(RatFunc(_A - 1, _A) * (1 - _A) ** n * _polylog_at_reciprocal(n), n)
    return [(None, gen_eulerian_oracle(n).expr(), rhs)]


def _thm8(n: int, source: FamilySource) -> List[Side]:
    lhs = generalized_family(n, source).expr() * _A
    return [(None, lhs, _g(-_stirling_sum(n), n))]


def _thm8_candidate(n: int, source: FamilySource) -> List[Side]:
    lhs = gen_eulerian_oracle(n).expr() * _A
    return [(None, lhs, _g(_stirling_sum(n).scale((-1) ** n), n))]


def _minus_one(n: int, source: FamilySource) -> GradedExpr:
    return generalized_family(n, source).at(-1)


def _thm9(n: int, source: FamilySource) -> List[Side]:
    return [(None, _minus_one(n, source), _g(2 ** n * named_number("euler", n), n))]


def _bernoulli_coefficient(n: int) -> Fraction:
    return Fraction(2 ** (n + 1) * (1 - 2 ** (n + 1))) * named_number("bernoulli", n + 1) / (n + 1)


def _thm10(n: int, source: FamilySource) -> List[Side]:
    return [(None, _minus_one(n, source), _g(_bernoulli_coefficient(n), n + 1))]


def _thm10_candidate(n: int, source: FamilySource) -> List[Side]:
    return [(None, _minus_one(n, FamilySource.ORACLE), _g(_bernoulli_coefficient(n), n))]


def _thm11(n: int, source: FamilySource) -> List[Side]:
    coefficient = Fraction(2 ** (n + 1)) * named_number("genocchi", n + 1) / (n + 1)
    return [(None, _minus_one(n, source), _g(coefficient, n + 1))]


def _thm11_candidate(n: int, source: FamilySource) -> List[Side]:
    coefficient = Fraction(2 ** n) * named_number("genocchi", n + 1) / (n + 1)
    return [(None, _minus_one(n, FamilySource.ORACLE), _g(coefficient, n))]


def _eq24(n: int, source: FamilySource) -> List[Side]:
    coefficient = 2 ** (n + 1) * polylog_neg(n).eval(-1)
    return [(None, _minus_one(n, source), _g(coefficient, n))]


def _eq26(n: int, source: FamilySource) -> List[Side]:
    return [(None, _minus_one(n, source), _g(2 ** n * euler_zeta_neg(n), n))]


AS, CC = Form.AS_STATED, Form.CORRECTED

SIDE_BUILDERS: Dict[Tuple[str, Form], SideBuilder] = {
    ("cor6", AS): _cor6,
    ("eq15", AS): _eq15,
    ("eq19", AS): _eq19,
    ("eq24", AS): _eq24,
    ("eq26", AS): _eq26,
    ("eq26_boundary", AS): _eq26,
    ("eq4", AS): _eq4,
    ("eq5", AS): _eq5,
    ("eq5", CC): _eq5_candidate,
    ("eq6_g", AS): _eq6("G"),
    ("eq6_s", AS): _eq6("S"),
    ("eq7", AS): _eq7,
    ("eqaa", AS): _eqaa,
    ("thm10", AS): _thm10,
    ("thm10", CC): _thm10_candidate,
    ("thm11", AS): _thm11,
    ("thm11", CC): _thm11_candidate,
    ("thm2", AS): _thm2,
    ("thm3", AS): _thm3,
    ("thm7", AS): _thm7,
    ("thm7", CC): _thm7_candidate,
    ("thm8", AS): _thm8,
    ("thm8", CC): _thm8_candidate,
    ("thm9", AS): _thm9,
}


def _joined(sides: Sequence[Side], pick: Callable[[Side], str]) -> str:
    if len(sides) == 1 and sides[0][0] is None:
        return pick(sides[0])
    return "; ".join(f"{side[0]}: {pick(side)}" for side in sides)


def compare_sides(identity_id: str, form: Form, n: int, sides: Sequence[Side]) -> VerdictRow:
    diffs = [lhs - rhs for _, lhs, rhs in sides]
    passed = all(d.is_zero() for d in diffs)
    diff_sides = [(label, d, d) for (label, _, _), d in zip(sides, diffs)]
    return VerdictRow(
        identity_id=identity_id,
        form=form,
        n=n,
        status=Status.PASS if passed else Status.FAIL,
        grade_match=all(lhs.grades == rhs.grades for _, lhs, rhs in sides),
        coefficient_match=all(lhs.at_unit_grade() == rhs.at_unit_grade() for _, lhs, rhs in sides),
        lhs=_joined(sides, lambda s: s[1].to_text()),
        rhs=_joined(sides, lambda s: s[2].to_text()),
        diff=_joined(diff_sides, lambda s: s[1].to_text()),
    )


def _summarize(identity_id: str, form: Form, n_range: Tuple[int, int], rows: List[VerdictRow]) -> IdentityVerdict:
    failing = next((r for r in rows if r.status is Status.FAIL), None)
    witness = None
    if failing is not None:
        witness = Witness(n=failing.n, lhs=failing.lhs, rhs=failing.rhs, difference=failing.diff)
    return IdentityVerdict(
        identity_id=identity_id,
        form=form,
        n_range=n_range,
        status=Status.FAIL if failing else Status.PASS,
        witness=witness,
        rows=rows,
    )


class IdentityAuditor:
    """Runs registry identities over n ranges and annotates rows with expectations."""

    def __init__(
        self,
        registry: Optional[Mapping[str, IdentityDescriptor]] = None,
        source: FamilySource = FamilySource.RECURRENCE,
        workers: int = 1,
    ):
        self.registry = dict(registry if registry is not None else registry_map())
        self.source = FamilySource(source)
        self.workers = max(1, workers)

    def n_range(self, identity_id: str, n_max: int) -> Tuple[int, int]:
        lo, hi = get_descriptor(identity_id, self.registry).n_default
        return lo, (n_max if hi is None else hi)

    def audit_identity(
        self, identity_id: str, form: Form, n_range: Tuple[int, int]
    ) -> IdentityVerdict:
        descriptor = get_descriptor(identity_id, self.registry)
        form = Form(form)
        if form not in descriptor.forms:
            raise ValueError(f"identity {identity_id!r} has no {form.value} form")
        build = SIDE_BUILDERS[(identity_id, form)]
        expectation = descriptor.expected[form.value]
        lo, hi = n_range
        logger.info("auditing %s (%s) for n=%d..%d", identity_id, form.value, lo, hi)

        rows = []
        for n in range(lo, hi + 1):
            row = compare_sides(identity_id, form, n, build(n, self.source))
            expected = Status.PASS if expectation.expects_pass(n) else Status.FAIL
            row = row.model_copy(update={"expected": expected, "deviation": row.status is not expected})
            logger.debug("%s %s n=%d: %s", identity_id, form.value, n, row.status.value)
            if row.deviation:
                logger.warning(
                    "%s (%s) at n=%d: got %s, registry expects %s",
                    identity_id, form.value, n, row.status.value, expected.value,
                )
                if form is Form.CORRECTED:
                    logger.error(
                        "corrected candidate %s rejected by its oracle (%s) at n=%d",
                        identity_id, descriptor.oracle, n,
                    )
            rows.append(row)
        return _summarize(identity_id, form, (lo, hi), rows)

    def audit(self, identity_ids: Optional[Iterable[str]] = None, n_max: int = 10) -> List[IdentityVerdict]:
        ids = sorted(identity_ids) if identity_ids is not None else sorted(self.registry)
        jobs = []
        for identity_id in ids:
            descriptor = get_descriptor(identity_id, self.registry)
            for form in descriptor.forms:
                jobs.append((identity_id, form, self.n_range(identity_id, n_max)))

        if self.workers > 1 and len(jobs) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                verdicts = list(pool.map(lambda job: self.audit_identity(*job), jobs))
        else:
            verdicts = [self.audit_identity(*job) for job in jobs]
        return sorted(verdicts, key=lambda v: (v.identity_id, v.form.value))

    def validate_candidate(self, identity_id: str, n_max: int = 10) -> IdentityVerdict:
        """Audit the corrected form and raise if it disagrees with its oracle anywhere."""
        verdict = self.audit_identity(identity_id, Form.CORRECTED, self.n_range(identity_id, n_max))
        if verdict.status is Status.FAIL:
            raise CandidateRejectedError(
                f"corrected candidate for {identity_id} fails at n={verdict.witness.n}: "
                f"{verdict.witness.lhs} != {verdict.witness.rhs}"
            )
        return verdict


def _run(identity_id: str, n_max: int) -> List[IdentityVerdict]:
    return IdentityAuditor().audit([identity_id], n_max)


def check_recurrence(n_max: int) -> IdentityVerdict:
    return _run("eq15", n_max)[0]


def check_bernstein_identity(n_max: int) -> IdentityVerdict:
    return _run("thm2", n_max)[0]


def check_product_identity(n_max: int) -> List[IdentityVerdict]:
    """A_n(a^2, b^2) as a Cauchy product, plain and Bernstein-weighted."""
    return IdentityAuditor().audit(["eq19", "cor6"], n_max)


def check_polylog_identity(n_max: int) -> List[IdentityVerdict]:
    return _run("thm7", n_max)


def check_stirling_identity(n_max: int) -> List[IdentityVerdict]:
    return _run("thm8", n_max)


def audit_minus_one_links(n_max: int) -> List[IdentityVerdict]:
    return IdentityAuditor().audit(["thm9", "thm10", "thm11", "eq24", "eq26", "eq26_boundary"], n_max)
