"""Static table of audited identities.

Each entry names where the identity comes from, quotes its anchor phrase, lists
the forms audited and records which n are expected to PASS. The table is
exported verbatim into every report.
"""
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .errors import UnknownIdentityError
from .models import Expectation, Form, IdentityDescriptor

AS = Form.AS_STATED.value
CC = Form.CORRECTED.value


def _entry(
    identity_id: str,
    locus: str,
    quote: str,
    expected: Dict[str, Expectation],
    n_min: int = 1,
    n_max: Optional[int] = None,
    notes: str = "",
    oracle: Optional[str] = None,
) -> IdentityDescriptor:
    return IdentityDescriptor(
        id=identity_id,
        locus=locus,
        quote=quote,
        forms=[Form(f) for f in expected],
        n_default=(n_min, n_max),
        expected=expected,
        notes=notes,
        oracle=oracle,
    )


REGISTRY: Tuple[IdentityDescriptor, ...] = (
    _entry(
        "cor6", "Cor. 6", "After the basic operations",
        {AS: Expectation.ALL}, n_min=0,
        notes="Bernstein-weighted product form; the 1/a^k factors cancel.",
    ),
    _entry(
        "eq15", "Eq. 15", "the Kronecker's symbol",
        {AS: Expectation.ALL}, n_min=0,
        notes="Umbral power expanded as sum C(n,k) A_k ((1-a)L)^(n-k).",
    ),
    _entry(
        "eq19", "Thm. 5 / Eq. 19", "By using Cauchy product",
        {AS: Expectation.ALL}, n_min=0,
        notes="LHS is A_n(a^2, b^2): q(a^2) with ln(b^2) = 2 ln b.",
    ),
    _entry(
        "eq24", "Eq. 24", "For n>0, then we have",
        {AS: Expectation.ALL},
        notes="The alternating j-sum is read as the Abel value Li_{-n}(-1).",
    ),
    _entry(
        "eq26", "Eq. 26", "interpolation function at negative integers",
        {AS: Expectation.ALL},
        notes="zeta_E(-n) = 2 Li_{-n}(-1).",
    ),
    _entry(
        "eq26_boundary", "Eq. 25 / Eq. 26 at n = 0", "Euler-zeta function is defined by",
        {AS: Expectation.NONE}, n_min=0, n_max=0,
        notes="Abel summation gives zeta_E(0) = -1 while E_0 = 1; outside the 'n > 0' range.",
    ),
    _entry(
        "eq4", "Eq. 4 / Eq. 17", "also given by means of",
        {AS: Expectation.ALL}, n_min=0,
        notes="Eq. 17 recurrence against the symbolic-x series oracle.",
    ),
    _entry(
        "eq5", "Eq. 5", "found via the following recurrence",
        {AS: Expectation.NONE, CC: Expectation.ALL},
        notes=(
            "As printed, fails under the G-convention for every n >= 1. The candidate uses "
            "(-1)^k A_k(x), the L = -1 specialization of the generalized family."
        ),
        oracle="gen_eulerian_oracle at L = -1",
    ),
    _entry(
        "eq6_g", "Eq. 1 / Eq. 6 (G-convention)", "the definition of Eulerian fraction",
        {AS: Expectation.NONE},
        notes="alpha_n built from the G-convention polynomial; Eq. 1 forces the S-convention.",
    ),
    _entry(
        "eq6_s", "Eq. 1 / Eq. 6 (S-convention)", "the definition of Eulerian fraction",
        {AS: Expectation.ALL}, n_min=0,
        notes="alpha_n(x) = Li_{-n}(x) + delta_{n,0}.",
    ),
    _entry(
        "eq7", "Eq. 7 / Eq. 8", "the generating function of Bernstein polynomials",
        {AS: Expectation.ALL}, n_min=0,
        notes="Checked for every 0 <= k <= n.",
    ),
    _entry(
        "eqaa", "Eq. (aa)", "the Stirling numbers of the second kind",
        {AS: Expectation.ALL}, n_min=0,
        notes="Stirling closed form against (x d/dx)^n x/(1-x).",
    ),
    _entry(
        "thm10", "Thm. 10", "comparing the coefficients of",
        {AS: Expectation.EVEN, CC: Expectation.ALL},
        notes=(
            "As printed the right side carries L^(n+1); odd n show a grade mismatch, even n "
            "pass only because both sides vanish. Candidate keeps the coefficient at L^n."
        ),
        oracle="gen_eulerian_oracle at a = -1",
    ),
    _entry(
        "thm11", "Thm. 11", "the familiar Genocchi numbers",
        {AS: Expectation.EVEN, CC: Expectation.ALL},
        notes=(
            "As printed the coefficient is doubled and the grade is n+1. "
            "Candidate: 2^n G_{n+1} L^n / (n+1)."
        ),
        oracle="gen_eulerian_oracle at a = -1",
    ),
    _entry(
        "thm2", "Thm. 2", "is proportional with Bernstein polynomials",
        {AS: Expectation.ALL},
        notes="Audited with the G-convention polynomial.",
    ),
    _entry(
        "thm3", "Thm. 3 / Eq. 18", "then we readily arrive at",
        {AS: Expectation.ALL}, n_min=0,
        notes="Eq. 16 recurrence against series coefficients of Eq. 14.",
    ),
    _entry(
        "thm7", "Thm. 7 / Eq. (a)", "consider geometric series in",
        {AS: Expectation.ODD, CC: Expectation.ALL},
        notes=(
            "As printed the sides differ by (-1)^(n+1). "
            "Candidate: A_n = ((a-1)/a) ((1-a)L)^n Li_{-n}(1/a)."
        ),
        oracle="gen_eulerian_oracle",
    ),
    _entry(
        "thm8", "Thm. 8", "the following interesting theorem",
        {AS: Expectation.ODD, CC: Expectation.ALL},
        notes="Candidate replaces the leading minus sign by (-1)^n.",
        oracle="gen_eulerian_oracle",
    ),
    _entry(
        "thm9", "Thm. 9", "field of natural numbers",
        {AS: Expectation.ALL},
        notes="A_n(-1, b) = 2^n E_n (ln b)^n.",
    ),
)

IDENTITY_IDS: Tuple[str, ...] = tuple(sorted(d.id for d in REGISTRY))


def registry_map(descriptors: Iterable[IdentityDescriptor] = REGISTRY) -> Dict[str, IdentityDescriptor]:
    return {d.id: d for d in descriptors}


def get_descriptor(
    identity_id: str, registry: Optional[Mapping[str, IdentityDescriptor]] = None
) -> IdentityDescriptor:
    registry = registry if registry is not None else registry_map()
    if identity_id not in registry:
        raise UnknownIdentityError(identity_id, registry.keys())
    return registry[identity_id]


def resolve_ids(
    selection: str, registry: Optional[Mapping[str, IdentityDescriptor]] = None
) -> List[str]:
    """'all' or a comma-separated list of identity ids."""
    registry = registry if registry is not None else registry_map()
    if selection == "all":
        return sorted(registry)
    ids = [s.strip() for s in selection.split(",") if s.strip()]
    for identity_id in ids:
        get_descriptor(identity_id, registry)
    return sorted(set(ids))


def parse_expectation_override(text: str) -> Tuple[str, Form, Expectation]:
    """'ID:FORM=PATTERN', e.g. 'thm7:as_stated=all'."""
    try:
        head, pattern = text.split("=", 1)
        identity_id, form = head.split(":", 1)
        return identity_id.strip(), Form(form.strip()), Expectation(pattern.strip())
    except ValueError as exc:
        raise ValueError(
            f"malformed expectation override {text!r}; expected ID:FORM=PATTERN "
            f"with FORM in {[f.value for f in Form]} and PATTERN in {[e.value for e in Expectation]}"
        ) from exc


def apply_overrides(
    overrides: Iterable[str], registry: Optional[Mapping[str, IdentityDescriptor]] = None
) -> Dict[str, IdentityDescriptor]:
    registry = dict(registry if registry is not None else registry_map())
    for text in overrides:
        identity_id, form, pattern = parse_expectation_override(text)
        descriptor = get_descriptor(identity_id, registry)
        if form not in descriptor.forms:
            raise ValueError(f"identity {identity_id!r} has no {form.value} form")
        expected = dict(descriptor.expected)
        expected[form.value] = pattern
        registry[identity_id] = descriptor.model_copy(update={"expected": expected})
    return registry
