from enum import Enum
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"


class Form(str, Enum):
    AS_STATED = "as_stated"
    CORRECTED = "corrected_candidate"


class Expectation(str, Enum):
    """Which n the registry expects to PASS; every other n is expected to FAIL."""

    ALL = "all"
    ODD = "odd"
    EVEN = "even"
    NONE = "none"

    def expects_pass(self, n: int) -> bool:
        if self is Expectation.ALL:
            return True
        if self is Expectation.ODD:
            return n % 2 == 1
        if self is Expectation.EVEN:
            return n % 2 == 0
        return False


class Witness(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    lhs: str
    rhs: str
    difference: str


class VerdictRow(BaseModel):
    """One (identity, form, n) comparison; the unit of JSON/CSV output."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    identity_id: str = Field(serialization_alias="id")
    form: Form
    n: int
    status: Status
    grade_match: bool
    coefficient_match: bool
    expected: Optional[Status] = None
    deviation: Optional[bool] = None
    lhs: str
    rhs: str
    diff: str


class IdentityVerdict(BaseModel):
    """Verdict of one identity form over an n range; FAIL carries the first failing witness."""

    model_config = ConfigDict(frozen=True)

    identity_id: str
    form: Form
    n_range: Tuple[int, int]
    status: Status
    witness: Optional[Witness] = None
    rows: List[VerdictRow] = Field(default_factory=list)


class IdentityDescriptor(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    locus: str
    quote: str
    forms: List[Form]
    n_default: Tuple[int, Optional[int]]
    expected: Dict[str, Expectation]
    notes: str = ""
    oracle: Optional[str] = None


class Summary(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: int = Field(serialization_alias="pass")
    failed: int = Field(serialization_alias="fail")
    deviations: int


class ReportHeader(BaseModel):
    started: str
    elapsed_seconds: float


class AuditReport(BaseModel):
    header: Optional[ReportHeader] = None
    version: str
    registry: List[IdentityDescriptor]
    verdicts: List[VerdictRow]
    summary: Summary


class CrossCheckResult(BaseModel):
    sequence: str
    offset: int
    compared: int
    first_index: Optional[int] = None
    last_index: Optional[int] = None
    mismatch_index: Optional[int] = None
    expected_value: Optional[str] = None
    actual_value: Optional[str] = None

    @property
    def matched(self) -> bool:
        return self.mismatch_index is None
