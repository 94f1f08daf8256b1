from typing import Iterable


class EulerianAuditError(ValueError):
    """Base class for every error raised on purpose by the package."""


class RationalParseError(EulerianAuditError):
    def __init__(self, text: str):
        super().__init__(f"malformed rational literal {text!r} (expected e.g. '-3/4' or '7')")
        self.text = text


class ZeroDenominatorError(EulerianAuditError):
    pass


class NonInvertibleError(EulerianAuditError):
    """Constant term of a series has no inverse in its coefficient ring."""

    def __init__(self, element):
        super().__init__(f"series constant term {element} is not invertible")
        self.element = element


class ClosureError(EulerianAuditError):
    """A division that must be exact left a remainder (internal consistency failure)."""


class NotAPrimeError(EulerianAuditError):
    def __init__(self, p: int):
        super().__init__(f"p={p} is not an odd prime")
        self.p = p


class CapExceededError(EulerianAuditError):
    def __init__(self, p: int, levels: int, cap: int):
        super().__init__(f"p^N = {p}^{levels} exceeds the configured cap {cap}")
        self.p = p
        self.levels = levels
        self.cap = cap


class BFileParseError(EulerianAuditError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class UnknownIdentityError(EulerianAuditError):
    def __init__(self, identity_id: str, available: Iterable[str]):
        self.available = sorted(available)
        super().__init__(
            f"unknown identity {identity_id!r}; available: {', '.join(self.available)}"
        )
        self.identity_id = identity_id


class UnknownFamilyError(EulerianAuditError):
    def __init__(self, family: str, available: Iterable[str]):
        self.available = sorted(available)
        super().__init__(f"unknown family {family!r}; available: {', '.join(self.available)}")
        self.family = family


class CandidateRejectedError(EulerianAuditError):
    """A corrected candidate formula disagreed with the series oracle."""
