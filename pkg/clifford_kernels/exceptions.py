from typing import Any

from .types import ErrorKind

__all__ = [
    "NumericalError",
    "DimensionMismatch",
    "SpaceMismatch",
    "DomainError",
    "ConvergenceError",
    "DegenerateFormError",
    "SingularOperatorError",
    "SizeCapExceeded",
    "UnsupportedTag",
]


class NumericalError(Exception):
    kind: ErrorKind = "convergence"

    def __init__(self, message: str, **details: Any):
        self._details: dict[str, Any] = details
        super().__init__(message)

    @property
    def details(self) -> dict[str, Any]:
        return dict(self._details)


class DimensionMismatch(NumericalError, ValueError):
    kind: ErrorKind = "dimension_mismatch"


class SpaceMismatch(NumericalError, ValueError):
    kind: ErrorKind = "space_mismatch"


class DomainError(NumericalError, ValueError):
    kind: ErrorKind = "domain"


class ConvergenceError(NumericalError):
    kind: ErrorKind = "convergence"

    def __init__(self, message: str, residual: float, **details: Any):
        self._residual: float = float(residual)
        super().__init__(message, residual=float(residual), **details)

    @property
    def residual(self) -> float:
        return self._residual


class DegenerateFormError(NumericalError):
    kind: ErrorKind = "degenerate_form"

    def __init__(self, message: str, signature, **details: Any):
        self._signature = signature
        super().__init__(
            message,
            signature={"n_plus": signature.n_plus, "n_minus": signature.n_minus, "n_zero": signature.n_zero},
            **details,
        )

    @property
    def signature(self):
        return self._signature


class SingularOperatorError(NumericalError):
    kind: ErrorKind = "singular_operator"


class SizeCapExceeded(NumericalError, ValueError):
    kind: ErrorKind = "size_cap"


class UnsupportedTag(NumericalError, ValueError):
    kind: ErrorKind = "unsupported_tag"
