import numpy as np

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Any, Literal

from .constants import SCHEMA_VERSION
from .types import ErrorKind
from .verdicts import Verdict

__all__ = [
    "QuadraticFormModel",
    "SignatureModel",
    "EigenModel",
    "TermModel",
    "MultivectorModel",
    "TensorModel",
    "LegendrePointModel",
    "ComplexValue",
    "Scalar",
    "to_scalar",
    "Report",
    "EigenReport",
    "SignatureReport",
    "MultivectorReport",
    "LegendrePointReport",
    "LegendreGridReport",
    "ShellReport",
    "BoundReport",
    "GridReport",
    "ValueReport",
    "VectorReport",
    "NormReport",
    "ResidualReport",
    "FockReport",
    "GammaReport",
    "CliffordAtReport",
    "HessianPairReport",
    "TruncationReport",
    "LedgerEntry",
    "LedgerReport",
    "ErrorDetail",
    "ErrorReport",
]


class QuadraticFormModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dim: int = Field(ge=1)
    coeffs: list[list[float]]

    @model_validator(mode="after")
    def _check_square(self):
        if len(self.coeffs) != self.dim or any(len(row) != self.dim for row in self.coeffs):
            raise ValueError(f"coeffs must be a {self.dim}x{self.dim} array")
        return self


class SignatureModel(BaseModel):
    n_plus: int = Field(ge=0)
    n_minus: int = Field(ge=0)
    n_zero: int = Field(ge=0)


class EigenModel(BaseModel):
    eigenvalues: list[float]
    eigenvectors: list[list[float]]  # columns of the orthonormal frame, one list per eigenvector


class TermModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    blades: list[int]  # 1-based generator indices in increasing order; [] is the scalar blade
    c: float

    @model_validator(mode="after")
    def _check_blades(self):
        if any(b < 1 for b in self.blades) or self.blades != sorted(set(self.blades)):
            raise ValueError(f"blades must be strictly increasing positive indices, got {self.blades}")
        return self


class MultivectorModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int = Field(ge=1)
    diag: list[float]
    terms: list[TermModel]

    @model_validator(mode="after")
    def _check_space(self):
        if len(self.diag) != self.n:
            raise ValueError(f"diag has {len(self.diag)} entries, expected {self.n}")
        if any(b > self.n for t in self.terms for b in t.blades):
            raise ValueError(f"blade index out of range for n={self.n}")
        return self


class TensorModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    shape: list[int]
    entries: list[float]  # row-major
    symmetry: Literal["none", "sym", "antisym"] = "none"

    @model_validator(mode="after")
    def _check_size(self):
        size = 1
        for d in self.shape:
            size *= d
        if size != len(self.entries):
            raise ValueError(f"shape {self.shape} needs {size} entries, got {len(self.entries)}")
        return self


class LegendrePointModel(BaseModel):
    y: list[float]
    x_star: list[float]
    z_star: float


class ComplexValue(BaseModel):
    re: float
    im: float


Scalar = float | ComplexValue


def to_scalar(v) -> Scalar:
    if isinstance(v, (complex, np.complexfloating)):
        return ComplexValue(re=float(v.real), im=float(v.imag))
    return float(v)


# CLI reports ----------------------------------------------------------------------------------------------------------

class Report(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")


class ValueReport(Report):
    value: Scalar
    params: dict[str, Any] = Field(default_factory=dict)


class VectorReport(Report):
    values: list[float]


class NormReport(Report):
    injective: float
    hs: float
    projective: float
    sigma: float
    singular_values: list[float]


class ResidualReport(Report):
    kernel: str
    function: str
    t: float
    quad_n: int
    inner_product: float
    expected: float
    residual: float


class FockReport(Report):
    pairing: str
    symmetry: Literal["tensor", "vee", "wedge"]
    points: list[Scalar]
    gram: list[list[Scalar]]
    value: Scalar


class GammaReport(Report):
    pairing: str
    symmetry: Literal["tensor", "vee", "wedge"]
    m_max: int
    blocks: list[Scalar]
    cross_order_max: float


class CliffordAtReport(Report):
    diag: list[float]
    frame: list[list[float]]
    signature: SignatureModel


class HessianPairReport(Report):
    y: list[float]
    x_star: list[float]
    fstar_hess: list[list[float]]
    inverse_hess: list[list[float]]
    residual: float


class TruncationReport(Report):
    head: list[float]
    tail_norm: float
    norm: Literal["l1", "l2"]


class LedgerEntry(BaseModel):
    key: str
    claim: str
    paper_value: Any
    oracle_value: Any
    verdict: Verdict
    detail: str = ""


class LedgerReport(Report):
    seed: int
    entries: list[LedgerEntry]


class ErrorDetail(BaseModel):
    kind: ErrorKind
    message: str
    details: dict[str, Any] = Field(default_factory=dict)
    traceback: str | None = None


class ErrorReport(Report):
    error: ErrorDetail


# Reports that wrap a plain model with the schema tag

class EigenReport(Report, EigenModel):
    pass


class SignatureReport(Report, SignatureModel):
    pass


class MultivectorReport(Report, MultivectorModel):
    pass


class LegendrePointReport(Report, LegendrePointModel):
    pass


class LegendreGridReport(Report):
    points: list[LegendrePointModel]


class ShellReport(Report):
    pairs: list[tuple[int, int]]


class BoundReport(Report):
    # Schauder truncation: hs norm of the actual remainder against the three-term bound, per n
    n: list[int]
    remainder: list[float]
    bound: list[float]


class GridReport(Report):
    points: list[Scalar]
    values: list[list[Scalar]]
