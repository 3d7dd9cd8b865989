from typing import Literal

__all__ = [
    "NormTag",
    "VectorNormTag",
    "SymmetryTag",
    "FockSymmetry",
    "SequenceNormTag",
    "FieldTag",
    "BoundaryCondition",
    "InnerProductKind",
    "OutputFormat",
    "ErrorKind",
]

NormTag = Literal["injective", "projective", "hs"]
VectorNormTag = Literal["euclidean", "metric"]

# Storage symmetry of a dense order-p tensor
SymmetryTag = Literal["none", "sym", "antisym"]
# The product used to build a Fock space: tensor (⊗), vee (∨), wedge (∧)
FockSymmetry = Literal["tensor", "vee", "wedge"]

SequenceNormTag = Literal["l1", "l2"]
FieldTag = Literal["real", "complex"]
BoundaryCondition = Literal["dirichlet", "neumann"]
InnerProductKind = Literal["point_derivatives", "integral"]

OutputFormat = Literal["json", "csv"]

ErrorKind = Literal[
    "dimension_mismatch",
    "space_mismatch",
    "domain",
    "convergence",
    "degenerate_form",
    "singular_operator",
    "size_cap",
    "unsupported_tag",
]
