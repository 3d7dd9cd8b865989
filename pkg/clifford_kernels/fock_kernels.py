import itertools
import math
import numpy as np

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import reduce
from typing import Any

from .config import Config
from .exceptions import DimensionMismatch, DomainError, SizeCapExceeded, UnsupportedTag
from .kernels import Kernel, make_kernel
from .logger import logger
from .types import FockSymmetry

__all__ = [
    "Pairing",
    "KernelGram",
    "kernel_gram",
    "permanent",
    "permanent_naive",
    "determinant",
    "sym_fock_kernel",
    "antisym_fock_kernel",
    "tensor_kernel_product",
    "FockKernelBlock",
    "gamma_block",
    "point_pairing",
    "example_pairing",
    "FOCK_SYMMETRIES",
]

# A bilinear (sesquilinear over ℂ) bracket (a*, b*) ↦ ⟨E a*, b*⟩ between two functionals
Pairing = Callable[[Any, Any], Any]

FOCK_SYMMETRIES: tuple[FockSymmetry, ...] = ("tensor", "vee", "wedge")


def _square(m) -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square array, got shape {a.shape}")
    return a


@dataclass(frozen=True, eq=False)
class KernelGram:
    """
    The m×m array M[j, k] = ⟨E a*_j, b*_k⟩. Entries may be real, complex or exact (Fraction, stored with
    object dtype).
    """

    entries: np.ndarray

    def __post_init__(self):
        a = _square(self.entries)
        if a.shape[0] < 1:
            raise DomainError("a kernel Gram needs at least one functional")
        if a.dtype != object and not np.all(np.isfinite(a)):
            raise DomainError("kernel Gram entries must be finite")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def of(cls, entries) -> "KernelGram":
        return cls(np.array(entries))


def kernel_gram(pairing: Pairing, as_: Sequence, bs: Sequence) -> KernelGram:
    if len(as_) != len(bs):
        raise DimensionMismatch(f"functional lists differ in length ({len(as_)} vs {len(bs)})",
                                expected=len(as_), got=len(bs))
    if not as_:
        raise DomainError("a kernel Gram needs at least one functional")
    return KernelGram(np.array([[pairing(a, b) for b in bs] for a in as_]))


def permanent(m) -> Any:
    """
    Ryser's inclusion–exclusion formula
        per(M) = (−1)^n Σ_{S ⊆ columns} (−1)^{|S|} Π_i Σ_{j∈S} M[i, j]
    with subsets visited in Gray-code order so that each step adds or removes a single column.
    """
    a = _square(m)
    n = a.shape[0]
    if n > Config.PERMANENT_MAX_ORDER:
        raise SizeCapExceeded(f"permanent of order {n} exceeds the cap {Config.PERMANENT_MAX_ORDER}",
                              order=n, cap=Config.PERMANENT_MAX_ORDER)
    if n == 0:
        return 1

    row_sums = np.zeros(n, dtype=a.dtype) if a.dtype != object else np.array([0] * n, dtype=object)
    total = 0
    in_subset = [False] * n
    for k in range(1, 2 ** n):
        j = (k & -k).bit_length() - 1  # column flipped between consecutive Gray codes
        if in_subset[j]:
            row_sums = row_sums - a[:, j]
        else:
            row_sums = row_sums + a[:, j]
        in_subset[j] = not in_subset[j]
        size = sum(in_subset)
        term = reduce(lambda x, y: x * y, row_sums.tolist(), 1)
        total = total + term if size % 2 == n % 2 else total - term

    logger.debug(f"Ryser permanent of order {n} visited {2 ** n - 1} subsets")
    return total


def permanent_naive(m) -> Any:
    """Literal sum over all permutations of Π_i M[i, σ(i)]."""
    a = _square(m)
    n = a.shape[0]
    if n > Config.PERMANENT_NAIVE_MAX_ORDER:
        raise SizeCapExceeded(f"naive permanent of order {n} exceeds the cap {Config.PERMANENT_NAIVE_MAX_ORDER}",
                              order=n, cap=Config.PERMANENT_NAIVE_MAX_ORDER)
    rows = a.tolist()
    total = 0
    for perm in itertools.permutations(range(n)):
        total = total + reduce(lambda x, y: x * y, (rows[i][perm[i]] for i in range(n)), 1)
    return total


def determinant(m) -> Any:
    """Gaussian elimination with partial pivoting; exact when the entries are Fractions."""
    a = [list(row) for row in _square(m).tolist()]
    n = len(a)
    det = 1
    for col in range(n):
        pivot = max(range(col, n), key=lambda r: abs(a[r][col]))
        if a[pivot][col] == 0:
            return 0 * det
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f != 0:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def sym_fock_kernel(g: KernelGram) -> Any:
    """⟨E^{∨m}(a₁*∨…∨a_m*), b₁*∨…∨b_m*⟩ = per(M)/m!"""
    return permanent(g.entries) / math.factorial(g.m)


def antisym_fock_kernel(g: KernelGram) -> Any:
    """⟨E^{∧m}(a₁*∧…∧a_m*), b₁*∧…∧b_m*⟩ = det(M)/m!"""
    return determinant(g.entries) / math.factorial(g.m)


def tensor_kernel_product(*pairings: Pairing) -> Pairing:
    """
    Pairing of E₁⊗…⊗E_k on elementary functionals a* = (a₁*, …, a_k*): the product of the factor pairings.
    """
    if not pairings:
        raise DomainError("need at least one factor pairing")

    def product(a: Sequence, b: Sequence):
        if len(a) != len(pairings) or len(b) != len(pairings):
            raise DimensionMismatch(f"elementary functionals must have {len(pairings)} factors",
                                    expected=len(pairings), got=[len(a), len(b)])
        return reduce(lambda acc, item: acc * item[0](item[1], item[2]), zip(pairings, a, b), 1)

    return product


@dataclass(frozen=True, eq=False)
class FockKernelBlock:
    """
    Block-diagonal kernel of the truncated Fock space ℝ ⊕ E ⊕ E^{⊥2} ⊕ … ⊕ E^{⊥m_max}.
    Functionals of order k are sequences of k base functionals; pairing two functionals of different
    orders gives exactly 0.
    """

    pairing: Pairing
    m_max: int
    symmetry: FockSymmetry

    def order_kernel(self, a: Sequence, b: Sequence) -> Any:
        k = len(a)
        if k == 0:
            return 1.0
        g = kernel_gram(self.pairing, a, b)
        if self.symmetry == "vee":
            return sym_fock_kernel(g)
        if self.symmetry == "wedge":
            return antisym_fock_kernel(g)
        return reduce(lambda x, y: x * y, np.diag(g.entries).tolist(), 1)

    def evaluate(self, a: Sequence, b: Sequence) -> Any:
        if len(a) > self.m_max or len(b) > self.m_max:
            raise DomainError(f"functional order exceeds the truncation m_max={self.m_max}",
                              orders=[len(a), len(b)], m_max=self.m_max)
        if len(a) != len(b):
            return 0.0
        return self.order_kernel(a, b)

    def diagonal(self, functionals: Sequence) -> list[Any]:
        """Block values at orders 0..m_max using the leading functionals paired with themselves."""
        if len(functionals) < self.m_max:
            raise DomainError(f"need at least {self.m_max} functionals, got {len(functionals)}")
        return [self.evaluate(functionals[:k], functionals[:k]) for k in range(self.m_max + 1)]

    def cross_order_max(self, functionals: Sequence) -> float:
        """Largest magnitude over all pairings between leading prefixes of different orders."""
        values = [abs(self.evaluate(functionals[:j], functionals[:k]))
                  for j in range(self.m_max + 1) for k in range(self.m_max + 1) if j != k]
        return float(max(values, default=0.0))


def gamma_block(pairing: Pairing, m_max: int, symmetry: FockSymmetry) -> FockKernelBlock:
    if symmetry not in FOCK_SYMMETRIES:
        raise UnsupportedTag(f"unknown symmetry tag {symmetry!r}; choose from {FOCK_SYMMETRIES}", tag=symmetry)
    if m_max < 0:
        raise DomainError(f"m_max must be nonnegative, got {m_max}")
    return FockKernelBlock(pairing=pairing, m_max=m_max, symmetry=symmetry)


def point_pairing(kernel: Kernel) -> Pairing:
    """Pairing of point-evaluation functionals: ⟨E δ_s, δ_t⟩ = H(s, t)."""
    def pairing(s, t):
        return kernel(s, t)
    return pairing


def example_pairing(name: str, **params) -> Pairing:
    return point_pairing(make_kernel(name, **params))
