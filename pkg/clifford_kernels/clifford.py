import itertools
import math
import numbers
import re
import numpy as np

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from types import MappingProxyType

from .config import Config
from .exceptions import DegenerateFormError, DimensionMismatch, DomainError, SpaceMismatch, UnsupportedTag
from .models import MultivectorModel, TermModel
from .quadratic import QuadraticForm, Signature
from .tensor import TensorP, permutation_parity, tensor_norm
from .types import NormTag, VectorNormTag
from .utils import as_vector, check_length

__all__ = [
    "CliffordSpace",
    "Multivector",
    "blade_indices",
    "blade_mask",
    "blade_product",
    "from_vector",
    "scalar",
    "basis_blade",
    "basis_blades",
    "geometric_product",
    "wedge",
    "grade_project",
    "scalar_part",
    "reverse",
    "to_antisymmetric_tensor",
    "norm_gamma",
    "normalize",
    "rescale",
    "embed",
    "parse_multivector",
]

NORM_TAGS: tuple[NormTag, ...] = ("injective", "projective", "hs")
VECTOR_NORM_TAGS: tuple[VectorNormTag, ...] = ("euclidean", "metric")


@dataclass(frozen=True)
class CliffordSpace:
    """
    Generators e_1..e_n of an orthogonal frame with e_j² = diag[j]. The diagonal entries are kept at their raw
    (eigenvalue) scale; see normalize() for the ±1 rescaling.
    """

    diag: tuple[float, ...]

    def __post_init__(self):
        if len(self.diag) < 1:
            raise DimensionMismatch("a Clifford space needs at least one generator")
        if not all(math.isfinite(d) for d in self.diag):
            raise DomainError("metric diagonal must be finite")

    @classmethod
    def of(cls, diag: Iterable[float]) -> "CliffordSpace":
        return cls(tuple(float(d) for d in diag))

    @classmethod
    def euclidean(cls, n: int) -> "CliffordSpace":
        return cls((1.0,) * n)

    @classmethod
    def from_form(cls, form: QuadraticForm) -> "CliffordSpace":
        if not form.is_diagonal:
            raise DomainError("Clifford spaces are built over diagonal forms; diagonalize the form first")
        return cls.of(np.diag(form.coeffs))

    @property
    def n(self) -> int:
        return len(self.diag)

    @property
    def blade_count(self) -> int:
        return 1 << self.n

    def signature(self, zero_tol: float = 0.0) -> Signature:
        n_plus = sum(1 for d in self.diag if d > zero_tol)
        n_minus = sum(1 for d in self.diag if d < -zero_tol)
        return Signature(n_plus=n_plus, n_minus=n_minus, n_zero=self.n - n_plus - n_minus)


def blade_indices(mask: int) -> list[int]:
    """1-based generator indices of a blade mask, in increasing order."""
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def blade_mask(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << (i - 1)
    return mask


def _reordering_sign(a: int, b: int) -> int:
    # Number of transpositions to merge blade a past blade b into increasing order
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(mask_a: int, mask_b: int, diag) -> tuple[float, int]:
    """
    Product of two basis blades: returns (sign · Π_{j ∈ a∩b} diag[j], a Δ b).
    """
    if mask_a < 0 or mask_b < 0 or max(mask_a, mask_b) >> len(diag):
        raise DimensionMismatch(f"blade masks {mask_a}, {mask_b} out of range for {len(diag)} generators")
    factor = float(_reordering_sign(mask_a, mask_b))
    common = mask_a & mask_b
    j = 0
    while common:
        if common & 1:
            factor *= diag[j]
        common >>= 1
        j += 1
    return factor, mask_a ^ mask_b


def _format_term(mask: int, c: float) -> str:
    word = "".join(f"e{i}" for i in blade_indices(mask))
    if not word:
        return repr(c)
    return word if c == 1.0 else f"{c!r}*{word}"


class Multivector:
    """
    Sparse element of C(E, q): a table from blade mask to coefficient. Coefficients below the prune tolerance are
    dropped whenever a multivector is built, so the table never holds numerical zeros.
    """

    __slots__ = ("_space", "_terms")

    def __init__(self, space: CliffordSpace, terms: Mapping[int, float] | None = None, prune_tol: float | None = None):
        prune_tol = Config.PRUNE_TOL if prune_tol is None else prune_tol
        limit = space.blade_count
        kept: dict[int, float] = {}
        for mask, c in (terms or {}).items():
            if not 0 <= mask < limit:
                raise DimensionMismatch(f"blade mask {mask} out of range for n={space.n}")
            if abs(c) >= prune_tol:
                kept[mask] = float(c)
        self._space = space
        self._terms = MappingProxyType(dict(sorted(kept.items(), key=lambda kv: (kv[0].bit_count(), kv[0]))))

    @property
    def space(self) -> CliffordSpace:
        return self._space

    @property
    def terms(self) -> Mapping[int, float]:
        return self._terms

    def __getitem__(self, mask: int) -> float:
        return self._terms.get(mask, 0.0)

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def grades(self) -> list[int]:
        return sorted({m.bit_count() for m in self._terms})

    def _check(self, other: "Multivector") -> None:
        if other.space != self._space:
            raise SpaceMismatch(f"multivectors live in different spaces ({self._space.diag} vs {other.space.diag})")

    def __add__(self, other):
        if isinstance(other, numbers.Real):
            other = scalar(self._space, float(other))
        self._check(other)
        out = dict(self._terms)
        for mask, c in other.terms.items():
            out[mask] = out.get(mask, 0.0) + c
        return Multivector(self._space, out)

    __radd__ = __add__

    def __neg__(self) -> "Multivector":
        return Multivector(self._space, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Real):
            return Multivector(self._space, {m: c * float(other) for m, c in self._terms.items()})
        return geometric_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, numbers.Real):
            return self * other
        return NotImplemented

    def __xor__(self, other: "Multivector") -> "Multivector":
        return wedge(self, other)

    def allclose(self, other: "Multivector", atol: float = 1e-10) -> bool:
        self._check(other)
        masks = set(self._terms) | set(other.terms)
        return all(abs(self[m] - other[m]) <= atol for m in masks)

    @classmethod
    def from_model(cls, model: MultivectorModel) -> "Multivector":
        space = CliffordSpace.of(model.diag)
        out: dict[int, float] = {}
        for t in model.terms:
            mask = blade_mask(t.blades)
            out[mask] = out.get(mask, 0.0) + t.c
        return cls(space, out)

    def to_model(self) -> MultivectorModel:
        return MultivectorModel(
            n=self._space.n,
            diag=list(self._space.diag),
            terms=[TermModel(blades=blade_indices(m), c=c) for m, c in self._terms.items()],
        )

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(_format_term(m, c) for m, c in self._terms.items()).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Multivector(n={self._space.n}, {self})"


def scalar(space: CliffordSpace, c: float) -> Multivector:
    return Multivector(space, {0: c})


def basis_blade(space: CliffordSpace, indices: Iterable[int], c: float = 1.0) -> Multivector:
    indices = list(indices)
    if any(not 1 <= i <= space.n for i in indices) or len(set(indices)) != len(indices):
        raise DimensionMismatch(f"invalid generator indices {indices} for n={space.n}")
    return Multivector(space, {blade_mask(indices): c})


def basis_blades(space: CliffordSpace) -> list[Multivector]:
    """All products of distinct generators in increasing order, scalar first."""
    generators = range(1, space.n + 1)
    return [basis_blade(space, idx) for k in range(space.n + 1) for idx in itertools.combinations(generators, k)]


def from_vector(space: CliffordSpace, x) -> Multivector:
    x = check_length(as_vector(x), space.n)
    return Multivector(space, {1 << j: float(x[j]) for j in range(space.n)})


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    diag = a.space.diag
    out: dict[int, float] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            factor, mask = blade_product(ma, mb, diag)
            if factor != 0.0:
                out[mask] = out.get(mask, 0.0) + factor * ca * cb
    return Multivector(a.space, out)


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """
    Exterior product: the grade-(r+s) part of the product of homogeneous parts. Only disjoint blades contribute,
    so the result does not depend on the metric.
    """
    a._check(b)
    out: dict[int, float] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb == 0:
                out[ma | mb] = out.get(ma | mb, 0.0) + _reordering_sign(ma, mb) * ca * cb
    return Multivector(a.space, out)


def grade_project(a: Multivector, k: int) -> Multivector:
    if not 0 <= k <= a.space.n:
        raise DomainError(f"grade {k} outside 0..{a.space.n}")
    return Multivector(a.space, {m: c for m, c in a.terms.items() if m.bit_count() == k})


def scalar_part(a: Multivector) -> float:
    return a[0]


def reverse(a: Multivector) -> Multivector:
    return Multivector(a.space, {m: c * (-1) ** (m.bit_count() * (m.bit_count() - 1) // 2)
                                 for m, c in a.terms.items()})


def to_antisymmetric_tensor(a: Multivector, k: int) -> TensorP:
    """
    Embeds the grade-k part of a as an order-k antisymmetric tensor: e_{j1}…e_{jk} ↦ e_{j1}∧…∧e_{jk}
    = (1/k!) Σ_σ ε(σ) e_{jσ(1)}⊗…⊗e_{jσ(k)}.
    """
    n = a.space.n
    if not 1 <= k <= n:
        raise DomainError(f"grade {k} has no tensor embedding for n={n}")

    out = np.zeros((n,) * k)
    scale = 1 / math.factorial(k)
    perms = [(p, permutation_parity(p)) for p in itertools.permutations(range(k))]
    for mask, c in a.terms.items():
        if mask.bit_count() != k:
            continue
        idx = [i - 1 for i in blade_indices(mask)]
        for perm, sign in perms:
            out[tuple(idx[p] for p in perm)] = sign * c * scale
    return TensorP(out, "antisym", checked=False)


def norm_gamma(a: Multivector, nu: VectorNormTag = "euclidean", gamma: NormTag = "hs") -> float:
    """
    Gradewise tensor norm of a multivector: each grade-k part is embedded as an antisymmetric order-k tensor and
    measured with the chosen tensor norm; the grade norms are summed.
    With nu="metric" generator e_j is measured with weight √|diag[j]| instead of 1.
    """
    if gamma not in NORM_TAGS:
        raise UnsupportedTag(f"unknown tensor norm {gamma!r}", tag=gamma)
    if nu not in VECTOR_NORM_TAGS:
        raise UnsupportedTag(f"unknown vector norm {nu!r}", tag=nu)

    if nu == "metric":
        weights = [math.sqrt(abs(d)) for d in a.space.diag]
        a = Multivector(a.space, {m: c * math.prod(weights[i - 1] for i in blade_indices(m))
                                  for m, c in a.terms.items()})

    total = 0.0
    for k in a.grades():
        if k == 0:
            total += abs(a[0])
        else:
            total += tensor_norm(to_antisymmetric_tensor(a, k), gamma)
    return total


def normalize(space: CliffordSpace) -> CliffordSpace:
    """The same algebra over the rescaled generators e_j/√|diag[j]|, whose squares are ±1."""
    if any(d == 0.0 for d in space.diag):
        raise DegenerateFormError("cannot rescale a degenerate generator", signature=space.signature())
    return CliffordSpace(tuple(math.copysign(1.0, d) for d in space.diag))


def rescale(a: Multivector) -> Multivector:
    """Coordinates of a in the normalized space: e_M = (Π_{j∈M} √|diag[j]|) f_M."""
    unit = normalize(a.space)
    roots = [math.sqrt(abs(d)) for d in a.space.diag]
    return Multivector(unit, {m: c * math.prod(roots[i - 1] for i in blade_indices(m)) for m, c in a.terms.items()})


def embed(a: Multivector, larger: CliffordSpace) -> Multivector:
    """
    Injects a into the algebra of a larger space whose first generators carry the same metric.
    Products are preserved, so the smaller algebra is a subalgebra of the larger one.
    """
    n = a.space.n
    if larger.n < n or larger.diag[:n] != a.space.diag:
        raise SpaceMismatch(f"space {a.space.diag} is not a prefix of {larger.diag}")
    return Multivector(larger, dict(a.terms))


_TERM_RE = re.compile(r"""
    \s*(?P<sign>[+-])?\s*
    (?:(?P<coef>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(?:\*\s*)?)?
    (?P<word>(?:e\d+)*)
    \s*""", re.VERBOSE)
_GENERATOR_RE = re.compile(r"e(\d+)")


def parse_multivector(space: CliffordSpace, text: str) -> Multivector:
    """
    Parses sums of terms such as "1 + 2*e1 - 0.5*e1e2". Generator words may be in any order and may repeat;
    each word is reduced with the geometric product of the space, so "e2e1" is −e1e2 and "e1e1" is diag[0].
    A coefficient directly followed by a generator needs the "*" ("2*e1"), since "2e1" reads as the number 20.
    """
    text = text.strip()
    if not text:
        raise DomainError("empty multivector expression")

    out: dict[int, float] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos or not (m["coef"] or m["word"]) or (pos > 0 and not m["sign"]):
            raise DomainError(f"cannot parse multivector term at position {pos} of {text!r}", position=pos)

        factor = float(m["coef"]) if m["coef"] else 1.0
        if m["sign"] == "-":
            factor = -factor
        mask = 0
        for g in _GENERATOR_RE.findall(m["word"]):
            j = int(g)
            if not 1 <= j <= space.n:
                raise DimensionMismatch(f"generator e{j} out of range for n={space.n}")
            f, mask = blade_product(mask, 1 << (j - 1), space.diag)
            factor *= f
        out[mask] = out.get(mask, 0.0) + factor
        pos = m.end()

    return Multivector(space, out)
