import itertools
import math
import numpy as np

from dataclasses import dataclass
from functools import cached_property

from .config import Config
from .exceptions import ConvergenceError, DimensionMismatch, DomainError, SizeCapExceeded, UnsupportedTag
from .logger import logger
from .models import TensorModel
from .types import FockSymmetry, NormTag, SequenceNormTag, SymmetryTag
from .utils import as_vector

__all__ = [
    "Tensor2",
    "TensorP",
    "CoeffSequence",
    "permutation_parity",
    "tensor2",
    "wedge2",
    "vee2",
    "elementary",
    "wedge_p",
    "vee_p",
    "symmetrize",
    "antisymmetrize",
    "pairing",
    "injective_norm",
    "projective_norm",
    "hs_norm",
    "agm",
    "sigma_norm",
    "injective_bounds",
    "projective_bounds",
    "tensor_norm",
    "enumerate_shells",
    "schauder_truncate",
    "truncation_remainder",
    "tensor_basis_truncation_error",
    "shell_truncation_errors",
    "fock_dimension",
]

SYMMETRY_CHECK_TOL = 1e-12
POWER_ITERATION_MAX_SWEEPS = 200
POWER_ITERATION_TOL = 1e-13


def _check_size(dims: tuple[int, ...]) -> None:
    if any(d < 1 for d in dims):
        raise DimensionMismatch(f"tensor slot dimensions must be positive, got {dims}")
    log_size = len(dims) * math.log2(max(dims))
    if log_size > Config.TENSOR_MAX_LOG_SIZE:
        raise SizeCapExceeded(
            f"dense tensor of shape {dims} exceeds the size cap (p·log2(max dim) = {log_size:.1f})",
            shape=list(dims), cap=Config.TENSOR_MAX_LOG_SIZE)


class Tensor2:
    """
    Order-2 tensor over Euclidean factors, stored as a rectangular array.
    Singular values are computed at construction, since every order-2 norm is a function of them.
    """

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or 0 in a.shape:
            raise DimensionMismatch(f"order-2 tensor needs a non-empty 2-D array, got shape {a.shape}")
        a.setflags(write=False)
        self._entries = a

        try:
            sv = np.linalg.svd(a, compute_uv=False)
        except np.linalg.LinAlgError as e:
            raise ConvergenceError(f"SVD did not converge: {e}", residual=float("nan"))
        sv = np.maximum(sv, 0.0)
        sv.setflags(write=False)
        self._singular_values = sv

    @property
    def rows(self) -> int:
        return self._entries.shape[0]

    @property
    def cols(self) -> int:
        return self._entries.shape[1]

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def singular_values(self) -> np.ndarray:
        return self._singular_values

    def __add__(self, other: "Tensor2") -> "Tensor2":
        return Tensor2(self._entries + other.entries)

    def __sub__(self, other: "Tensor2") -> "Tensor2":
        return Tensor2(self._entries - other.entries)

    def __mul__(self, scalar: float) -> "Tensor2":
        return Tensor2(self._entries * float(scalar))

    __rmul__ = __mul__

    def to_tensor_p(self) -> "TensorP":
        return TensorP(self._entries)

    @classmethod
    def from_model(cls, model: TensorModel) -> "Tensor2":
        if len(model.shape) != 2:
            raise DimensionMismatch(f"expected an order-2 tensor, got shape {model.shape}")
        return cls(np.array(model.entries, dtype=float).reshape(model.shape))

    def to_model(self) -> TensorModel:
        return TensorModel(shape=[self.rows, self.cols], entries=self._entries.ravel().tolist())

    def __repr__(self) -> str:
        return f"Tensor2({self._entries.tolist()})"


def permutation_parity(perm) -> int:
    """
    Sign ε(σ) of a permutation given as a sequence of distinct integers: +1 for even, -1 for odd.
    """
    perm = list(perm)
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def _project(a: np.ndarray, alternating: bool) -> np.ndarray:
    p = a.ndim
    if p > Config.SYMMETRIZE_MAX_ORDER:
        raise SizeCapExceeded(f"cannot enumerate {p}! permutations (order cap {Config.SYMMETRIZE_MAX_ORDER})",
                              order=p, cap=Config.SYMMETRIZE_MAX_ORDER)
    if len(set(a.shape)) > 1:
        raise DimensionMismatch(f"symmetrization needs equal slot dimensions, got {a.shape}")

    acc = np.zeros_like(a, dtype=float)
    for perm in itertools.permutations(range(p)):
        sign = permutation_parity(perm) if alternating else 1
        acc += sign * np.transpose(a, perm)
    return acc / math.factorial(p)


class TensorP:
    """
    Dense order-p tensor with an optional symmetry tag. Tagged tensors are checked on construction:
    a "sym" tensor is invariant under slot permutations, an "antisym" one picks up the permutation sign.
    Builders whose output carries the symmetry by construction pass checked=False to skip the p!-term check.
    """

    def __init__(self, entries, symmetry: SymmetryTag = "none", *, checked: bool = True):
        a = np.array(entries, dtype=float)
        if a.ndim < 1:
            raise DimensionMismatch("order-p tensor needs at least one slot")
        _check_size(a.shape)

        if symmetry not in ("none", "sym", "antisym"):
            raise UnsupportedTag(f"unknown symmetry tag {symmetry!r}", tag=symmetry)
        if checked and symmetry != "none":
            projected = _project(a, alternating=symmetry == "antisym")
            gap = float(np.max(np.abs(projected - a)))
            if gap > SYMMETRY_CHECK_TOL * max(1.0, float(np.max(np.abs(a)))):
                raise DomainError(f"entries are not {symmetry} (max deviation {gap:.3e})", deviation=gap)

        a.setflags(write=False)
        self._entries = a
        self._symmetry: SymmetryTag = symmetry

    @property
    def order(self) -> int:
        return self._entries.ndim

    @property
    def dims(self) -> tuple[int, ...]:
        return self._entries.shape

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def symmetry(self) -> SymmetryTag:
        return self._symmetry

    @cached_property
    def frobenius(self) -> float:
        return float(np.linalg.norm(self._entries.ravel()))

    def to_tensor2(self) -> Tensor2:
        if self.order != 2:
            raise DimensionMismatch(f"tensor has order {self.order}, not 2")
        return Tensor2(self._entries)

    def __add__(self, other: "TensorP") -> "TensorP":
        if self.dims != other.dims:
            raise DimensionMismatch(f"cannot add tensors of shapes {self.dims} and {other.dims}")
        tag = self._symmetry if self._symmetry == other.symmetry else "none"
        return TensorP(self._entries + other.entries, tag, checked=False)

    def __mul__(self, scalar: float) -> "TensorP":
        return TensorP(self._entries * float(scalar), self._symmetry, checked=False)

    __rmul__ = __mul__

    @classmethod
    def from_model(cls, model: TensorModel) -> "TensorP":
        return cls(np.array(model.entries, dtype=float).reshape(model.shape), model.symmetry)

    def to_model(self) -> TensorModel:
        return TensorModel(shape=list(self.dims), entries=self._entries.ravel().tolist(), symmetry=self._symmetry)

    def __repr__(self) -> str:
        return f"TensorP(order={self.order}, dims={self.dims}, symmetry={self._symmetry!r})"


# Constructors ---------------------------------------------------------------------------------------------------------

def tensor2(x, y) -> Tensor2:
    return Tensor2(np.outer(as_vector(x), as_vector(y)))


def _same_length(x: np.ndarray, y: np.ndarray) -> None:
    if x.shape != y.shape:
        raise DimensionMismatch(f"factor lengths differ: {x.shape[0]} and {y.shape[0]}")


def wedge2(x, y) -> Tensor2:
    """x∧y = (1/2!)(x⊗y − y⊗x)"""
    x, y = as_vector(x), as_vector(y)
    _same_length(x, y)
    return Tensor2((np.outer(x, y) - np.outer(y, x)) / 2)


def vee2(x, y) -> Tensor2:
    """x∨y = (1/2!)(x⊗y + y⊗x)"""
    x, y = as_vector(x), as_vector(y)
    _same_length(x, y)
    return Tensor2((np.outer(x, y) + np.outer(y, x)) / 2)


def elementary(*vectors) -> TensorP:
    if not vectors:
        raise DimensionMismatch("need at least one factor")
    out = as_vector(vectors[0])
    for v in vectors[1:]:
        out = np.multiply.outer(out, as_vector(v))
    return TensorP(out)


def wedge_p(*vectors) -> TensorP:
    return antisymmetrize(elementary(*vectors))


def vee_p(*vectors) -> TensorP:
    return symmetrize(elementary(*vectors))


def symmetrize(t: TensorP) -> TensorP:
    return TensorP(_project(t.entries, alternating=False), "sym", checked=False)


def antisymmetrize(t: TensorP) -> TensorP:
    return TensorP(_project(t.entries, alternating=True), "antisym", checked=False)


def pairing(t: TensorP | Tensor2, s: TensorP | Tensor2) -> float:
    if t.entries.shape != s.entries.shape:
        raise DimensionMismatch(f"cannot pair shapes {t.entries.shape} and {s.entries.shape}")
    return float(np.sum(t.entries * s.entries))


# Order-2 norms --------------------------------------------------------------------------------------------------------

def injective_norm(t: Tensor2) -> float:
    return float(t.singular_values[0])


def projective_norm(t: Tensor2) -> float:
    return float(np.sum(t.singular_values))


def hs_norm(t: Tensor2) -> float:
    return float(np.sqrt(np.sum(t.singular_values ** 2)))


def agm(a: float, b: float, tol: float | None = None) -> float:
    """
    Arithmetic–geometric mean of two nonnegative numbers, iterated until the relative gap drops below tol.
    """
    tol = Config.AGM_TOL if tol is None else tol
    if tol <= 0:
        raise DomainError(f"agm_tol must be positive, got {tol}")
    if a < 0 or b < 0:
        raise DomainError(f"AGM arguments must be nonnegative, got ({a}, {b})")

    lo, hi = min(a, b), max(a, b)
    if lo == 0.0:
        return 0.0

    i = 0
    while (hi - lo) / hi >= tol:
        hi, lo = (hi + lo) / 2, math.sqrt(hi * lo)
        hi, lo = max(hi, lo), min(hi, lo)
        i += 1
        if i > 100:  # quadratic convergence makes this unreachable for finite inputs
            raise ConvergenceError("AGM did not converge", residual=(hi - lo) / hi)
    logger.debug(f"AGM converged after {i} iterations")
    return (hi + lo) / 2


def sigma_norm(t: Tensor2, agm_tol: float | None = None) -> float:
    eps, pi = injective_norm(t), projective_norm(t)
    # AGM lies between its arguments; clip so rounding never leaves [ε, π]
    return min(max(agm(eps, pi, agm_tol), eps), pi)


# Higher-order bounds --------------------------------------------------------------------------------------------------

def _contract_except(a: np.ndarray, vectors: list[np.ndarray], keep: int) -> np.ndarray:
    out = a
    for axis in reversed(range(a.ndim)):
        if axis != keep:
            out = np.tensordot(out, vectors[axis], axes=([axis], [0]))
    return out


def _unfold(a: np.ndarray, mode: int) -> np.ndarray:
    return np.moveaxis(a, mode, 0).reshape(a.shape[mode], -1)


def _power_iteration(a: np.ndarray, start: list[np.ndarray]) -> float:
    vectors = [v / np.linalg.norm(v) for v in start]
    value = 0.0
    for _ in range(POWER_ITERATION_MAX_SWEEPS):
        for k in range(a.ndim):
            w = _contract_except(a, vectors, k)
            nw = np.linalg.norm(w)
            if nw == 0.0:
                return 0.0
            vectors[k] = w / nw
        new_value = abs(float(np.dot(_contract_except(a, vectors, 0), vectors[0])))
        if abs(new_value - value) <= POWER_ITERATION_TOL * max(new_value, 1.0):
            return new_value
        value = new_value
    return value


def injective_bounds(
    t: TensorP,
    rng: np.random.Generator | None = None,
    restarts: int = 4,
) -> tuple[float, float]:
    """
    Lower and upper bounds on the injective norm of an order-p tensor over Euclidean factors.
    The lower bound is the best value of a higher-order power iteration (one HOSVD-initialized run plus random
    restarts); the upper bound is the smallest spectral norm over the single-mode flattenings.
    """
    a = t.entries
    if t.order <= 2:
        v = float(np.linalg.norm(a, 2)) if t.order == 2 else float(np.linalg.norm(a))
        return v, v

    rng = np.random.default_rng(Config.DEFAULT_SEED) if rng is None else rng

    hosvd = [np.linalg.svd(_unfold(a, k), full_matrices=False)[0][:, 0] for k in range(t.order)]
    lower = _power_iteration(a, hosvd)
    for _ in range(restarts):
        lower = max(lower, _power_iteration(a, [rng.standard_normal(d) for d in a.shape]))

    upper = min(float(np.linalg.norm(_unfold(a, k), 2)) for k in range(t.order))
    return min(lower, upper), upper


def _slice_nuclear(a: np.ndarray) -> float:
    if a.ndim == 1:
        return float(np.linalg.norm(a))
    if a.ndim == 2:
        return float(np.sum(np.linalg.svd(a, compute_uv=False)))
    return sum(_slice_nuclear(a[i]) for i in range(a.shape[0]))


def projective_bounds(t: TensorP) -> tuple[float, float]:
    """
    Lower and upper bounds on the projective norm of an order-p tensor over Euclidean factors.
    Lower: the largest of the flattening nuclear norms and ‖T‖²_F / (injective upper bound).
    Upper: the best slice decomposition T = Σ_i e_i ⊗ T_i along any one slot, recursing down to order 2.
    """
    a = t.entries
    if t.order <= 2:
        v = _slice_nuclear(a)
        return v, v

    frob = t.frobenius
    _, eps_upper = injective_bounds(t, restarts=0)
    lower = max(float(np.sum(np.linalg.svd(_unfold(a, k), compute_uv=False))) for k in range(t.order))
    if eps_upper > 0:
        lower = max(lower, frob * frob / eps_upper)

    upper = min(_slice_nuclear(np.moveaxis(a, k, 0)) for k in range(t.order))
    return min(lower, upper), upper


def tensor_norm(t: TensorP, gamma: NormTag, rng: np.random.Generator | None = None) -> float:
    """
    Norm of an order-p tensor over Euclidean factors: exact for p ≤ 2; for p ≥ 3 the injective value is the
    power-iteration lower bound and the projective value the slice-decomposition upper bound, so that
    injective ≤ hs ≤ projective still holds.
    """
    if gamma == "hs":
        return t.frobenius
    if t.order == 1:
        if gamma not in ("injective", "projective"):
            raise UnsupportedTag(f"unknown norm tag {gamma!r}", tag=gamma)
        return t.frobenius
    if gamma == "injective":
        return injective_bounds(t, rng)[0] if t.order > 2 else injective_norm(t.to_tensor2())
    if gamma == "projective":
        return projective_bounds(t)[1] if t.order > 2 else projective_norm(t.to_tensor2())
    raise UnsupportedTag(f"unknown norm tag {gamma!r}", tag=gamma)


# Shells and Schauder truncations --------------------------------------------------------------------------------------

def _shell(level: int) -> list[tuple[int, int]]:
    return [(i, level) for i in range(1, level + 1)] + [(level, j) for j in range(level - 1, 0, -1)]


def enumerate_shells(l_max: int) -> list[tuple[int, int]]:
    """
    Concatenation of the shells J_1, …, J_{l_max}, where J_l = (1,l)(2,l)…(l,l)(l,l−1)…(l,1).
    Indices are 1-based; shell l adds exactly 2l − 1 pairs.
    """
    if l_max < 1:
        raise DomainError(f"l_max must be at least 1, got {l_max}")
    return [pair for level in range(1, l_max + 1) for pair in _shell(level)]


@dataclass(frozen=True)
class CoeffSequence:
    """
    Finite model of a Schauder expansion: coefficients α_1, α_2, … measured in ℓ¹ or ℓ².
    """

    coeffs: tuple[float, ...]
    norm_tag: SequenceNormTag = "l2"

    def __post_init__(self):
        if self.norm_tag not in ("l1", "l2"):
            raise UnsupportedTag(f"unknown sequence norm {self.norm_tag!r}", tag=self.norm_tag)
        if not all(math.isfinite(c) for c in self.coeffs):
            raise DomainError("sequence coefficients must be finite")

    @classmethod
    def of(cls, coeffs, norm_tag: SequenceNormTag = "l2") -> "CoeffSequence":
        return cls(tuple(float(c) for c in as_vector(coeffs)), norm_tag)

    @classmethod
    def geometric(cls, ratio: float, length: int, norm_tag: SequenceNormTag = "l2") -> "CoeffSequence":
        """α_j = ratio^j for j = 1..length"""
        return cls(tuple(ratio ** j for j in range(1, length + 1)), norm_tag)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=float)

    def norm(self) -> float:
        if not self.coeffs:
            return 0.0
        return float(np.linalg.norm(self.array, ord=1 if self.norm_tag == "l1" else 2))

    def head(self, n: int) -> "CoeffSequence":
        return CoeffSequence(self.coeffs[:n], self.norm_tag)

    def tail(self, n: int) -> "CoeffSequence":
        return CoeffSequence(self.coeffs[n:], self.norm_tag)


def schauder_truncate(x: CoeffSequence, n: int) -> tuple[CoeffSequence, float]:
    """
    Splits x into its partial sum β_n(x) (first n coefficients) and the norm of the remainder ρ_n(x).
    """
    if n < 0:
        raise DomainError(f"truncation order must be nonnegative, got {n}")
    return x.head(n), x.tail(n).norm()


def _padded_head(x: CoeffSequence, n: int) -> np.ndarray:
    out = x.array.copy()
    out[n:] = 0.0
    return out


def truncation_remainder(x: CoeffSequence, y: CoeffSequence, n: int) -> Tensor2:
    """
    R_n(x, y) = x⊗y − A_n(x, y), where A_n keeps the coefficient pairs in shells J_1..J_n.
    """
    if n < 0:
        raise DomainError(f"truncation order must be nonnegative, got {n}")
    if len(x) == 0 or len(y) == 0:
        raise DimensionMismatch("sequences must be non-empty")
    full = np.outer(x.array, y.array)
    return Tensor2(full - np.outer(_padded_head(x, n), _padded_head(y, n)))


def tensor_basis_truncation_error(x: CoeffSequence, y: CoeffSequence, n: int) -> float:
    """
    Three-term bound on the remainder of the shell-truncated expansion of x⊗y:
    ‖β_n x‖‖ρ_n y‖ + ‖ρ_n x‖‖β_n y‖ + ‖ρ_n x‖‖ρ_n y‖, with ℓ² norms on both factors.
    """
    if x.norm_tag != "l2" or y.norm_tag != "l2":
        raise DomainError("the truncation bound is stated for ℓ² coefficient sequences",
                          norms=[x.norm_tag, y.norm_tag])
    if n < 0:
        raise DomainError(f"truncation order must be nonnegative, got {n}")

    hx, tx = schauder_truncate(x, n)
    hy, ty = schauder_truncate(y, n)
    head_x, head_y = hx.norm(), hy.norm()
    return head_x * ty + tx * head_y + tx * ty


def shell_truncation_errors(x, y, l_max: int, symmetry: FockSymmetry = "tensor") -> list[float]:
    """
    Hilbert–Schmidt norm of what is left of x⊗y (or x∧y, x∨y) after keeping the coefficients on shells
    J_1..J_l, for l = 1..l_max.
    """
    if l_max < 1:
        raise DomainError(f"l_max must be at least 1, got {l_max}")
    x, y = as_vector(x), as_vector(y)
    if symmetry == "tensor":
        full = tensor2(x, y).entries
    elif symmetry == "wedge":
        full = wedge2(x, y).entries
    elif symmetry == "vee":
        full = vee2(x, y).entries
    else:
        raise UnsupportedTag(f"unknown symmetry {symmetry!r}", tag=symmetry)

    rows, cols = np.indices(full.shape)
    reach = np.maximum(rows, cols) + 1  # shell index of each entry
    return [float(np.linalg.norm(full[reach > level])) for level in range(1, l_max + 1)]


def fock_dimension(n: int, p_max: int, symmetry: FockSymmetry = "tensor") -> int:
    """
    Dimension of the truncated Fock space ⊕_{p=0}^{p_max} E^{⊥p} over an n-dimensional E.
    With symmetry "wedge" and p_max = n this is 2ⁿ, the Clifford blade count.
    """
    if n < 1 or p_max < 0:
        raise DomainError(f"need n ≥ 1 and p_max ≥ 0, got n={n}, p_max={p_max}")
    if symmetry == "tensor":
        return sum(n ** p for p in range(p_max + 1))
    if symmetry == "vee":
        return sum(math.comb(n + p - 1, p) for p in range(p_max + 1))
    if symmetry == "wedge":
        return sum(math.comb(n, p) for p in range(p_max + 1))
    raise UnsupportedTag(f"unknown symmetry {symmetry!r}", tag=symmetry)
