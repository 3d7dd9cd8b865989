import math
import numpy as np

from dataclasses import dataclass
from functools import cached_property
from collections.abc import Iterable

from .config import Config
from .exceptions import ConvergenceError, DimensionMismatch, DomainError
from .logger import logger
from .models import EigenModel, QuadraticFormModel, SignatureModel
from .utils import as_vector, check_length

__all__ = [
    "SYMMETRY_TOL",
    "QuadraticForm",
    "Signature",
    "jacobi_eigh",
    "eval_q",
    "polarize",
    "diagonalize",
    "signature",
    "default_zero_tol",
    "reconstruct",
    "congruent",
    "is_invertible",
]

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True)
class Signature:
    n_plus: int
    n_minus: int
    n_zero: int

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus + self.n_zero

    @property
    def is_invertible(self) -> bool:
        return self.n_zero == 0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.n_plus, self.n_minus, self.n_zero

    def to_model(self) -> SignatureModel:
        return SignatureModel(n_plus=self.n_plus, n_minus=self.n_minus, n_zero=self.n_zero)


class QuadraticForm:
    """
    A real quadratic form q(x) = xᵀ·coeffs·x on ℝⁿ together with its (normalized) polarization
    b(x, y) = ½(q(x+y) − q(x) − q(y)) = xᵀ·coeffs·y, so that b(x, x) = q(x).
    The coefficient array is stored read-only; the eigen-decomposition is computed on first use and cached.
    """

    def __init__(self, coeffs: Iterable[Iterable[float]] | np.ndarray):
        a = np.array(coeffs, dtype=float)
        if a.ndim == 0:
            a = a.reshape(1, 1)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise DimensionMismatch(f"quadratic form coefficients must be a square array, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise DomainError("quadratic form coefficients must be finite")

        asymmetry = float(np.max(np.abs(a - a.T)))
        if asymmetry > SYMMETRY_TOL:
            raise DomainError(f"coefficient array is not symmetric (max |a - aᵀ| = {asymmetry:.3e})",
                              asymmetry=asymmetry)

        a = a / 2 + a.T / 2
        a.setflags(write=False)
        self._coeffs: np.ndarray = a

    @classmethod
    def diagonal(cls, values: Iterable[float]) -> "QuadraticForm":
        return cls(np.diag(as_vector(list(values))))

    @classmethod
    def identity(cls, dim: int) -> "QuadraticForm":
        return cls(np.eye(dim))

    @classmethod
    def zero(cls, dim: int) -> "QuadraticForm":
        return cls(np.zeros((dim, dim)))

    @classmethod
    def from_model(cls, model: QuadraticFormModel) -> "QuadraticForm":
        return cls(model.coeffs)

    def to_model(self) -> QuadraticFormModel:
        return QuadraticFormModel(dim=self.dim, coeffs=self._coeffs.tolist())

    @property
    def dim(self) -> int:
        return self._coeffs.shape[0]

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def is_diagonal(self) -> bool:
        return bool(np.all(self._coeffs == np.diag(np.diag(self._coeffs))))

    @cached_property
    def eigen(self) -> tuple[np.ndarray, np.ndarray]:
        values, vectors = jacobi_eigh(self._coeffs)
        values.setflags(write=False)
        vectors.setflags(write=False)
        return values, vectors

    def eigen_model(self) -> EigenModel:
        values, vectors = self.eigen
        return EigenModel(eigenvalues=values.tolist(), eigenvectors=vectors.T.tolist())

    def __repr__(self) -> str:
        return f"QuadraticForm(dim={self.dim}, coeffs={self._coeffs.tolist()})"


def _sign_normalize(vectors: np.ndarray) -> np.ndarray:
    # Largest-magnitude entry of every column made positive; near-ties go to the lowest index
    out = vectors.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        peak = np.max(np.abs(col))
        idx = int(np.flatnonzero(np.abs(col) >= peak - 1e-12)[0])
        if col[idx] < 0:
            out[:, j] = -col
    return out


def jacobi_eigh(
    a: np.ndarray,
    tol: float | None = None,
    max_sweeps: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Cyclic Jacobi eigen-decomposition of a symmetric array.
    :param a: A symmetric square array
    :param tol: Convergence threshold on the off-diagonal Frobenius mass of a scaled so that max|a_ij| ∈ [½, 1)
    :param max_sweeps: Sweep budget; exhausting it raises ConvergenceError with the remaining off-diagonal mass
    :return: Eigenvalues sorted descending, and the matching orthonormal eigenvectors as columns
    """
    tol = Config.JACOBI_TOL if tol is None else tol
    max_sweeps = Config.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    m = np.array(a, dtype=float)
    n = m.shape[0]
    v = np.eye(n)

    # Sweeps run on a scaled by a power of two near max|a_ij|, so squares cannot overflow and rescaling is exact
    peak = float(np.max(np.abs(m))) if m.size else 0.0
    exponent = math.frexp(peak)[1] if np.isfinite(peak) else 0
    m = np.ldexp(m, -exponent)
    threshold = tol * max(1.0, float(np.linalg.norm(m)))

    def off_mass() -> float:
        return float(np.linalg.norm(m - np.diag(np.diag(m))))

    off = off_mass()
    sweeps = 0
    while off >= threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps",
                                   residual=float(np.ldexp(off, exponent)))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = m[p, q]
                if apq == 0.0:
                    continue
                theta = (m[q, q] - m[p, p]) / (2 * apq)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c

                cp, cq = m[:, p].copy(), m[:, q].copy()
                m[:, p], m[:, q] = c * cp - s * cq, s * cp + c * cq
                rp, rq = m[p, :].copy(), m[q, :].copy()
                m[p, :], m[q, :] = c * rp - s * rq, s * rp + c * rq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p], v[:, q] = c * vp - s * vq, s * vp + c * vq
        sweeps += 1
        off = off_mass()
        logger.debug(f"Jacobi sweep {sweeps}: off-diagonal mass {off:.3e}")

    values = np.ldexp(np.diag(m), exponent)
    order = np.argsort(-values, kind="stable")
    return values[order], _sign_normalize(v[:, order])


def eval_q(form: QuadraticForm, x) -> float:
    x = check_length(as_vector(x), form.dim)
    return float(x @ form.coeffs @ x)


def polarize(form: QuadraticForm, x, y) -> float:
    """
    Normalized polarization b(x, y) = ½(q(x+y) − q(x) − q(y)) = xᵀ·coeffs·y.
    Evaluated symmetrically so that polarize(x, y) and polarize(y, x) agree bit for bit.
    """
    x = check_length(as_vector(x), form.dim)
    y = check_length(as_vector(y), form.dim)
    a = form.coeffs
    return float(0.5 * (x @ a @ y + y @ a @ x))


def diagonalize(form: QuadraticForm) -> tuple[np.ndarray, np.ndarray]:
    return form.eigen


def default_zero_tol(eigenvalues: np.ndarray) -> float:
    peak = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return max(Config.ZERO_TOL_FACTOR * peak, Config.ZERO_TOL_FLOOR)


def signature(form: QuadraticForm, zero_tol: float | None = None) -> Signature:
    values, _ = form.eigen
    tol = default_zero_tol(values) if zero_tol is None else zero_tol
    if tol < 0:
        raise DomainError(f"zero_tol must be nonnegative, got {tol}")
    n_zero = int(np.sum(np.abs(values) <= tol))
    n_plus = int(np.sum(values > tol))
    return Signature(n_plus=n_plus, n_minus=form.dim - n_plus - n_zero, n_zero=n_zero)


def is_invertible(form: QuadraticForm, zero_tol: float | None = None) -> bool:
    return signature(form, zero_tol).is_invertible


def reconstruct(form: QuadraticForm, x, y) -> float:
    """
    Evaluates Σ_j λ_j (v_jᵀx)(v_jᵀy) from the eigen-decomposition; agrees with polarize(x, y).
    """
    x = check_length(as_vector(x), form.dim)
    y = check_length(as_vector(y), form.dim)
    values, vectors = form.eigen
    return float(np.sum(values * (vectors.T @ x) * (vectors.T @ y)))


def congruent(form: QuadraticForm, p) -> QuadraticForm:
    p = np.asarray(p, dtype=float)
    if p.shape != (form.dim, form.dim):
        raise DimensionMismatch(f"congruence matrix has shape {p.shape}, expected ({form.dim}, {form.dim})")
    m = p.T @ form.coeffs @ p
    return QuadraticForm((m + m.T) / 2)
