import numpy as np

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from typing import Any

from .clifford import CliffordSpace
from .config import Config
from .constants import GRADIENT_STEP_FACTOR, HESSIAN_STEP_FACTOR
from .exceptions import ConvergenceError, DegenerateFormError, DomainError, UnsupportedTag
from .logger import logger
from .models import LegendrePointModel
from .quadratic import QuadraticForm, diagonalize, signature
from .utils import as_vector, check_length

__all__ = [
    "Functional",
    "LegendrePoint",
    "power",
    "double_well",
    "minkowski",
    "BUILTINS",
    "make_functional",
    "fstar_power",
    "gradient",
    "hessian",
    "tangent_hyperplane",
    "hyperplane_residual",
    "legendre_point",
    "legendre_grid",
    "legendre_invert",
    "zstar_of",
    "legendre_hessian_pair",
    "clifford_at",
    "clifford_at_legendre",
]

VALIDATION_RTOL = 1e-5
VALIDATION_PROBES = 5

Vector = np.ndarray
ScalarField = Callable[[Vector], float]


def _steps(a: Vector, factor: float, h: float | None) -> Vector:
    if h is not None:
        if h <= 0:
            raise DomainError(f"finite-difference step must be positive, got {h}")
        return np.full(a.shape, float(h))
    return factor * (1 + np.abs(a))


def _fd_gradient(f: ScalarField, a: Vector, steps: Vector) -> Vector:
    g = np.zeros(a.shape[0])
    for j in range(a.shape[0]):
        e = np.zeros(a.shape[0])
        e[j] = steps[j]
        g[j] = (f(a + e) - f(a - e)) / (2 * steps[j])
    return g


def _fd_hessian(f: ScalarField, a: Vector, steps: Vector) -> np.ndarray:
    # Second-order central differences; the off-diagonal stencil uses half steps
    n = a.shape[0]
    f0 = f(a)
    hess = np.zeros((n, n))
    half = np.diag(steps / 2)
    for i in range(n):
        for j in range(i, n):
            if i == j:
                pij = f(a + 2 * half[i]) - 2 * f0 + f(a - 2 * half[i])
            else:
                pij = f(a + half[i] + half[j]) - f(a + half[i] - half[j]) - f(a - half[i] + half[j]) \
                    + f(a - half[i] - half[j])
            hess[i, j] = hess[j, i] = pij / (steps[i] * steps[j])
    return hess


@dataclass(frozen=True, eq=False)
class Functional:
    """
    A C² functional on an open set Ω ⊆ ℝⁿ with optional analytic first and second derivatives.
    Analytic derivatives are checked against central finite differences at a few interior sample points when the
    functional is built.
    """

    name: str
    dim: int
    value: ScalarField
    grad: Callable[[Vector], Vector] | None = None
    hess: Callable[[Vector], np.ndarray] | None = None
    domain: Callable[[Vector], bool] | None = None
    params: dict[str, Any] = field(default_factory=dict)
    probe_radius: float = 2.0
    validate: bool = True

    def __post_init__(self):
        if self.dim < 1:
            raise DomainError(f"functional dimension must be positive, got {self.dim}")
        if self.validate and (self.grad is not None or self.hess is not None):
            self._check_derivatives()

    def __call__(self, x) -> float:
        return float(self.value(as_vector(x)))

    def contains(self, x) -> bool:
        x = as_vector(x)
        return bool(np.all(np.isfinite(x))) and (self.domain is None or bool(self.domain(x)))

    def require_interior(self, a) -> Vector:
        a = check_length(as_vector(a), self.dim, "point")
        if not self.contains(a):
            raise DomainError(f"point {a.tolist()} is outside the domain of {self.name}", point=a.tolist())
        return a

    def _check_derivatives(self) -> None:
        rng = np.random.default_rng(Config.DEFAULT_SEED)
        probes = [p for p in rng.uniform(-self.probe_radius, self.probe_radius, (4 * VALIDATION_PROBES, self.dim))
                  if self.contains(p)][:VALIDATION_PROBES]

        for p in probes:
            if self.grad is not None:
                analytic = as_vector(self.grad(p))
                numeric = _fd_gradient(self, p, _steps(p, GRADIENT_STEP_FACTOR, None))
                self._compare("gradient", p, analytic, numeric)
            if self.hess is not None:
                analytic = np.asarray(self.hess(p), dtype=float).reshape(self.dim, self.dim)
                numeric = _fd_hessian(self, p, _steps(p, HESSIAN_STEP_FACTOR, None))
                self._compare("Hessian", p, analytic, numeric)

    def _compare(self, what: str, p: Vector, analytic: np.ndarray, numeric: np.ndarray) -> None:
        gap = float(np.max(np.abs(analytic - numeric)))
        if gap > VALIDATION_RTOL * max(1.0, float(np.max(np.abs(analytic)))):
            raise DomainError(f"analytic {what} of {self.name} disagrees with finite differences at {p.tolist()}",
                              gap=gap)


@dataclass(frozen=True)
class LegendrePoint:
    y: Vector
    x_star: Vector
    z_star: float

    def to_model(self) -> LegendrePointModel:
        return LegendrePointModel(y=self.y.tolist(), x_star=self.x_star.tolist(), z_star=self.z_star)


# Built-in functionals -------------------------------------------------------------------------------------------------

def power(p: float, dim: int = 1) -> Functional:
    """f(x) = p⁻¹|x|^p for p > 1. Below p = 2 the curvature blows up at the origin, which is left out of Ω."""
    if p <= 1:
        raise DomainError(f"power functional needs p > 1, got {p}")

    def value(x):
        return float(np.linalg.norm(x)) ** p / p

    def grad(x):
        r = float(np.linalg.norm(x))
        return r ** (p - 2) * x if r > 0 else np.zeros_like(x)

    def hess(x):
        r = float(np.linalg.norm(x))
        if r == 0:
            return np.eye(dim) if p == 2 else np.zeros((dim, dim))
        u = x / r
        return r ** (p - 2) * (np.eye(dim) + (p - 2) * np.outer(u, u))

    domain = None if p >= 2 else (lambda x: bool(np.any(x != 0)))
    return Functional("power", dim, value, grad, hess, domain, {"p": p})


def fstar_power(x_star, p: float) -> float:
    """Closed form of z* for the power functional: −(p*)⁻¹|x*|^{p*} with p* = p/(p−1)."""
    p_star = p / (p - 1)
    return -float(np.linalg.norm(as_vector(x_star))) ** p_star / p_star


def double_well() -> Functional:
    """f(x) = (x² − 1)² on ℝ."""
    return Functional(
        "double_well", 1,
        lambda x: float((x[0] ** 2 - 1) ** 2),
        lambda x: np.array([4 * x[0] * (x[0] ** 2 - 1)]),
        lambda x: np.array([[12 * x[0] ** 2 - 4]]),
    )


def minkowski(p: int = 1, n: int = 2) -> Functional:
    """f(x) = x₁² + … + x_p² − (x_{p+1}² + … + x_n²)"""
    if not 0 <= p <= n or n < 1:
        raise DomainError(f"minkowski needs 0 ≤ p ≤ n and n ≥ 1, got p={p}, n={n}")
    d = np.array([1.0] * p + [-1.0] * (n - p))
    return Functional(
        "minkowski", n,
        lambda x: float(np.sum(d * x * x)),
        lambda x: 2 * d * x,
        lambda x: np.diag(2 * d),
        params={"p": p, "n": n},
    )


BUILTINS: dict[str, Callable[..., Functional]] = {
    "power": power,
    "double_well": double_well,
    "minkowski": minkowski,
}


def make_functional(name: str, **params) -> Functional:
    if name not in BUILTINS:
        raise UnsupportedTag(f"unknown functional {name!r}; choose from {sorted(BUILTINS)}", tag=name)
    return BUILTINS[name](**{k: v for k, v in params.items() if v is not None})


# Derivatives ----------------------------------------------------------------------------------------------------------

def gradient(f: Functional, a, h: float | None = None) -> Vector:
    a = f.require_interior(a)
    if f.grad is not None:
        return as_vector(f.grad(a)).copy()
    return _fd_gradient(f, a, _steps(a, GRADIENT_STEP_FACTOR, h))


def hessian(f: Functional, a, h: float | None = None) -> QuadraticForm:
    a = f.require_interior(a)
    if f.hess is not None:
        m = np.asarray(f.hess(a), dtype=float).reshape(f.dim, f.dim)
    else:
        m = _fd_hessian(f, a, _steps(a, HESSIAN_STEP_FACTOR, h))
    return QuadraticForm((m + m.T) / 2)


def tangent_hyperplane(f: Functional, y) -> tuple[Vector, float]:
    """
    Tangent hyperplane to the graph of f at (y, f(y)), as a normal (f′(y), −1) ∈ ℝⁿ⁺¹ and an offset c so that the
    plane is {(x, z) : ⟨x, f′(y)⟩ − z + c = 0}. The offset equals the Legendre value z* at y.
    """
    y = f.require_interior(y)
    g = gradient(f, y)
    return np.append(g, -1.0), f(y) - float(np.dot(y, g))


def hyperplane_residual(normal: Vector, offset: float, x, z: float) -> float:
    return float(np.dot(normal, np.append(as_vector(x), z)) + offset)


# Legendre transform ---------------------------------------------------------------------------------------------------

def legendre_point(f: Functional, y) -> LegendrePoint:
    y = f.require_interior(y)
    x_star = gradient(f, y)
    return LegendrePoint(y=y.copy(), x_star=x_star, z_star=f(y) - float(np.dot(y, x_star)))


def legendre_grid(f: Functional, ys: Iterable) -> list[LegendrePoint]:
    """
    The parametric set {(x*, z*)} over a caller-supplied grid of source points. The transform may be multivalued,
    so no ordering or uniqueness in x* is implied.
    """
    return [legendre_point(f, y) for y in ys]


def legendre_invert(
    f: Functional,
    x_star,
    seed,
    tol: float | None = None,
    max_iter: int | None = None,
) -> Vector:
    """
    Solves f′(y) = x* by damped Newton from the seed, halving the step until the residual norm decreases.
    The branch reached is whichever one the seed leads to.
    """
    tol = Config.NEWTON_TOL if tol is None else tol
    max_iter = Config.NEWTON_MAX_ITER if max_iter is None else max_iter
    x_star = check_length(as_vector(x_star), f.dim, "x_star")
    y = f.require_interior(seed).copy()

    residual = gradient(f, y) - x_star
    r_norm = float(np.linalg.norm(residual))
    for it in range(max_iter):
        if r_norm <= tol:
            logger.debug(f"Newton converged in {it} iterations (residual {r_norm:.3e})")
            return y

        h = hessian(f, y)
        sig = signature(h)
        if not sig.is_invertible:
            raise DegenerateFormError(f"singular Hessian at Newton iterate {y.tolist()}", signature=sig,
                                      point=y.tolist())
        step = np.linalg.solve(h.coeffs, -residual)

        t = 1.0
        for _ in range(Config.NEWTON_MAX_HALVINGS + 1):
            trial = y + t * step
            if f.contains(trial):
                trial_residual = gradient(f, trial) - x_star
                trial_norm = float(np.linalg.norm(trial_residual))
                if trial_norm < r_norm:
                    break
            t /= 2
        else:
            raise ConvergenceError(f"Newton step could not reduce the residual at {y.tolist()}", residual=r_norm,
                                   iterations=it)

        y, residual, r_norm = trial, trial_residual, trial_norm

    if r_norm <= tol:
        return y
    raise ConvergenceError(f"Newton did not converge in {max_iter} iterations", residual=r_norm)


def zstar_of(f: Functional, x_star, seed) -> float:
    """z* as a function of x*: invert the gradient from the seed, then z* = f(y) − ⟨y, x*⟩."""
    x_star = as_vector(x_star)
    y = legendre_invert(f, x_star, seed)
    return f(y) - float(np.dot(y, x_star))


def legendre_hessian_pair(f: Functional, y, h: float | None = None) -> tuple[QuadraticForm, QuadraticForm]:
    """
    Returns (second derivative of x* ↦ z*(x*) at x* = f′(y), inverse of f″(y)).
    The first is computed by finite differences of z*, each sample solved with legendre_invert seeded at y.
    Under z* = f(y) − ⟨y, f′(y)⟩ the two satisfy fstar_hess = −inverse_hess.
    """
    y = f.require_interior(y)
    h_form = hessian(f, y)
    sig = signature(h_form)
    if not sig.is_invertible:
        raise DegenerateFormError(f"Hessian of {f.name} at {y.tolist()} is singular", signature=sig)

    inverse = np.linalg.inv(h_form.coeffs)
    x_star = gradient(f, y)
    fstar = _fd_hessian(lambda x: zstar_of(f, x, y), x_star, _steps(x_star, HESSIAN_STEP_FACTOR, h))
    return QuadraticForm((fstar + fstar.T) / 2), QuadraticForm((inverse + inverse.T) / 2)


def _clifford_of(form: QuadraticForm, where: str) -> tuple[CliffordSpace, np.ndarray]:
    sig = signature(form)
    if not sig.is_invertible:
        raise DegenerateFormError(f"degenerate Hessian {where}", signature=sig)
    values, vectors = diagonalize(form)
    return CliffordSpace.of(values), np.array(vectors)


def clifford_at(f: Functional, a) -> tuple[CliffordSpace, np.ndarray]:
    """
    The Clifford algebra of the Hessian form of f at a: generators along the Hessian eigenframe (returned as columns),
    with squares equal to the eigenvalues.
    """
    a = f.require_interior(a)
    return _clifford_of(hessian(f, a), f"of {f.name} at {a.tolist()}")


def clifford_at_legendre(f: Functional, y) -> tuple[CliffordSpace, np.ndarray]:
    """The companion algebra built from the second derivative of the Legendre value z* at x* = f′(y)."""
    fstar_hess, _ = legendre_hessian_pair(f, y)
    return _clifford_of(fstar_hess, f"of the Legendre transform of {f.name} at y={as_vector(y).tolist()}")
