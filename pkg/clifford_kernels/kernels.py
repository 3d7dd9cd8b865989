import cmath
import math
import numpy as np

from collections.abc import Callable
from dataclasses import dataclass, field as dataclass_field
from numpy.polynomial import Polynomial
from scipy.integrate import simpson
from scipy.interpolate import RegularGridInterpolator
from typing import Any

from .config import Config
from .constants import PRINTED_FOURIER_KAPPA
from .exceptions import DomainError, SingularOperatorError, UnsupportedTag
from .logger import logger
from .types import BoundaryCondition, FieldTag, InnerProductKind

__all__ = [
    "Interval",
    "Disc",
    "Kernel",
    "InnerProductSpec",
    "ProbeFunction",
    "poly_kernel",
    "sobolev_kernel",
    "fourier_kernel",
    "fourier_kernel_closed",
    "discrete_operator_1d",
    "green_nodes",
    "green_matrix_1d",
    "dirichlet_green_exact",
    "bergman_kernel_series",
    "bergman_kernel_closed",
    "bergman_kernel_paper",
    "log_kernel",
    "log_kernel_pinned",
    "make_kernel",
    "KERNELS",
    "PROBE_FUNCTIONS",
    "default_space",
    "gram_matrix",
    "min_gram_eigenvalue",
    "reproducing_inner_product",
    "verify_reproducing",
    "fourier_normalization_residuals",
]

MIN_QUAD_N = 16
DEFAULT_FOURIER_TERMS = 1000
DEFAULT_BERGMAN_TERMS = 400


def _out(v):
    v = np.asarray(v)
    return v.item() if v.ndim == 0 else v


# Domains --------------------------------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        if not self.a < self.b:
            raise DomainError(f"interval needs a < b, got ({self.a}, {self.b})")

    def contains(self, s) -> bool:
        s = np.asarray(s)
        return bool(np.all(np.isreal(s)) and np.all((self.a <= s.real) & (s.real <= self.b)))

    def interior(self, m: int) -> np.ndarray:
        return np.linspace(self.a, self.b, m + 2)[1:-1]


@dataclass(frozen=True)
class Disc:
    rho: float

    def __post_init__(self):
        if not self.rho > 0:
            raise DomainError(f"disc radius must be positive, got {self.rho}")

    def contains(self, z) -> bool:
        return bool(np.all(np.abs(np.asarray(z)) < self.rho))

    def interior(self, m: int) -> np.ndarray:
        # Points along the real diameter
        return np.linspace(-self.rho, self.rho, m + 2)[1:-1].astype(complex)


def _check(domain: Interval | Disc, *points) -> None:
    for p in points:
        if not domain.contains(p):
            raise DomainError(f"point {np.asarray(p).tolist()} lies outside {domain}")


# Kernel and inner-product descriptors ---------------------------------------------------------------------------------

# ds(s, t, order, side): order-th derivative in the first argument; side (−1 or +1) picks the one-sided limit at s = t
DerivativeFn = Callable[[np.ndarray, float, int, int], np.ndarray]


@dataclass(frozen=True, eq=False)
class Kernel:
    """
    A reproducing kernel (s, t) ↦ H(s, t) tagged with its domain and scalar field.
    Kernels that can be checked by verify_reproducing also carry their derivatives in s.
    """

    name: str
    evaluate: Callable[[Any, Any], Any]
    domain: Interval | Disc
    field: FieldTag = "real"
    params: dict[str, Any] = dataclass_field(default_factory=dict)
    ds: DerivativeFn | None = None

    def __call__(self, s, t):
        return self.evaluate(s, t)


@dataclass(frozen=True)
class InnerProductSpec:
    """
    Inner product of the Hilbert space a kernel reproduces:
    - "integral": ⟨x, y⟩ = Σ_p weights[p] ∫_a^b x^(p) y^(p)
    - "point_derivatives": ⟨x, y⟩ = Σ_j weights[j] x^(j)(center) y^(j)(center)
    """

    kind: InnerProductKind
    weights: tuple[float, ...]
    a: float
    b: float
    center: float | None = None
    bc: BoundaryCondition | None = None

    def __post_init__(self):
        if self.kind not in ("integral", "point_derivatives"):
            raise UnsupportedTag(f"unknown inner product kind {self.kind!r}", tag=self.kind)
        if any(w < 0 for w in self.weights) or not any(w > 0 for w in self.weights):
            raise DomainError(f"weights must be nonnegative with at least one positive, got {self.weights}")
        if not self.a < self.b:
            raise DomainError(f"interval needs a < b, got ({self.a}, {self.b})")
        if self.kind == "point_derivatives" and (self.center is None or not self.a < self.center < self.b):
            raise DomainError(f"center {self.center} must lie in ({self.a}, {self.b})")

    @property
    def order(self) -> int:
        return len(self.weights) - 1


@dataclass(frozen=True)
class ProbeFunction:
    """A smooth function on the line given together with its first few derivatives."""

    name: str
    derivatives: tuple[Callable[[np.ndarray], np.ndarray], ...]

    def __call__(self, u):
        return self.derivatives[0](u)

    def derivative(self, k: int) -> Callable[[np.ndarray], np.ndarray]:
        if not 0 <= k < len(self.derivatives):
            raise DomainError(f"{self.name} has no derivative of order {k}")
        return self.derivatives[k]

    @classmethod
    def polynomial(cls, coeffs, name: str | None = None) -> "ProbeFunction":
        poly = Polynomial(coeffs)
        return cls(name or f"poly{list(coeffs)}", tuple(poly.deriv(k) for k in range(poly.degree() + 5)))


PROBE_FUNCTIONS: dict[str, ProbeFunction] = {
    "linear": ProbeFunction.polynomial([0, 1], "linear"),
    "quadratic": ProbeFunction.polynomial([0, 0, 1], "quadratic"),
    "cubic": ProbeFunction.polynomial([0, 1, -1, 1], "cubic"),
    "sin": ProbeFunction("sin", (np.sin, np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u), np.sin)),
    "cos": ProbeFunction("cos", (np.cos, lambda u: -np.sin(u), lambda u: -np.cos(u), np.sin, np.cos)),
    "cos2": ProbeFunction("cos2", (
        lambda u: np.cos(2 * u),
        lambda u: -2 * np.sin(2 * u),
        lambda u: -4 * np.cos(2 * u),
    )),
    "u_exp": ProbeFunction("u_exp", (
        lambda u: u * np.exp(u),
        lambda u: (u + 1) * np.exp(u),
        lambda u: (u + 2) * np.exp(u),
    )),
    "sin_pi": ProbeFunction("sin_pi", (
        lambda u: np.sin(np.pi * u),
        lambda u: np.pi * np.cos(np.pi * u),
        lambda u: -np.pi ** 2 * np.sin(np.pi * u),
    )),
}


# Polynomial point-derivative kernel -----------------------------------------------------------------------------------

def poly_kernel(s, t, c: float = 0.0, n: int = 1, a: float | None = None, b: float | None = None):
    """H(s, t) = Σ_{j=0}^n (s−c)^j/j! · (t−c)^j/j!"""
    if n < 0:
        raise DomainError(f"degree must be nonnegative, got {n}")
    if a is not None and b is not None:
        _check(Interval(a, b), s, t, c)
    return _poly_ds(np.asarray(s, dtype=float), t, 0, c, n)


def _poly_ds(s, t, order: int, c: float, n: int):
    out = np.zeros_like(np.asarray(s, dtype=float))
    for i in range(order, n + 1):
        out = out + (s - c) ** (i - order) / math.factorial(i - order) * (t - c) ** i / math.factorial(i)
    return _out(out)


# First-order Sobolev kernel -------------------------------------------------------------------------------------------

def sobolev_kernel(s, t, a: float = 0.0, b: float | None = None):
    """H(s, t) = (t−s)₊ + s − a = min(t−a, s−a), the kernel of {x ∈ H¹(a,b) : x(a) = 0} under ∫x′y′."""
    if b is not None:
        _check(Interval(a, b), s, t)
    elif np.any(np.asarray(s) < a) or np.any(np.asarray(t) < a):
        raise DomainError(f"points must lie to the right of a={a}")
    return _out(np.minimum(np.asarray(t, dtype=float) - a, np.asarray(s, dtype=float) - a))


def _sobolev_ds(s, t, order, side, a: float):
    s = np.asarray(s, dtype=float)
    if order == 0:
        return np.minimum(t - a, s - a)
    if order == 1:
        below = (s < t) | ((s == t) & (side < 0))
        return np.where(below, 1.0, 0.0)
    return np.zeros_like(s)


# Fourier kernel -------------------------------------------------------------------------------------------------------

def fourier_kernel(s, t, terms: int = DEFAULT_FOURIER_TERMS, kappa: float = PRINTED_FOURIER_KAPPA):
    """H(s, t) = κ Σ_{p=1}^P cos p(t−s) / p² on (0, 2π)"""
    if terms < 1 or kappa <= 0:
        raise DomainError(f"need terms ≥ 1 and kappa > 0, got terms={terms}, kappa={kappa}")
    _check(Interval(0.0, 2 * math.pi), s, t)
    p = np.arange(1, terms + 1, dtype=float)
    theta = np.asarray(t, dtype=float) - np.asarray(s, dtype=float)
    sums = np.array([np.sum(np.cos(p * th) / p ** 2) for th in theta.ravel()]).reshape(theta.shape)
    return _out(kappa * sums)


def fourier_kernel_closed(s, t, kappa: float = PRINTED_FOURIER_KAPPA):
    """κ(π²/6 − πθ/2 + θ²/4) with θ = |t − s|, the sum of the cosine series on [0, 2π]"""
    _check(Interval(0.0, 2 * math.pi), s, t)
    theta = np.abs(np.asarray(t, dtype=float) - np.asarray(s, dtype=float))
    return _out(kappa * (math.pi ** 2 / 6 - math.pi * theta / 2 + theta ** 2 / 4))


def _fourier_ds(s, t, order, side, kappa: float):
    s = np.asarray(s, dtype=float)
    theta = np.abs(t - s)
    if order == 0:
        return kappa * (math.pi ** 2 / 6 - math.pi * theta / 2 + theta ** 2 / 4)
    if order == 1:
        below = (s < t) | ((s == t) & (side < 0))
        # dθ/ds = −1 left of t and +1 right of it
        return kappa * np.where(below, math.pi / 2 - theta / 2, theta / 2 - math.pi / 2)
    if order == 2:
        return np.full_like(s, kappa / 2)
    return np.zeros_like(s)


# Finite-difference Green operator -------------------------------------------------------------------------------------

def green_nodes(
    m: int, a: float = 0.0, b: float = 1.0, bc: BoundaryCondition = "dirichlet"
) -> tuple[np.ndarray, float]:
    """
    Grid nodes and spacing: Dirichlet uses the m interior nodes of a uniform grid with spacing (b−a)/(m+1);
    Neumann uses m cell centres with spacing (b−a)/m.
    """
    if bc == "dirichlet":
        h = (b - a) / (m + 1)
        return a + h * np.arange(1, m + 1), h
    if bc == "neumann":
        h = (b - a) / m
        return a + h * (np.arange(1, m + 1) - 0.5), h
    raise UnsupportedTag(f"unknown boundary condition {bc!r}", tag=bc)


def _second_difference(m: int, bc: BoundaryCondition) -> np.ndarray:
    # −u″ stencil [−1, 2, −1]; Neumann reflects evenly (u_0 = u_1)
    d2 = 2 * np.eye(m) - np.eye(m, k=1) - np.eye(m, k=-1)
    if bc == "neumann":
        d2[0, 0] = d2[-1, -1] = 1
    return d2


def _fourth_difference(m: int, bc: BoundaryCondition) -> np.ndarray:
    # u'''' stencil [1, −4, 6, −4, 1]
    d4 = 6 * np.eye(m) - 4 * (np.eye(m, k=1) + np.eye(m, k=-1)) + np.eye(m, k=2) + np.eye(m, k=-2)
    if bc == "dirichlet":
        # Clamped ends: u_0 = 0 and ghost u_{−1} = u_1
        d4[0, 0] = d4[-1, -1] = 7
    else:
        # Even reflection: u_0 = u_1, u_{−1} = u_2
        d4[0, 0] = d4[-1, -1] = 2
        d4[0, 1] = d4[1, 0] = d4[-1, -2] = d4[-2, -1] = -3
    return d4


def discrete_operator_1d(
    weights,
    m: int,
    a: float = 0.0,
    b: float = 1.0,
    bc: BoundaryCondition = "dirichlet",
) -> tuple[np.ndarray, np.ndarray, float]:
    """
    Second-order finite-difference matrix of D = Σ_p (−1)^p a_p d^{2p}/ds^{2p} for α = len(weights) − 1 ∈ {1, 2}.
    :return: (matrix, nodes, spacing)
    """
    weights = [float(w) for w in weights]
    alpha = len(weights) - 1
    if alpha not in (1, 2):
        raise DomainError(f"only α ∈ {{1, 2}} is supported, got {alpha}")
    if m < 3:
        raise DomainError(f"need at least 3 grid nodes, got {m}")
    if any(w < 0 for w in weights) or weights[-1] <= 0:
        raise DomainError(f"weights must be nonnegative with a positive top-order weight, got {weights}")
    if not a < b:
        raise DomainError(f"interval needs a < b, got ({a}, {b})")

    nodes, h = green_nodes(m, a, b, bc)
    op = weights[0] * np.eye(m) + weights[1] * _second_difference(m, bc) / h ** 2
    if alpha == 2:
        op = op + weights[2] * _fourth_difference(m, bc) / h ** 4
    return op, nodes, h


def green_matrix_1d(
    weights,
    m: int,
    a: float = 0.0,
    b: float = 1.0,
    bc: BoundaryCondition = "dirichlet",
) -> np.ndarray:
    """
    Discrete Green kernel of D on the grid: G[i, j] ≈ G(s_i, s_j), obtained as the inverse of the difference
    operator scaled by 1/h (a unit mass at node j is e_j/h).
    """
    op, _, h = discrete_operator_1d(weights, m, a, b, bc)
    rank = int(np.linalg.matrix_rank(op))
    if rank < m:
        raise SingularOperatorError(f"discrete operator is singular (rank {rank} < {m}); "
                                    f"a pure-{bc} problem needs a positive zero-order weight",
                                    rank=rank, m=m, bc=bc)
    g = np.linalg.inv(op) / h
    return (g + g.T) / 2


def dirichlet_green_exact(s, t, a0: float = 0.0, a1: float = 1.0, a: float = 0.0, b: float = 1.0):
    """
    Green function of −a1 u″ + a0 u with u(a) = u(b) = 0. With a0 = 0 on (0, 1) this is min(s,t)(1 − max(s,t))/a1.
    """
    return _out(_green_exact_ds(np.asarray(s, dtype=float), t, 0, 1, a0, a1, a, b))


def _green_exact_ds(s, t, order, side, a0: float, a1: float, a: float, b: float):
    s = np.asarray(s, dtype=float)
    length = b - a
    below = (s < t) | ((s == t) & (side < 0))
    lo, hi = np.minimum(s, t), np.maximum(s, t)
    if a0 == 0:
        if order == 0:
            return (lo - a) * (b - hi) / (a1 * length)
        if order == 1:
            return np.where(below, (b - t) / (a1 * length), -(t - a) / (a1 * length))
        return np.zeros_like(s)

    k = math.sqrt(a0 / a1)
    scale = a1 * k * math.sinh(k * length)
    if order == 0:
        return np.sinh(k * (lo - a)) * np.sinh(k * (b - hi)) / scale
    if order == 1:
        return np.where(below,
                        k * np.cosh(k * (s - a)) * math.sinh(k * (b - t)),
                        -k * math.sinh(k * (t - a)) * np.cosh(k * (b - s))) / scale
    raise DomainError("only first s-derivatives of the Green function are available")


def _green_interpolator(g: np.ndarray, nodes: np.ndarray, a: float, b: float, bc: BoundaryCondition):
    # Extend the node table to the ends: zero for Dirichlet, even reflection for Neumann
    grid = np.concatenate(([a], nodes, [b]))
    table = np.pad(g, 1) if bc == "dirichlet" else np.pad(g, 1, mode="edge")
    return RegularGridInterpolator((grid, grid), table, method="linear")


# Disc kernels ---------------------------------------------------------------------------------------------------------

def bergman_kernel_series(t, z, rho: float = 1.0, terms: int = DEFAULT_BERGMAN_TERMS) -> complex:
    """Σ_{n=0}^N (n+1)(t z̄)^n / (π ρ^{2n+2}), from the orthonormal monomial basis of L²_a(|z| < ρ)."""
    _check(Disc(rho), t, z)
    w = complex(t) * complex(z).conjugate() / rho ** 2
    n = np.arange(terms + 1)
    return complex(np.sum((n + 1) * w ** n) / (math.pi * rho ** 2))


def bergman_kernel_closed(t, z, rho: float = 1.0) -> complex:
    """(πρ²)⁻¹(1 − t z̄/ρ²)⁻², the sum of the basis series."""
    _check(Disc(rho), t, z)
    return 1 / (math.pi * rho ** 2) * (1 - complex(t) * complex(z).conjugate() / rho ** 2) ** -2


def bergman_kernel_paper(t, z, rho: float = 1.0) -> complex:
    """(πρ²)⁻¹(1 − t z̄/ρ²)⁻¹, with the exponent as printed."""
    _check(Disc(rho), t, z)
    return 1 / (math.pi * rho ** 2) * (1 - complex(t) * complex(z).conjugate() / rho ** 2) ** -1


def _log_terms(t, z, rho: float, zeta) -> tuple[complex, complex, complex, complex]:
    _check(Disc(rho), t, z, zeta)
    t, z, zeta = complex(t), complex(z), complex(zeta)
    r2 = rho ** 2
    return (
        cmath.log(1 - t * z.conjugate() / r2),
        cmath.log(1 - t * zeta.conjugate() / r2),
        cmath.log(1 - zeta * z.conjugate() / r2),
        cmath.log(1 - abs(zeta) ** 2 / r2),
    )


def log_kernel(t, z, rho: float = 1.0, zeta=0.0) -> complex:
    """
    −π⁻¹[Log(1 − t z̄/ρ²) − Log(1 − t ζ̄/ρ²) − Log(1 − ζ z̄/ρ²) − Log(1 − |ζ|²/ρ²)] with the principal logarithm,
    signs as printed.
    """
    l0, l1, l2, l3 = _log_terms(t, z, rho, zeta)
    return -(l0 - l1 - l2 - l3) / math.pi


def log_kernel_pinned(t, z, rho: float = 1.0, zeta=0.0) -> complex:
    """Sign pattern (+, −, −, +): the kernel vanishes whenever t = ζ or z = ζ."""
    l0, l1, l2, l3 = _log_terms(t, z, rho, zeta)
    return -(l0 - l1 - l2 + l3) / math.pi


# Registry -------------------------------------------------------------------------------------------------------------

def _poly(c: float = 0.0, n: int = 1, a: float = -1.0, b: float = 1.0) -> Kernel:
    n = int(n)
    _check(Interval(a, b), c)
    return Kernel("poly", lambda s, t: poly_kernel(s, t, c, n, a, b), Interval(a, b),
                  params={"c": c, "n": n, "a": a, "b": b},
                  ds=lambda s, t, order, side: _poly_ds(s, t, order, c, n))


def _sobolev(a: float = 0.0, b: float = 1.0) -> Kernel:
    return Kernel("sobolev", lambda s, t: sobolev_kernel(s, t, a, b), Interval(a, b), params={"a": a, "b": b},
                  ds=lambda s, t, order, side: _sobolev_ds(s, t, order, side, a))


def _fourier(kappa: float = PRINTED_FOURIER_KAPPA, terms: int | None = None) -> Kernel:
    if terms is None:
        def evaluate(s, t):
            return fourier_kernel_closed(s, t, kappa)
    else:
        def evaluate(s, t):
            return fourier_kernel(s, t, int(terms), kappa)
    return Kernel("fourier", evaluate, Interval(0.0, 2 * math.pi), params={"kappa": kappa, "terms": terms},
                  ds=lambda s, t, order, side: _fourier_ds(s, t, order, side, kappa))


def _green1d(a0: float = 0.0, a1: float = 1.0, a2: float | None = None, m: int = 64, a: float = 0.0, b: float = 1.0,
             bc: BoundaryCondition = "dirichlet") -> Kernel:
    weights = [a0, a1] if a2 is None else [a0, a1, a2]
    g = green_matrix_1d(weights, int(m), a, b, bc)
    nodes, _ = green_nodes(int(m), a, b, bc)
    interp = _green_interpolator(g, nodes, a, b, bc)
    domain = Interval(a, b)

    def evaluate(s, t):
        _check(domain, s, t)
        s_arr, t_arr = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(t, dtype=float))
        return _out(interp(np.stack([s_arr, t_arr], axis=-1)))

    return Kernel("green1d", evaluate, domain, params={"weights": weights, "m": int(m), "a": a, "b": b, "bc": bc})


def _green_exact(a0: float = 0.0, a1: float = 1.0, a: float = 0.0, b: float = 1.0) -> Kernel:
    domain = Interval(a, b)

    def evaluate(s, t):
        _check(domain, s, t)
        return dirichlet_green_exact(s, t, a0, a1, a, b)

    return Kernel("green_exact", evaluate, domain, params={"a0": a0, "a1": a1, "a": a, "b": b},
                  ds=lambda s, t, order, side: _green_exact_ds(s, t, order, side, a0, a1, a, b))


def _bergman(rho: float = 1.0, form: str = "series", terms: int = DEFAULT_BERGMAN_TERMS) -> Kernel:
    forms = {
        "series": lambda t, z: bergman_kernel_series(t, z, rho, int(terms)),
        "closed": lambda t, z: bergman_kernel_closed(t, z, rho),
        "paper": lambda t, z: bergman_kernel_paper(t, z, rho),
    }
    if form not in forms:
        raise UnsupportedTag(f"unknown Bergman form {form!r}", tag=form)
    return Kernel("bergman", forms[form], Disc(rho), "complex", {"rho": rho, "form": form})


def _log(rho: float = 1.0, zeta: complex = 0.0, form: str = "paper") -> Kernel:
    forms = {
        "paper": lambda t, z: log_kernel(t, z, rho, zeta),
        "pinned": lambda t, z: log_kernel_pinned(t, z, rho, zeta),
    }
    if form not in forms:
        raise UnsupportedTag(f"unknown log-kernel form {form!r}", tag=form)
    return Kernel("log", forms[form], Disc(rho), "complex", {"rho": rho, "zeta": zeta, "form": form})


KERNELS: dict[str, Callable[..., Kernel]] = {
    "poly": _poly,
    "sobolev": _sobolev,
    "fourier": _fourier,
    "green1d": _green1d,
    "green_exact": _green_exact,
    "bergman": _bergman,
    "log": _log,
}


def make_kernel(name: str, **params) -> Kernel:
    if name not in KERNELS:
        raise UnsupportedTag(f"unknown kernel {name!r}; choose from {sorted(KERNELS)}", tag=name)
    return KERNELS[name](**{k: v for k, v in params.items() if v is not None})


def default_space(kernel: Kernel) -> InnerProductSpec:
    """The inner product under which each registered real kernel is reproducing."""
    p = kernel.params
    if kernel.name == "poly":
        return InnerProductSpec("point_derivatives", (1.0,) * (p["n"] + 1), p["a"], p["b"], center=p["c"])
    if kernel.name == "sobolev":
        return InnerProductSpec("integral", (0.0, 1.0), p["a"], p["b"])
    if kernel.name == "fourier":
        return InnerProductSpec("integral", (0.0, 1.0), 0.0, 2 * math.pi)
    if kernel.name == "green_exact":
        return InnerProductSpec("integral", (p["a0"], p["a1"]), p["a"], p["b"], bc="dirichlet")
    raise DomainError(f"kernel {kernel.name!r} has no interval inner product to verify against")


# Gram matrices and the reproducing-property check ---------------------------------------------------------------------

def gram_matrix(kernel: Kernel, points) -> np.ndarray:
    points = list(np.asarray(points).ravel())
    dtype = complex if kernel.field == "complex" else float
    return np.array([[kernel(s, t) for t in points] for s in points], dtype=dtype)


def min_gram_eigenvalue(g: np.ndarray) -> float:
    """Smallest eigenvalue of the hermitian part of a Gram matrix."""
    g = np.asarray(g)
    return float(np.min(np.linalg.eigvalsh((g + g.conj().T) / 2)))


def _panels(length: float, total: float, quad_n: int) -> int:
    n = int(round(quad_n * length / total / 2)) * 2
    return max(n, 2)


def reproducing_inner_product(
    kernel: Kernel,
    space: InnerProductSpec,
    x: ProbeFunction,
    t: float,
    quad_n: int | None = None,
) -> float:
    """
    ⟨x, H(·, t)⟩ in the given inner product. Integral inner products use composite Simpson quadrature with the
    interval split at s = t, where kernel derivatives may jump.
    """
    quad_n = Config.QUAD_N if quad_n is None else quad_n
    if quad_n < MIN_QUAD_N:
        raise DomainError(f"quad_n must be at least {MIN_QUAD_N}, got {quad_n}")
    if kernel.ds is None or not isinstance(kernel.domain, Interval):
        raise DomainError(f"kernel {kernel.name!r} cannot be checked on an interval inner product")
    if (kernel.domain.a, kernel.domain.b) != (space.a, space.b):
        raise DomainError(f"kernel domain {kernel.domain} and inner product interval ({space.a}, {space.b}) differ")
    _check(kernel.domain, t)

    if space.kind == "point_derivatives":
        c = space.center
        value = sum(w * float(x.derivative(j)(c)) * float(kernel.ds(np.asarray(c), t, j, 0))
                    for j, w in enumerate(space.weights) if w)
    else:
        cuts = [space.a, t, space.b] if space.a < t < space.b else [space.a, space.b]
        value = 0.0
        for lo, hi in zip(cuts, cuts[1:]):
            grid = np.linspace(lo, hi, _panels(hi - lo, space.b - space.a, quad_n) + 1)
            side = -1 if hi <= t else 1
            integrand = sum(w * x.derivative(p)(grid) * kernel.ds(grid, t, p, side)
                            for p, w in enumerate(space.weights) if w)
            value += float(simpson(integrand, x=grid))
    return value


def verify_reproducing(
    kernel: Kernel,
    space: InnerProductSpec,
    x: ProbeFunction,
    t: float,
    quad_n: int | None = None,
) -> float:
    """Residual |⟨x, H(·, t)⟩ − x(t)| of the reproducing property."""
    residual = abs(reproducing_inner_product(kernel, space, x, t, quad_n) - float(x(t)))
    logger.debug(f"reproducing check {kernel.name}/{x.name} at t={t}: residual {residual:.3e}")
    return residual


def fourier_normalization_residuals(kappas, x: ProbeFunction | None = None, t: float = 1.0,
                                    quad_n: int | None = None) -> list[float]:
    """Reproducing residuals of the Fourier kernel for each candidate normalization constant."""
    x = PROBE_FUNCTIONS["cos"] if x is None else x
    out = []
    for kappa in kappas:
        k = _fourier(kappa=kappa)
        out.append(verify_reproducing(k, default_space(k), x, t, quad_n))
    return out
