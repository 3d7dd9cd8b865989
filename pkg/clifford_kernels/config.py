import os

from .logger import logger


__all__ = [
    "CLIFFORD_KERNELS_DEBUG",
    "Config",
]


def _to_bool(val: str) -> bool:
    return val.strip().lower() in TRUTH_VALUES


def _to_float(var: str, default: float) -> float:
    raw = os.environ.get(var, "").strip()
    if raw == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"{var}={raw!r} is not a number; using default {default}")
        return default


def _to_int(var: str, default: int) -> int:
    raw = os.environ.get(var, "").strip()
    if raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"{var}={raw!r} is not an integer; using default {default}")
        return default


TRUTH_VALUES = ("true", "1")

CLIFFORD_KERNELS_DEBUG: bool = _to_bool(os.environ.get("CLIFFORD_KERNELS_DEBUG", "false"))


class Config:
    DEBUG: bool = CLIFFORD_KERNELS_DEBUG

    # Sparse multivector tables drop coefficients below this after every operation
    PRUNE_TOL: float = _to_float("PRUNE_TOL", 1e-14)

    # Cyclic Jacobi eigen-solver
    JACOBI_TOL: float = _to_float("JACOBI_TOL", 1e-12)
    JACOBI_MAX_SWEEPS: int = _to_int("JACOBI_MAX_SWEEPS", 100)

    # Signature zero tolerance: relative factor on the largest |eigenvalue|, with an absolute floor
    ZERO_TOL_FACTOR: float = _to_float("ZERO_TOL_FACTOR", 1e-9)
    ZERO_TOL_FLOOR: float = _to_float("ZERO_TOL_FLOOR", 1e-14)

    # Damped Newton for Legendre inversion
    NEWTON_TOL: float = _to_float("NEWTON_TOL", 1e-10)
    NEWTON_MAX_ITER: int = _to_int("NEWTON_MAX_ITER", 100)
    NEWTON_MAX_HALVINGS: int = _to_int("NEWTON_MAX_HALVINGS", 30)

    AGM_TOL: float = _to_float("AGM_TOL", 1e-12)

    # Composite Simpson panel count for the reproducing-property verifier
    QUAD_N: int = _to_int("QUAD_N", 512)

    PERMANENT_MAX_ORDER: int = _to_int("PERMANENT_MAX_ORDER", 20)
    PERMANENT_NAIVE_MAX_ORDER: int = _to_int("PERMANENT_NAIVE_MAX_ORDER", 8)

    # Dense order-p tensors: p * log2(max dim) may not exceed this
    TENSOR_MAX_LOG_SIZE: int = _to_int("TENSOR_MAX_LOG_SIZE", 24)
    SYMMETRIZE_MAX_ORDER: int = 8

    DEFAULT_SEED: int = _to_int("DEFAULT_SEED", 0)
