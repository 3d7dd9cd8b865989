import numpy as np

from collections.abc import Iterable

from .exceptions import DimensionMismatch


__all__ = [
    "as_vector",
    "check_length",
    "parse_float_list",
    "format_float",
    "relative_gap",
]


def as_vector(x: Iterable[float] | np.ndarray, dtype=float) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=dtype))


def check_length(x: np.ndarray, dim: int, what: str = "vector") -> np.ndarray:
    if x.ndim != 1 or x.shape[0] != dim:
        raise DimensionMismatch(f"{what} has shape {x.shape}, expected ({dim},)", expected=dim, got=list(x.shape))
    return x


def parse_float_list(text: str | None) -> list[float]:
    """
    Parses a comma-separated list of numbers, ignoring blank items, e.g. "1, 2,,3" -> [1.0, 2.0, 3.0].
    """
    return [float(a.strip()) for a in (text or "").split(",") if a.strip()]


def format_float(x: float) -> str:
    # 17 significant digits always round-trip through float(); integral values print without a trailing ".0"
    return f"{float(x):.17g}"


def relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale > 0 else 0.0
