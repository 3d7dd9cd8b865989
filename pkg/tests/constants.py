import math

__all__ = [
    "SWAP_FORM",
    "MINKOWSKI_2D",
    "AGM_1_2",
    "BERGMAN_HALF_SERIES",
    "BERGMAN_HALF_PRINTED",
    "SHELLS_L2",
    "SOBOLEV_GRAM_POINTS",
    "SOBOLEV_GRAM",
    "LEDGER_TRACKED",
]


SWAP_FORM = [[0.0, 1.0], [1.0, 0.0]]
MINKOWSKI_2D = [1.0, -1.0]

# agm(1, 2), by the iteration carried out to double precision
AGM_1_2 = 1.4567910310469068

# Bergman kernel of the unit disc at t = z = 1/2
BERGMAN_HALF_SERIES = 16 / (9 * math.pi)
BERGMAN_HALF_PRINTED = 4 / (3 * math.pi)

SHELLS_L2 = [(1, 1), (1, 2), (2, 2), (2, 1)]

SOBOLEV_GRAM_POINTS = [0.2, 0.5, 0.8]
SOBOLEV_GRAM = [
    [0.2, 0.2, 0.2],
    [0.2, 0.5, 0.5],
    [0.2, 0.5, 0.8],
]

LEDGER_TRACKED = (
    "fourier_constant",
    "bergman_exponent",
    "legendre_reciprocity_sign",
    "shell_order_j2",
)
