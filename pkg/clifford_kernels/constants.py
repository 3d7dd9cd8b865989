import math

import clifford_kernels


__all__ = [
    "PACKAGE_NAME",
    "SCHEMA_VERSION",
    "MACHINE_EPS",
    "GRADIENT_STEP_FACTOR",
    "HESSIAN_STEP_FACTOR",
    "PRINTED_FOURIER_KAPPA",
    "STANDARD_FOURIER_KAPPA",
    "PRINTED_J2_LISTING",
]

PACKAGE_NAME = clifford_kernels.name

# Bumped whenever a CLI report model changes shape, not on every release
SCHEMA_VERSION = "clifford-kernels/1"

MACHINE_EPS: float = 2.0 ** -52
GRADIENT_STEP_FACTOR: float = MACHINE_EPS ** (1 / 3)
HESSIAN_STEP_FACTOR: float = MACHINE_EPS ** (1 / 4)

# Fourier kernel normalizations: the literal printed constant (1/pi) * (1/pi) and the single 1/pi
PRINTED_FOURIER_KAPPA: float = 1 / math.pi ** 2
STANDARD_FOURIER_KAPPA: float = 1 / math.pi

# Second shell as printed, which disagrees with the general J_l rule
PRINTED_J2_LISTING: tuple[tuple[int, int], ...] = ((1, 2), (2, 1), (2, 2))
