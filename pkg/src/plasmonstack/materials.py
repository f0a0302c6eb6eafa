"""Material parameters, the contrast parameter, and the Drude model.

The structure alternates a shell conductivity sigma1 = -sigma* + i*delta
(odd layers) with the background sigma0 (even layers and the exterior).
The single contrast parameter

    lambda = (sigma1 + sigma0) / (2 (sigma1 - sigma0))

carries all material information entering the mode problem.  delta = 0 is
allowed in the data types; operations consuming a real lambda near the
spectrum are near-singular there and say so in their docstrings rather
than rejecting the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContrastError


@dataclass(frozen=True)
class MaterialConfig:
    """Background/shell conductivities for an alternating layer structure.

    Odd layers carry sigma1 = -sigma_star + i*delta, even layers sigma0.
    """

    sigma0: float = 1.0
    sigma_star: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.sigma0 <= 0:
            raise ContrastError(f"sigma0 must be positive, got {self.sigma0}")
        if self.sigma_star <= 0:
            raise ContrastError(f"sigma_star must be positive, got {self.sigma_star}")
        if self.delta < 0:
            raise ContrastError(f"delta must be >= 0, got {self.delta}")

    @property
    def sigma1(self):
        return complex(-self.sigma_star, self.delta)

    @property
    def contrast(self):
        return lambda_from_sigma(self.sigma1, self.sigma0)

    def layer_sigma(self, k):
        """Conductivity of region k (0 = exterior/background, 1 = outer shell, ...)."""
        return self.sigma1 if k % 2 == 1 else complex(self.sigma0)


@dataclass(frozen=True)
class DrudeParams:
    """Drude dispersion parameters: sigma1(omega) = sigma_prime * (1 - omega_p^2 / (omega (omega + i tau)))."""

    sigma_prime: float = 9e-12
    omega_p: float = 2e15
    tau_damp: float = 1e14

    def __post_init__(self):
        if self.sigma_prime <= 0 or self.omega_p <= 0:
            raise ContrastError("sigma_prime and omega_p must be positive")
        if self.tau_damp < 0:
            # tau = 0 is the lossless limit used when solving for resonant frequencies
            raise ContrastError(f"tau_damp must be >= 0, got {self.tau_damp}")

    @staticmethod
    def default_sigma0():
        """Background conductivity conventionally paired with the defaults, (1.33)^2 sigma_prime."""
        return 1.33**2 * 9e-12


def lambda_from_sigma(sigma1, sigma0):
    """Contrast parameter lambda = (sigma1 + sigma0) / (2 (sigma1 - sigma0))."""
    if sigma1 == sigma0:
        raise ContrastError("sigma1 == sigma0 gives no contrast (lambda is singular)")
    return (sigma1 + sigma0) / (2.0 * (sigma1 - sigma0))


def sigma_from_lambda(lam, sigma0):
    """Shell conductivity realizing a given contrast: sigma1 = sigma0 (2 lam + 1)/(2 lam - 1).

    Exact inverse of :func:`lambda_from_sigma`.  lam = 1/2 maps to infinite
    conductivity and is rejected.
    """
    if lam == 0.5:
        raise ContrastError("lambda = 1/2 corresponds to infinite conductivity")
    return sigma0 * (2.0 * lam + 1.0) / (2.0 * lam - 1.0)


def drude_sigma(omega, params):
    """Drude conductivity at angular frequency omega (> 0)."""
    if omega <= 0:
        raise ContrastError(f"frequency must be positive, got {omega}")
    p = params
    return p.sigma_prime * (1.0 - p.omega_p**2 / (omega * complex(omega, p.tau_damp)))


def resonant_frequency(lambda_star, params, sigma0):
    """Lossless Drude frequency whose conductivity realizes the contrast lambda_star.

    Solves sigma_prime (1 - omega_p^2/omega^2) = sigma_t with
    sigma_t = sigma0 (2 lambda_star + 1)/(2 lambda_star - 1), giving
    omega = omega_p sqrt(sigma_prime / (sigma_prime - sigma_t)).

    Only the lossless (tau = 0) closed form is provided; complex-frequency
    root finding for lossy shells is out of scope.
    """
    sigma_t = sigma_from_lambda(lambda_star, sigma0)
    sigma_t = complex(sigma_t)
    if abs(sigma_t.imag) > 0:
        raise ContrastError("resonant_frequency expects a real target contrast")
    sigma_t = sigma_t.real
    p = params
    if sigma_t >= p.sigma_prime:
        raise ContrastError(
            f"no real frequency: target sigma {sigma_t} is not below sigma_prime {p.sigma_prime}"
        )
    return p.omega_p * math.sqrt(p.sigma_prime / (p.sigma_prime - sigma_t))


def lossless_limit_lambda(sigma_star, sigma0):
    """Contrast in the delta -> 0 limit: (sigma0 - sigma*) / (-2 (sigma0 + sigma*))."""
    return (sigma0 - sigma_star) / (-2.0 * (sigma0 + sigma_star))
