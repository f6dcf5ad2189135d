"""Closed-form small-radius expansions of the resonance/bound-state frequencies.

These are computed from the limiting operator's discrete spectrum on the
unit domain and serve as independent cross-checks of the nonlinear solver:
masses and inner products use the same quadrature-weighted discrete forms
as the solver, so discretization bias cancels in joint comparisons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import nystrom
from .nystrom import PhysicalParams, QuadratureRule

UNIT_INTERVAL_LENGTH = 2.0  # |B_1| in one dimension


class AsymptoticsError(ValueError):
    pass


@dataclass(frozen=True)
class LimitingMode:
    """Eigenpair of the limiting operator, with the derived quadratic forms.

    mass = integral of the normalized eigenfunction over the unit domain;
    a1_quad = <psi, A1 psi> with the first-order correction operator at
    the mode's own frequency (real part; the imaginary part of the 2D
    correction is carried by the explicit formulas instead).
    """

    j: int
    omega_j: float
    psi: np.ndarray
    mass: float
    a1_quad: float
    rule: QuadratureRule

    def __post_init__(self):
        if self.omega_j >= math.inf:
            raise AsymptoticsError("mode frequency must be finite")


def limiting_modes(params: PhysicalParams, n: int, rule: QuadratureRule = None) -> list[LimitingMode]:
    """Top-n eigenpairs of the limiting operator, shifted by Omega.

    Eigenvectors are normalized in the quadrature-weighted norm and
    sign-fixed so the mass is nonnegative; frequencies omega_j = Omega - mu_j
    increase toward Omega.
    """
    if params.d not in (2, 3):
        raise AsymptoticsError("limiting modes are defined for d in {2, 3}")
    if n < 1:
        raise ValueError("n must be >= 1")
    op = nystrom.build_l0_operator(params, rule)
    W = op.norm_weights
    S = np.sqrt(W)
    A = S[:, None] * op.matrix.real / S[None, :]
    mu, U = np.linalg.eigh(0.5 * (A + A.T))
    order = np.argsort(mu)[::-1]
    out = []
    for j in range(n):
        idx = order[j]
        psi = U[:, idx] / S  # back to function values; automatically unit weighted norm
        mass = float(np.sum(W * psi))
        if mass < 0:
            psi = -psi
            mass = -mass
        omega_j = params.omega_a - float(mu[idx])
        a1 = nystrom.build_a1_operator(params, omega_j, op.rule)
        a1_quad = float(np.real(np.sum(W * psi * (a1.matrix @ psi))))
        out.append(LimitingMode(j + 1, omega_j, psi, mass, a1_quad, op.rule))
    return out


def resonance_expansion_3d(mode: LimitingMode, params: PhysicalParams, eps: float) -> complex:
    """omega_j + eps <psi, A1 psi> - i eps^2 omega_j^2 g^2 s0 mass^2 / (2 pi c^3)."""
    if params.d != 3:
        raise AsymptoticsError("three-dimensional expansion needs d = 3")
    re = mode.omega_j + eps * mode.a1_quad
    im = -(eps**2) * mode.omega_j**2 * params.g**2 * params.s0_effective \
        * mode.mass**2 / (2.0 * np.pi * params.c**3)
    return complex(re, im)


def resonance_expansion_2d(mode: LimitingMode, params: PhysicalParams, eps: float) -> complex:
    if params.d != 2:
        raise AsymptoticsError("two-dimensional expansion needs d = 2")
    if eps == 0:
        return complex(mode.omega_j, 0.0)
    coeff = mode.omega_j * params.g**2 * params.s0_effective * mode.mass**2
    re = mode.omega_j + eps * math.log(eps) * coeff / (2.0 * np.pi * params.c**2)
    im = -eps * coeff / (2.0 * params.c**2)
    return complex(re, im)


def resonance_expansion_1d(params: PhysicalParams, eps: float) -> complex:
    """Leading resonance terms in one dimension under the log-scaled density.

    Valid when Omega - g^2 s0 |B1| / (pi c) > 0; otherwise the mode sits on
    the negative axis and follows the bound-state power law instead (see
    bound_state_exponent_1d).
    """
    if params.d != 1:
        raise AsymptoticsError("one-dimensional expansion needs d = 1")
    if not (0 < eps < 1):
        raise AsymptoticsError("need 0 < eps < 1")
    shift = params.g**2 * params.s0_effective * UNIT_INTERVAL_LENGTH / (np.pi * params.c)
    re = params.omega_a - shift
    if re <= 0:
        raise AsymptoticsError(
            "Omega - g^2 s0 |B1|/(pi c) <= 0: negative eigenvalue regime; "
            "use bound_state_exponent_1d"
        )
    im = params.g**2 * params.s0_effective * UNIT_INTERVAL_LENGTH / (params.c * math.log(eps))
    return complex(re, im)


def sphere_lowest_mode_approx(params: PhysicalParams, eps: float) -> complex:
    """Pointwise (Born-type) approximation of the lowest spherical mode.

    Evaluating the integral representation at the inclusion center with
    psi frozen there gives, with alpha = 2 g^2 s0 / (pi c),

        omega - Omega ~ -(g^2 s0/c)(2/pi + eps omega/(2c) + 2i eps^2 omega^2/(3c^2)).

    The eps-coefficient is half the naive one because the ball average of
    the first kernel correction carries a factor 1/2 (same pinning as
    expansion_terms).
    """
    if params.d != 3:
        raise AsymptoticsError("sphere approximation needs d = 3")
    g2s0c = params.g**2 * params.s0_effective / params.c
    alpha = 2.0 * g2s0c / np.pi
    re = params.omega_a - alpha - eps * g2s0c * (params.omega_a - alpha) / (2.0 * params.c)
    im = -(eps**2) * alpha * np.pi * (params.omega_a - alpha) ** 2 / (3.0 * params.c**2)
    return complex(re, im)


def bound_state_exponent_1d(params: PhysicalParams) -> float:
    """Power-law exponent of the small negative eigenvalue, omega ~ -c eps^p."""
    if params.d != 1:
        raise AsymptoticsError("the power law applies to d = 1")
    p = params.omega_a * np.pi * params.c / (
        params.g**2 * params.s0_effective * UNIT_INTERVAL_LENGTH) - 1.0
    if p <= 0:
        raise AsymptoticsError(
            "Omega pi c / (g^2 s0 |B1|) <= 1: resonance regime; "
            "use resonance_expansion_1d"
        )
    return float(p)
