"""Time evolution of the coupled photon-atom amplitudes on a periodic line.

The pair (psi, phi) evolves under

    i d/dt psi = c (-Delta)^{1/2} psi + g sqrt(rho) phi
    i d/dt phi = g sqrt(rho) psi + Omega phi

with (-Delta)^{1/2} realized as the Fourier multiplier |k| on a periodic
grid.  Strang splitting composes the exact multiplier flow on psi with the
exact pointwise 2x2 rotation of the coupling/atomic block; each sub-flow
is unitary, so the total single-excitation probability is conserved to
roundoff and the atomic amplitude never leaks outside the support of rho.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .nystrom import PhysicalParams


class DynamicsError(RuntimeError):
    pass


@dataclass(frozen=True)
class FieldState:
    """Sampled amplitudes on a uniform periodic grid of length box_length.

    psi is the photon amplitude, phi = sqrt(rho) a the atomic amplitude.
    """

    box_length: float
    psi: np.ndarray
    phi: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        n = len(self.psi)
        if len(self.phi) != n:
            raise DynamicsError("psi and phi must share the grid")
        if n & (n - 1) or n < 2:
            raise DynamicsError("grid size must be a power of two")

    @property
    def n(self):
        return len(self.psi)

    @property
    def dx(self):
        return self.box_length / self.n

    @property
    def x(self):
        """Grid points, centered: [-L/2, L/2)."""
        return -0.5 * self.box_length + self.dx * np.arange(self.n)

    def mass(self) -> float:
        return float((np.abs(self.psi) ** 2 + np.abs(self.phi) ** 2).sum() * self.dx)

    def window_mass(self, a, b) -> float:
        w = (self.x >= a) & (self.x <= b)
        return float(((np.abs(self.psi) ** 2 + np.abs(self.phi) ** 2) * w).sum() * self.dx)

    def normalized(self):
        m = np.sqrt(self.mass())
        return replace(self, psi=self.psi / m, phi=self.phi / m)


def grid_wavenumbers(n, box_length):
    return 2.0 * np.pi * np.fft.fftfreq(n, d=box_length / n)


def half_laplacian_apply(psi, box_length):
    """(-Delta)^{1/2} psi via the |k| Fourier multiplier."""
    psi = np.asarray(psi, dtype=complex)
    n = len(psi)
    if n & (n - 1):
        raise DynamicsError("grid size must be a power of two")
    k = grid_wavenumbers(n, box_length)
    return np.fft.ifft(np.abs(k) * np.fft.fft(psi))


def square_density(x, params: PhysicalParams):
    """rho(x) = rho0(eps) on [-eps, eps], zero outside."""
    rho = np.zeros_like(x)
    rho[np.abs(x) <= params.epsilon] = params.density
    return rho


def _coupling_flow(dt, b, omega_a):
    """Exact unitary exp(-i dt [[0, b], [b, Omega]]) per grid point.

    With m = Omega/2 and r = sqrt(m^2 + b^2) the block is m I + A where
    A^2 = r^2 I, so the exponential is e^{-i m dt}(cos(r dt) I
    - i sin(r dt)/r A).
    """
    m = 0.5 * omega_a
    r = np.sqrt(m * m + b * b)
    phase = np.exp(-1j * m * dt)
    cos = np.cos(r * dt)
    sinc = np.where(r > 0, np.sin(r * dt) / np.where(r > 0, r, 1.0), dt)
    u11 = phase * (cos + 1j * m * sinc)
    u12 = phase * (-1j * b * sinc)
    u22 = phase * (cos - 1j * m * sinc)
    return u11, u12, u22


def evolve(state: FieldState, dt: float, steps: int, params: PhysicalParams,
           rho=None, mass_drift_abort=1e-6) -> FieldState:
    """Strang-split propagation over `steps` steps of size dt.

    Second-order accurate in dt; aborts with diagnostics if the relative
    mass drift exceeds `mass_drift_abort` (it should stay at roundoff).
    """
    if dt <= 0 or steps < 1:
        raise DynamicsError("need dt > 0 and steps >= 1")
    if params.d != 1:
        raise DynamicsError("only one-dimensional evolution is supported")
    x = state.x
    if rho is None:
        rho = square_density(x, params)
    b = params.g * np.sqrt(rho)
    k = grid_wavenumbers(state.n, state.box_length)
    half_kick = np.exp(-1j * params.c * np.abs(k) * (0.5 * dt))
    u11, u12, u22 = _coupling_flow(dt, b, params.omega_a)
    psi = state.psi.astype(complex).copy()
    phi = state.phi.astype(complex).copy()
    m0 = state.mass()
    for _ in range(steps):
        psi = np.fft.ifft(half_kick * np.fft.fft(psi))
        psi, phi = u11 * psi + u12 * phi, u12 * psi + u22 * phi
        psi = np.fft.ifft(half_kick * np.fft.fft(psi))
    out = FieldState(state.box_length, psi, phi, state.t + dt * steps)
    drift = abs(out.mass() - m0) / max(m0, 1e-300)
    if drift > mass_drift_abort:
        raise DynamicsError(
            f"mass drift {drift:.3e} exceeds {mass_drift_abort:.1e} after "
            f"{steps} steps of dt = {dt} (t = {out.t})"
        )
    return out


def survival_probability(state0: FieldState, state: FieldState) -> float:
    """|<state0, state>|^2 in the discrete inner product (state0 normalized)."""
    if state0.n != state.n or state0.box_length != state.box_length:
        raise DynamicsError("states live on different grids")
    ip = (np.conj(state0.psi) * state.psi + np.conj(state0.phi) * state.phi).sum() * state.dx
    return float(abs(ip) ** 2)
