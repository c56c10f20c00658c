"""Test potentials and their Fourier transforms.

Convention (natural units):  Fhat_mu(k) = (2 pi)**-2 int d^4x e^{i k.x} F_mu(x)
with the Minkowski phase k.x = k^0 x^0 - kvec.xvec.  Spectral evaluators
return the four **covariant** components Fhat_mu at contravariant input k.

Two families:

* analytic-gaussian: F_mu(x) = amp * eps_mu * exp(-|x - x0|_E**2 / sigma**2),
  an entire transform evaluable at any complex four-momentum (the shifted
  k0 lines of the current pairings need this), but not compactly supported.
* grid-bump: a smooth time bump sampled on a uniform grid times a compactly
  supported radial spatial bump sampled on a radial grid.  Truly zero
  outside its support box, so causality statements are exact; transforms
  are discrete sums over the grid data (spectrally accurate for smooth,
  compactly supported samples) and stay valid at complex k0.

Pure gauges d(Gamma) are represented spectrally by -i k_mu Gammahat(k).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .minkowski import FourVector


def _as_k_array(k):
    if isinstance(k, FourVector):
        return k.c
    return np.asarray(k, dtype=complex)


def _component_sumsq(k):
    return k[..., 0] ** 2 + k[..., 1] ** 2 + k[..., 2] ** 2 + k[..., 3] ** 2


def _mink_phase(k, x0):
    return k[..., 0] * x0[0] - k[..., 1] * x0[1] - k[..., 2] * x0[2] - k[..., 3] * x0[3]


class GaussianPotential:
    """Euclidean gaussian profile times a constant covariant polarisation."""

    kind = "analytic-gaussian"

    def __init__(self, center, sigma: float, polarisation, amplitude: float = 1.0):
        if sigma <= 0:
            raise ValueError("width sigma must be positive")
        self.center = np.asarray(center, dtype=float)
        self.sigma = float(sigma)
        self.polarisation = np.asarray(polarisation, dtype=float)
        self.amplitude = float(amplitude)
        if self.center.shape != (4,) or self.polarisation.shape != (4,):
            raise ValueError("center and polarisation must be four-vectors")

    def position(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        r2 = np.sum((x - self.center) ** 2, axis=-1)
        return self.amplitude * np.exp(-r2 / self.sigma**2)[..., None] * self.polarisation

    def scalar_hat(self, k) -> np.ndarray:
        """The scalar spectral profile multiplying eps_mu."""
        k = _as_k_array(k)
        pref = self.amplitude * self.sigma**4 / 4.0
        return pref * np.exp(1j * _mink_phase(k, self.center) - self.sigma**2 * _component_sumsq(k) / 4.0)

    def spectral(self, k) -> np.ndarray:
        k = _as_k_array(k)
        return self.scalar_hat(k)[..., None] * self.polarisation

    def momentum_cutoff(self) -> float:
        """|k| beyond which the transform is below ~1e-18."""
        return 13.0 / self.sigma

    @property
    def is_axisymmetric(self) -> bool:
        return (
            self.center[1] == 0.0 and self.center[2] == 0.0
            and self.polarisation[1] == 0.0 and self.polarisation[2] == 0.0
        )

    @property
    def is_isotropic(self) -> bool:
        return (
            np.all(self.center[1:] == 0.0) and np.all(self.polarisation[1:] == 0.0)
        )

    def translated(self, a) -> "GaussianPotential":
        return GaussianPotential(self.center + np.asarray(a, dtype=float), self.sigma,
                                 self.polarisation, self.amplitude)

    def rotated(self, rot) -> "GaussianPotential":
        """Apply a spatial rotation to center and polarisation."""
        rot = np.asarray(rot, dtype=float)
        c = self.center.copy()
        c[1:] = rot @ c[1:]
        p = self.polarisation.copy()
        p[1:] = rot @ p[1:]
        return GaussianPotential(c, self.sigma, p, self.amplitude)


@dataclass(frozen=True)
class PureGauge:
    """Scalar gaussian profile Gamma; the induced potential is d(Gamma)."""

    center: np.ndarray
    sigma: float
    amplitude: float = 1.0

    def profile_hat(self, k) -> np.ndarray:
        k = _as_k_array(k)
        x0 = np.asarray(self.center, dtype=float)
        pref = self.amplitude * self.sigma**4 / 4.0
        return pref * np.exp(1j * _mink_phase(k, x0) - self.sigma**2 * _component_sumsq(k) / 4.0)

    def induced_potential(self) -> "GradientPotential":
        return GradientPotential(self)


class GradientPotential:
    """Spectral representation of d(Gamma): components -i k_mu Gammahat(k)."""

    kind = "pure-gauge"
    is_isotropic = False
    is_axisymmetric = False

    def __init__(self, gauge: PureGauge):
        self.gauge = gauge
        self.sigma = gauge.sigma
        self.polarisation = None  # direction is k-dependent

    def spectral(self, k) -> np.ndarray:
        k = _as_k_array(k)
        k_lower = k.copy()
        k_lower[..., 1:] = -k_lower[..., 1:]
        return -1j * k_lower * self.gauge.profile_hat(k)[..., None]

    def momentum_cutoff(self) -> float:
        return 13.0 / self.sigma


def _smooth_bump(xi):
    """The standard compactly supported bump, normalised to 1 at 0."""
    xi = np.asarray(xi, dtype=float)
    out = np.zeros_like(xi)
    inside = np.abs(xi) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - xi[inside] ** 2))
    return out


class GridBumpPotential:
    """Smooth compactly supported bump sampled on uniform grids.

    Time profile: bump centred at ``t_center`` with half-width
    ``t_halfwidth`` on an ``nt``-point uniform grid.  Spatial profile: a
    radial bump of support radius ``r_support`` on an ``nr``-point radial
    grid, spatially centred at the origin.  The four component arrays are
    outer products amplitude * eps_mu * w_t(t) * w_r(|x|); they vanish
    identically outside [t0, t1] x {|x| <= r_support}.
    """

    kind = "grid-bump"

    def __init__(self, t_center: float, t_halfwidth: float, r_support: float,
                 polarisation, amplitude: float = 1.0, nt: int = 96, nr: int = 64):
        if t_halfwidth <= 0 or r_support <= 0:
            raise ValueError("support widths must be positive")
        self.t_center = float(t_center)
        self.t_halfwidth = float(t_halfwidth)
        self.r_support = float(r_support)
        self.polarisation = np.asarray(polarisation, dtype=float)
        self.amplitude = float(amplitude)
        self.time_grid = np.linspace(t_center - t_halfwidth, t_center + t_halfwidth, nt)
        self.time_values = _smooth_bump((self.time_grid - t_center) / t_halfwidth)
        self.radial_grid = np.linspace(0.0, r_support, nr)
        self.radial_values = _smooth_bump(self.radial_grid / r_support)
        self._dt = self.time_grid[1] - self.time_grid[0]
        self._dr = self.radial_grid[1] - self.radial_grid[0]

    @property
    def time_support(self):
        return (self.t_center - self.t_halfwidth, self.t_center + self.t_halfwidth)

    @property
    def is_isotropic(self) -> bool:
        return bool(np.all(self.polarisation[1:] == 0.0))

    is_axisymmetric = property(lambda self: self.polarisation[1] == 0.0 and self.polarisation[2] == 0.0)

    def time_hat(self, k0) -> np.ndarray:
        """int dt e^{i k0 t} w_t(t) as a grid sum; valid for complex k0."""
        k0 = np.asarray(k0, dtype=complex)
        phases = np.exp(1j * np.multiply.outer(k0, self.time_grid))
        return self._dt * phases @ self.time_values

    def space_hat(self, kmag) -> np.ndarray:
        """int d^3x e^{-i kvec.xvec} w_r(|x|) = (4 pi / kappa) int r sin(kappa r) w_r dr."""
        kmag = np.asarray(kmag, dtype=float)
        r = self.radial_grid
        sinc = np.sinc(np.multiply.outer(kmag, r) / np.pi)  # sin(kr)/(kr)
        return 4.0 * np.pi * self._dr * sinc @ (r * r * self.radial_values)

    def spectral(self, k) -> np.ndarray:
        k = _as_k_array(k)
        kvec = k[..., 1:]
        if np.max(np.abs(kvec.imag)) > 0.0:
            raise DomainError("grid-bump transform needs real spatial momenta")
        kmag = np.sqrt(np.sum(kvec.real**2, axis=-1))
        scalar = self.time_hat(k[..., 0]) * self.space_hat(kmag) / (2.0 * np.pi) ** 2
        return self.amplitude * scalar[..., None] * self.polarisation

    def momentum_cutoff(self) -> float:
        # practical spectral width of the grid data before aliasing
        return min(np.pi / self._dt, np.pi / self._dr) * 0.5

    def _scalar_array(self, n_spatial: int = 17):
        ax = np.linspace(-self.r_support, self.r_support, n_spatial)
        xx, yy, zz = np.meshgrid(ax, ax, ax, indexing="ij")
        rr = np.sqrt(xx**2 + yy**2 + zz**2)
        w_r = _smooth_bump(rr / self.r_support)
        return (self.time_grid, ax), np.einsum("t,xyz->txyz", self.time_values, w_r)

    def component_array(self, mu: int, n_spatial: int = 17):
        """Materialise F_mu on a uniform cartesian space-time grid."""
        axes, scalar = self._scalar_array(n_spatial)
        return axes, self.amplitude * self.polarisation[mu] * scalar


class SpectralEvaluator:
    """Callable wrapper returned by :func:`fourier`."""

    def __init__(self, potential):
        self.potential = potential
        self.kind = potential.kind

    def __call__(self, k):
        return self.potential.spectral(k)

    def dual_grid(self, n_spatial: int = 17):
        """Discrete transform samples on the dual grid (grid-bump kind only).

        Uses the e^{+i k0 t - i kvec.xvec} sign and the (2 pi)**-2 factor.
        Returns ``(k0_axis, k_axis, samples)`` with samples indexed by
        (component, k0, kx, ky, kz).
        """
        pot = self.potential
        if pot.kind != "grid-bump":
            raise DomainError("dual_grid is defined for grid-bump potentials only")
        (t_axis, x_axis), scalar = pot._scalar_array(n_spatial)
        dt = t_axis[1] - t_axis[0]
        dx = x_axis[1] - x_axis[0]
        k0_axis = 2.0 * np.pi * np.fft.fftfreq(len(t_axis), d=dt)
        k_axis = 2.0 * np.pi * np.fft.fftfreq(len(x_axis), d=dx)
        # e^{+i k0 t}: inverse-FFT sign on the time axis; e^{-i kvec.xvec}: forward on space
        ft = np.fft.ifft(scalar.astype(complex), axis=0) * len(t_axis)
        ft = np.fft.fftn(ft, axes=(1, 2, 3))
        phase_t = np.exp(1j * k0_axis * t_axis[0])
        phase_x = np.exp(-1j * k_axis * x_axis[0])
        base = ft * phase_t[:, None, None, None]
        base = base * phase_x[None, :, None, None] * phase_x[None, None, :, None] * phase_x[None, None, None, :]
        base *= dt * dx**3 / (2.0 * np.pi) ** 2
        full = np.array([pot.amplitude * pot.polarisation[mu] * base for mu in range(4)])
        return k0_axis, k_axis, full


def fourier(potential) -> SpectralEvaluator:
    """Spectral evaluator of a test potential (covariant components)."""
    return SpectralEvaluator(potential)
