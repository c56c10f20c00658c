"""The explicit second-order polarisation tensor Pi^{mu nu}(k).

    Pi^{mu nu}(k) = 8 i pi**2 (k^mu k^nu - g^{mu nu} k**2)
                    * [ J(k**2/m**2) + (log(m**2/u) + C) / 6 ]

with the Feynman-parameter integral

    J(kappa) = int_0^1 dz (z - z**2) log(1 - (z - z**2) kappa)

taken with the principal logarithm.  Defined on
{k in C^4 : k**2 not real, or k**2 < 4 m**2}; the constant C is the free
scheme knob of the current family and defaults to params.C.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .minkowski import METRIC, FourVector, mdot_arrays
from .params import PhysicalParams
from .quadrature import adaptive_quad, gl_interval

_EIGHT_I_PI_SQ = 8j * math.pi**2


def _as_components(k):
    return k.c if isinstance(k, FourVector) else np.asarray(k, dtype=complex)


def k_square(k) -> complex:
    kc = _as_components(k)
    return complex(mdot_arrays(kc, kc))


def domain_contains(k, m: float) -> bool:
    """Membership in the extension domain {k**2 not in R, or k**2 < 4 m**2}."""
    k2 = k_square(k)
    if k2.imag != 0.0:
        return True
    return k2.real < 4.0 * m * m


def _guard_kappa(kappa: complex):
    # refuse close to the branch locus 1 - (z - z**2) kappa = 0, z in [0, 1]
    if kappa.imag == 0.0 and kappa.real >= 4.0:
        raise DomainError(f"kappa = {kappa} on the branch cut [4, inf)")
    w = np.linspace(0.0, 0.25, 101)
    if np.min(np.abs(1.0 - w * kappa)) < 1e-10:
        raise DomainError(f"kappa = {kappa} too close to the logarithmic branch point")


def pi_z_integral(kappa, rel_tol=1e-11) -> complex:
    """J(kappa) by adaptive quadrature, error at or below 1e-10.

    Requires (z - z**2) kappa to stay off [1, inf); for real kappa this
    means kappa < 4.
    """
    kappa = complex(kappa)
    _guard_kappa(kappa)

    def integrand(z):
        w = z * (1.0 - z)
        return w * np.log(1.0 - w * kappa)

    val, _ = adaptive_quad(integrand, 0.0, 1.0, rel_tol=rel_tol, abs_tol=1e-15)
    return complex(val)


def pi_z_integral_grid(kappa_values, n_nodes: int = 96) -> np.ndarray:
    """Fixed-rule J(kappa) vectorised over an array of kappa values.

    Used inside the current pairings where a smooth, deterministic
    dependence on the outer quadrature node is needed.  The integrand is
    analytic on [0, 1] for kappa in the domain, so a fixed Gauss rule of
    this size is converged to round-off for the moderate kappa that occur.
    """
    kappa = np.asarray(kappa_values, dtype=complex)
    z, wts = gl_interval(0.0, 1.0, n_nodes)
    w = z * (1.0 - z)
    vals = w[:, None] * np.log(1.0 - np.outer(w, kappa.ravel()))
    out = wts @ vals
    return out.reshape(kappa.shape)


@dataclass(frozen=True)
class PolTensor:
    """Value of Pi^{mu nu}(k) with its quadrature error estimate."""

    k: FourVector
    value: np.ndarray
    quadrature_error: float
    params: PhysicalParams

    def transversality_residual(self) -> float:
        """max_nu |k_mu Pi^{mu nu}| relative to |k| * ||Pi||."""
        kc = self.k.c
        k_lower = kc * np.array([1.0, -1.0, -1.0, -1.0])
        resid = k_lower @ self.value
        scale = (np.max(np.abs(kc)) + 1e-300) * (np.max(np.abs(self.value)) + 1e-300)
        return float(np.max(np.abs(resid)) / scale)


def transverse_projector(k) -> np.ndarray:
    """k^mu k^nu - g^{mu nu} k**2 as a 4x4 array."""
    kc = _as_components(k)
    k2 = mdot_arrays(kc, kc)
    return np.einsum("i,j->ij", kc, kc) - METRIC * k2


def pi_bracket(k2, params: PhysicalParams, rel_tol=1e-11) -> complex:
    """J(k**2/m**2) + (log(m**2/u) + C)/6, the scalar factor of Pi."""
    m2 = params.m**2
    const = (math.log(m2 / params.u) + params.C) / 6.0
    return pi_z_integral(complex(k2) / m2, rel_tol=rel_tol) + const


def pi_munu(k, params: PhysicalParams) -> PolTensor:
    """Pi^{mu nu}(k) on the extension domain.

    Transversality k_mu Pi^{mu nu} = 0 and the mu-nu symmetry hold by the
    algebraic structure of the prefactor; both are retained as invariants of
    the returned value.
    """
    kv = k if isinstance(k, FourVector) else FourVector(k)
    if not domain_contains(kv, params.m):
        raise DomainError(f"k**2 = {k_square(kv)} outside the holomorphy domain")
    bracket = pi_bracket(k_square(kv), params)
    value = _EIGHT_I_PI_SQ * transverse_projector(kv) * bracket
    return PolTensor(k=kv, value=value, quadrature_error=1e-10 * float(np.max(np.abs(value))), params=params)


def _d2_bracket_analytic(k2: complex, params: PhysicalParams, rel_tol=1e-12) -> complex:
    # d^2/d(m**2)^2 [J + (log(m**2/u)+C)/6] = -int_0^1 w / (m**2 - w k**2)**2 dz
    m2 = params.m**2

    def integrand(z):
        w = z * (1.0 - z)
        return -w / (m2 - w * k2) ** 2

    val, _ = adaptive_quad(integrand, 0.0, 1.0, rel_tol=rel_tol, abs_tol=1e-16)
    return complex(val)


def d2_m2_pi(k, params: PhysicalParams, mode: str = "analytic") -> np.ndarray:
    """Second m**2-derivative of Pi^{mu nu}(k).

    ``analytic`` differentiates under the z-integral (the scale and C terms
    drop out exactly, so the result is u- and C-independent); the
    ``finite-difference`` mode applies a central second difference in m**2
    with one Richardson halving to the full tensor.
    """
    kv = k if isinstance(k, FourVector) else FourVector(k)
    if mode == "analytic":
        if not domain_contains(kv, params.m):
            raise DomainError("k outside the holomorphy domain")
        return _EIGHT_I_PI_SQ * transverse_projector(kv) * _d2_bracket_analytic(k_square(kv), params)
    if mode != "finite-difference":
        raise ValueError("mode must be 'analytic' or 'finite-difference'")

    m2 = params.m**2
    h = 1e-2 * m2

    def tensor_at(m2_val: float) -> np.ndarray:
        return pi_munu(kv, params.with_mass_squared(m2_val)).value

    def second_diff(step: float) -> np.ndarray:
        if m2 - step <= 0:
            raise DomainError("finite-difference step leaves m**2 > 0 domain")
        return (tensor_at(m2 + step) - 2.0 * tensor_at(m2) + tensor_at(m2 - step)) / step**2

    coarse = second_diff(h)
    fine = second_diff(0.5 * h)
    return (4.0 * fine - coarse) / 3.0
