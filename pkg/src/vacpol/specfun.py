"""Complex Gamma, principal logarithm, and the regulator integral I(zeta, eta).

The regulator integral is the scaled radial integral

    I(zeta, eta) = 2 i pi**2 u**(-eta) * int_0^inf r**(3+2*eta) (zeta*u + r**2)**(-2) dr,

convergent for zeta > 0 and -2 < Re(eta) < 0 and independent of the unit
scale u.  Its Beta-function evaluation

    I(zeta, eta) = i pi**2 zeta**eta Gamma(2+eta) Gamma(-eta)
                 = i pi**2 zeta**eta pi (1+eta) / sin(pi (1+eta))

extends it meromorphically to all eta with first-order poles exactly on the
integers except -1 (where the singularity is removable, value i pi**2 / zeta).
The closed form, the direct quadrature, and the small-eta expansion are three
independent evaluation routes; the tests play them against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PoleError
from .quadrature import adaptive_quad

_TWO_PI_SQ_I = 2j * math.pi**2
_PI_SQ = math.pi**2

# Lanczos coefficients, g = 7, n = 9.
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def principal_log(z) -> complex:
    """Principal branch of log on the cut plane C \\ (-inf, 0]."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise DomainError(f"principal_log undefined on the cut (-inf, 0]: z = {z}")
    return cmath.log(z)


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real == round(z.real) and z.real <= 0.0


def cgamma(z) -> complex:
    """Complex Gamma function (Lanczos series plus Euler reflection).

    Relative accuracy around 1e-13 for |z| <= 10 away from the poles at
    the non-positive integers, where :class:`PoleError` is raised.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"Gamma pole at z = {z}")
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (z + i)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


@dataclass(frozen=True)
class RegulatorValue:
    """Closed-form value of I(zeta, eta) plus a pole marker.

    ``pole_flag`` is set exactly when eta is an integer other than -1,
    i.e. on the poles of the meromorphic extension; ``value`` is NaN there.
    """

    value: complex
    pole_flag: bool


def _at_regulator_pole(eta: complex) -> bool:
    return eta.imag == 0.0 and eta.real == round(eta.real) and eta.real != -1.0


def I_closed(zeta, eta) -> RegulatorValue:
    """Meromorphic extension i pi**2 zeta**eta Gamma(2+eta) Gamma(-eta).

    zeta**eta uses the principal logarithm, so zeta must stay off
    (-inf, 0].  The removable point eta = -1 evaluates to i pi**2 / zeta.
    """
    zeta = complex(zeta)
    eta = complex(eta)
    power = cmath.exp(eta * principal_log(zeta))
    if _at_regulator_pole(eta):
        return RegulatorValue(complex(float("nan"), float("nan")), True)
    gg = cgamma(2.0 + eta) * cgamma(-eta)
    return RegulatorValue(1j * _PI_SQ * power * gg, False)


def I_quadrature(zeta: float, eta, u: float = 1.0, rel_tol=1e-10) -> complex:
    """Direct radial quadrature of the regulator integral.

    Valid on the convergence strip -2 < Re(eta) < 0 with zeta > 0; the
    substitution r = w**2 removes the integrable endpoint singularity and
    w = t/(1-t) folds the infinite range into (0, 1).  The result does not
    depend on u.
    """
    eta = complex(eta)
    if not (-2.0 < eta.real < 0.0):
        raise DomainError(f"integral diverges outside -2 < Re(eta) < 0: eta = {eta}")
    if not (np.isreal(zeta) and float(np.real(zeta)) > 0.0):
        raise DomainError(f"quadrature form needs zeta > 0: zeta = {zeta}")
    zeta = float(np.real(zeta))
    if u <= 0.0:
        raise DomainError("scale u must be positive")

    zu = zeta * u
    expo = 7.0 + 4.0 * eta

    def integrand(t):
        t = np.asarray(t)
        w = t / (1.0 - t)
        jac = 1.0 / (1.0 - t) ** 2
        return 2.0 * np.exp(expo * np.log(w)) / (zu + w**4) ** 2 * jac

    val, _ = adaptive_quad(integrand, 0.0, 1.0, rel_tol=rel_tol, abs_tol=1e-16, max_intervals=4000)
    return _TWO_PI_SQ_I * cmath.exp(-eta * math.log(u)) * val


def I_expansion(zeta, shift: int):
    """Laurent data of I at eta = shift + eps for shift in {0, 1}.

    Returns ``(pole_coeff, const_coeff)`` of the expansion

        I(zeta, 1+eps) = 2 i pi**2 zeta (1/eps + log zeta + 1/2) + O(eps)
        I(zeta,   eps) = -i pi**2      (1/eps + log zeta + 1)   + O(eps)
    """
    if shift not in (0, 1):
        raise DomainError("expansion implemented at eta = 0 and eta = 1 only")
    lz = principal_log(zeta)
    if shift == 1:
        pole = _TWO_PI_SQ_I * complex(zeta)
        return pole, pole * (lz + 0.5)
    pole = -1j * _PI_SQ
    return pole, pole * (lz + 1.0)
