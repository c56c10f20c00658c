"""Trace kernels of the one-loop two-point structure and their contour calculus.

Everything here lives in the p0 plane at fixed spatial momenta: the kernel

    omega^{mu nu}(p, k) = tr[gamma^nu (pslash - m)^{-1} gamma^mu (pslash - kslash - m)^{-1}]

has four simple poles p0 = +-E(pvec) and p0 = k0 +- E(pvec - kvec).  The Wick
contour winds once around the two "negative-energy" poles -E(pvec) and
k0 - E(pvec - kvec) and not at all around the other two.  The contour
integral is realised as trapezoid sums over two small circles; the analytic
residue sum is kept as a separate, independent evaluation route.

Also here: the Feynman-parametrised integrand f^{mu nu} and the scaled inner
integral F^{mu nu}(z, eps) assembled from the regulator integral I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, PoleCollisionError, QuadratureError, SingularInputError
from .minkowski import METRIC, FourVector, energy, mdot_arrays, minkowski_dot, raise_index
from .params import PhysicalParams
from .specfun import I_closed

_METRIC_DIAG = np.array([1.0, -1.0, -1.0, -1.0])


def _as_components(v):
    return v.c if isinstance(v, FourVector) else np.asarray(v, dtype=complex)


# ---------------------------------------------------------------------------
# omega kernels
# ---------------------------------------------------------------------------

def omega_numerator(p, q):
    """4 [p^mu q^nu + p^nu q^mu - g^{mu nu} (p.q - m**2)] without the m**2 term.

    Returns the m-independent pieces separately so callers can assemble
    tr[gamma^nu (pslash+m) gamma^mu (qslash+m)] = num + 4 m**2 g^{mu nu}.
    """
    pc, qc = _as_components(p), _as_components(q)
    outer = np.einsum("...i,...j->...ij", pc, qc)
    sym = outer + np.swapaxes(outer, -1, -2)
    pq = mdot_arrays(pc, qc)
    return 4.0 * (sym - np.einsum("...,ij->...ij", pq, METRIC))


def omega_munu(p, k, m: float) -> np.ndarray:
    """The 16 traces omega^{mu nu}(p, k) as a 4x4 array (first index mu).

    Rationalised form: numerator trace over (p**2 - m**2)((p-k)**2 - m**2).
    Raises :class:`SingularInputError` when either momentum is on-shell.
    """
    pc = _as_components(p)
    kc = _as_components(k)
    qc = pc - kc
    d1 = mdot_arrays(pc, pc) - m * m
    d2 = mdot_arrays(qc, qc) - m * m
    scale = m * m + abs(mdot_arrays(pc, pc))
    if abs(d1) < 1e-12 * scale or abs(d2) < 1e-12 * scale:
        raise SingularInputError("p or p-k is on-shell; omega has a pole there")
    num = omega_numerator(pc, qc) + 4.0 * m * m * METRIC
    return num / (d1 * d2)


def omega_munu_p0(p0, p_spatial, k, m: float) -> np.ndarray:
    """omega^{mu nu} vectorised over an array of p0 values.

    Returns shape ``p0.shape + (4, 4)``.  No pole guard: contour code keeps
    its abscissae away from the poles by construction.
    """
    p0 = np.asarray(p0, dtype=complex)
    kc = _as_components(k)
    ps = np.asarray(p_spatial, dtype=complex)
    p = np.zeros(p0.shape + (4,), dtype=complex)
    p[..., 0] = p0
    p[..., 1:] = ps
    q = p - kc
    d1 = mdot_arrays(p, p) - m * m
    d2 = mdot_arrays(q, q) - m * m
    num = omega_numerator(p, q) + 4.0 * m * m * METRIC
    return num / (d1 * d2)[..., None, None]


def omega_pair(fhat, ghat, q, p, params: PhysicalParams) -> complex:
    """Current-pair kernel (i e**2/(2 pi)**4) tr[(pslash-m)^{-1} Fslash(p-q) (qslash-m)^{-1} Gslash(q-p)].

    ``fhat`` and ``ghat`` are spectral evaluators returning the four covariant
    components at a complex four-momentum.  Symmetric under (fhat, p) <-> (ghat, q)
    by cyclicity of the trace.
    """
    m = params.m
    pc, qc = _as_components(p), _as_components(q)
    dp = mdot_arrays(pc, pc) - m * m
    dq = mdot_arrays(qc, qc) - m * m
    scale = m * m + abs(mdot_arrays(pc, pc)) + abs(mdot_arrays(qc, qc))
    if abs(dp) < 1e-12 * scale or abs(dq) < 1e-12 * scale:
        raise SingularInputError("on-shell momentum in omega_pair")
    a = raise_index(np.asarray(fhat(pc - qc), dtype=complex))
    b = raise_index(np.asarray(ghat(qc - pc), dtype=complex))
    # tr[(pslash+m) aslash (qslash+m) bslash]; odd-gamma traces drop out
    pa, qb = mdot_arrays(pc, a), mdot_arrays(qc, b)
    pq, ab = mdot_arrays(pc, qc), mdot_arrays(a, b)
    pb, qa = mdot_arrays(pc, b), mdot_arrays(qc, a)
    trace = 4.0 * (pa * qb - pq * ab + pb * qa) + 4.0 * m * m * ab
    pref = 1j * params.e**2 / (2.0 * np.pi) ** 4
    return complex(pref * trace / (dp * dq))


# ---------------------------------------------------------------------------
# pole bookkeeping and contours
# ---------------------------------------------------------------------------

def propagator_poles(k, p_spatial, m: float):
    """Poles of p0 -> omega^{mu nu}(p, k): (enclosed pair, excluded pair)."""
    kc = _as_components(k)
    ps = np.asarray(p_spatial, dtype=float)
    ep = energy(ps, m)
    eq = energy(ps - np.real(kc[1:]), m)
    k0 = complex(kc[0])
    return (complex(-ep), k0 - eq), (complex(ep), k0 + eq)


@dataclass(frozen=True)
class HolomorphyDomain:
    """Membership test for k0 in D = C minus ((-inf, -2m] union [2m, inf))."""

    m: float

    def contains(self, k0) -> bool:
        k0 = complex(k0)
        return not (k0.imag == 0.0 and abs(k0.real) >= 2.0 * self.m)


@dataclass(frozen=True)
class WickContour:
    """Two small circles realising the Wick contour around the negative-energy poles.

    Refuses construction when any pole pair that must stay separated is
    closer than ``1e-6 * m`` (contour pinch).
    """

    k: FourVector
    p_spatial: np.ndarray
    m: float
    radius_factor: float = 0.25
    centers: tuple = field(init=False)
    radius: float = field(init=False)

    def __post_init__(self):
        enclosed, excluded = propagator_poles(self.k, self.p_spatial, self.m)
        pairs = [(a, b) for a in enclosed for b in excluded]
        pairs.append((enclosed[0], enclosed[1]))
        sep = min(abs(a - b) for a, b in pairs)
        if sep < 1e-6 * self.m:
            raise PoleCollisionError(
                f"pole separation {sep:.3e} below 1e-6*m; contour is pinched"
            )
        object.__setattr__(self, "centers", (enclosed[0], enclosed[1]))
        object.__setattr__(self, "radius", self.radius_factor * sep)

    def circle_points(self, n: int):
        theta = 2.0 * np.pi * np.arange(n) / n
        phase = np.exp(1j * theta)
        for c in self.centers:
            yield c + self.radius * phase, phase

    def winding_number(self, z0, n: int = 256) -> int:
        """Numerical winding integral (1/2 pi i) contour-int dz / (z - z0)."""
        total = 0.0 + 0.0j
        for pts, phase in self.circle_points(n):
            # dz = i r e^{i theta} d(theta); the i cancels against 1/(2 pi i)
            total += np.sum(self.radius * phase / (pts - z0)) / n
        return int(round(total.real))


def wick_integral(contour: WickContour, m: float, integrand=None, n: int = 128) -> np.ndarray:
    """Contour quadrature of the p0 integral over the Wick contour.

    ``integrand`` maps an array of p0 values to ``(..., 4, 4)`` tensors and
    defaults to the omega slice defined by the contour.  Trapezoid sums over
    the two circles converge geometrically; two resolutions are compared and
    a :class:`QuadratureError` is raised if they disagree.
    """
    if integrand is None:
        def integrand(p0):
            return omega_munu_p0(p0, contour.p_spatial, contour.k, m)

    def one_pass(nn):
        acc = np.zeros((4, 4), dtype=complex)
        for pts, phase in contour.circle_points(nn):
            vals = integrand(pts)
            acc += np.einsum("p,pij->ij", 1j * contour.radius * phase, vals) * (2.0 * np.pi / nn)
        return acc

    coarse = one_pass(n)
    fine = one_pass(2 * n)
    scale = np.max(np.abs(fine)) + 1e-300
    if np.max(np.abs(fine - coarse)) > 1e-11 * scale:
        raise QuadratureError("wick_integral circle quadrature did not converge")
    return fine


def wick_residue_sum(k, p_spatial, m: float) -> np.ndarray:
    """Analytic evaluation 2 pi i (Res at -E(p) + Res at k0 - E(p-k)).

    Uses the factorisations p**2 - m**2 = (p0 - E)(p0 + E) and
    (p-k)**2 - m**2 = (p0 - k0 - E')(p0 - k0 + E').
    """
    kc = _as_components(k)
    ps = np.asarray(p_spatial, dtype=float)
    ep = energy(ps, m)
    eq = energy(ps - np.real(kc[1:]), m)
    k0 = complex(kc[0])

    def omega_at(p0):
        p = np.concatenate([[p0], ps.astype(complex)])
        q = p - kc
        return omega_numerator(p, q) + 4.0 * m * m * METRIC, p, q

    # pole p0 = -E(p): residue of 1/(p**2 - m**2) is 1/(2 p0) = -1/(2E)
    num, p, q = omega_at(-ep + 0.0j)
    d2 = mdot_arrays(q, q) - m * m
    res1 = num / (-2.0 * ep * d2)

    # pole p0 = k0 - E(p-k): residue of 1/((p-k)**2 - m**2) is -1/(2E')
    num, p, q = omega_at(k0 - eq)
    d1 = mdot_arrays(p, p) - m * m
    res2 = num / (d1 * (-2.0 * eq))

    return 2j * np.pi * (res1 + res2)


def residue_p0(pole, p_spatial, evaluator, radius: float | None = None, n: int = 128) -> complex:
    """Residue of ``evaluator`` at a simple pole by small-circle quadrature.

    The Laurent modes on the circle are read off with an FFT; a detectable
    a_{-2} coefficient (higher-order pole) or disagreement between two radii
    raises an error.  ``p_spatial`` only sets the default length scale.
    """
    pole = complex(pole)
    if radius is None:
        scale = 1.0 + float(np.linalg.norm(np.asarray(p_spatial, dtype=float)))
        radius = 1e-2 * scale

    def laurent(r, nn):
        theta = 2.0 * np.pi * np.arange(nn) / nn
        z = pole + r * np.exp(1j * theta)
        vals = np.asarray(evaluator(z), dtype=complex)
        modes = np.fft.fft(vals) / nn
        a_m1 = modes[-1] * r      # Laurent coefficient of (z - pole)^{-1}
        a_m2 = modes[-2] * r * r
        return a_m1, a_m2

    a1, a2 = laurent(radius, n)
    a1_half, _ = laurent(0.5 * radius, n)
    if abs(a2) / radius > 1e-5 * max(abs(a1), 1e-300):
        raise SingularInputError("higher-order pole detected in residue_p0")
    if abs(a1 - a1_half) > 1e-9 * max(abs(a1), 1e-300):
        raise QuadratureError("residue_p0 did not converge; nearby singularity?")
    return complex(a1)


# ---------------------------------------------------------------------------
# Feynman parametrisation and the scaled inner integral
# ---------------------------------------------------------------------------

def feynman_integrand(q, z: float, k, m: float) -> np.ndarray:
    """The merged-denominator integrand f^{mu nu}_{k,m}(q, z).

        4 [2 q^mu q^nu - 2 k^mu k^nu (z - z**2) + g^{mu nu}(m**2 + k**2 (z-z**2) - q**2)]
        / [m**2 - (z - z**2) k**2 - q**2]**2
    """
    qc = _as_components(q)
    kc = _as_components(k)
    w = z - z * z
    q2 = mdot_arrays(qc, qc)
    k2 = mdot_arrays(kc, kc)
    denom_base = m * m - w * k2 - q2
    if abs(denom_base) < 1e-12 * (m * m + abs(q2) + abs(k2)):
        raise SingularInputError("feynman_integrand denominator vanishes")
    qq = np.einsum("i,j->ij", qc, qc)
    kk = np.einsum("i,j->ij", kc, kc)
    num = 4.0 * (2.0 * qq - 2.0 * w * kk + METRIC * (m * m + w * k2 - q2))
    return num / denom_base**2


def F_munu(z: float, eps, k, m: float, u: float) -> np.ndarray:
    """Inner q-integral of the eps-scaled Feynman integrand, via I(zeta, .).

        F^{mu nu}(z, eps) = 2 g^{mu nu} u I(zeta, 1+eps)
                          + 4 [(g^{mu nu} k**2 - 2 k^mu k^nu)(z - z**2) + g^{mu nu} m**2] I(zeta, eps)

    with zeta = (m**2 - (z - z**2) k**2) / u.
    """
    kc = _as_components(k)
    w = z - z * z
    k2 = mdot_arrays(kc, kc)
    zeta = (m * m - w * k2) / u
    i_one = I_closed(zeta, 1.0 + complex(eps))
    i_zero = I_closed(zeta, complex(eps))
    if i_one.pole_flag or i_zero.pole_flag:
        raise DomainError(f"eps = {eps} sits on a pole of the regulator integral")
    kk = np.einsum("i,j->ij", kc, kc)
    coeff = 4.0 * ((METRIC * k2 - 2.0 * kk) * w + METRIC * m * m)
    return 2.0 * METRIC * u * i_one.value + coeff * i_zero.value
