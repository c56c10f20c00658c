"""Minkowski four-vector algebra and Dirac gamma matrices.

Signature is (+,-,-,-), forced by E(p) = sqrt(m**2 + p**2) appearing as a
pole of 1/(p**2 - m**2).  Index 0 is the time component.  Gamma matrices are
kept in the standard Dirac representation; every quantity built on top of
them is a trace and therefore representation independent (tested by
conjugating with a random unitary).

Four-vectors store contravariant components.  Covariant data (polarisation
vectors of test potentials) is raised with :func:`raise_index` before it
enters any dot product or slashed combination.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularInputError

#: Metric tensor g_{mu nu} = g^{mu nu} = diag(+1, -1, -1, -1).
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_SIGMA = [
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
]


def _dirac_gammas():
    g0 = np.zeros((4, 4), dtype=complex)
    g0[:2, :2] = np.eye(2)
    g0[2:, 2:] = -np.eye(2)
    gs = [g0]
    for s in _SIGMA:
        gi = np.zeros((4, 4), dtype=complex)
        gi[:2, 2:] = s
        gi[2:, :2] = -s
        gs.append(gi)
    return gs


#: gamma^mu, mu = 0..3, Dirac representation.
GAMMA = _dirac_gammas()
ID4 = np.eye(4, dtype=complex)

#: gamma_mu = g_{mu nu} gamma^nu, used to contract with contravariant components.
GAMMA_LOWER = [GAMMA[0], -GAMMA[1], -GAMMA[2], -GAMMA[3]]


class FourVector:
    """Complex-valued Lorentz vector with contravariant components."""

    __slots__ = ("c",)

    def __init__(self, components):
        c = np.asarray(components, dtype=complex)
        if c.shape != (4,):
            raise ValueError("FourVector needs exactly 4 components")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    def __getitem__(self, i):
        return self.c[i]

    def __add__(self, other):
        return FourVector(self.c + other.c)

    def __sub__(self, other):
        return FourVector(self.c - other.c)

    def __neg__(self):
        return FourVector(-self.c)

    def __mul__(self, s):
        return FourVector(self.c * s)

    __rmul__ = __mul__

    def __repr__(self):
        return f"FourVector({list(self.c)})"

    @property
    def spatial(self):
        return self.c[1:]

    def dot(self, other: "FourVector") -> complex:
        return minkowski_dot(self, other)

    def square(self) -> complex:
        return minkowski_dot(self, self)

    def conj(self) -> "FourVector":
        return FourVector(np.conj(self.c))


def _components(v):
    return v.c if isinstance(v, FourVector) else np.asarray(v, dtype=complex)


def minkowski_dot(a, b) -> complex:
    """a.b = a^0 b^0 - a_vec . b_vec (bilinear, no complex conjugation)."""
    ac, bc = _components(a), _components(b)
    return complex(ac[0] * bc[0] - ac[1] * bc[1] - ac[2] * bc[2] - ac[3] * bc[3])


def mdot_arrays(a, b):
    """Vectorised Minkowski dot for arrays of shape (..., 4)."""
    return a[..., 0] * b[..., 0] - a[..., 1] * b[..., 1] - a[..., 2] * b[..., 2] - a[..., 3] * b[..., 3]


def raise_index(cov):
    """Contravariant components of a covariant four-vector (g^{mu nu} a_nu)."""
    a = np.asarray(cov, dtype=complex)
    out = a.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def energy(p_spatial, m: float) -> float:
    """On-shell energy E(p) = sqrt(m**2 + |p|**2)."""
    p = np.asarray(p_spatial, dtype=float)
    return float(np.sqrt(m * m + p @ p))


def slash(v) -> np.ndarray:
    """gamma^mu v_mu for a contravariant four-vector v.

    Lowering happens via the metric: slash(v) = v^0 g^0 - sum_i v^i g^i ...
    i.e. gamma_mu v^mu.  Satisfies slash(v) @ slash(v) = v.v * Id.
    """
    c = _components(v)
    return (
        c[0] * GAMMA_LOWER[0]
        + c[1] * GAMMA_LOWER[1]
        + c[2] * GAMMA_LOWER[2]
        + c[3] * GAMMA_LOWER[3]
    )


def trace4(mat) -> complex:
    """Sum of the diagonal entries of a 4x4 matrix."""
    return complex(np.trace(mat))


def propagator(p, m: float) -> np.ndarray:
    """(pslash - m)^{-1} in the rationalised form (pslash + m)/(p.p - m**2).

    Raises :class:`SingularInputError` on-shell, where p.p = m**2.
    """
    c = _components(p)
    p2 = c[0] ** 2 - c[1] ** 2 - c[2] ** 2 - c[3] ** 2
    denom = p2 - m * m
    scale = abs(p2) + m * m
    if abs(denom) < 1e-12 * scale:
        raise SingularInputError(f"momentum is on-shell: p^2 - m^2 = {denom}")
    return (slash(p) + m * ID4) / denom


def trace_two(mu: int, nu: int) -> complex:
    """tr gamma^mu gamma^nu = 4 g^{mu nu}."""
    return 4.0 * METRIC[mu, nu]


def trace_four(nu: int, sigma: int, mu: int, tau: int) -> complex:
    """tr gamma^nu gamma^sigma gamma^mu gamma^tau in closed form."""
    g = METRIC
    return 4.0 * (g[nu, sigma] * g[mu, tau] - g[nu, mu] * g[sigma, tau] + g[nu, tau] * g[sigma, mu])


def trace_slashed_pair(a, b) -> complex:
    """tr[slash(a) slash(b)] = 4 a.b."""
    return 4.0 * minkowski_dot(a, b)


def trace_slashed_quad(a, b, c, d) -> complex:
    """tr[slash(a) slash(b) slash(c) slash(d)] = 4[(a.b)(c.d) - (a.c)(b.d) + (a.d)(b.c)]."""
    ab = minkowski_dot(a, b)
    cd = minkowski_dot(c, d)
    ac = minkowski_dot(a, c)
    bd = minkowski_dot(b, d)
    ad = minkowski_dot(a, d)
    bc = minkowski_dot(b, c)
    return 4.0 * (ab * cd - ac * bd + ad * bc)
