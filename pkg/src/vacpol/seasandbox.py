"""Finite-dimensional shadows of the Dirac-sea determinant and phase calculus.

A finite Hilbert space splits into a "positive" block (first n_plus
coordinates) and a "negative" block (last n_minus).  For a unitary U close
enough to the identity, the conjugate minus block (U*)_- is invertible; its
polar decomposition defines the right operator R_U, the vacuum overlap is
det(U_- R_U) = det|(U*)_-| in (0, 1], and the cyclic block determinants

    Gamma_{ABC} = arg det (A^{-1}B)_- (B^{-1}C)_- (C^{-1}A)_-

obey the tetrahedron rule Gamma_{ABC} = Gamma_{BCD} Gamma_{DCA} Gamma_{ABD}.
The trace-formula check plays the determinant-phase pipeline against the
block-trace pipeline for a scattering family S_X = exp(-i(H0 + X V)).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularInputError


@dataclass(frozen=True)
class SplitSpace:
    """Dimensions of the positive/negative blocks."""

    n_plus: int
    n_minus: int

    def __post_init__(self):
        if self.n_plus < 1 or self.n_minus < 1:
            raise ValueError("both blocks need dimension >= 1")

    @property
    def dim(self) -> int:
        return self.n_plus + self.n_minus


def _opnorm(mat) -> float:
    return float(np.linalg.norm(mat, 2))


@dataclass(frozen=True)
class SplitUnitary:
    """A unitary matrix together with its declared block split."""

    space: SplitSpace
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.space.dim, self.space.dim):
            raise ValueError("matrix shape does not match the split space")
        if _opnorm(m.conj().T @ m - np.eye(self.space.dim)) > 1e-12:
            raise ValueError("matrix is not unitary to 1e-12")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def block(self, row: str, col: str) -> np.ndarray:
        n = self.space.n_plus
        sl = {"+": slice(0, n), "-": slice(n, None)}
        return self.matrix[sl[row], sl[col]]

    @property
    def minus(self) -> np.ndarray:
        return self.block("-", "-")


def _minus_block(mat: np.ndarray, n_plus: int) -> np.ndarray:
    return mat[n_plus:, n_plus:]


def near_identity_unitary(space: SplitSpace, strength: float, seed: int) -> SplitUnitary:
    """U = exp(i * strength * H) for a seeded Hermitian H with ||H|| <= 1."""
    rng = np.random.default_rng(seed)
    n = space.dim
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = 0.5 * (a + a.conj().T)
    h /= _opnorm(h)
    evals, vecs = np.linalg.eigh(h)
    u = (vecs * np.exp(1j * strength * evals)) @ vecs.conj().T
    su = SplitUnitary(space, u)
    if _opnorm(u - np.eye(n)) >= 1.0:
        raise DomainError(f"strength {strength} leaves ||id - U|| >= 1")
    return su


def right_operator(u: SplitUnitary) -> np.ndarray:
    """Unitary polar factor R_U of (U*)_- = R_U |(U*)_-|."""
    x = u.minus.conj().T          # (U*)_- equals the adjoint of the minus block
    w, s, vh = np.linalg.svd(x)
    if np.min(s) < 1e-12:
        raise SingularInputError("(U*)_- is numerically singular; ||id - U|| < 1 fails")
    return w @ vh


def vacuum_overlap(u: SplitUnitary) -> float:
    """det(U_- R_U), real and in (0, 1]; equals det|(U*)_-|."""
    val = complex(np.linalg.det(u.minus @ right_operator(u)))
    if abs(val.imag) > 1e-10 * max(abs(val), 1e-300):
        raise SingularInputError(f"overlap determinant not real: {val}")
    return float(val.real)


def overlap_from_singular_values(u: SplitUnitary) -> float:
    """Independent route: det|(U*)_-| as the product of singular values."""
    s = np.linalg.svd(u.minus.conj().T, compute_uv=False)
    return float(np.prod(s))


@dataclass(frozen=True)
class GammaPhase:
    """Unit-modulus phase arg det of the cyclic minus-block product."""

    value: complex

    def __post_init__(self):
        if abs(abs(self.value) - 1.0) > 1e-12:
            raise ValueError("phase must have unit modulus")


def _pair_block(x: SplitUnitary, y: SplitUnitary) -> np.ndarray:
    prod = x.matrix.conj().T @ y.matrix
    if _opnorm(prod - np.eye(x.space.dim)) >= 1.0:
        raise DomainError("||id - X^{-1} Y|| >= 1; Gamma block not invertible")
    return _minus_block(prod, x.space.n_plus)


def gamma_phase(a: SplitUnitary, b: SplitUnitary, c: SplitUnitary) -> GammaPhase:
    """Gamma_{ABC} = arg det (A^{-1}B)_- (B^{-1}C)_- (C^{-1}A)_-."""
    det = complex(np.linalg.det(_pair_block(a, b) @ _pair_block(b, c) @ _pair_block(c, a)))
    if abs(det) < 1e-300:
        raise SingularInputError("vanishing determinant in gamma_phase")
    return GammaPhase(det / abs(det))


def composition_block_det(u: SplitUnitary, uprime: SplitUnitary) -> complex:
    """det[(U U')_- R_{U'} R_U]; the reversed order mirrors lift composition."""
    prod = SplitUnitary(u.space, u.matrix @ uprime.matrix)
    return complex(np.linalg.det(prod.minus @ right_operator(uprime) @ right_operator(u)))


# ---------------------------------------------------------------------------
# trace formula: determinant-phase pipeline vs block-trace pipeline
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TraceFormulaReport:
    c_trace: float
    c_gamma: float
    deviation: float
    rel_deviation: float
    fd_step: float


def _split_from_reference(h_ref: np.ndarray) -> tuple[SplitSpace, np.ndarray]:
    """Eigenbasis of the reference Hermitian, positive eigenvalues first."""
    evals, vecs = np.linalg.eigh(h_ref)
    if np.min(np.abs(evals)) < 1e-10:
        raise DomainError("reference Hermitian has a (near-)zero eigenvalue; split undefined")
    order = np.argsort(-evals)
    evals = evals[order]
    vecs = vecs[:, order]
    n_plus = int(np.sum(evals > 0))
    if n_plus == 0 or n_plus == evals.size:
        raise DomainError("reference Hermitian must have both signs in its spectrum")
    return SplitSpace(n_plus, evals.size - n_plus), vecs


def _expmi(h: np.ndarray) -> np.ndarray:
    evals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * evals)) @ vecs.conj().T


def trace_formula_check(h0, v_a, v_f, v_g, a_strength: float = 0.2,
                        fd_step: float = 1e-3, phase_slope: float = 0.0) -> TraceFormulaReport:
    """Mixed second derivative of the two-form, two independent pipelines.

    Family: S(f, g) = exp(-i (H0 + a V_A + f V_F + g V_G)) in the eigenbasis
    of H0, split by spectral sign.  Pipeline (a) is
    -2 d_f d_g Im Tr[(S_A^{-1} S_{A+f})_{-+} (S_A^{-1} S_{A+g})_{+-}],
    pipeline (b) is 2i d_f d_g log Gamma_{S_{A+f} S_A S_{A+g}}; both mixed
    derivatives use the 4-point central stencil with one Richardson halving.
    ``phase_slope`` multiplies S_{A+f} by exp(i * phase_slope * f), the
    finite shadow of the lift-phase freedom; the result must not move.
    """
    h0 = np.asarray(h0, dtype=complex)
    space, basis = _split_from_reference(h0)
    to_basis = lambda mat: basis.conj().T @ np.asarray(mat, dtype=complex) @ basis
    hh0, aa, ff, gg = to_basis(h0), to_basis(v_a), to_basis(v_f), to_basis(v_g)
    n_plus = space.n_plus

    s_a = _expmi(hh0 + a_strength * aa)
    s_a_inv = s_a.conj().T

    def family_f(f: float) -> np.ndarray:
        return cmath.exp(1j * phase_slope * f) * _expmi(hh0 + a_strength * aa + f * ff)

    def family_g(g: float) -> np.ndarray:
        return _expmi(hh0 + a_strength * aa + g * gg)

    def w_trace(f: float, g: float) -> float:
        rel_f = s_a_inv @ family_f(f)
        rel_g = s_a_inv @ family_g(g)
        block_mp = rel_f[n_plus:, :n_plus]
        block_pm = rel_g[:n_plus, n_plus:]
        return -2.0 * float(np.trace(block_mp @ block_pm).imag)

    def w_gamma(f: float, g: float) -> float:
        sf = SplitUnitary(space, family_f(f))
        sg = SplitUnitary(space, family_g(g))
        sa = SplitUnitary(space, s_a)
        phase = gamma_phase(sf, sa, sg).value
        # 2i log(exp(i theta)) = -2 theta, principal branch (Gamma stays near 1)
        return -2.0 * cmath.phase(phase)

    def mixed(fun, h: float) -> float:
        return (fun(h, h) - fun(h, -h) - fun(-h, h) + fun(-h, -h)) / (4.0 * h * h)

    def richardson(fun) -> float:
        d_h = mixed(fun, fd_step)
        d_h2 = mixed(fun, 0.5 * fd_step)
        return (4.0 * d_h2 - d_h) / 3.0

    c_trace = richardson(w_trace)
    c_gamma = richardson(w_gamma)
    dev = abs(c_trace - c_gamma)
    scale = max(abs(c_trace), abs(c_gamma), 1e-300)
    return TraceFormulaReport(c_trace=c_trace, c_gamma=c_gamma, deviation=dev,
                              rel_deviation=dev / scale, fd_step=fd_step)


def random_hermitian(n: int, seed: int) -> np.ndarray:
    """Seeded Hermitian with unit spectral norm (test direction generator)."""
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = 0.5 * (a + a.conj().T)
    return h / _opnorm(h)
