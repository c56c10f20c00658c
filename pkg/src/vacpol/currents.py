"""Current pairings: j2(F; A), the closed two-form kernel c2, and its causal part c2+.

Conventions follow the second-order structure exactly:

* j2(F; A) = (e**2 / 2 pi**2) * int_{[R - i delta] x R^3} d^4k
      Fhat_mu(k) Ahat_nu(-k) (k^mu k^nu - g^{mu nu} k**2)
      [ J(k**2/m**2) + (log(m**2/u) + C)/6 ]

* c2(G, F) = int d^3p d^3q  sum_tau tau (2 pi i)**2
      Res_{p0 = -tau E(p), q0 = tau E(q)} omega(G, F; q, p)

  whose iterated residues evaluate to

      (i e**2 / (16 pi**2 E_p E_q)) [T_plus - T_minus],
      T_tau = tr[(pslash_tau + m) Fslash(p_tau - q_tau)
                 (qslash_tau + m) Gslash(q_tau - p_tau)],

  with p_tau = (-tau E(p), pvec), q_tau = (tau E(q), qvec).  The tau = -1
  block equals the tau = +1 block with the potential slots and momenta
  exchanged (trace cyclicity), so c2 is assembled as S(G, F) - S(F, G) and
  is antisymmetric to the bit.

* c2+(F; G; pvec, qvec) = -(i e**2/(2 pi)**4) int_{[R - i delta]} dk0
      Fhat_mu(k) Ghat_nu(-k) * WickResidueSum^{mu nu}(p0-plane; k),
  k = (k0, pvec - qvec).  Its (pvec, qvec) integral is *not* absolutely
  convergent (the residue sum only decays like 1/|pvec|), so c2+ totals are
  reported together with the truncation radius of the matched grid; the
  splitting difference and the causality ratio are truncation-stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, QuadratureError
from .minkowski import FourVector, mdot_arrays, raise_index
from .params import PhysicalParams
from .pi_tensor import pi_z_integral_grid
from .quadrature import gauss_legendre, gl_interval

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# shared small pieces
# ---------------------------------------------------------------------------

def _plain_contract(cov, contra):
    """sum_mu a_mu b^mu (lower times upper, no metric)."""
    return np.sum(cov * contra, axis=-1)


def _metric_contract(cov_a, cov_b):
    """g^{mu nu} a_mu b_nu for two covariant vectors."""
    return cov_a[..., 0] * cov_b[..., 0] - np.sum(cov_a[..., 1:] * cov_b[..., 1:], axis=-1)


def _sigma_of(potential) -> float:
    if hasattr(potential, "sigma"):
        return float(potential.sigma)
    return float(potential.t_halfwidth)


def _is_grid_kind(potential) -> bool:
    return getattr(potential, "kind", "") == "grid-bump"


def _reduction_level(*potentials) -> str:
    if all(getattr(p, "is_isotropic", False) for p in potentials):
        return "isotropic"
    return "generic"


# ---------------------------------------------------------------------------
# j2: the current pairing
# ---------------------------------------------------------------------------

def _composite_interval(a: float, b: float, n_seg: int, order: int):
    """Composite Gauss-Legendre rule: n_seg equal segments of given order."""
    edges = np.linspace(a, b, n_seg + 1)
    xs, ws = [], []
    for i in range(n_seg):
        x, w = gl_interval(edges[i], edges[i + 1], order)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def _j2_sum(F, A, params: PhysicalParams, order: int, n_cos: int, n_phi: int,
            delta: float, t_range: float, r_range: float) -> complex:
    m2 = params.m**2
    const = (math.log(m2 / params.u) + params.C) / 6.0
    level = _reduction_level(F, A)

    # The bracket J(k**2/m**2) has its branch line at distance delta above
    # the real k0 axis (where k**2 crosses [4 m**2, inf)); composite rules
    # with delta-scaled segments keep the quadrature spectral there.
    seg_scale = 24.0 * max(delta, 0.05 * params.m)
    n_seg_t = int(np.clip(math.ceil(2.0 * t_range / seg_scale), 2, 48))
    n_seg_r = int(np.clip(math.ceil(r_range / seg_scale), 2, 36))
    if level != "isotropic":
        n_seg_t = min(n_seg_t, 10)
        n_seg_r = min(n_seg_r, 8)
    t, wt = _composite_interval(-t_range, t_range, n_seg_t, order)
    r, wr = _composite_interval(0.0, r_range, n_seg_r, order)

    # k**2 and hence the z-integral bracket depend on (t, r) only; evaluate
    # them on the 2D subgrid and broadcast into the angular directions
    k2_2d = (t[:, None] - 1j * delta) ** 2 - r[None, :] ** 2
    bracket_2d = pi_z_integral_grid(k2_2d / m2) + const

    pref = params.e**2 / (2.0 * math.pi**2)
    if level == "isotropic":
        # angular integral is 4 pi; representative direction e3
        tt, rr = np.meshgrid(t, r, indexing="ij")
        wgt = 4.0 * math.pi * np.outer(wt, wr * r * r)
        k = np.zeros(tt.shape + (4,), dtype=complex)
        k[..., 0] = tt - 1j * delta
        k[..., 3] = rr
        f = F.spectral(k)
        a = A.spectral(-k)
        fk = _plain_contract(f, k)
        ak = _plain_contract(a, k)
        fa = _metric_contract(f, a)
        return complex(pref * np.sum(wgt * (fk * ak - k2_2d * fa) * bracket_2d))

    c, wc = gauss_legendre(n_cos)
    phi = _TWO_PI * np.arange(n_phi) / n_phi
    ss = np.sqrt(1.0 - c * c)
    total = 0.0 + 0.0j
    # chunk over the t axis to bound memory on the 4D grid
    for i0 in range(0, t.size, 8):
        i1 = min(i0 + 8, t.size)
        tt = t[i0:i1, None, None, None]
        rr = r[None, :, None, None]
        cc = c[None, None, :, None]
        sss = ss[None, None, :, None]
        pp = phi[None, None, None, :]
        wgt = (
            wt[i0:i1, None, None, None]
            * (wr * r * r)[None, :, None, None]
            * wc[None, None, :, None]
            * (_TWO_PI / n_phi)
        )
        shape = (i1 - i0, r.size, n_cos, n_phi)
        k = np.zeros(shape + (4,), dtype=complex)
        k[..., 0] = np.broadcast_to(tt - 1j * delta, shape)
        k[..., 1] = rr * sss * np.cos(pp)
        k[..., 2] = rr * sss * np.sin(pp)
        k[..., 3] = np.broadcast_to(rr * cc, shape)
        f = F.spectral(k)
        a = A.spectral(-k)
        fk = _plain_contract(f, k)
        ak = _plain_contract(a, k)
        fa = _metric_contract(f, a)
        k2 = k2_2d[i0:i1, :, None, None]
        bracket = bracket_2d[i0:i1, :, None, None]
        total += np.sum(wgt * (fk * ak - k2 * fa) * bracket)
    return complex(pref * total)


def j2_with_error(F, A, params: PhysicalParams, *, n_scale: float = 1.0):
    """Current pairing with a two-resolution quadrature error estimate."""
    grid_kind = _is_grid_kind(F) or _is_grid_kind(A)
    if grid_kind:
        # delta = 0 proxy: integrate on the real k0 line, truncated below the
        # branch onset at 2m (valid when the time-spectral content is slow)
        delta = 0.0
        t_range = min(1.95 * params.m,
                      min(F.momentum_cutoff(), A.momentum_cutoff()))
    else:
        delta = params.delta
        sig2 = _sigma_of(F) ** 2 + _sigma_of(A) ** 2
        t_range = 14.0 / math.sqrt(sig2)
    r_range = t_range if not grid_kind else min(F.momentum_cutoff(), A.momentum_cutoff())

    def run(scale):
        return _j2_sum(F, A, params, max(8, int(24 * scale)),
                       max(12, int(24 * scale)), max(12, int(24 * scale)),
                       delta, t_range, r_range)

    fine = run(n_scale)
    coarse = run(0.7 * n_scale)
    return fine, abs(fine - coarse)


def j2(F, A, params: PhysicalParams) -> complex:
    """j2(F; A); the physical pairing is the real part."""
    return j2_with_error(F, A, params)[0]


# ---------------------------------------------------------------------------
# the (pvec, qvec) product grid shared by c2 and c2+
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairGrid:
    """Flattened symmetric product grid over (pvec, qvec) with weights."""

    pvecs: np.ndarray
    qvecs: np.ndarray
    weights: np.ndarray
    radius: float
    note: str


def pair_grid_isotropic(radius: float, n_rad: int = 48, n_cos: int = 32) -> PairGrid:
    """(r_p, r_q, cos gamma) grid for SO(3)-invariant kernels.

    Representative directions: pvec along e3, qvec in the (e1, e3) plane.
    """
    r, wr = gl_interval(0.0, radius, n_rad)
    c, wc = gauss_legendre(n_cos)
    rp, rq, cc = np.meshgrid(r, r, c, indexing="ij")
    wgt = 8.0 * math.pi**2 * (
        (wr * r * r)[:, None, None] * (wr * r * r)[None, :, None] * wc[None, None, :]
    )
    s = np.sqrt(1.0 - cc * cc)
    pv = np.zeros(rp.shape + (3,))
    pv[..., 2] = rp
    qv = np.zeros(rp.shape + (3,))
    qv[..., 0] = rq * s
    qv[..., 2] = rq * cc
    return PairGrid(
        pvecs=pv.reshape(-1, 3), qvecs=qv.reshape(-1, 3), weights=wgt.ravel(),
        radius=radius, note=f"isotropic reduction, n_rad={n_rad}, n_cos={n_cos}",
    )


def pair_grid_generic(radius: float, n_rad: int = 16, n_cos: int = 10, n_phi: int = 10,
                      budget: int = 10_000_000) -> PairGrid:
    """Full 6D tensor grid in two spherical coordinate sets."""
    total = (n_rad * n_cos * n_phi) ** 2
    if total > budget:
        raise QuadratureError(f"6D grid of {total} nodes exceeds budget {budget}")
    r, wr = gl_interval(0.0, radius, n_rad)
    c, wc = gauss_legendre(n_cos)
    phi = _TWO_PI * np.arange(n_phi) / n_phi
    wphi = np.full(n_phi, _TWO_PI / n_phi)

    rr, cc, pp = np.meshgrid(r, c, phi, indexing="ij")
    ss = np.sqrt(1.0 - cc * cc)
    single = np.stack([rr * ss * np.cos(pp), rr * ss * np.sin(pp), rr * cc], axis=-1).reshape(-1, 3)
    wsingle = ((wr * r * r)[:, None, None] * wc[None, :, None] * wphi[None, None, :]).ravel()

    n1 = single.shape[0]
    pv = np.repeat(single, n1, axis=0)
    qv = np.tile(single, (n1, 1))
    wgt = np.outer(wsingle, wsingle).ravel()
    return PairGrid(pvecs=pv, qvecs=qv, weights=wgt, radius=radius,
                    note=f"generic 6D tensor grid, {total} nodes")


def default_pair_grid(X, Y, params: PhysicalParams, n_scale: float = 1.0) -> PairGrid:
    if _is_grid_kind(X) or _is_grid_kind(Y):
        # bump kernels have no gaussian decay in the radii; the radius is a
        # declared truncation (reported with every c2+ total)
        radius = 10.0 * params.m
    else:
        radius = 8.0 / min(_sigma_of(X), _sigma_of(Y)) + 2.0 * params.m
    if _reduction_level(X, Y) == "isotropic":
        return pair_grid_isotropic(radius, n_rad=max(16, int(48 * n_scale)),
                                   n_cos=max(12, int(32 * n_scale)))
    return pair_grid_generic(radius)


# ---------------------------------------------------------------------------
# c2: iterated-residue kernel, integrated
# ---------------------------------------------------------------------------

def _energies(vecs: np.ndarray, m: float) -> np.ndarray:
    return np.sqrt(m * m + np.sum(vecs * vecs, axis=-1))


def _t_plus(X, Y, pvecs, qvecs, m: float):
    """tr[(pslash_+ + m) Yslash(p_+ - q_+) (qslash_+ + m) Xslash(q_+ - p_+)] on the grid."""
    ep = _energies(pvecs, m)
    eq = _energies(qvecs, m)
    p4 = np.concatenate([(-ep)[..., None], pvecs], axis=-1).astype(complex)
    q4 = np.concatenate([eq[..., None], qvecs], axis=-1).astype(complex)
    diff = p4 - q4
    y = raise_index(Y.spectral(diff))
    x = raise_index(X.spectral(-diff))
    py = mdot_arrays(p4, y)
    qx = mdot_arrays(q4, x)
    pq = mdot_arrays(p4, q4)
    yx = mdot_arrays(y, x)
    px = mdot_arrays(p4, x)
    qy = mdot_arrays(q4, y)
    trace = 4.0 * (py * qx - pq * yx + px * qy) + 4.0 * m * m * yx
    return trace, ep, eq


def _c2_single_sum(X, Y, grid: PairGrid, params: PhysicalParams) -> complex:
    trace, ep, eq = _t_plus(X, Y, grid.pvecs, grid.qvecs, params.m)
    pref = 1j * params.e**2 / (16.0 * math.pi**2 * ep * eq)
    return complex(np.sum(grid.weights * pref * trace))


def c2_full_complex(G, F, params: PhysicalParams, grid: PairGrid | None = None) -> complex:
    if grid is None:
        grid = default_pair_grid(G, F, params)
    return _c2_single_sum(G, F, grid, params) - _c2_single_sum(F, G, grid, params)


def c2_full(G, F, params: PhysicalParams, grid: PairGrid | None = None) -> float:
    """int d^3p d^3q c2(G, F; qvec, pvec); real, antisymmetric to the bit."""
    return c2_full_complex(G, F, params, grid).real


def c2_kernel(G, F, qvec, pvec, params: PhysicalParams) -> complex:
    """Pointwise iterated-residue kernel c2(G, F; qvec, pvec)."""
    pv = np.asarray(pvec, dtype=float)[None, :]
    qv = np.asarray(qvec, dtype=float)[None, :]
    t_a, ep, eq = _t_plus(G, F, pv, qv, params.m)
    t_b, _, _ = _t_plus(F, G, qv, pv, params.m)
    pref = 1j * params.e**2 / (16.0 * math.pi**2 * ep[0] * eq[0])
    return complex(pref * (t_a[0] - t_b[0]))


# ---------------------------------------------------------------------------
# c2+: shifted-line kernel and its truncated total
# ---------------------------------------------------------------------------

def _line_cutoff(X, Y, delta: float) -> float:
    """Re k0 range where the spectral product is no longer negligible."""
    xs = np.linspace(0.0, min(X.momentum_cutoff() + Y.momentum_cutoff(), 400.0), 2001)
    k = np.zeros((xs.size, 4), dtype=complex)
    k[:, 0] = xs - 1j * delta
    env = np.max(np.abs(X.spectral(k)), axis=-1) * np.max(np.abs(Y.spectral(-k)), axis=-1)
    peak = float(np.max(env))
    keep = np.nonzero(env > 1e-13 * peak)[0]
    return float(xs[keep[-1]]) * 1.05 if keep.size else float(xs[-1])


def _time_span(*potentials) -> float:
    centers = []
    for p in potentials:
        if hasattr(p, "t_center"):
            centers.append(abs(p.t_center) + p.t_halfwidth)
        elif hasattr(p, "center"):
            centers.append(abs(p.center[0]) + 2.0 * p.sigma)
        else:
            centers.append(2.0)
    return 2.0 * max(centers)


def c2_plus_kernel_grid(X, Y, pvecs, qvecs, params: PhysicalParams,
                        n_line: int | None = None) -> np.ndarray:
    """c2+(X; Y; pvec, qvec) on arrays of spatial momenta.

    The p0 contour integral is the analytic residue sum; the k0 line
    [R - i delta] is a Gauss-Legendre rule wide enough for the spectral
    envelope of the potential pair.
    """
    m = params.m
    delta = params.delta
    ep = _energies(pvecs, m)
    eq = _energies(qvecs, m)
    kvec = pvecs - qvecs

    cutoff = _line_cutoff(X, Y, delta)
    if n_line is None:
        periods = cutoff * _time_span(X, Y) / _TWO_PI
        n_line = int(max(256, 10 * periods))
    t_nodes, t_w = gl_interval(-cutoff, cutoff, n_line)

    total = np.zeros(pvecs.shape[0], dtype=complex)
    k = np.zeros((pvecs.shape[0], 4), dtype=complex)
    k[:, 1:] = kvec
    for t0, w in zip(t_nodes, t_w):
        k0 = t0 - 1j * delta
        k[:, 0] = k0
        x_cov = X.spectral(k)
        y_cov = Y.spectral(-k)

        # residue at p0 = -E(p): p = (-E_p, pvec), p - k = (-E_p - k0, qvec)
        p4 = np.concatenate([np.full((ep.size, 1), 0.0, dtype=complex), pvecs], axis=1)
        p4[:, 0] = -ep
        pk4 = p4.copy()
        pk4[:, 0] = -ep - k0
        pk4[:, 1:] = qvecs
        d2 = (ep + k0) ** 2 - eq**2
        contr1 = _residue_contraction(x_cov, y_cov, p4, pk4, m) / (-2.0 * ep * d2)

        # residue at p0 = k0 - E(q): p - k = (-E_q, qvec)
        p4b = p4.copy()
        p4b[:, 0] = k0 - eq
        pk4b = pk4.copy()
        pk4b[:, 0] = -eq
        d1 = (k0 - eq) ** 2 - ep**2
        contr2 = _residue_contraction(x_cov, y_cov, p4b, pk4b, m) / (d1 * (-2.0 * eq))

        total += w * (contr1 + contr2)

    # -2 pi i times the residue factor 2 pi i ... assembled as
    # -(i e^2/(2 pi)^4) * int dk0 X_mu Y_nu * 2 pi i (Res1 + Res2)^{mu nu}
    pref = -(1j * params.e**2 / (2.0 * math.pi) ** 4) * 2j * math.pi
    return pref * total


def _residue_contraction(x_cov, y_cov, p4, q4, m: float):
    """x_mu y_nu N^{mu nu}(p, q) with N = 4[p^mu q^nu + p^nu q^mu - g^{mu nu}(p.q - m**2)]."""
    xp = _plain_contract(x_cov, p4)
    yq = _plain_contract(y_cov, q4)
    xq = _plain_contract(x_cov, q4)
    yp = _plain_contract(y_cov, p4)
    xy = _metric_contract(x_cov, y_cov)
    pq = mdot_arrays(p4, q4)
    return 4.0 * (xp * yq + xq * yp - xy * (pq - m * m))


@dataclass(frozen=True)
class C2PlusResult:
    """Truncated c2+ total; the grid radius is part of the statement."""

    value: float
    complex_value: complex
    truncation_radius: float
    note: str


def c2_plus_full(F, G, params: PhysicalParams, grid: PairGrid | None = None,
                 n_line: int | None = None) -> C2PlusResult:
    """int d^3p d^3q c2+(F; G; pvec, qvec) over the matched truncated grid.

    The (pvec, qvec) integral of c2+ alone is not absolutely convergent;
    totals are only meaningful together with the truncation radius, and the
    splitting difference with the reversed slot order is truncation-stable.
    """
    if grid is None:
        grid = default_pair_grid(F, G, params)
    kern = c2_plus_kernel_grid(F, G, grid.pvecs, grid.qvecs, params, n_line=n_line)
    total = complex(np.sum(grid.weights * kern))
    return C2PlusResult(value=total.real, complex_value=total,
                        truncation_radius=grid.radius,
                        note=f"matched truncation; {grid.note}")


# ---------------------------------------------------------------------------
# splitting report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplittingReport:
    j2_fg: complex
    j2_gf: complex
    difference: float
    c2_gf: float
    abs_deviation: float
    rel_deviation: float
    j2_error: float
    c2_grid_note: str


def splitting_check(F, G, params: PhysicalParams, n_scale: float = 1.0,
                    grid: PairGrid | None = None) -> SplittingReport:
    """Compare j2(F; G) - j2(G; F) against c2_full(G, F).

    The two sides come from independent pipelines: the explicit tensor with
    its Feynman-parameter integral versus the iterated residue sum.
    """
    if _is_grid_kind(F) or _is_grid_kind(G):
        raise DomainError("splitting_check needs analytic potentials for the shifted line")
    val_fg, err_fg = j2_with_error(F, G, params, n_scale=n_scale)
    val_gf, err_gf = j2_with_error(G, F, params, n_scale=n_scale)
    if grid is None:
        grid = default_pair_grid(F, G, params, n_scale=n_scale)
    c2 = c2_full(G, F, params, grid)
    diff = (val_fg - val_gf).real
    abs_dev = abs(diff - c2)
    scale = max(abs(diff), abs(c2), 1e-300)
    return SplittingReport(
        j2_fg=val_fg, j2_gf=val_gf, difference=diff, c2_gf=c2,
        abs_deviation=abs_dev, rel_deviation=abs_dev / scale,
        j2_error=err_fg + err_gf, c2_grid_note=grid.note,
    )
