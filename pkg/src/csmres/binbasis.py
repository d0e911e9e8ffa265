"""Momentum-bin discretization of the (complex-scaled) continuum.

Delta-normalized continuum solutions are averaged over momentum bins,

    phi_hat_n(x) = (1/sqrt(dk)) * integral over [k_n, k_{n+1}] of phi(k, x) dk,

which turns them into square-integrable states falling off like 1/x.  Two
contour families are supported: a real-axis partition (the unrotated
Hermitian construction, left states by complex conjugation) and an
EP-adapted ray of nodes k_n = k_bp + alpha'_n sqrt(lam - lam_bp) (scaled
construction, left states by the analytic-conjugate biorthogonal rule).

All overlap and Hamiltonian entries combine Simpson quadrature on a finite
grid with closed-form corrections for the algebraic-exponential tails
(sums of c e^{q y} / y^p integrated by the exponential-integral recurrence),
so slowly decaying and even non-decaying products acquire their regularized
(analytically continued) values.  The degeneracy diagnostics near the branch
point are built on top: the smallest singular value of the bilinear overlap
of {resonance} + {straddling bins} collapses as the exceptional point is
approached.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson
from scipy.special import exp1

from .errors import EmptyRange, NonNormalizable, QuadratureError
from .model import ModelParams, branch_point_coupling, derived_quantities, \
    resonance_energy
from .specfun import complex_gamma, reciprocal_gamma
from .wavefun import LN4, raw_psi

SQRT_2PI = math.sqrt(2.0 * math.pi)

_GL_ORDERS = (8, 16, 32, 64, 96)
_RING_POINTS = 16
_TAIL_ORDERS = 5


# ---------------------------------------------------------------------------
# contours and bin grids

@dataclass(frozen=True)
class RealAxisContour:
    k_min: float
    k_max: float


@dataclass(frozen=True)
class EpRayContour:
    lam: complex
    alphas: tuple


def real_axis(k_min: float, k_max: float) -> RealAxisContour:
    """Uniform real-axis contour spec (Hermitian construction)."""
    if not k_max > k_min:
        raise ValueError("k_max must exceed k_min")
    return RealAxisContour(k_min, k_max)


def ep_ray(lam: complex, alphas=( -1.0, 0.0, 1.0)) -> EpRayContour:
    """EP-adapted contour spec: nodes k_bp + alpha' sqrt(lam - lam_bp)."""
    alphas = tuple(float(a) for a in alphas)
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be strictly increasing")
    return EpRayContour(complex(lam), alphas)


@dataclass(frozen=True)
class BinGrid:
    """Ordered nodes of a momentum-bin partition along a contour."""

    nodes: np.ndarray
    hermitian: bool
    lam: complex

    @property
    def n_bins(self) -> int:
        return len(self.nodes) - 1

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.nodes)


def build_bins(params: ModelParams, contour_spec, n_bins: int | None = None) -> BinGrid:
    """Build a BinGrid from a contour spec.

    Real-axis contours need ``n_bins``; EP-ray contours take their node
    count from the alpha' list (``n_bins`` is validated if given).

    Raises
    ------
    EmptyRange
        If the requested partition contains no bins.
    """
    if isinstance(contour_spec, RealAxisContour):
        if n_bins is None:
            raise ValueError("n_bins required for a real-axis contour")
        if n_bins <= 0:
            raise EmptyRange("n_bins must be positive")
        nodes = np.linspace(contour_spec.k_min, contour_spec.k_max,
                            n_bins + 1).astype(complex)
        return BinGrid(nodes=nodes, hermitian=True, lam=complex(params.lam))
    if isinstance(contour_spec, EpRayContour):
        alphas = np.asarray(contour_spec.alphas, dtype=float)
        if n_bins is not None and n_bins != len(alphas) - 1:
            raise ValueError("n_bins inconsistent with alpha' list")
        if len(alphas) < 2:
            raise EmptyRange("EP contour needs at least two nodes")
        lam = complex(contour_spec.lam)
        lam_bp = branch_point_coupling(params.theta, params.m, params.hbar,
                                       params.beta)
        g_bp = 8.0 * params.m * lam_bp / (params.beta * params.hbar) ** 2
        e_bp = params.energy_scale * (cmath.sqrt(g_bp - 1.0) - 1j) ** 2
        k_bp = cmath.sqrt(2.0 * params.m * e_bp) / params.hbar
        root = cmath.sqrt(lam - lam_bp)
        nodes = k_bp + alphas * root
        return BinGrid(nodes=nodes.astype(complex), hermitian=False, lam=lam)
    raise TypeError(f"unknown contour spec {contour_spec!r}")


# ---------------------------------------------------------------------------
# tail bookkeeping

@dataclass(frozen=True)
class TailTerm:
    """One algebraic-exponential tail component c e^{q y} / y^p, y = |x|."""

    coef: complex
    power: int
    rate: complex


def tail_integral(power: int, rate: complex, x_cut: float) -> complex:
    """Regularized integral of e^{q y} / y^p over [X, inf).

    For p = 0 this is the Abel-regularized -e^{qX}/q; for p >= 1 it is
    built from the complex exponential integral E1(-qX) by the standard
    upward recurrence.  Values for Re q > 0 are the analytic continuations
    (principal E1 branch), which is precisely what the c-product of
    non-decaying pairs requires.
    """
    q = complex(rate)
    if power == 0:
        if q == 0.0:
            raise NonNormalizable("constant tail has no regularized integral")
        return -cmath.exp(q * x_cut) / q
    if abs(q) * x_cut < 1e-14:
        if power == 1:
            raise NonNormalizable("1/y tail with zero rate diverges")
        return x_cut ** (1 - power) / (power - 1)
    val = complex(exp1(complex(-q * x_cut)))
    if power == 1:
        return val
    eqx = cmath.exp(q * x_cut)
    for m in range(2, power + 1):
        val = eqx / ((m - 1) * x_cut ** (m - 1)) + q * val / (m - 1)
    return val


def _tail_product_sum(left_terms, right_terms, x_cut: float) -> complex:
    total = 0.0 + 0.0j
    for tl in left_terms:
        for tr in right_terms:
            total += tl.coef * tr.coef * tail_integral(
                tl.power + tr.power, tl.rate + tr.rate, x_cut)
    return total


def _conj_terms(terms):
    return [TailTerm(coef=np.conj(t.coef), power=t.power, rate=np.conj(t.rate))
            for t in terms]


def _scaled_terms(terms, factor):
    return [TailTerm(coef=factor * t.coef, power=t.power, rate=t.rate)
            for t in terms]


def _num_derivs(fun, z0: complex, radius: float, orders: int):
    """Value and first orders-1 derivatives by a Cauchy sampling ring.

    The coefficient functions are analytic near the nodes, so derivatives
    come from trigonometric moments of samples on a small circle; this
    stays accurate at high order where finite differences drown in
    roundoff.
    """
    j = np.arange(_RING_POINTS)
    ring = np.exp(2j * np.pi * j / _RING_POINTS)
    samples = np.array([fun(z0 + radius * w) for w in ring])
    moments = np.fft.fft(samples) / _RING_POINTS
    out = []
    fact = 1.0
    for m in range(orders):
        out.append(complex(moments[m]) * fact / radius**m)
        fact *= m + 1
    return out


def _ibp_tail_terms(cfun, zeta: complex, ka: complex, kb: complex,
                    prefactor: complex):
    """Tail terms of prefactor * integral over the bin of c(k) e^{zeta k y} dk.

    Repeated integration by parts in k pushes the remainder to
    O(y^-(orders+1)); coefficient derivatives at the endpoints by ring
    sampling.
    """
    radius = min(0.05, 0.25 * abs(kb - ka))
    terms = []
    for node, sign in ((kb, 1.0), (ka, -1.0)):
        derivs = _num_derivs(cfun, node, radius, _TAIL_ORDERS)
        for m in range(1, _TAIL_ORDERS + 1):
            coef = sign * (-1.0) ** (m + 1) * derivs[m - 1] \
                / zeta**m * prefactor
            terms.append(TailTerm(coef=coef, power=m, rate=zeta * node))
    return terms


# ---------------------------------------------------------------------------
# states

@dataclass
class BasisState:
    """A square-integrable basis state with tail descriptors.

    ``values``/``tails_*`` describe the right (ket-side) function on the
    grid and beyond the cutoff; ``left_values``/``left_tails_*`` the left
    (bra-side) function entering every product without further conjugation.
    ``h_values``/``h_tails_*`` hold the Hamiltonian applied to the state
    (exact: spectral weight for bins, eigenvalue for the resonance).
    """

    name: str
    values: np.ndarray
    left_values: np.ndarray
    tails_plus: list
    tails_minus: list
    left_tails_plus: list
    left_tails_minus: list
    energy: complex | None = None
    h_values: np.ndarray | None = None
    h_tails_plus: list | None = None
    h_tails_minus: list | None = None


def spatial_grid(beta: float = 1.0, x_max: float | None = None,
                 n_points: int = 8001) -> np.ndarray:
    """Default overlap grid: X = 40/beta, step 0.01/beta."""
    if x_max is None:
        x_max = 40.0 / beta
    return np.linspace(-x_max, x_max, n_points)


def _gl_integral(fun, ka: complex, kb: complex, tol: float = 1e-9):
    """Adaptive Gauss-Legendre over the straight segment [ka, kb].

    ``fun`` maps an array of k values to an array (len(k), ...) of samples;
    the order escalates until two successive orders agree.
    """
    mid = 0.5 * (ka + kb)
    half = 0.5 * (kb - ka)
    prev = None
    for order in _GL_ORDERS:
        t, w = leggauss(order)
        ks = mid + half * t.astype(complex)
        vals = fun(ks)
        integ = half * np.tensordot(w, vals, axes=(0, 0))
        if prev is not None:
            scale = max(1.0, float(np.max(np.abs(integ))))
            if float(np.max(np.abs(integ - prev))) <= tol * scale:
                return integ
        prev = integ
    raise QuadratureError(
        f"bin quadrature did not settle at order {_GL_ORDERS[-1]}")


def bin_energy(params: ModelParams, ka: complex, kb: complex) -> complex:
    """Closed-form bin-averaged kinetic energy (cubic formula)."""
    dk = kb - ka
    return params.hbar**2 / (2.0 * params.m) * (kb**3 - ka**3) / (3.0 * dk)


class _Continuum:
    """Coefficient toolkit for normalized continuum solutions.

    ``channel=False``: delta-normalized, phi = J psi / (sqrt(2 pi) B);
    mutually delta-orthonormal but singular where B(k) vanishes (the
    resonance pole approaches the contour near the branch point).
    ``channel=True``: unit outgoing amplitude, phi = J psi / sqrt(2 pi);
    bounded everywhere, delta weight (1 + A^2 + B^2)/2 instead of 1.
    """

    def __init__(self, lam: complex, theta: float, m: float, hbar: float,
                 beta: float, channel: bool = False):
        self.lam = complex(lam)
        self.theta = float(theta)
        self.m = m
        self.hbar = hbar
        self.beta = beta
        self.channel = bool(channel)
        g = 8.0 * m * self.lam / (beta * hbar) ** 2
        self.s = 0.5 * (-1.0 + cmath.sqrt(1.0 - g))
        self.jac = cmath.exp(0.5j * self.theta)
        self.phase = cmath.exp(1j * self.theta)

    def _gamma_coeffs(self, k: complex):
        kb = 1j * k / self.beta
        s = self.s
        refl = complex_gamma(1.0 - kb) * complex_gamma(kb) \
            * reciprocal_gamma(1.0 + s) * reciprocal_gamma(-s)
        trans = complex_gamma(1.0 - kb) * complex_gamma(-kb) \
            * reciprocal_gamma(-kb - s) * reciprocal_gamma(-kb + s + 1.0)
        return refl, trans

    def _amp(self, k: complex) -> complex:
        return cmath.exp(-1j * k * LN4 / (2.0 * self.beta))

    def _norm_div(self, k: complex) -> complex:
        if self.channel:
            return SQRT_2PI + 0.0j
        _, trans = self._gamma_coeffs(k)
        return SQRT_2PI * trans

    # scalar coefficient functions of the asymptotic components
    def coef_plus(self, k: complex) -> complex:
        return self.jac * self._amp(k) / self._norm_div(k)

    def coef_minus_refl(self, k: complex) -> complex:
        refl, _ = self._gamma_coeffs(k)
        return self.jac * self._amp(k) * refl / self._norm_div(k)

    def coef_minus_trans(self, k: complex) -> complex:
        _, trans = self._gamma_coeffs(k)
        return self.jac * self._amp(k) * trans / self._norm_div(k)

    def phi_values(self, ks: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Normalized solution sampled on the grid for each k."""
        out = np.empty((len(ks), len(x)), dtype=complex)
        for i, k in enumerate(ks):
            out[i] = self.jac * raw_psi(complex(k), self.s, self.beta,
                                        self.theta, x) / self._norm_div(complex(k))
        return out

    def components(self):
        """(side, coefficient function, rate factor zeta) of each tail."""
        zp = 1j * self.phase
        return [
            ("plus", self.coef_plus, zp),
            ("minus", self.coef_minus_refl, zp),
            ("minus", self.coef_minus_trans, -zp),
        ]


def binned_state(params: ModelParams, grid: BinGrid, n: int,
                 x: np.ndarray, quad_tol: float = 1e-9,
                 normalization: str = "delta") -> BasisState:
    """Construct binned state n with its biorthogonal left partner.

    Real-axis grids use the unrotated solutions with conjugated left
    states; EP-ray grids use the scaled solutions with the
    analytic-conjugate partner (conjugate all explicit i's and parameters,
    keep the theta scaling).

    ``normalization``: "delta" uses delta-normalized continuum solutions
    (mutual overlaps -> delta_{nn'}); these are singular wherever the
    outgoing-coefficient zero (the resonance pole) approaches the contour,
    which happens for EP-ray grids near the branch point.  "channel" uses
    unit-outgoing-amplitude solutions, bounded everywhere, at the price of
    a smooth non-unit delta weight.
    """
    if normalization not in ("delta", "channel"):
        raise ValueError(f"unknown normalization {normalization!r}")
    channel = normalization == "channel"
    if not 0 <= n < grid.n_bins:
        raise IndexError(f"bin index {n} out of range")
    ka = complex(grid.nodes[n])
    kb = complex(grid.nodes[n + 1])
    dk = kb - ka
    inv_sqrt_dk = 1.0 / np.sqrt(np.complex128(dk))
    theta_eff = 0.0 if grid.hermitian else params.theta
    cont = _Continuum(grid.lam, theta_eff, params.m, params.hbar, params.beta,
                      channel=channel)
    eps = lambda k: (params.hbar * k) ** 2 / (2.0 * params.m)

    def plain_and_h(ks):
        phi = cont.phi_values(ks, x)
        return np.stack([phi, eps(np.asarray(ks))[:, None] * phi], axis=1)

    both = inv_sqrt_dk * _gl_integral(plain_and_h, ka, kb, quad_tol)
    values, h_values = both[0], both[1]

    tails = {"plus": [], "minus": []}
    h_tails = {"plus": [], "minus": []}
    for side, cfun, zeta in cont.components():
        tails[side] += _ibp_tail_terms(cfun, zeta, ka, kb, inv_sqrt_dk)
        h_tails[side] += _ibp_tail_terms(
            lambda k, c=cfun: eps(k) * c(k), zeta, ka, kb, inv_sqrt_dk)

    if grid.hermitian:
        left_values = np.conj(values)
        left_tp = _conj_terms(tails["plus"])
        left_tm = _conj_terms(tails["minus"])
    else:
        # analytic conjugate: conjugate k, lam, and all i's; keep the
        # theta scaling of the coordinate.  The bar toolkit is built at
        # (conj lam, -theta); conjugating its output restores the +theta
        # half-Jacobian automatically.
        bar = _Continuum(np.conj(grid.lam), -theta_eff, params.m,
                         params.hbar, params.beta, channel=channel)

        def bar_phi(ks):
            return np.conj(bar.phi_values(np.conj(ks), x))

        left_values = inv_sqrt_dk * _gl_integral(bar_phi, ka, kb, quad_tol)
        left_tp, left_tm = [], []
        for side, cfun, zeta in bar.components():
            cbar = lambda k, c=cfun: np.conj(c(np.conj(k)))
            zbar = np.conj(zeta)
            terms = _ibp_tail_terms(cbar, zbar, ka, kb, inv_sqrt_dk)
            if side == "plus":
                left_tp += terms
            else:
                left_tm += terms

    return BasisState(
        name=f"bin[{n}]",
        values=values, left_values=left_values,
        tails_plus=tails["plus"], tails_minus=tails["minus"],
        left_tails_plus=left_tp, left_tails_minus=left_tm,
        energy=bin_energy(params, ka, kb),
        h_values=h_values,
        h_tails_plus=h_tails["plus"], h_tails_minus=h_tails["minus"],
    )


def plane_wave_bin(x: np.ndarray, ka: float, kb: float) -> np.ndarray:
    """Free-particle binned state by the direct integral.

    (1/sqrt(dk)) (e^{i kb x} - e^{i ka x}) / (i x), with the x -> 0 limit
    sqrt(dk); falls off like 1/x.
    """
    x = np.asarray(x, dtype=float)
    dk = kb - ka
    out = np.empty(x.shape, dtype=complex)
    small = np.abs(x) < 1e-12
    xs = x[~small]
    out[~small] = (np.exp(1j * kb * xs) - np.exp(1j * ka * xs)) \
        / (1j * xs) / math.sqrt(dk)
    out[small] = math.sqrt(dk)
    return out


def resonance_state(params: ModelParams, x: np.ndarray, n: int = 0,
                    normalization: str = "l2") -> BasisState:
    """Resonance Gamow state as a basis state (left state = itself).

    ``normalization``: "l2" divides by the regularized conjugate L2 norm
    (unit probability mass; the bilinear diagonal then exposes
    self-orthogonality), "cnorm" by the principal root of the bilinear
    norm, "raw" leaves the solution as evaluated.
    """
    from .wavefun import eval_wavefunction, gamow_cnorm

    pole = resonance_energy(params, n)
    fld = eval_wavefunction(params, pole.k, x)
    q = 1j * pole.k * cmath.exp(1j * params.theta)
    if q.real >= 0.0:
        raise NonNormalizable("resonance tail does not decay at this angle")
    v = fld.values
    x_cut = float(x[-1])
    if normalization == "l2":
        interior = float(simpson(np.abs(v) ** 2, x=x))
        tail = (abs(v[-1]) ** 2 + abs(v[0]) ** 2) / (-2.0 * q.real)
        scale = 1.0 / math.sqrt(interior + tail)
    elif normalization == "cnorm":
        scale = 1.0 / cmath.sqrt(gamow_cnorm(fld))
    elif normalization == "raw":
        scale = 1.0
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    v = v * scale
    cp = v[-1] * cmath.exp(-q * x_cut)
    cm = v[0] * cmath.exp(-q * x_cut)
    tp = [TailTerm(coef=cp, power=0, rate=q)]
    tm = [TailTerm(coef=cm, power=0, rate=q)]
    return BasisState(
        name=f"res[{n}]",
        values=v, left_values=v,
        tails_plus=tp, tails_minus=tm,
        left_tails_plus=tp, left_tails_minus=tm,
        energy=pole.energy,
        h_values=pole.energy * v,
        h_tails_plus=_scaled_terms(tp, pole.energy),
        h_tails_minus=_scaled_terms(tm, pole.energy),
    )


# ---------------------------------------------------------------------------
# matrices

@dataclass(frozen=True)
class OverlapMatrix:
    """Dense product matrix with row (left) and column (right) labels."""

    matrix: np.ndarray
    row_labels: tuple
    col_labels: tuple


def product_entry(left: BasisState, right: BasisState, x: np.ndarray,
                  apply_h: bool = False) -> complex:
    """c-product of a left state with a right state (or H right state).

    Simpson on the grid plus closed-form corrections from the pairwise
    tail products on both sides.
    """
    rv = right.h_values if apply_h else right.values
    rtp = right.h_tails_plus if apply_h else right.tails_plus
    rtm = right.h_tails_minus if apply_h else right.tails_minus
    interior = complex(simpson(left.left_values * rv, x=x))
    x_cut = float(x[-1])
    tails = _tail_product_sum(left.left_tails_plus, rtp, x_cut) \
        + _tail_product_sum(left.left_tails_minus, rtm, x_cut)
    return interior + tails


def overlap_matrix(left_states, right_states, x: np.ndarray,
                   apply_h: bool = False) -> OverlapMatrix:
    """Assemble the dense matrix of c-products (or Hamiltonian products)."""
    mat = np.empty((len(left_states), len(right_states)), dtype=complex)
    for i, ls in enumerate(left_states):
        for j, rs in enumerate(right_states):
            mat[i, j] = product_entry(ls, rs, x, apply_h=apply_h)
    return OverlapMatrix(
        matrix=mat,
        row_labels=tuple(s.name for s in left_states),
        col_labels=tuple(s.name for s in right_states),
    )


def hamiltonian_matrix(states, params: ModelParams,
                       x: np.ndarray) -> OverlapMatrix:
    """Matrix of the Hamiltonian in the given basis (left x H right)."""
    return overlap_matrix(states, states, x, apply_h=True)


def unit_diagonal_state(state: BasisState, x: np.ndarray) -> BasisState:
    """Rescale a state so its bilinear self-product equals 1.

    Both sides are divided by the principal root of the diagonal entry;
    the rescale is impossible (and meaningless) for self-orthogonal
    states, where the diagonal vanishes.
    """
    d = product_entry(state, state, x)
    if abs(d) < 1e-300:
        raise NonNormalizable("state is self-orthogonal; cannot rescale")
    r = np.sqrt(np.complex128(d))
    inv = 1.0 / r
    return BasisState(
        name=state.name,
        values=state.values * inv,
        left_values=state.left_values * inv,
        tails_plus=_scaled_terms(state.tails_plus, inv),
        tails_minus=_scaled_terms(state.tails_minus, inv),
        left_tails_plus=_scaled_terms(state.left_tails_plus, inv),
        left_tails_minus=_scaled_terms(state.left_tails_minus, inv),
        energy=state.energy,
        h_values=None if state.h_values is None else state.h_values * inv,
        h_tails_plus=None if state.h_tails_plus is None
        else _scaled_terms(state.h_tails_plus, inv),
        h_tails_minus=None if state.h_tails_minus is None
        else _scaled_terms(state.h_tails_minus, inv),
    )


# ---------------------------------------------------------------------------
# degeneracy diagnostics

@dataclass(frozen=True)
class DegeneracyPoint:
    lam: complex
    sigma_min: float
    cond: float
    matrix: OverlapMatrix


def degeneracy_diagnostics(params: ModelParams, lam_seq,
                           alphas=(-1.0, 0.0, 1.0),
                           x: np.ndarray | None = None):
    """Overlap-matrix conditioning of {resonance} + {straddling bins}.

    For each coupling in ``lam_seq`` (inside region A, approaching the
    branch point) the bilinear overlap matrix of the L2-normalized
    resonance with the EP-adapted bins is assembled and its smallest
    singular value and condition number recorded.  sigma_min collapses
    toward 0 as the eigenvector coalesces with the continuum.
    """
    if x is None:
        x = spatial_grid(params.beta)
    out = []
    for lam in lam_seq:
        p = params.with_lam(lam)
        grid = build_bins(p, ep_ray(lam, alphas))
        states = [resonance_state(p, x, normalization="l2")]
        states += [
            unit_diagonal_state(
                binned_state(p, grid, j, x, normalization="channel"), x)
            for j in range(grid.n_bins)]
        s_mat = overlap_matrix(states, states, x)
        svals = np.linalg.svd(s_mat.matrix, compute_uv=False)
        out.append(DegeneracyPoint(
            lam=complex(lam),
            sigma_min=float(svals[-1]),
            cond=float(svals[0] / svals[-1]),
            matrix=s_mat,
        ))
    return out


def limit_exchange_entries(params: ModelParams, lam_seq,
                           alphas=(-1.0, 0.0, 1.0),
                           x: np.ndarray | None = None):
    """Both orders of the coupling limit in the resonance-bin product.

    Returns (interior_entries, limit_entries): the first list holds, for
    each coupling in the sequence, the largest |c-product| of the
    L2-normalized resonance with the straddling bins; these are products of
    c-orthogonal eigenstates at distinct eigenvalues, hence exactly zero up
    to quadrature error, and tend to 0 along the sequence.  The second
    holds the products with the resonance replaced by the boundary
    continuum solution at k_bp (in its own continuum normalization); those
    stay far from zero.  The boundary products are finite-box (grid
    Simpson, no tail continuation): the boundary solution is not
    square-integrable and its full product with a bin carries the smeared
    delta-function divergence, so the fixed-box value is the meaningful
    one.
    """
    if x is None:
        x = spatial_grid(params.beta)
    lam_bp = branch_point_coupling(params.theta, params.m, params.hbar,
                                   params.beta)
    interior = []
    limits = []
    # boundary continuum solution at the branch point, unit grid L2 norm
    p_bp = params.with_lam(lam_bp)
    dq = derived_quantities(p_bp)
    k_bp = resonance_energy(p_bp, 0).k
    phi_bp = cmath.exp(0.5j * params.theta) \
        * raw_psi(k_bp, dq.s, params.beta, params.theta, x) / SQRT_2PI

    for lam in lam_seq:
        p = params.with_lam(lam)
        grid = build_bins(p, ep_ray(lam, alphas))
        bins = [
            unit_diagonal_state(
                binned_state(p, grid, j, x, normalization="channel"), x)
            for j in range(grid.n_bins)]
        res = resonance_state(p, x, normalization="l2")
        interior.append(max(abs(product_entry(res, b, x)) for b in bins))
        limits.append(max(abs(complex(simpson(phi_bp * b.values, x=x)))
                          for b in bins))
    return interior, limits
