"""Complex special functions: gamma and the Gauss hypergeometric 2F1.

Everything downstream (wave functions, asymptotic coefficients, momentum-bin
quadratures) reduces to these two kernels evaluated at complex parameters and
complex argument, so they are implemented here from scratch at double
precision with explicit branch control.

The 2F1 evaluator selects among four representations by the smallest-modulus
effective argument:

* the defining power series in ``u``,
* the ``u -> 1-u`` connection formula near ``u = 1``,
* the Pfaff transformation ``w = u/(u-1)``,
* Pfaff followed by the connection formula (large ``|u|``).

Callers that walk ``u`` along a path winding around ``u = 1`` (the spatial
tails of scaled wave functions do exactly that) may pass an analytically
continued logarithm of ``1-u``; all branch-sensitive powers are then taken on
that branch instead of the principal one.
"""

from __future__ import annotations

import cmath

import numpy as np

from .errors import NonConvergence, PoleError

# Lanczos parameters (g = 607/128, 15 coefficients).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)

_SERIES_CAP = 100_000
_EPS = 2.0e-16
# dist(c-a-b, Z) below which the u->1-u connection formula is regularized
_DEGENERATE_TOL = 1.0e-6
# imaginary shift used for the regularization; 1e-9 would lose ~9 digits to
# cancellation between the two near-pole connection terms, 1e-5 balances
# cancellation (~1e-11) against the O(shift^2) extrapolation residual
_DEGENERATE_SHIFT = 1.0e-5


def _nonpositive_int(z: complex, tol: float = 1.0e-12) -> int | None:
    """Return n if z is within tol of a non-positive integer n, else None."""
    n = round(z.real)
    if n <= 0 and abs(z - n) < tol:
        return n
    return None


def complex_gamma(z) -> complex:
    """Gamma function for complex argument (Lanczos approximation).

    Relative error below 1e-12 for |z| <= 50.  Uses the reflection formula
    for Re z < 1/2.

    Raises
    ------
    PoleError
        If z is a non-positive integer.
    """
    z = complex(z)
    pole = _nonpositive_int(z)
    if pole is not None:
        raise PoleError(pole, z)
    if z.real < 0.5:
        # reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return cmath.pi / (cmath.sin(cmath.pi * z) * complex_gamma(1.0 - z))
    zz = z - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (zz + i)
    t = zz + _LANCZOS_G + 0.5
    return math_sqrt_2pi * t ** (zz + 0.5) * cmath.exp(-t) * acc


math_sqrt_2pi = 2.5066282746310002  # sqrt(2 pi)


def reciprocal_gamma(z) -> complex:
    """1/Gamma(z); entire, returns exactly 0 at the poles of Gamma."""
    z = complex(z)
    pole = _nonpositive_int(z)
    if pole is not None:
        return 0.0 + 0.0j
    if z.real < 0.5:
        # 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi
        return cmath.sin(cmath.pi * z) * complex_gamma(1.0 - z) / cmath.pi
    return 1.0 / complex_gamma(z)


def _series_sum(a: complex, b: complex, c: complex, x: np.ndarray) -> np.ndarray:
    """Power series sum_{n} (a)_n (b)_n / ((c)_n n!) x^n, vectorized in x.

    Converges for |x| < 1; the caller guarantees |x| bounded away from 1.
    """
    x = np.asarray(x, dtype=complex)
    term = np.ones_like(x)
    total = np.ones_like(x)
    quiet = 0
    for n in range(_SERIES_CAP):
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1.0))) * x
        total = total + term
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise NonConvergence(
        "2F1 power series",
        {"a": a, "b": b, "c": c, "max_abs_x": float(np.max(np.abs(x)))},
    )


def _terminating_sum(a: complex, b: complex, c: complex,
                     x: np.ndarray, degree: int) -> np.ndarray:
    """Exact terminating hypergeometric polynomial of the given degree."""
    x = np.asarray(x, dtype=complex)
    term = np.ones_like(x)
    total = np.ones_like(x)
    for n in range(degree):
        denom = c + n
        if abs(denom) < 1.0e-13:
            raise PoleError(round(denom.real) - n, c)
        term = term * ((a + n) * (b + n) / (denom * (n + 1.0))) * x
        total = total + term
    return total


def _connection_sum(a: complex, b: complex, c: complex,
                    v: np.ndarray, log_v: np.ndarray) -> np.ndarray:
    """2F1 via the u -> 1-u connection formula; v = 1-u, log_v = log(1-u).

    log_v may lie on any analytic continuation of the logarithm; the branch
    of v^(c-a-b) follows it.
    """
    cab = c - a - b
    k = round(cab.real)
    if abs(cab.imag) < _DEGENERATE_TOL and abs(cab.real - k) < _DEGENERATE_TOL:
        # Degenerate (integer c-a-b): the two terms develop cancelling gamma
        # poles.  Evaluate at c +/- i*shift and average; even in the shift,
        # so the error is O(shift^2).
        d = 1j * _DEGENERATE_SHIFT
        up = _connection_sum(a, b, c + d, v, log_v)
        dn = _connection_sum(a, b, c - d, v, log_v)
        return 0.5 * (up + dn)
    gc = complex_gamma(c)
    coef1 = gc * complex_gamma(cab) * reciprocal_gamma(c - a) * reciprocal_gamma(c - b)
    coef2 = gc * complex_gamma(-cab) * reciprocal_gamma(a) * reciprocal_gamma(b)
    out = np.zeros_like(np.asarray(v, dtype=complex))
    if coef1 != 0.0:
        out = out + coef1 * _series_sum(a, b, 1.0 - cab, v)
    if coef2 != 0.0:
        out = out + coef2 * np.exp(cab * log_v) * _series_sum(c - a, c - b, 1.0 + cab, v)
    return out


def hyp2f1_grid(a, b, c, u, *, one_minus_u=None, log_one_minus_u=None) -> np.ndarray:
    """Gauss 2F1(a, b; c; u) vectorized over an array of arguments u.

    Parameters
    ----------
    a, b, c : complex
        Hypergeometric parameters (shared across the whole array).
    u : array_like of complex
        Arguments.
    one_minus_u : array_like of complex, optional
        Precomputed 1-u; pass it when u is exponentially close to 1 so the
        subtraction does not lose digits.
    log_one_minus_u : array_like of complex, optional
        Analytically continued log(1-u) along the caller's path.  Defaults
        to the principal branch.  All powers of (1-u) are taken on this
        branch, which is what makes the result single-valued along spatial
        grids whose u-image winds around u = 1.

    Raises
    ------
    PoleError
        c a non-positive integer not masked by earlier series termination.
    NonConvergence
        Iteration cap hit (pathological arguments only).
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    if one_minus_u is None:
        omu = 1.0 - u
    else:
        omu = np.atleast_1d(np.asarray(one_minus_u, dtype=complex))
    if log_one_minus_u is None:
        log_omu = np.log(omu)
    else:
        log_omu = np.atleast_1d(np.asarray(log_one_minus_u, dtype=complex))

    na = _nonpositive_int(a)
    nb = _nonpositive_int(b)
    nc = _nonpositive_int(c)
    if na is not None or nb is not None:
        # terminating polynomial: exact, branch-free
        degs = [-n for n in (na, nb) if n is not None]
        degree = min(degs)
        if nc is not None and -nc < degree:
            raise PoleError(nc, c)
        return _terminating_sum(a, b, c, u, degree)
    if nc is not None:
        raise PoleError(nc, c)

    w = np.where(omu != 0.0, -u / omu, np.inf)

    r_u = np.abs(u)
    r_v = np.abs(omu)
    r_w = np.abs(w)
    with np.errstate(divide="ignore", over="ignore"):
        r_t = np.where(r_v > 0.0, 1.0 / r_v, np.inf)
    # route codes: 0 direct, 1 connection, 2 Pfaff, 3 Pfaff+connection
    moduli = np.stack([r_u, r_v, r_w, r_t], axis=0)
    route = np.argmin(moduli, axis=0)

    out = np.empty_like(u)
    m0 = route == 0
    if np.any(m0):
        out[m0] = _series_sum(a, b, c, u[m0])
    m1 = route == 1
    if np.any(m1):
        out[m1] = _connection_sum(a, b, c, omu[m1], log_omu[m1])
    m2 = route == 2
    if np.any(m2):
        pf = np.exp(-a * log_omu[m2])
        out[m2] = pf * _series_sum(a, c - b, c, w[m2])
    m3 = route == 3
    if np.any(m3):
        # 2F1(a, c-b; c; w) continued near w = 1; note 1-w = 1/(1-u)
        pf = np.exp(-a * log_omu[m3])
        one_minus_w = 1.0 / omu[m3]
        out[m3] = pf * _connection_sum(a, c - b, c, one_minus_w, -log_omu[m3])
    return out


def hyp2f1(a, b, c, u, *, one_minus_u=None, log_one_minus_u=None) -> complex:
    """Scalar Gauss hypergeometric function 2F1(a, b; c; u)."""
    kw = {}
    if one_minus_u is not None:
        kw["one_minus_u"] = np.array([one_minus_u], dtype=complex)
    if log_one_minus_u is not None:
        kw["log_one_minus_u"] = np.array([log_one_minus_u], dtype=complex)
    return complex(hyp2f1_grid(a, b, c, np.array([u], dtype=complex), **kw)[0])
