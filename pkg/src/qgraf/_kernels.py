"""Hot numeric kernels: scalar series loops shared by the whole package.

Every public function here is a plain scalar loop over complex values.  When
numba is available (and ``QGRAF_JIT`` is not ``0``) the loops are compiled
with ``@njit``; otherwise the pure-Python definitions below run unchanged.
``PY_IMPLS`` always keeps the uncompiled originals so the two backends can be
compared in-process (see ``benchmarks/bench_kernels.py`` and the parity
tests).

Series kernels return ``(value, est_error, terms_used, converged)`` tuples;
the dataclass wrapping happens in the calling modules.
"""

import cmath
import math
import os

_EPS = 2.220446049250313e-16


def jit_enabled() -> bool:
    """True when the numba-compiled backend is active."""
    return _JIT_ACTIVE


def qpoch_finite(a, q, k):
    # (a;q)_k = prod_{i=0}^{k-1} (1 - a q^i)
    prod = 1.0 + 0.0j
    aq = a + 0.0j
    for _ in range(k):
        prod *= 1.0 - aq
        aq *= q
    return prod


def qpoch_inf(a, q, rel_tol, max_factors):
    # (a;q)_inf, truncated once |a| q^K < rel_tol (1-q)/2.  The omitted
    # factors multiply the result by exp(-sum_{i>=K} a q^i) up to second
    # order, so 2 |a| q^K / (1-q) certifies the relative error.
    prod = 1.0 + 0.0j
    aq = a + 0.0j
    thresh = rel_tol * (1.0 - q) * 0.5
    n = 0
    while abs(aq) >= thresh:
        prod *= 1.0 - aq
        aq *= q
        n += 1
        if prod == 0.0:
            return prod, 0.0, n, True
        if n >= max_factors:
            return prod, abs(aq) * 2.0 / (1.0 - q), n, False
    rel_err = abs(aq) * 2.0 / (1.0 - q) + _EPS * n
    return prod, rel_err, n, True


def qpoch_inf_ratio(a, b, q, rel_tol, max_factors):
    # (a;q)_inf / (b;q)_inf as a product of per-factor ratios, which stays
    # well scaled even when both products underflow (q near 1).
    prod = 1.0 + 0.0j
    aq = a + 0.0j
    bq = b + 0.0j
    thresh = rel_tol * (1.0 - q) * 0.25
    n = 0
    while abs(aq) >= thresh or abs(bq) >= thresh:
        den = 1.0 - bq
        if den == 0.0:
            return complex(math.nan, 0.0), math.inf, n, False
        prod *= (1.0 - aq) / den
        aq *= q
        bq *= q
        n += 1
        if prod == 0.0:
            return prod, 0.0, n, True
        if not math.isfinite(abs(prod)):
            # overflow (not a pole): pass the infinity out, callers degrade
            return prod, math.inf, n, False
        if n >= max_factors:
            return prod, (abs(aq) + abs(bq)) * 2.0 / (1.0 - q), n, False
    rel_err = (abs(aq) + abs(bq)) * 2.0 / (1.0 - q) + _EPS * n
    return prod, rel_err, n, True


def phi1_series(b, q, w, rel_tol, abs_tol, max_terms):
    # 1phi1(0; b; q, w) = sum_k (-1)^k q^{k(k-1)/2} w^k / ((q;q)_k (b;q)_k)
    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    qk = 1.0
    peak = 1.0
    small = 0
    k = 0
    while k < max_terms:
        den = (1.0 - q * qk) * (1.0 - b * qk)
        if den == 0.0:
            return complex(math.nan, 0.0), math.inf, k, False
        term = term * (-(qk * w)) / den
        qk *= q
        k += 1
        total += term
        mag = abs(term)
        if not math.isfinite(mag):
            return complex(math.nan, math.nan), math.inf, k, False
        if mag > peak:
            peak = mag
        tol = rel_tol * abs(total)
        if tol < abs_tol:
            tol = abs_tol
        if mag <= 0.1 * tol:
            small += 1
            if small >= 2:
                err = 2.0 * mag + _EPS * peak * math.sqrt(k)
                return total, err, k + 1, err <= 10.0 * tol
        else:
            small = 0
    return total, abs(term) + _EPS * peak * math.sqrt(k), k + 1, False


def _gamma_right(z):
    # Lanczos approximation (g = 7, 9 terms) for Re z >= 0.5.
    z = z - 1.0
    x = 0.99999999999980993 + 0.0j
    x += 676.5203681218851 / (z + 1.0)
    x += -1259.1392167224028 / (z + 2.0)
    x += 771.32342877765313 / (z + 3.0)
    x += -176.61502916214059 / (z + 4.0)
    x += 12.507343278686905 / (z + 5.0)
    x += -0.13857109526572012 / (z + 6.0)
    x += 9.9843695780195716e-6 / (z + 7.0)
    x += 1.5056327351493116e-7 / (z + 8.0)
    t = z + 7.5
    return math.sqrt(2.0 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def lanczos_gamma(z):
    # Complex gamma; NaN at the poles (nonpositive integers).
    if z.imag == 0.0 and z.real == math.floor(z.real) and z.real <= 0.0:
        return complex(math.nan, 0.0)
    if z.real < 0.5:
        s = cmath.sin(math.pi * z)
        if s == 0.0:
            return complex(math.nan, 0.0)
        return math.pi / (s * _gamma_right(1.0 - z))
    return _gamma_right(z)


def classical_j_series(nu, z, rel_tol, abs_tol, max_terms):
    # J_nu(z) = sum_k (-1)^k (z/2)^{nu+2k} / (k! Gamma(nu+k+1)), built
    # multiplicatively from the k = 0 term.
    half = z * 0.5
    g = lanczos_gamma(nu + 1.0)
    if math.isnan(g.real):
        return complex(math.nan, 0.0), math.inf, 0, False
    if half == 0.0:
        if nu == 0.0:
            return 1.0 + 0.0j, 0.0, 1, True
        return 0.0 + 0.0j, 0.0, 1, True
    term = cmath.exp(nu * cmath.log(half)) / g
    total = term
    peak = abs(term)
    hh = half * half
    k = 0
    small = 0
    while k < max_terms:
        term = -term * hh / ((k + 1.0) * (nu + k + 1.0))
        k += 1
        total += term
        mag = abs(term)
        if mag > peak:
            peak = mag
        tol = rel_tol * abs(total)
        if tol < abs_tol:
            tol = abs_tol
        if mag <= 0.1 * tol:
            small += 1
            if small >= 2:
                err = 2.0 * mag + _EPS * peak * math.sqrt(k)
                return total, err, k + 1, err <= 10.0 * tol
        else:
            small = 0
    return total, abs(term) + _EPS * peak * math.sqrt(k), k + 1, False


PY_IMPLS = {
    "qpoch_finite": qpoch_finite,
    "qpoch_inf": qpoch_inf,
    "qpoch_inf_ratio": qpoch_inf_ratio,
    "phi1_series": phi1_series,
    "lanczos_gamma": lanczos_gamma,
    "classical_j_series": classical_j_series,
}

_JIT_ACTIVE = False
if os.environ.get("QGRAF_JIT", "1") != "0":
    try:
        from numba import njit

        _gamma_right = njit(cache=True)(_gamma_right)
        qpoch_finite = njit(cache=True)(qpoch_finite)
        qpoch_inf = njit(cache=True)(qpoch_inf)
        qpoch_inf_ratio = njit(cache=True)(qpoch_inf_ratio)
        phi1_series = njit(cache=True)(phi1_series)
        lanczos_gamma = njit(cache=True)(lanczos_gamma)
        classical_j_series = njit(cache=True)(classical_j_series)
        _JIT_ACTIVE = True
    except ImportError:
        pass
