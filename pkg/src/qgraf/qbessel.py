"""Hahn-Exton q-Bessel function and companions.

The central object is

    J_a(z; q) = z^a * (q^{a+1};q)_inf / (q;q)_inf * 1phi1(0; q^{a+1}; q, q z^2)

together with the classical Bessel function of the first kind, Wall
polynomials, Chebyshev polynomials, the three-term recurrence family built
from order/argument shifts of J, and certified magnitude bounds used to
truncate bilateral sums.

Orders within relative 1e-12 of a negative integer are routed through the
reduction J_{-n}(z;q) = (-1)^n q^{n/2} J_n(z q^{n/2}; q); nonnegative
integer orders use the exact finite product (q;q)_n in the prefactor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import _kernels
from .qseries import (
    DEFAULT_TRUNCATION,
    DomainError,
    PoleError,
    SeriesValue,
    SingularityError,
    Truncation,
    neg_q_exponent,
    phi_rs,
    q_pochhammer,
)

__all__ = [
    "INTEGER_ORDER_RTOL",
    "RecurrenceFamily",
    "nearest_integer_order",
    "hahn_exton_j",
    "hahn_exton_j_qpow",
    "hahn_exton_j_neg_int",
    "classical_bessel_j",
    "wall_polynomial",
    "chebyshev_t",
    "recurrence_coeffs",
    "p_k",
    "tail_bound",
    "log_tail_bound",
]

INTEGER_ORDER_RTOL = 1e-12
_EPS = 2.220446049250313e-16


def _as_q(q) -> float:
    q = getattr(q, "q", q)
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie strictly in (0, 1), got {q!r}")
    return float(q)


def nearest_integer_order(order: complex, rtol: float = INTEGER_ORDER_RTOL) -> Optional[int]:
    """The integer this order equals within ``rtol``, or None."""
    order = complex(order)
    scale = max(1.0, abs(order))
    if abs(order.imag) > rtol * scale:
        return None
    n = round(order.real)
    return n if abs(order.real - n) <= rtol * scale else None


def _principal_pow(z: complex, a: complex) -> complex:
    if a == 0:
        return 1.0 + 0.0j
    return cmath.exp(a * cmath.log(z))


@lru_cache(maxsize=65536)
def _j_cached(alpha: complex, z: complex, q: float, trunc: Truncation) -> SeriesValue:
    n = nearest_integer_order(alpha)
    if n is not None and n < 0:
        # J_n = J_{-(-n)} via the reduction, argument shrinks by q^{(-n)/2}
        m = -n
        sign = -1.0 if m % 2 else 1.0
        qm2 = q ** (m / 2.0)
        inner = _j_cached(complex(m), z * qm2, q, trunc)
        return SeriesValue(sign * qm2 * inner.value, qm2 * inner.est_error,
                           inner.terms_used, inner.converged)
    if z == 0:
        if alpha == 0 or (n is not None and n > 0):
            return SeriesValue(1.0 + 0.0j if alpha == 0 else 0.0j, 0.0, 1, True)
        if alpha.real > 0:
            return SeriesValue(0.0j, 0.0, 1, True)
        raise SingularityError(f"z = 0 is singular for order {alpha}")

    if n is not None:
        alpha = complex(n)
        pref = 1.0 / q_pochhammer(q, q, n)
        pref_rel = _EPS * n
        pref_ok = True
    else:
        b = cmath.exp((alpha + 1.0) * math.log(q))
        pole_n = neg_q_exponent(b, q)
        if pole_n is not None:
            raise PoleError(
                f"order {alpha}: q^(order+1) = q^-{pole_n}; use the negative-integer reduction"
            )
        pref, pref_rel, _, pref_ok = _kernels.qpoch_inf_ratio(
            b, complex(q), q, trunc.rel_tol, trunc.max_terms
        )
    b = cmath.exp((alpha + 1.0) * math.log(q))
    series, s_err, terms, s_ok = _kernels.phi1_series(
        b, q, q * z * z, trunc.rel_tol, trunc.abs_tol, trunc.max_terms
    )
    zpow = _principal_pow(z, alpha)
    value = zpow * pref * series
    err = abs(value) * pref_rel + abs(zpow * pref) * s_err
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        # series peak or prefactor overflowed double precision; the true
        # value is unrecoverable here, so report an unknown-magnitude zero
        return SeriesValue(0.0j, math.inf, terms, False)
    return SeriesValue(value, err, terms, pref_ok and s_ok)


def hahn_exton_j(alpha: complex, z: complex, q, trunc: Truncation | None = None) -> SeriesValue:
    """Hahn-Exton q-Bessel function J_alpha(z; q).

    z^alpha is taken on the principal branch.  z = 0 requires alpha = 0 or
    Re(alpha) > 0.
    """
    return _j_cached(complex(alpha), complex(z), _as_q(q), trunc or DEFAULT_TRUNCATION)


def hahn_exton_j_qpow(order: complex, j: int, q, trunc: Truncation | None = None) -> SeriesValue:
    """J_order(q^{j/2}; q) for integer lattice exponent j.

    For j < 0 the argument q^{j/2} exceeds 1 and direct summation loses all
    precision to cancellation, so the order/argument symmetry
    J_a(q^{v/2};q) = J_v(q^{a/2};q) rewrites the value as an integer-order
    function of the small argument q^{order/2} first.
    """
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    if j >= 0:
        return _j_cached(complex(order), complex(q ** (j / 2.0)), q, trunc)
    arg = cmath.exp(complex(order) * 0.5 * math.log(q))
    return _j_cached(complex(j), arg, q, trunc)


def hahn_exton_j_neg_int(n: int, z: complex, q, trunc: Truncation | None = None) -> SeriesValue:
    """J_{-n}(z; q) for integer n via the negative-order reduction.

    Returns (-1)^n q^{n/2} J_n(z q^{n/2}; q); n may be any integer (n <= 0
    simply evaluates J_{-n} directly).
    """
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    n = int(n)
    if n <= 0:
        return _j_cached(complex(-n), complex(z), q, trunc)
    sign = -1.0 if n % 2 else 1.0
    qn2 = q ** (n / 2.0)
    inner = _j_cached(complex(n), complex(z) * qn2, q, trunc)
    return SeriesValue(sign * qn2 * inner.value, qn2 * inner.est_error,
                       inner.terms_used, inner.converged)


def classical_bessel_j(nu: complex, z: complex, trunc: Truncation | None = None) -> SeriesValue:
    """Classical Bessel function J_nu(z) by direct series summation.

    Negative integer orders reflect through J_{-n} = (-1)^n J_n.  The
    estimated error includes the cancellation floor eps * (peak term), which
    marks the result unconverged once |z| is large enough (around |z| > 50)
    that double precision loses all relative accuracy.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    nu = complex(nu)
    z = complex(z)
    n = nearest_integer_order(nu)
    if n is not None and n < 0:
        inner = classical_bessel_j(complex(-n), z, trunc)
        sign = -1.0 if n % 2 else 1.0
        return SeriesValue(sign * inner.value, inner.est_error, inner.terms_used, inner.converged)
    if z == 0:
        if nu == 0:
            return SeriesValue(1.0 + 0.0j, 0.0, 1, True)
        if nu.real > 0 or n is not None:
            return SeriesValue(0.0j, 0.0, 1, True)
        raise SingularityError(f"z = 0 is singular for order {nu}")
    if n is not None:
        nu = complex(n)
    value, err, terms, ok = _kernels.classical_j_series(
        nu, z, trunc.rel_tol, trunc.abs_tol, trunc.max_terms
    )
    if value != value:
        raise PoleError(f"gamma pole at order {nu}")
    return SeriesValue(value, err, terms, ok)


def wall_polynomial(p: int, x: complex, b: float, q) -> complex:
    """Wall polynomial w_p(x; b; q) for 0 < b < 1.

    w_p = (-1)^p sqrt((b;q)_p / (b^p (q;q)_p)) * 2phi1(q^{-p}, 0; b; q, x);
    the 2phi1 terminates after p+1 terms.  The prefactor radicand is
    positive for b in (0,1), and the positive square root is taken.
    """
    q = _as_q(q)
    if not 0.0 < b < 1.0:
        raise DomainError(f"Wall polynomial parameter b must lie in (0, 1), got {b!r}")
    if p < 0:
        raise ValueError("p must be a nonnegative integer")
    # terminating series, evaluated multiplicatively so q^{-p} never
    # appears at full magnitude
    series = 1.0 + 0.0j
    term = 1.0 + 0.0j
    qk = 1.0
    qmp = q ** (-p)
    for k in range(p):
        term *= (1.0 - qmp * qk) * complex(x) / ((1.0 - q * qk) * (1.0 - b * qk))
        qk *= q
        series += term
    rad = (q_pochhammer(b, q, p) / (b**p * q_pochhammer(q, q, p))).real
    pref = math.sqrt(rad)
    if p % 2:
        pref = -pref
    return pref * series


def chebyshev_t(k: int, x: float) -> float:
    """Chebyshev polynomial of the first kind, T_k(cos t) = cos(k t)."""
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    if k == 0:
        return 1.0
    tm, t = 1.0, float(x)
    for _ in range(k - 1):
        tm, t = t, 2.0 * x * t - tm
    return t


@dataclass(frozen=True)
class RecurrenceFamily:
    """Parameters of the shifted-argument q-Bessel recurrence family.

    The members p_k(x) = (-1)^k q^{-k/2} J_{2 n alpha + beta}(x q^{-k/2}; q)
    with q = c^{1/n} satisfy

        x^2 p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}

    with the coefficients from :func:`recurrence_coeffs`.  alpha > 0 and
    beta > -1 keep the zeros of p_k real.
    """

    alpha: float
    beta: float
    c: float
    n: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise DomainError("alpha must be > 0")
        if self.beta <= -1:
            raise DomainError("beta must be > -1")
        if not 0.0 < self.c < 1.0:
            raise DomainError("c must lie in (0, 1)")
        if self.n < 1:
            raise DomainError("n must be a positive integer")

    @property
    def q(self) -> float:
        return self.c ** (1.0 / self.n)

    @property
    def order(self) -> float:
        return 2.0 * self.n * self.alpha + self.beta


def recurrence_coeffs(k: int, fam: RecurrenceFamily) -> tuple[float, float]:
    """Recurrence coefficients (a_k, b_k) of the family at index k.

    a_k = q^{k - 1/2 + n alpha + beta/2}, b_k = q^k (1 + q^{2 n alpha + beta})
    with q = c^{1/n}.  As n grows, a_{n,n} -> c^{1+alpha} and
    b_{n,n} -> c (1 + c^{2 alpha}).
    """
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    q = fam.q
    a = q ** (k - 0.5 + fam.n * fam.alpha + fam.beta / 2.0)
    b = q**k * (1.0 + q ** (2.0 * fam.n * fam.alpha + fam.beta))
    return a, b


def p_k(k: int, x: complex, fam: RecurrenceFamily, trunc: Truncation | None = None) -> complex:
    """Family member p_k(x) = (-1)^k q^{-k/2} J_{2 n alpha + beta}(x q^{-k/2}; q)."""
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    q = fam.q
    scale = q ** (-k / 2.0)
    val = hahn_exton_j(fam.order, complex(x) * scale, q, trunc).value
    return ((-1.0) ** k) * scale * val


@lru_cache(maxsize=65536)
def _log_poch_plus(a: float, q: float) -> float:
    # upper bound on ln (-a;q)_inf = sum_i ln(1 + a q^i), a >= 0
    total = 0.0
    aq = a
    while aq > 1e-18:
        total += math.log1p(aq)
        aq *= q
    return total + aq / (1.0 - q)


@lru_cache(maxsize=256)
def _log_poch_q(q: float) -> float:
    # lower bound on ln (q;q)_inf
    total = 0.0
    aq = q
    while aq > 1e-18:
        total += math.log1p(-aq)
        aq *= q
    return total - 2.0 * aq / (1.0 - q)


def log_tail_bound(order: complex, z: complex, q, integer_order: bool = False) -> float:
    """log of :func:`tail_bound`; stays finite where the bound overflows."""
    q = _as_q(q)
    order = complex(order)
    z = complex(z)
    az2 = abs(z) ** 2
    if integer_order:
        n = int(round(order.real))
        if z == 0:
            lzpow = 0.0 if n == 0 else -math.inf
        else:
            lzpow = abs(n) * math.log(abs(z))
        extra = 0.5 * n * (n - 1) * math.log(q) if n <= 0 else 0.0
        return lzpow + _log_poch_plus(q, q) + _log_poch_plus(q * az2, q) - _log_poch_q(q) + extra
    if z == 0:
        lzpow = 0.0 if order == 0 else (-math.inf if order.real > 0 else math.inf)
    else:
        lzpow = (order * cmath.log(z)).real
    return (
        lzpow
        + _log_poch_plus(q ** (order.real + 1.0), q)
        + _log_poch_plus(q * az2, q)
        - _log_poch_q(q)
    )


def tail_bound(order: complex, z: complex, q, integer_order: bool = False) -> float:
    """Certified upper bound on |J_order(z; q)|.

    General orders use |z^order| (-q^{Re(order)+1}, -q|z|^2; q)_inf / (q;q)_inf;
    integer orders n use |z|^{|n|} (-q, -q|z|^2; q)_inf / (q;q)_inf, with the
    extra factor q^{n(n-1)/2} when n <= 0.  The infinite products are
    evaluated in log space at a fixed strict tolerance, independent of any
    caller Truncation, so the bound stays a bound.
    """
    lb = log_tail_bound(order, z, q, integer_order)
    if lb == -math.inf:
        return 0.0
    try:
        return math.exp(lb)
    except OverflowError:
        return math.inf
