"""Two-route verifiers for the q-Bessel addition/product identities.

Each verifier evaluates both sides of one identity by independent summation
routes and reports absolute and relative residuals together with per-side
convergence diagnostics.  Bilateral sums run through
:func:`qgraf.qseries.bilateral_sum` with certified tail bounds from
:func:`qgraf.qbessel.tail_bound` wherever the bound product actually decays;
sides whose bound product is divergent (the k -> -inf side of the addition
formula) rely on the engine's window-increment convergence instead.

Lattice arguments q^{j/2} always route through
:func:`qgraf.qbessel.hahn_exton_j_qpow`, which rewrites j < 0 through the
order/argument symmetry before summing; this is what keeps the bilateral
tails evaluable in double precision.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

from .qbessel import hahn_exton_j, hahn_exton_j_qpow, tail_bound, classical_bessel_j
from .qseries import (
    DEFAULT_TRUNCATION,
    DomainError,
    SeriesValue,
    TailHint,
    Truncation,
    bilateral_sum,
    q_pochhammer,
    phi_rs,
)

__all__ = [
    "GrafParams",
    "IdentityReport",
    "verify_graf_addition",
    "verify_product_formula",
    "verify_orthogonality",
    "verify_swarttouw_product",
    "verify_symmetry",
    "verify_quotient_expansion",
    "verify_sum_formula",
    "verify_sum_formula_bessel",
    "verify_classical_graf",
    "verify_classical_product",
]

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class GrafParams:
    """Parameter tuple (R, x, y, nu, z_or_m, q) of the addition/product formulas.

    The integer slot is z for the addition formula and m for the product
    formula.  Validity requires Re(x) > -1, q^(1 + Re x + Re y) |R|^2 < 1
    and R != 0; the boundary of the second condition counts as out of
    domain.
    """

    R: complex
    x: complex
    y: complex
    nu: complex
    z_or_m: int
    q: float

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise DomainError(f"q must lie in (0, 1), got {self.q!r}")
        if self.z_or_m != int(self.z_or_m):
            raise DomainError("z_or_m must be an integer")

    @property
    def domain_ok(self) -> bool:
        R, x, y = complex(self.R), complex(self.x), complex(self.y)
        if R == 0:
            return False
        if x.real <= -1.0:
            return False
        return self.q ** (1.0 + x.real + y.real) * abs(R) ** 2 < 1.0

    def require_domain(self):
        if not self.domain_ok:
            raise DomainError(
                "parameters violate Re(x) > -1, q^(1+Re x+Re y) |R|^2 < 1, R != 0: "
                f"{self}"
            )


@dataclass(frozen=True)
class IdentityReport:
    """Residual report for one identity check."""

    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    lhs_diag: Optional[SeriesValue] = None
    rhs_diag: Optional[SeriesValue] = None
    params: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        sides = [d for d in (self.lhs_diag, self.rhs_diag) if d is not None]
        return all(d.converged for d in sides)


def _mul(a: SeriesValue, b: SeriesValue) -> SeriesValue:
    return SeriesValue(
        a.value * b.value,
        abs(a.value) * b.est_error + abs(b.value) * a.est_error,
        a.terms_used + b.terms_used,
        a.converged and b.converged,
    )


def _scale(c: complex, a: SeriesValue) -> SeriesValue:
    return SeriesValue(c * a.value, abs(c) * a.est_error, a.terms_used, a.converged)


def _report(lhs: SeriesValue, rhs: SeriesValue, params: dict, abs_tol: float) -> IdentityReport:
    a = abs(lhs.value - rhs.value)
    r = a / max(abs(lhs.value), abs(rhs.value), abs_tol)
    return IdentityReport(lhs.value, rhs.value, a, r, lhs, rhs, params)


def _qpow(q: float, e: complex) -> complex:
    # q^e on the principal branch (q real in (0,1): plain exponential)
    return cmath.exp(complex(e) * math.log(q))


def _lattice_bound(order: complex, j: int, q: float) -> float:
    # certified bound on |J_order(q^{j/2}; q)|; j < 0 goes through the
    # symmetry to the integer-order estimate with its Gaussian factor
    if j >= 0:
        return tail_bound(order, q ** (j / 2.0), q, integer_order=False)
    return tail_bound(j, _qpow(q, complex(order) * 0.5), q, integer_order=True)


def verify_graf_addition(p: GrafParams, trunc: Truncation | None = None) -> IdentityReport:
    """Check the addition formula

        J_nu(R q^{(y+z+nu)/2}; q) J_{x-nu}(q^{z/2}; q)
          = sum_k J_k(R q^{(x+y+k)/2}; q) J_{nu+k}(R q^{(y+k+nu)/2}; q)
                  J_x(q^{(z-k)/2}; q)

    for integer z, in the validity domain of :class:`GrafParams`.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    p.require_domain()
    q = p.q
    R, x, y, nu = complex(p.R), complex(p.x), complex(p.y), complex(p.nu)
    z = int(p.z_or_m)

    lhs = _mul(
        hahn_exton_j(nu, R * _qpow(q, (y + z + nu) / 2), q, trunc),
        hahn_exton_j_qpow(x - nu, z, q, trunc),
    )

    def term(k: int) -> complex:
        return (
            hahn_exton_j(complex(k), R * _qpow(q, (x + y + k) / 2), q, trunc).value
            * hahn_exton_j(nu + k, R * _qpow(q, (y + k + nu) / 2), q, trunc).value
            * hahn_exton_j_qpow(x, z - k, q, trunc).value
        )

    def pos_bound(k: int) -> float:
        b1 = tail_bound(k, R * _qpow(q, (x + y + k) / 2), q, integer_order=True)
        b2 = tail_bound(nu + k, R * _qpow(q, (y + k + nu) / 2), q, integer_order=False)
        return b1 * b2 * _lattice_bound(x, z - k, q)

    hint = TailHint(neg=None, pos=pos_bound)
    rhs = bilateral_sum(term, trunc, hint)
    params = {"R": R, "x": x, "y": y, "nu": nu, "z": z, "q": q,
              "domain_margin": q ** (1.0 + x.real + y.real) * abs(R) ** 2}
    return _report(lhs, rhs, params, trunc.abs_tol)


def verify_product_formula(p: GrafParams, trunc: Truncation | None = None) -> IdentityReport:
    """Check the product formula

        (-1)^m q^{-m/2} J_m(R q^{(x+y)/2}; q) J_{nu-m}(R q^{(y+nu-m)/2}; q)
          = sum_z q^z J_x(q^{(m+z)/2}; q) J_{x-nu}(q^{z/2}; q)
                  J_nu(R q^{(y+nu+z)/2}; q)

    for integer m, in the validity domain of :class:`GrafParams`.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    p.require_domain()
    q = p.q
    R, x, y, nu = complex(p.R), complex(p.x), complex(p.y), complex(p.nu)
    m = int(p.z_or_m)

    sign = -1.0 if m % 2 else 1.0
    lhs = _scale(
        sign * q ** (-m / 2.0),
        _mul(
            hahn_exton_j(complex(m), R * _qpow(q, (x + y) / 2), q, trunc),
            hahn_exton_j(nu - m, R * _qpow(q, (y + nu - m) / 2), q, trunc),
        ),
    )

    def term(z: int) -> complex:
        return (
            q**z
            * hahn_exton_j_qpow(x, m + z, q, trunc).value
            * hahn_exton_j_qpow(x - nu, z, q, trunc).value
            * hahn_exton_j(nu, R * _qpow(q, (y + nu + z) / 2), q, trunc).value
        )

    def bound(z: int) -> float:
        return (
            q**z
            * _lattice_bound(x, m + z, q)
            * _lattice_bound(x - nu, z, q)
            * tail_bound(nu, R * _qpow(q, (y + nu + z) / 2), q, integer_order=False)
        )

    hint = TailHint(neg=bound, pos=bound)
    rhs = bilateral_sum(term, trunc, hint)
    params = {"R": R, "x": x, "y": y, "nu": nu, "m": m, "q": q}
    return _report(lhs, rhs, params, trunc.abs_tol)


def verify_orthogonality(
    x: complex, z: int, l: int, q: float, trunc: Truncation | None = None
) -> IdentityReport:
    """Check the discrete orthogonality

        sum_m q^{m+z} J_x(q^{(z+m)/2}; q) J_x(q^{(l+m)/2}; q) = delta_{z,l}

    for integer z, l and Re(x) > -1.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    x = complex(x)
    if x.real <= -1.0:
        raise DomainError(f"orthogonality requires Re(x) > -1, got {x}")
    z, l = int(z), int(l)

    def term(m: int) -> complex:
        return (
            q ** (m + z)
            * hahn_exton_j_qpow(x, z + m, q, trunc).value
            * hahn_exton_j_qpow(x, l + m, q, trunc).value
        )

    def bound(m: int) -> float:
        return q ** (m + z) * _lattice_bound(x, z + m, q) * _lattice_bound(x, l + m, q)

    rhs = SeriesValue(1.0 + 0.0j if z == l else 0.0j, 0.0, 1, True)
    lhs = bilateral_sum(term, trunc, TailHint(neg=bound, pos=bound))
    return _report(lhs, rhs, {"x": x, "z": z, "l": l, "q": q}, trunc.abs_tol)


def verify_swarttouw_product(
    a: complex,
    b: complex,
    x_arg: complex,
    mu: complex,
    nu: complex,
    q: float,
    trunc: Truncation | None = None,
) -> IdentityReport:
    """Check the product expansion

        J_nu(a x; q) J_mu(b x; q)
          = (q^{nu+1};q)_inf (q^{mu+1};q)_inf / (q;q)_inf^2
            * a^nu b^mu x^{nu+mu}
            * sum_n (-1)^n (b x)^{2n} q^{n(n+1)/2} / ((q^{mu+1};q)_n (q;q)_n)
                    * 2phi1(q^{-n}, q^{-n-mu}; q^{nu+1}; q, q^{mu+n+1} a^2/b^2)

    valid for a b x != 0; each 2phi1 terminates after n+1 terms.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    a, b, x_arg, mu, nu = map(complex, (a, b, x_arg, mu, nu))
    if a * b * x_arg == 0:
        raise DomainError("the product expansion requires a*b*x != 0")

    lhs = _mul(
        hahn_exton_j(nu, a * x_arg, q, trunc),
        hahn_exton_j(mu, b * x_arg, q, trunc),
    )

    from .qseries import q_pochhammer_inf_ratio

    r1 = q_pochhammer_inf_ratio(_qpow(q, nu + 1), q, q, trunc)
    r2 = q_pochhammer_inf_ratio(_qpow(q, mu + 1), q, q, trunc)
    pref = (
        r1.value
        * r2.value
        * cmath.exp(nu * cmath.log(a))
        * cmath.exp(mu * cmath.log(b))
        * cmath.exp((nu + mu) * cmath.log(x_arg))
    )

    phi_arg = _qpow(q, mu + 1) * a * a / (b * b)
    bx2 = (b * x_arg) ** 2
    total = 0.0j
    coeff = 1.0 + 0.0j
    peak = 0.0
    terms = 0
    small = 0
    converged = False
    n = 0
    while n < trunc.max_terms:
        inner = phi_rs([q ** (-n), _qpow(q, -n - mu)], [_qpow(q, nu + 1)], q, phi_arg * q**n, trunc)
        t = coeff * inner.value
        total += t
        terms += inner.terms_used
        mag = abs(t)
        peak = max(peak, mag)
        tol = trunc.tol_for(total)
        if mag <= 0.1 * tol:
            small += 1
            if small >= 2:
                converged = True
                break
        else:
            small = 0
        coeff *= -bx2 * q ** (n + 1) / ((1.0 - _qpow(q, mu + 1 + n)) * (1.0 - q ** (n + 1)))
        n += 1
    err = abs(pref) * (2.0 * abs(coeff * inner.value) + _EPS * peak * math.sqrt(n + 1))
    rhs = SeriesValue(pref * total, err, terms, converged)
    params = {"a": a, "b": b, "x": x_arg, "mu": mu, "nu": nu, "q": q}
    return _report(lhs, rhs, params, trunc.abs_tol)


def verify_symmetry(
    alpha: complex, nu: complex, q: float, trunc: Truncation | None = None
) -> IdentityReport:
    """Check the order/argument symmetry J_alpha(q^{nu/2}; q) = J_nu(q^{alpha/2}; q)."""
    trunc = trunc or DEFAULT_TRUNCATION
    alpha, nu = complex(alpha), complex(nu)
    lhs = hahn_exton_j(alpha, _qpow(q, nu / 2), q, trunc)
    rhs = hahn_exton_j(nu, _qpow(q, alpha / 2), q, trunc)
    return _report(lhs, rhs, {"alpha": alpha, "nu": nu, "q": q}, trunc.abs_tol)


def verify_quotient_expansion(
    x: complex, nu: complex, z: int, k: int, q: float, trunc: Truncation | None = None
) -> IdentityReport:
    """Check the equal-order quotient expansion

        J_x(q^{(z-k)/2};q) / J_{x-nu}(q^{z/2};q)
          = q^{nu(z-k)/2} sum_{m>=0} (q^nu;q)_m / (q;q)_m
                * q^{m(1+(x-nu)/2)}
                * J_{x-nu}(q^{(z-k+m)/2};q) / J_{x-nu}(q^{z/2};q)

    valid for Re(x - nu) > -1 and J_{x-nu}(q^{z/2};q) != 0.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    x, nu = complex(x), complex(nu)
    if (x - nu).real <= -1.0:
        raise DomainError(f"quotient expansion requires Re(x - nu) > -1, got {x - nu}")
    z, k = int(z), int(k)
    den = hahn_exton_j_qpow(x - nu, z, q, trunc)
    if abs(den.value) < trunc.abs_tol:
        raise DomainError(f"J_(x-nu)(q^(z/2);q) = {den.value} is zero within tolerance")

    num = hahn_exton_j_qpow(x, z - k, q, trunc)
    lhs_val = num.value / den.value
    lhs = SeriesValue(lhs_val,
                      (num.est_error + abs(lhs_val) * den.est_error) / abs(den.value),
                      num.terms_used, num.converged and den.converged)

    qnu = _qpow(q, nu)
    ratio_step = _qpow(q, 1 + (x - nu) / 2)
    coeff = 1.0 + 0.0j
    total = 0.0j
    terms = 0
    peak = 0.0
    small = 0
    converged = False
    m = 0
    last = 0.0
    while m < trunc.max_terms:
        jv = hahn_exton_j_qpow(x - nu, z - k + m, q, trunc)
        t = coeff * jv.value
        total += t
        terms += jv.terms_used
        last = abs(t)
        peak = max(peak, last)
        tol = trunc.tol_for(total)
        if last <= 0.1 * tol:
            small += 1
            if small >= 2:
                converged = True
                break
        else:
            small = 0
        coeff *= (1.0 - qnu * q**m) / (1.0 - q ** (m + 1)) * ratio_step
        m += 1
    scale = _qpow(q, nu * (z - k) / 2) / den.value
    rhs = SeriesValue(scale * total,
                      abs(scale) * (2.0 * last + _EPS * peak * math.sqrt(m + 1)),
                      terms, converged)
    params = {"x": x, "nu": nu, "z": z, "k": k, "q": q}
    return _report(lhs, rhs, params, trunc.abs_tol)


def _sum_formula_lhs(x_arg: complex, y_arg: complex, s: complex, m: int, q: float,
                     trunc: Truncation) -> SeriesValue:
    # closed form: y^m (w;q)_m / (q;q)_m * 2phi1(q^m w, y/(s x); q^{m+1}; q, s x y)
    # with w = x/(s y); for m < 0 via the index swap
    # LHS(x, y, s, m) = s^{-m} LHS(y, x, s, -m).
    if m < 0:
        inner = _sum_formula_lhs(y_arg, x_arg, s, -m, q, trunc)
        return _scale(s ** (-m), inner)
    w = x_arg / (s * y_arg)
    front = (cmath.exp(m * cmath.log(y_arg)) if y_arg != 0 else (1.0 + 0.0j if m == 0 else 0.0j))
    front *= q_pochhammer(w, q, m) / q_pochhammer(q, q, m).real
    inner = phi_rs([w * q**m, y_arg / (s * x_arg)], [q ** (m + 1)], q, s * x_arg * y_arg, trunc)
    return _scale(front, inner)


def verify_sum_formula(
    x_arg: complex,
    y_arg: complex,
    s: complex,
    m: int,
    q: float,
    trunc: Truncation | None = None,
) -> IdentityReport:
    """Check the bilateral summation formula

        y^m (s^-1 x y^-1;q)_inf (q^{m+1};q)_inf
            / ((q^m s^-1 x y^-1;q)_inf (q;q)_inf)
            * 2phi1(q^m s^-1 x y^-1, s^-1 y x^-1; q^{m+1}; q, s x y)
          = sum_z s^z [y^{m+z} (y^2;q)_inf/(q;q)_inf 1phi1(0;y^2;q,q^{m+z+1})]
                      [x^z     (x^2;q)_inf/(q;q)_inf 1phi1(0;x^2;q,q^{z+1})]

    valid for |s x y| < 1 and integer m.  Each bracket on the right equals
    q^{j/2} J_j(. q^{-1/2}; q) at lattice index j, which is how the sum is
    evaluated; the infinite-product ratio in the closed form reduces to the
    finite product (s^-1 x y^-1;q)_m.  s = 0 degenerates both sides to the
    z = 0 term.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    x_arg, y_arg, s = complex(x_arg), complex(y_arg), complex(s)
    m = int(m)
    if abs(s * x_arg * y_arg) >= 1.0:
        raise DomainError(f"|s x y| = {abs(s * x_arg * y_arg)} must be < 1")
    sq = math.sqrt(q)
    ya, xa = y_arg / sq, x_arg / sq

    def bracket(j: int, base: complex) -> SeriesValue:
        return _scale(q ** (j / 2.0), hahn_exton_j(complex(j), base, q, trunc))

    if s == 0 or x_arg == 0 or y_arg == 0:
        lhs = _mul(bracket(m, ya), bracket(0, xa))
        rhs = lhs
        return _report(lhs, rhs, {"x": x_arg, "y": y_arg, "s": s, "m": m, "q": q},
                       trunc.abs_tol)

    lhs = _sum_formula_lhs(x_arg, y_arg, s, m, q, trunc)

    def term(z: int) -> complex:
        return s**z * bracket(m + z, ya).value * bracket(z, xa).value

    asq = abs(s)

    def bound(z: int) -> float:
        return (
            asq**z
            * q ** ((m + 2 * z) / 2.0)
            * tail_bound(m + z, ya, q, integer_order=True)
            * tail_bound(z, xa, q, integer_order=True)
        )

    rhs = bilateral_sum(term, trunc, TailHint(neg=bound, pos=bound))
    params = {"x": x_arg, "y": y_arg, "s": s, "m": m, "q": q}
    return _report(lhs, rhs, params, trunc.abs_tol)


def verify_sum_formula_bessel(
    x: complex, nu: complex, m: int, n: int, q: float, trunc: Truncation | None = None
) -> IdentityReport:
    """Check the q-Bessel specialization of the summation formula,

        q^{mx/2} (q^{-nu-n};q)_m / (q;q)_m
            * 2phi1(q^{m-nu-n}, q^{-n}; q^{m+1}; q, q^{x+n+1})
          = sum_z q^{z(n+1+nu/2)} J_x(q^{(m+z)/2};q) J_{x-nu}(q^{z/2};q)

    obtained from :func:`verify_sum_formula` by substituting
    x -> q^{(x-nu+1)/2}, y -> q^{(x+1)/2}, s -> q^{nu/2+n}.  Valid for
    Re(x) > -1, nonnegative integers m and n; the 2phi1 terminates after
    n+1 terms.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    x, nu = complex(x), complex(nu)
    if x.real <= -1.0:
        raise DomainError(f"requires Re(x) > -1, got {x}")
    if m < 0 or n < 0:
        raise DomainError("m and n must be nonnegative integers here")

    front = _qpow(q, m * x / 2)
    front *= q_pochhammer(_qpow(q, -nu - n), q, m) / q_pochhammer(q, q, m).real
    inner = phi_rs([_qpow(q, m - nu - n), q ** (-n)], [q ** (m + 1)], q,
                   _qpow(q, x + n + 1), trunc)
    lhs = _scale(front, inner)

    expo = n + 1 + nu / 2

    def term(z: int) -> complex:
        return (
            _qpow(q, expo * z)
            * hahn_exton_j_qpow(x, m + z, q, trunc).value
            * hahn_exton_j_qpow(x - nu, z, q, trunc).value
        )

    def bound(z: int) -> float:
        return (
            q ** (z * (n + 1 + nu.real / 2))
            * _lattice_bound(x, m + z, q)
            * _lattice_bound(x - nu, z, q)
        )

    rhs = bilateral_sum(term, trunc, TailHint(neg=bound, pos=bound))
    params = {"x": x, "nu": nu, "m": m, "n": n, "q": q}
    return _report(lhs, rhs, params, trunc.abs_tol)


def _graf_integrand(x: float, y: float, nu: complex, psi: float,
                    trunc: Truncation) -> SeriesValue:
    w = cmath.sqrt(x * x + y * y - 2.0 * x * y * math.cos(psi))
    num = x - y * cmath.exp(-1j * psi)
    den = x - y * cmath.exp(1j * psi)
    pref = cmath.exp((nu / 2) * (cmath.log(num) - cmath.log(den)))
    return _scale(pref, classical_bessel_j(nu, w, trunc))


def verify_classical_graf(
    x: float,
    y: float,
    psi: float,
    nu: complex,
    m_max: int,
    trunc: Truncation | None = None,
) -> IdentityReport:
    """Check Graf's addition formula for the classical Bessel function:

        J_nu(sqrt(x^2+y^2-2xy cos psi)) ((x-y e^{-i psi})/(x-y e^{i psi}))^{nu/2}
          = sum_{|m| <= m_max} J_{nu+m}(x) J_m(y) e^{i m psi}

    valid for |y| < |x| (any x, y for integer nu).
    """
    trunc = trunc or DEFAULT_TRUNCATION
    nu = complex(nu)
    from .qbessel import nearest_integer_order

    if abs(y) >= abs(x) and nearest_integer_order(nu) is None:
        raise DomainError(f"classical addition formula requires |y| < |x|, got |y|={abs(y)}, |x|={abs(x)}")
    lhs = _graf_integrand(x, y, nu, psi, trunc)

    total = 0.0j
    err = 0.0
    terms = 0
    ok = True
    for m in range(-m_max, m_max + 1):
        a = classical_bessel_j(nu + m, x, trunc)
        b = classical_bessel_j(complex(m), y, trunc)
        t = _mul(a, b)
        total += t.value * cmath.exp(1j * m * psi)
        err += t.est_error
        terms += t.terms_used
        ok = ok and t.converged
    rhs = SeriesValue(total, err, terms, ok)
    params = {"x": x, "y": y, "psi": psi, "nu": nu, "m_max": m_max}
    return _report(lhs, rhs, params, trunc.abs_tol)


def verify_classical_product(
    x: float,
    y: float,
    nu: complex,
    m: int,
    n_quad: int = 512,
    trunc: Truncation | None = None,
) -> IdentityReport:
    """Check the classical product formula

        J_{nu+m}(x) J_m(y)
          = 1/(2 pi) * int_0^{2 pi} J_nu(sqrt(x^2+y^2-2xy cos psi))
                * ((x-y e^{-i psi})/(x-y e^{i psi}))^{nu/2} e^{-i m psi} d psi

    with the integral approximated by the n_quad-point trapezoid rule
    (spectrally accurate for this periodic integrand); |y| < |x| required
    for non-integer nu.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    nu = complex(nu)
    from .qbessel import nearest_integer_order

    if abs(y) >= abs(x) and nearest_integer_order(nu) is None:
        raise DomainError(f"classical product formula requires |y| < |x|")
    if n_quad < 4 or n_quad % 2:
        raise ValueError("n_quad must be an even integer >= 4")

    lhs = _mul(classical_bessel_j(nu + m, x, trunc), classical_bessel_j(complex(m), y, trunc))

    samples = []
    for j in range(n_quad):
        psi = 2.0 * math.pi * j / n_quad
        samples.append(_graf_integrand(x, y, nu, psi, trunc).value * cmath.exp(-1j * m * psi))
    full = sum(samples) / n_quad
    half = sum(samples[::2]) / (n_quad // 2)
    rhs = SeriesValue(full, abs(full - half) + _EPS * n_quad, n_quad,
                      abs(full - half) <= 10.0 * trunc.tol_for(full))
    params = {"x": x, "y": y, "nu": nu, "m": m, "n_quad": n_quad}
    return _report(lhs, rhs, params, trunc.abs_tol)
