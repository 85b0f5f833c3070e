"""Core q-series machinery.

Provides q-shifted factorials, the q-gamma function, basic hypergeometric
series, and an adaptive bilateral summation engine.  All values are plain
complex doubles; series results carry a truncation-error estimate in a
:class:`SeriesValue`.

Conventions, with ``0 < q < 1`` throughout:

    (a;q)_0 = 1,   (a;q)_k = prod_{i=0}^{k-1} (1 - a q^i),
    (a;q)_inf = lim_{k->inf} (a;q)_k

    r_phi_s(a_1..a_r; b_1..b_s; q, z)
        = sum_k  [(a_1;q)_k ... (a_r;q)_k] / [(q;q)_k (b_1;q)_k ... (b_s;q)_k]
          * z^k * ((-1)^k q^{k(k-1)/2})^(s-r+1)

    Gamma_q(z) = (q;q)_inf / (q^z;q)_inf * (1-q)^(1-z)

Complex powers use the principal branch exp(a * Log z) everywhere.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from . import _kernels

__all__ = [
    "QParam",
    "Truncation",
    "SeriesValue",
    "TailHint",
    "DEFAULT_TRUNCATION",
    "QGrafError",
    "DomainError",
    "PoleError",
    "SingularityError",
    "NonFiniteTermError",
    "q_pochhammer",
    "q_pochhammer_inf",
    "q_pochhammer_inf_ratio",
    "q_gamma",
    "phi_rs",
    "bilateral_sum",
    "q_integral_dmq",
    "neg_q_exponent",
]

_EPS = 2.220446049250313e-16


class QGrafError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(QGrafError):
    """Parameters violate a validity condition of the requested formula."""


class PoleError(QGrafError):
    """Evaluation requested at (or too close to) a pole."""


class SingularityError(QGrafError):
    """Singular point of the function itself (e.g. z = 0 with Re(order) < 0)."""


class NonFiniteTermError(QGrafError):
    """A series term evaluated to NaN or infinity."""


@dataclass(frozen=True)
class QParam:
    """The base q, restricted to the open interval (0, 1)."""

    q: float

    def __post_init__(self):
        if not (isinstance(self.q, (int, float)) and 0.0 < self.q < 1.0):
            raise DomainError(f"q must lie strictly in (0, 1), got {self.q!r}")


@dataclass(frozen=True)
class Truncation:
    """Stopping policy for adaptive series and products.

    ``window_init`` is the half-width of the first bilateral window and
    ``window_growth`` the geometric factor by which a lagging side expands.
    """

    rel_tol: float = 1e-11
    abs_tol: float = 1e-13
    max_terms: int = 100_000
    window_init: int = 8
    window_growth: int = 2

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_terms < 1 or self.window_init < 1 or self.window_growth < 1:
            raise ValueError("max_terms, window_init, window_growth must be >= 1")

    def tol_for(self, value: complex) -> float:
        return max(self.rel_tol * abs(value), self.abs_tol)


DEFAULT_TRUNCATION = Truncation()


@dataclass(frozen=True)
class SeriesValue:
    """A computed value with an estimated truncation/rounding error."""

    value: complex
    est_error: float
    terms_used: int
    converged: bool

    def __complex__(self) -> complex:
        return complex(self.value)


@dataclass(frozen=True)
class TailHint:
    """Certified per-term magnitude bounds for a bilateral sum.

    Each side, when present, is a callable mapping an index to an upper
    bound on ``|term(index)|``.  The bound ratio must be non-increasing
    toward the far end of its side, so one ratio evaluation certifies a
    geometric remainder.  A side left as ``None`` converges on observed
    window increments alone.
    """

    neg: Optional[Callable[[int], float]] = None
    pos: Optional[Callable[[int], float]] = None


def _as_q(q) -> float:
    if isinstance(q, QParam):
        return q.q
    return QParam(float(q)).q


def neg_q_exponent(value: complex, q, rtol: float = 1e-14, max_n: int = 100_000) -> Optional[int]:
    """Return n >= 0 such that value = q^{-n} to relative ``rtol``, else None."""
    q = _as_q(q)
    value = complex(value)
    if value.imag != 0.0 and abs(value.imag) > rtol * abs(value):
        return None
    v = value.real
    if v < 1.0 - rtol:
        return None
    n = int(round(-math.log(v) / math.log(q))) if v > 0 else None
    if n is None or n < 0 or n > max_n:
        return None
    return n if abs(v - q ** (-n)) <= rtol * v else None


def q_pochhammer(a: complex, q, k: int) -> complex:
    """Finite q-shifted factorial (a;q)_k."""
    q = _as_q(q)
    if k < 0:
        raise ValueError("k must be a nonnegative integer")
    return _kernels.qpoch_finite(complex(a), q, int(k))


def q_pochhammer_inf(a: complex, q, trunc: Truncation | None = None) -> SeriesValue:
    """Infinite q-shifted factorial (a;q)_inf with a certified geometric tail."""
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    value, rel_err, n, ok = _kernels.qpoch_inf(complex(a), q, trunc.rel_tol, trunc.max_terms)
    return SeriesValue(value, rel_err * abs(value), n, ok)


def q_pochhammer_inf_ratio(a: complex, b: complex, q, trunc: Truncation | None = None) -> SeriesValue:
    """(a;q)_inf / (b;q)_inf evaluated as a product of per-factor ratios."""
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    value, rel_err, n, ok = _kernels.qpoch_inf_ratio(
        complex(a), complex(b), q, trunc.rel_tol, trunc.max_terms
    )
    if value != value:  # NaN: a factor of (b;q)_inf vanished
        raise PoleError("(b;q)_inf has a vanishing factor; ratio undefined")
    return SeriesValue(value, rel_err * abs(value), n, ok)


def q_gamma(z: complex, q, trunc: Truncation | None = None) -> complex:
    """q-gamma function (q;q)_inf / (q^z;q)_inf * (1-q)^(1-z)."""
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    z = complex(z)
    qz = cmath.exp(z * math.log(q))
    if neg_q_exponent(qz, q, rtol=1e-12) is not None:
        raise PoleError(f"q-gamma pole: z = {z} is a nonpositive integer within tolerance")
    ratio = q_pochhammer_inf_ratio(q, qz, q, trunc)
    if abs(ratio.value) == 0.0 or not math.isfinite(abs(ratio.value)):
        raise PoleError(f"(q^z;q)_inf vanished for z = {z}")
    return ratio.value * cmath.exp((1.0 - z) * math.log(1.0 - q))


def phi_rs(
    upper: Sequence[complex],
    lower: Sequence[complex],
    q,
    arg: complex,
    trunc: Truncation | None = None,
) -> SeriesValue:
    """Basic hypergeometric series r_phi_s(upper; lower; q, arg).

    Terminating series (an upper parameter equal to q^{-p}) are summed
    exactly in p+1 terms.  A lower parameter of the form q^{-n} is a pole
    unless the series terminates strictly earlier.  A divergent
    non-terminating series (s - r + 1 <= 0 with |arg| outside the
    convergence region) is returned with ``converged=False``.
    """
    q = _as_q(q)
    trunc = trunc or DEFAULT_TRUNCATION
    upper = [complex(a) for a in upper]
    lower = [complex(b) for b in lower]
    arg = complex(arg)

    terminate_at = None
    for a in upper:
        p = neg_q_exponent(a, q)
        if p is not None and (terminate_at is None or p < terminate_at):
            terminate_at = p
    for b in lower:
        n = neg_q_exponent(b, q)
        if n is not None and (terminate_at is None or terminate_at >= n):
            raise PoleError(
                f"lower parameter {b} = q^-{n} gives a vanishing (b;q)_k before termination"
            )

    excess = len(lower) - len(upper) + 1
    # fast path: 1phi1 with upper parameter 0 (the Hahn-Exton shape)
    if excess == 1 and upper == [0j] and len(lower) == 1 and terminate_at is None:
        value, err, terms, ok = _kernels.phi1_series(
            lower[0], q, arg, trunc.rel_tol, trunc.abs_tol, trunc.max_terms
        )
        if value != value:
            raise PoleError("1phi1 lower parameter hit a pole during summation")
        return SeriesValue(value, err, terms, ok)

    total = 1.0 + 0.0j
    term = 1.0 + 0.0j
    peak = 1.0
    qk = 1.0
    small = 0
    growing = 0
    prev_mag = 1.0
    k = 0
    limit = trunc.max_terms if terminate_at is None else terminate_at
    while k < limit:
        num = arg
        for a in upper:
            num *= 1.0 - a * qk
        den = 1.0 - q * qk
        for b in lower:
            den *= 1.0 - b * qk
        if den == 0.0:
            raise PoleError("phi_rs series hit a vanishing lower-parameter factor")
        if excess != 0:
            num *= (-qk) ** excess
        term = term * num / den
        qk *= q
        k += 1
        total += term
        mag = abs(term)
        if not math.isfinite(mag):
            raise NonFiniteTermError("phi_rs term is non-finite")
        peak = max(peak, mag)
        if terminate_at is not None:
            continue
        tol = trunc.tol_for(total)
        if mag <= 0.1 * tol:
            small += 1
            if small >= 2:
                err = 2.0 * mag + _EPS * peak * math.sqrt(k)
                return SeriesValue(total, err, k + 1, err <= 10.0 * tol)
        else:
            small = 0
        if excess <= 0:
            growing = growing + 1 if mag > prev_mag else 0
            prev_mag = mag
            if growing >= 8 and mag > 1.0 / trunc.abs_tol:
                return SeriesValue(total, math.inf, k + 1, False)
    if terminate_at is not None:
        err = _EPS * peak * math.sqrt(k + 1)
        return SeriesValue(total, err, k + 1, True)
    return SeriesValue(total, abs(term), k + 1, False)


def _certified_remainder(hint_fn: Callable[[int], float], edge: int, step: int) -> Optional[float]:
    # Geometric remainder bound from two bound evaluations past the edge.
    b0 = hint_fn(edge + step)
    b1 = hint_fn(edge + 2 * step)
    if not (math.isfinite(b0) and math.isfinite(b1)) or b0 <= 0.0:
        return None
    r = b1 / b0
    if r >= 1.0:
        return None
    return b0 / (1.0 - r)


def bilateral_sum(
    term: Callable[[int], complex],
    trunc: Truncation | None = None,
    tail_hint: TailHint | None = None,
) -> SeriesValue:
    """Adaptive bilateral sum over all integers.

    The window [-W-, W+] starts at ``window_init`` on each side and the
    lagging side grows geometrically.  A side is finished once two
    consecutive expansions contribute less than the tolerance and, when a
    tail hint is supplied for that side, the certified remainder is below
    tolerance as well.  Growing increments trip an early divergence exit.
    """
    trunc = trunc or DEFAULT_TRUNCATION
    total = complex(term(0))
    if not (math.isfinite(total.real) and math.isfinite(total.imag)):
        raise NonFiniteTermError("bilateral term at z = 0 is non-finite")
    abs_sum = abs(total)
    n_terms = 1

    class _Side:
        __slots__ = ("sign", "edge", "last_inc", "small", "grow", "done", "remainder")

        def __init__(self, sign):
            self.sign = sign
            self.edge = 0
            self.last_inc = math.inf
            self.small = 0
            self.grow = 0
            self.done = False
            self.remainder = math.inf

    neg, pos = _Side(-1), _Side(+1)
    diverged = False

    def _expand(side: _Side, upto: int):
        nonlocal total, abs_sum, n_terms
        inc = 0.0
        for i in range(side.edge + 1, upto + 1):
            t = complex(term(side.sign * i))
            if not (math.isfinite(t.real) and math.isfinite(t.imag)):
                raise NonFiniteTermError(f"bilateral term at z = {side.sign * i} is non-finite")
            total += t
            a = abs(t)
            inc += a
            abs_sum += a
            n_terms += 1
        side.edge = upto
        return inc

    for side in (neg, pos):
        side.last_inc = _expand(side, trunc.window_init)

    while not (neg.done and pos.done):
        if n_terms >= trunc.max_terms:
            break
        active = [s for s in (neg, pos) if not s.done]
        side = max(active, key=lambda s: s.last_inc)
        tol_side = trunc.tol_for(total) * 0.5
        if side.last_inc <= 0.1 * tol_side:
            side.small += 1
        else:
            side.small = 0
        if side.small >= 2:
            hint_fn = tail_hint and (tail_hint.neg if side.sign < 0 else tail_hint.pos)
            if hint_fn is not None:
                rem = _certified_remainder(hint_fn, side.edge, 1)
                if rem is not None and rem <= tol_side:
                    side.remainder = rem
                    side.done = True
                    continue
                # bound not conclusive yet: keep expanding
            else:
                side.remainder = side.last_inc
                side.done = True
                continue
        prev = side.last_inc
        grow_to = max(side.edge + trunc.window_init, side.edge * trunc.window_growth)
        grow_to = min(grow_to, side.edge + max(1, trunc.max_terms - n_terms))
        side.last_inc = _expand(side, grow_to)
        if side.last_inc > prev and side.last_inc > 1.0 / trunc.abs_tol:
            side.grow += 1
            if side.grow >= 3:
                diverged = True
                break

    converged = neg.done and pos.done and not diverged
    err = _EPS * abs_sum * math.sqrt(max(n_terms, 1))
    for side in (neg, pos):
        err += side.remainder if side.done else side.last_inc
    if not math.isfinite(err):
        err = math.inf
    converged = converged and err <= 10.0 * trunc.tol_for(total)
    return SeriesValue(total, err, n_terms, converged)


def q_integral_dmq(
    f: Callable[[complex], complex],
    q,
    trunc: Truncation | None = None,
    tail_hint: TailHint | None = None,
) -> SeriesValue:
    """Discrete q-integral against dm_q: sum_z q^z f(q^{z/2}).

    The lattice runs over all integers z; the z -> -inf side diverges for
    any f without sufficient decay at infinity, which surfaces as
    ``converged=False``.
    """
    q = _as_q(q)
    sq = math.sqrt(q)

    def term(z: int) -> complex:
        try:
            w = q**z * complex(f(sq**z))
        except OverflowError:
            return complex(math.inf, 0.0)
        return w

    return bilateral_sum(term, trunc, tail_hint)
