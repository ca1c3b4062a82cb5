"""Airy function Ai, its derivative, and the negative-axis zeros alpha_n.

Three evaluation regimes:

* |x| <= 4.5: the Maclaurin series in plain double arithmetic.  The series
  itself converges everywhere; this is the window where accumulated
  cancellation stays below ~1e-13 relative.
* 4.5 < |x| < 9: the same Maclaurin series evaluated in 40-digit arithmetic
  (mpmath) and rounded once at the end.  In this band neither the double
  series (cancellation) nor the asymptotic expansion (divergence sets in too
  early) reaches the accuracy contract on its own.
* |x| >= 9: the standard asymptotic expansions, truncated at the smallest
  term.  At this distance the optimal truncation error is below 1e-13
  relative.

Zeros of Ai on the negative axis are found by Newton's method seeded from the
asymptotic zero formula, with a guaranteed bisection fallback whenever an
iterate leaves its bracket.  Found zeros are memoized in an append-only,
lock-protected table.
"""

from __future__ import annotations

import math
import threading

import mpmath

__all__ = ["airy_ai", "airy_ai_prime", "airy_zero", "zero_table", "AiryZeroTable"]

# Ai(0) = 3^(-2/3)/Gamma(2/3), Ai'(0) = -3^(-1/3)/Gamma(1/3)
_C1 = 0.35502805388781723926
_C2 = 0.25881940379280679841

_SERIES_TERMS = 80  # well past convergence for |x| <= 9
# cancellation in c1*f - c2*g grows much faster for x > 0 (both sums track
# Bi), so the double-precision window is asymmetric
_DOUBLE_SERIES_CUT_NEG = -4.5
_DOUBLE_SERIES_CUT_POS = 2.5
_ASYMPTOTIC_CUT = 9.0
_MAX_ZERO_INDEX = 1000

_SQRT_PI = math.sqrt(math.pi)


def _series_pair(x: float) -> tuple[float, float]:
    """(Ai, Ai') from the Maclaurin series in double arithmetic."""
    if x == 0.0:
        return _C1, -_C2
    x3 = x * x * x
    a = 1.0  # coefficient of x^{3k} in f
    b = 1.0  # coefficient of x^{3k+1} in g
    p = 1.0  # x^{3k}
    q = 1.0 / x  # x^{3k-1}
    f, g = 1.0, x
    fp, gp = 0.0, 1.0
    for k in range(1, _SERIES_TERMS + 1):
        a /= (3 * k - 1) * (3 * k)
        b /= (3 * k) * (3 * k + 1)
        p *= x3
        q *= x3
        f += a * p
        g += b * p * x
        fp += 3 * k * a * q
        gp += (3 * k + 1) * b * p
    return _C1 * f - _C2 * g, _C1 * fp - _C2 * gp


_MP_DPS = 40
_mp_c1 = None
_mp_c2 = None


def _series_pair_mp(x: float) -> tuple[float, float]:
    """Same series in 40-digit arithmetic; used in the cancellation band."""
    global _mp_c1, _mp_c2
    with mpmath.workdps(_MP_DPS):
        if _mp_c1 is None:
            _mp_c1 = mpmath.mpf(3) ** mpmath.mpf("-2/3") / mpmath.gamma(mpmath.mpf("2/3"))
            _mp_c2 = mpmath.mpf(3) ** mpmath.mpf("-1/3") / mpmath.gamma(mpmath.mpf("1/3"))
        xm = mpmath.mpf(x)
        x3 = xm ** 3
        a = mpmath.mpf(1)
        b = mpmath.mpf(1)
        p = mpmath.mpf(1)
        q = 1 / xm
        f, g = mpmath.mpf(1), xm
        fp, gp = mpmath.mpf(0), mpmath.mpf(1)
        for k in range(1, 3 * _SERIES_TERMS):
            a /= (3 * k - 1) * (3 * k)
            b /= (3 * k) * (3 * k + 1)
            p *= x3
            q *= x3
            tf = a * p
            tg = b * p * xm
            f += tf
            g += tg
            fp += 3 * k * a * q
            gp += (3 * k + 1) * b * p
            if abs(tf) < mpmath.mpf("1e-45") * abs(f) and abs(tg) < mpmath.mpf("1e-45") * (abs(g) + 1):
                break
        ai = _mp_c1 * f - _mp_c2 * g
        aip = _mp_c1 * fp - _mp_c2 * gp
        return float(ai), float(aip)


def _asymptotic_coeffs(zeta: float):
    """Yield (k, u_k, v_k) until the u-terms of the 1/zeta series stop shrinking."""
    u = 1.0
    prev = math.inf
    k = 0
    while True:
        v = u * (6 * k + 1) / (1 - 6 * k) if k > 0 else 1.0
        yield k, u, v
        k += 1
        u *= (6 * k - 1) * (6 * k - 3) * (6 * k - 5) / (216.0 * k * (2 * k - 1))
        term = u / zeta ** k
        if term >= prev or k > 60:
            return
        prev = term


def _asymptotic_pos(x: float) -> tuple[float, float]:
    """(Ai, Ai') for x >= 9 from the exponentially decaying expansion."""
    zeta = (2.0 / 3.0) * x ** 1.5
    su = 0.0
    sv = 0.0
    for k, u, v in _asymptotic_coeffs(zeta):
        sign = -1.0 if k % 2 else 1.0
        su += sign * u / zeta ** k
        sv += sign * v / zeta ** k
    pre = math.exp(-zeta) / (2.0 * _SQRT_PI)
    ai = pre * su / x ** 0.25
    aip = -pre * sv * x ** 0.25
    return ai, aip


def _asymptotic_neg(x: float) -> tuple[float, float]:
    """(Ai, Ai') for x <= -9 from the oscillatory expansion."""
    t = -x
    zeta = (2.0 / 3.0) * t ** 1.5
    phi = zeta - 0.25 * math.pi
    p_even = p_odd = 0.0  # u-series split by parity
    q_even = q_odd = 0.0  # v-series split by parity
    for k, u, v in _asymptotic_coeffs(zeta):
        sign = _parity_sign(k)
        term_u = u / zeta ** k
        term_v = v / zeta ** k
        if k % 2 == 0:
            p_even += sign * term_u
            q_even += sign * term_v
        else:
            p_odd += sign * term_u
            q_odd += sign * term_v
    c, s = math.cos(phi), math.sin(phi)
    ai = (c * p_even + s * p_odd) / (_SQRT_PI * t ** 0.25)
    aip = (s * q_even - c * q_odd) * t ** 0.25 / _SQRT_PI
    return ai, aip


def _parity_sign(k: int) -> float:
    """Sign (-1)^floor(k/2) used by the oscillatory expansion."""
    return -1.0 if (k // 2) % 2 else 1.0


def _ai_pair(x: float) -> tuple[float, float]:
    if not math.isfinite(x):
        raise ValueError(f"non-finite argument to Airy evaluation: {x!r}")
    if _DOUBLE_SERIES_CUT_NEG <= x <= _DOUBLE_SERIES_CUT_POS:
        return _series_pair(x)
    if abs(x) < _ASYMPTOTIC_CUT:
        return _series_pair_mp(x)
    if x > 0:
        return _asymptotic_pos(x)
    return _asymptotic_neg(x)


def airy_ai(x: float) -> float:
    """Ai(x) for real finite x."""
    return _ai_pair(x)[0]


def airy_ai_prime(x: float) -> float:
    """Ai'(x) for real finite x."""
    return _ai_pair(x)[1]


class AiryZeroTable:
    """Append-only memo of negative-axis zeros; alpha_n satisfies Ai(-alpha_n) = 0."""

    achieved_tolerance = 1e-12

    def __init__(self):
        self._zeros: list[float] = []
        self._lock = threading.Lock()

    @property
    def zeros(self) -> tuple[float, ...]:
        return tuple(self._zeros)

    def get(self, n: int) -> float:
        if n < 0:
            raise ValueError("zero index must be non-negative")
        if n > _MAX_ZERO_INDEX:
            raise ValueError(f"zero index {n} beyond supported range (max {_MAX_ZERO_INDEX})")
        with self._lock:
            while len(self._zeros) <= n:
                self._zeros.append(_locate_zero(len(self._zeros)))
            return self._zeros[n]


def _zero_seed(n: int) -> float:
    """Asymptotic estimate of alpha_n (McMahon-style expansion)."""
    t = 3.0 * math.pi * (4 * n + 3) / 8.0
    t2 = t * t
    return t ** (2.0 / 3.0) * (1.0 + 5.0 / (48.0 * t2) - 5.0 / (36.0 * t2 * t2))


def _locate_zero(n: int) -> float:
    seed = _zero_seed(n)
    # neighbouring-zero spacing shrinks like pi/sqrt(alpha)
    half = 0.45 * math.pi / math.sqrt(seed)
    lo, hi = seed - half, seed + half
    flo, fhi = airy_ai(-lo), airy_ai(-hi)
    widen = 0
    while flo * fhi > 0.0:
        widen += 1
        if widen > 8:
            raise ArithmeticError(f"failed to bracket Airy zero {n}")
        lo -= 0.5 * half
        hi += 0.5 * half
        flo, fhi = airy_ai(-lo), airy_ai(-hi)

    x = seed
    for _ in range(80):
        f = airy_ai(-x)
        df = -airy_ai_prime(-x)
        step_ok = df != 0.0
        if step_ok:
            x_new = x - f / df
            step_ok = lo < x_new < hi
        if not step_ok:
            x_new = 0.5 * (lo + hi)  # bisection fallback
        f_new = airy_ai(-x_new)
        if f_new * flo <= 0.0:
            hi, fhi = x_new, f_new
        else:
            lo, flo = x_new, f_new
        if abs(x_new - x) < 1e-15 * x_new or f_new == 0.0:
            x = x_new
            break
        x = x_new
    return x


zero_table = AiryZeroTable()


def airy_zero(n: int) -> float:
    """The nth zero alpha_n of Ai(-alpha) = 0, alpha_0 ~ 2.3381."""
    return zero_table.get(n)
