"""Sums over the integer lattice.

Closed forms for ``sum_k 1/(lam^2 + k^2)^m`` and a brute-force summation
oracle whose truncation error is bracketed rigorously, so every closed form
in the package can be checked against an independent route.

Tail brackets come from integral comparison.  For a nonincreasing convex
``g`` on ``[K + 1/2, inf)``::

    int_{K+1}^inf g + g(K+1)/2  <=  sum_{k>K} g(k)  <=  int_{K+1/2}^inf g

(trapezoid rule overestimates, midpoint rule underestimates).  For cosine
series with ``t`` off the lattice ``2 pi Z`` the tail is bounded by summation
by parts, ``|sum_{k>K} g(k) cos(k t)| <= g(K+1) / |sin(t/2)|``, or by the
plain monotone bound ``int_K^inf g``, whichever is smaller.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import DomainError, ResourceError, UnsupportedError

TWO_PI = 2.0 * math.pi
MAX_TERMS = 10**8

_CHUNK = 1 << 20


@dataclass(frozen=True)
class SeriesSum:
    """A truncated lattice sum with a bracket on the omitted tail.

    ``value`` is the partial sum over ``|k| <= terms_used``.  The tail lies
    in ``[tail_lo, tail_hi]``; for a positive series both ends are positive,
    for an oscillating one the bracket is symmetric about zero.
    """

    value: float
    tail_lo: float
    tail_hi: float
    terms_used: int

    @property
    def lower(self):
        return self.value + self.tail_lo

    @property
    def upper(self):
        return self.value + self.tail_hi

    @property
    def estimate(self):
        """Midpoint of the bracket; within ``radius`` of the true sum."""
        return self.value + 0.5 * (self.tail_lo + self.tail_hi)

    @property
    def radius(self):
        return 0.5 * (self.tail_hi - self.tail_lo)

    @property
    def width(self):
        return self.tail_hi - self.tail_lo


def _check_finite(*xs):
    for x in xs:
        if not math.isfinite(x):
            raise DomainError(f"non-finite argument: {x!r}")


def cosh_ratio(a, b):
    """cosh(a) / cosh(b), evaluated without overflow.

    Both hyperbolics are written as ``e^{|x|} (1 + e^{-2|x|}) / 2`` and the
    leading exponentials are cancelled before anything is exponentiated.
    """
    _check_finite(a, b)
    if b < 0:
        raise DomainError("cosh_ratio expects b >= 0")
    a = abs(a)
    return math.exp(a - b) * (1.0 + math.exp(-2.0 * a)) / (1.0 + math.exp(-2.0 * b))


def coth(x):
    return 1.0 / math.tanh(x)


def csch_sq(x):
    """1/sinh(x)^2 for x > 0, underflowing gracefully for large x."""
    e = math.exp(-x)
    return 4.0 * e * e / math.expm1(-2.0 * x) ** 2


def _check_scale(lam):
    _check_finite(lam)
    if lam <= 0:
        raise DomainError(f"scale must be positive, got {lam!r}")


def sum_inverse_power(lam, m=1):
    """Closed form of ``sum_{k in Z} 1/(lam^2 + k^2)^m`` for m in {1, 2}.

    m = 1 is ``pi coth(pi lam) / lam``.  m = 2 follows by differentiating the
    m = 1 identity in ``mu = lam^2`` (see docs/derivations.md).
    """
    _check_scale(lam)
    x = math.pi * lam
    if m == 1:
        return math.pi * coth(x) / lam
    if m == 2:
        return (math.pi * coth(x) / (2.0 * lam**3)
                + math.pi**2 * csch_sq(x) / (2.0 * lam**2))
    raise UnsupportedError(f"no closed form for m={m}; use brute_force_sum")


def tail_integral(lam, m, a):
    """``int_a^inf (lam^2 + x^2)^(-m) dx`` for a >= 0."""
    if m == 1:
        if a == 0:
            return 0.5 * math.pi / lam
        return math.atan(lam / a) / lam
    # x = lam * sqrt(1/u - 1) turns this into an incomplete beta integral
    u = lam * lam / (lam * lam + a * a)
    return (0.5 * lam ** (1 - 2 * m) * special.beta(m - 0.5, 0.5)
            * special.betainc(m - 0.5, 0.5, u))


def _term(lam, m, x):
    return (lam * lam + x * x) ** (-m)


def magnitude(lam, m):
    """Upper bound on ``sum_k |cos(kt)| / (lam^2 + k^2)^m``."""
    return _term(lam, m, 0.0) + 2.0 * tail_integral(lam, m, 0.0)


def rounding_floor(lam, m):
    """Bracket widths below this are swamped by summation rounding."""
    return 16.0 * np.finfo(np.float64).eps * magnitude(lam, m)


def _positive_tail(lam, m, K):
    """Two-sided bracket (both signs of k) on sum_{|k|>K} g(k)."""
    g = _term(lam, m, K + 1.0)
    upper = tail_integral(lam, m, K + 0.5)
    lower = tail_integral(lam, m, K + 1.0) + 0.5 * g
    return 2.0 * lower, 2.0 * upper


def _oscillating_tail(lam, m, K, s):
    """Half-width of the symmetric bracket on sum_{|k|>K} g(k) cos(k t)."""
    return 2.0 * min(_term(lam, m, K + 1.0) / s, tail_integral(lam, m, K))


def _smallest(width, k_min, tol):
    """Smallest integer K >= k_min with width(K) <= tol, width nonincreasing."""
    if width(k_min) <= tol:
        return k_min
    lo, hi = k_min, max(2 * k_min, 1)
    while width(hi) > tol:
        lo, hi = hi, 2 * hi
        if hi > 4 * MAX_TERMS:
            return hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if width(mid) <= tol:
            hi = mid
        else:
            lo = mid
    return hi


def _partial_sum(lam, m, t, K):
    parts = [_term(lam, m, 0.0)]
    for start in range(1, K + 1, _CHUNK):
        k = np.arange(start, min(K, start + _CHUNK - 1) + 1, dtype=np.float64)
        terms = (lam * lam + k * k) ** (-m)
        if t != 0.0:
            terms *= np.cos(k * t)
        parts.append(2.0 * float(terms.sum()))
    return math.fsum(parts)


def brute_force_sum(lam, m=1, t=0.0, tol=1e-10):
    """Sum ``sum_{k in Z} cos(k t) / (lam^2 + k^2)^m`` term by term.

    Stops at the smallest symmetric cutoff K whose tail bracket has width at
    most ``tol``.  Raises ResourceError if that needs more than MAX_TERMS.
    """
    _check_scale(lam)
    _check_finite(t, tol)
    if m < 1 or int(m) != m:
        raise DomainError(f"power index must be a positive integer, got {m!r}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    m = int(m)
    floor = rounding_floor(lam, m)
    if tol < floor:
        raise ResourceError(f"tol={tol:g} is below the rounding floor", achievable=floor)
    r = math.fmod(t, TWO_PI)
    if r < 0:
        r += TWO_PI
    if r == TWO_PI:
        r = 0.0

    if r == 0.0:
        # convexity of g needed from K + 1/2 onward
        k_min = max(0, math.ceil(lam / math.sqrt(2 * m + 1)))

        def width(K):
            lo, hi = _positive_tail(lam, m, K)
            return hi - lo
    else:
        s = abs(math.sin(0.5 * r))
        k_min = 0

        def width(K):
            return 2.0 * _oscillating_tail(lam, m, K, s)

    K = _smallest(width, k_min, tol)
    if K > MAX_TERMS:
        raise ResourceError(
            f"tol={tol:g} needs more than {MAX_TERMS} terms",
            achievable=width(MAX_TERMS))

    value = _partial_sum(lam, m, r, K)
    if r == 0.0:
        lo, hi = _positive_tail(lam, m, K)
    else:
        hi = _oscillating_tail(lam, m, K, s)
        lo = -hi
    return SeriesSum(value, lo, hi, K)


def direct_zeta(n, tol=1e-12):
    """``zeta(2n)`` by direct summation with a convexity tail bracket."""
    p = 2 * n
    if n < 1:
        raise DomainError("n must be >= 1")

    def width(K):
        return (K + 0.5) ** (1 - p) / (p - 1) - (K + 1.0) ** (1 - p) / (p - 1) \
            - 0.5 * (K + 1.0) ** (-p)

    K = _smallest(width, 1, tol)
    if K > MAX_TERMS:
        raise ResourceError(f"tol={tol:g} needs more than {MAX_TERMS} terms",
                            achievable=width(MAX_TERMS))
    parts = []
    for start in range(1, K + 1, _CHUNK):
        k = np.arange(start, min(K, start + _CHUNK - 1) + 1, dtype=np.float64)
        parts.append(float((k ** -p).sum()))
    lo = (K + 1.0) ** (1 - p) / (p - 1) + 0.5 * (K + 1.0) ** (-p)
    hi = (K + 0.5) ** (1 - p) / (p - 1)
    return SeriesSum(math.fsum(parts), lo, hi, K)


# scales for the lam -> 0 extrapolation; the smallest one bounds the
# cancellation error in S(lam) - lam^(-2n)
_ZETA_SCALES = (0.4, 0.3, 0.2, 0.1, 0.05, 0.025)


def _neville_at_zero(xs, ys):
    p = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - j):
            p[i] = (xs[i + j] * p[i] - xs[i] * p[i + 1]) / (xs[i + j] - xs[i])
    return p[0]


def zeta_even(n):
    """zeta(2n) for n in {1, 2} as the lam -> 0 limit of the one-sided sum.

    ``h(lam) = (S_n(lam) - lam^(-2n)) / 2`` is analytic in ``mu = lam^2`` near
    0, so polynomial extrapolation in mu to mu = 0 converges quickly.
    """
    if n not in (1, 2):
        raise UnsupportedError("zeta_even supports n in {1, 2}")
    mus, hs = [], []
    for lam in _ZETA_SCALES:
        mus.append(lam * lam)
        hs.append(0.5 * (sum_inverse_power(lam, n) - lam ** (-2 * n)))
    return _neville_at_zero(mus, hs)
