"""Cauchy-Cacoullos distributions on the integers.

``f_lam(k) = tanh(lam pi) / pi * lam / (lam^2 + k^2)``, with ``lam = 0`` the
point mass at zero.  Also the Student-type laws ``c / (lam^2 + k^2)^m`` for
odd degrees of freedom ``nu = 2m - 1`` and the two-component mixture that the
sum of two independent CC variables reduces to.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ResourceError, UnsupportedError
from .series import MAX_TERMS, brute_force_sum, magnitude, sum_inverse_power

STUDENT_NU = (1, 3, 5, 7)

_CDF_TOL = 1e-9


def _is_scalar(k):
    return np.ndim(k) == 0


@dataclass(frozen=True)
class CCDistribution:
    lam: float
    alpha: float  # cosh(lam pi); inf once it overflows
    tanh_lpi: float
    norm: float  # tanh(lam pi) lam / pi

    @property
    def degenerate(self):
        return self.lam == 0.0

    def pmf(self, k):
        if self.degenerate:
            if _is_scalar(k):
                return 1.0 if k == 0 else 0.0
            return np.where(np.asarray(k) == 0, 1.0, 0.0)
        if _is_scalar(k):
            k = float(k)
            return self.norm / (self.lam * self.lam + k * k)
        k = np.asarray(k, dtype=np.float64)
        return self.norm / (self.lam * self.lam + k * k)

    def logpmf(self, k):
        with np.errstate(divide="ignore"):
            return np.log(self.pmf(k))

    def upper_tail(self, n, tol=_CDF_TOL):
        """Bracket ``(lo, hi)`` on P(X >= n) for an integer n >= 1."""
        lam, c = self.lam, self.norm / self.lam
        if n < 1:
            raise DomainError("upper_tail expects n >= 1")

        def F(a):  # c * int_a^inf lam / (lam^2 + x^2) dx
            return c * math.atan(lam / a)

        def f(x):
            return self.norm / (lam * lam + x * x)

        def width(N):
            return F(N - 0.5) - F(N) - 0.5 * f(N)

        # f is convex beyond lam / sqrt(3); the bracket needs N - 1/2 past it
        N = max(int(n), math.ceil(lam / math.sqrt(3.0) + 0.5))
        if width(N) > tol:
            lo, hi = N, 2 * N
            while width(hi) > tol:
                lo, hi = hi, 2 * hi
                if hi - n > 4 * MAX_TERMS:
                    break
            while hi - lo > 1:
                mid = (lo + hi) // 2
                if width(mid) <= tol:
                    hi = mid
                else:
                    lo = mid
            N = hi
        if N - n > MAX_TERMS:
            raise ResourceError(f"cdf tol={tol:g} needs more than {MAX_TERMS} terms",
                                achievable=width(n + MAX_TERMS))
        partial = 0.0
        if N > n:
            j = np.arange(n, N, dtype=np.float64)
            partial = math.fsum(self.norm / (lam * lam + j * j))
        return partial + F(N) + 0.5 * f(N), partial + F(N - 0.5)

    def cdf(self, k, tol=_CDF_TOL):
        """Bracket ``(lo, hi)`` on P(X <= k) with ``hi - lo <= tol``."""
        if tol <= 0:
            raise DomainError("tol must be positive")
        k = int(k)
        if self.degenerate:
            v = 1.0 if k >= 0 else 0.0
            return v, v
        if k < 0:
            lo, hi = self.upper_tail(-k, tol)
        else:
            t_lo, t_hi = self.upper_tail(k + 1, tol)
            lo, hi = 1.0 - t_hi, 1.0 - t_lo
        return max(0.0, lo), min(1.0, hi)

    def _at_least(self, k, u):
        tol = 1e-6
        while True:
            lo, hi = self.cdf(k, tol)
            if lo >= u:
                return True
            if hi < u:
                return False
            if tol < 1e-16:
                return 0.5 * (lo + hi) >= u
            tol *= 1e-3

    def quantile(self, u):
        """Smallest integer k with P(X <= k) >= u."""
        if not 0.0 < u < 1.0:
            raise DomainError(f"quantile level must lie in (0, 1), got {u!r}")
        if self.degenerate:
            return 0
        # P(|X| > K) <= 2 c arctan(lam / K) < min(u, 1 - u)
        target = min(u, 1.0 - u)
        c = self.norm / self.lam
        angle = 0.5 * target / c
        if angle >= 0.5 * math.pi:
            K = 1
        else:
            K = max(1, math.floor(self.lam / math.tan(angle)) + 1)
        lo, hi = -K - 1, K  # cdf(lo) < u <= cdf(hi)
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._at_least(mid, u):
                hi = mid
            else:
                lo = mid
        return hi


def make_cc(lam):
    lam = float(lam)
    if not math.isfinite(lam) or lam < 0:
        raise DomainError(f"scale must be finite and >= 0, got {lam!r}")
    x = math.pi * lam
    alpha = math.cosh(x) if x < 710.0 else math.inf
    t = math.tanh(x)
    return CCDistribution(lam, alpha, t, t * lam / math.pi)


@dataclass(frozen=True)
class StudentDiscrete:
    """Discrete Student-type law ``c / (lam^2 + k^2)^((nu + 1) / 2)``.

    nu = 1 and 3 use closed-form normalizers; 5 and 7 are normalized by the
    brute-force series.
    """

    nu: int
    lam: float
    c: float

    @property
    def power(self):
        return (self.nu + 1) // 2

    def pmf(self, k):
        if self.nu == 1:
            return make_cc(self.lam).pmf(k)
        if _is_scalar(k):
            k = float(k)
        else:
            k = np.asarray(k, dtype=np.float64)
        return self.c / (self.lam * self.lam + k * k) ** self.power


def make_student(nu, lam):
    if nu not in STUDENT_NU:
        raise UnsupportedError(f"nu must be one of {STUDENT_NU}, got {nu!r}")
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0:
        raise DomainError(f"scale must be finite and positive, got {lam!r}")
    m = (nu + 1) // 2
    if nu == 1:
        c = make_cc(lam).norm
    elif nu == 3:
        c = 1.0 / sum_inverse_power(lam, 2)
    else:
        s = brute_force_sum(lam, m, 0.0, 1e-12 * magnitude(lam, m))
        c = 1.0 / s.estimate
    return StudentDiscrete(nu, lam, c)


def student_pmf(s, k):
    return s.pmf(k)


@dataclass(frozen=True)
class CCMixture:
    components: tuple  # ((weight, CCDistribution), ...)

    @property
    def weights(self):
        return tuple(w for w, _ in self.components)

    @property
    def scales(self):
        return tuple(d.lam for _, d in self.components)

    def pmf(self, k):
        return sum(w * d.pmf(k) for w, d in self.components)


def _mixture_weights(l1, l2):
    """Weights of the sum and difference members, free of overflow."""
    a, b = math.pi * l1, math.pi * l2
    den = (1.0 + math.exp(-2.0 * a)) * (1.0 + math.exp(-2.0 * b))
    p = (1.0 + math.exp(-2.0 * (a + b))) / den
    q = math.exp(-2.0 * min(a, b)) * (1.0 + math.exp(-2.0 * abs(a - b))) / den
    return p, q


def convolve(d1, d2):
    """Law of X + Y for independent X ~ d1, Y ~ d2, as a CC mixture."""
    if d1.degenerate:
        return CCMixture(((1.0, d2),))
    if d2.degenerate:
        return CCMixture(((1.0, d1),))
    p, q = _mixture_weights(d1.lam, d2.lam)
    if q == 0.0:  # underflow once min(lam1, lam2) exceeds ~118
        return CCMixture(((1.0, make_cc(d1.lam + d2.lam)),))
    return CCMixture(((p, make_cc(d1.lam + d2.lam)),
                      (q, make_cc(abs(d2.lam - d1.lam)))))


def iid_sum_pmf(lam, k):
    """P(X + Y = k) for X, Y independent with the same scale lam > 0."""
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0:
        raise DomainError(f"scale must be finite and positive, got {lam!r}")
    x = math.pi * lam
    t = math.tanh(x)
    if k == 0:
        sech = 2.0 * math.exp(-x) / (1.0 + math.exp(-2.0 * x))
        return 0.5 * sech * sech + t / (2.0 * x)
    k = float(k)
    return t / math.pi * 2.0 * lam / (4.0 * lam * lam + k * k)
