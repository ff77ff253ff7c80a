"""Characteristic functions of CC and discrete Student-type laws.

Every law here lives on the integers, so its chf has period 2 pi.  The
argument is reduced to ``[0, 2 pi)`` before any transcendental is called;
the reduced point then enters only through its distance to the lattice
``2 pi Z``, which keeps the closed forms accurate near the kinks.
"""

import math

import numpy as np

from .distributions import CCDistribution, make_cc
from .errors import DomainError, UnsupportedError
from .series import TWO_PI, brute_force_sum, coth


def reduce_period(t):
    """``t mod 2 pi`` in ``[0, 2 pi)`` with floor semantics for negative t.

    ``fmod`` is exact, so whenever ``t + 2 pi j`` is representable the two
    arguments reduce to the same float.
    """
    scalar = np.ndim(t) == 0
    t = np.asarray(t, dtype=np.float64)
    if not np.all(np.isfinite(t)):
        raise DomainError("reduce_period needs finite arguments")
    r = np.fmod(t, TWO_PI)
    r = np.where(r < 0.0, r + TWO_PI, r)
    r = np.where(r >= TWO_PI, 0.0, r) + 0.0
    return float(r) if scalar else r


def lattice_distance(t):
    """Distance from t to the nearest point of 2 pi Z, in [0, pi]."""
    # reducing |t| keeps the distance even and exact for small negative t
    r = reduce_period(np.abs(t))
    return np.minimum(r, TWO_PI - r)


def _out(x, scalar):
    return float(x) if scalar else x


def chf(d, t):
    """chf of a CC law: ``cosh(lam (t' - pi)) / cosh(lam pi)``, t' = t mod 2 pi."""
    scalar = np.ndim(t) == 0
    if d.degenerate:
        return 1.0 if scalar else np.ones(np.shape(t))
    lam = d.lam
    dist = lattice_distance(t)
    # cosh(lam (pi - dist)) / cosh(lam pi) with e^{lam pi} cancelled
    v = np.exp(-lam * dist) * (1.0 + np.exp(-2.0 * lam * (math.pi - dist))) \
        / (1.0 + math.exp(-2.0 * lam * math.pi))
    return _out(np.minimum(v, 1.0), scalar)  # rounding can overshoot for tiny lam


def log_chf(d, t):
    scalar = np.ndim(t) == 0
    if d.degenerate:
        return 0.0 if scalar else np.zeros(np.shape(t))
    lam = d.lam
    dist = lattice_distance(t)
    v = -lam * dist + np.log1p(np.exp(-2.0 * lam * (math.pi - dist))) \
        - math.log1p(math.exp(-2.0 * lam * math.pi))
    return _out(np.minimum(v, 0.0), scalar)


def mixture_chf(mix, t):
    return sum(w * chf(d, t) for w, d in mix.components)


def chf_series_bracket(lam, m, t, tol=1e-9):
    """Normalized cosine series and the half-width of its bracket.

    Both sums come from :func:`brute_force_sum`; the ratio bracket is
    propagated by interval division and has full width at most ``tol``.
    """
    if lam <= 0 or tol <= 0:
        raise DomainError("chf_series_bracket needs lam > 0 and tol > 0")
    r = reduce_period(t)
    if r == 0.0:
        return 1.0, 0.0
    # both sums have |error| <= eps; the denominator is at least lam^(-2m)
    eps = tol * lam ** (-2 * m) / 3.0
    while True:
        den = brute_force_sum(lam, m, 0.0, eps)
        num = brute_force_sum(lam, m, r, eps)
        cands = [num.lower / den.lower, num.lower / den.upper,
                 num.upper / den.lower, num.upper / den.upper]
        lo, hi = min(cands), max(cands)
        if hi - lo <= tol:
            return 0.5 * (lo + hi), 0.5 * (hi - lo)
        eps *= 0.25


def chf_series_oracle(lam, m, t, tol=1e-9):
    return chf_series_bracket(lam, m, t, tol)[0]


def _student3_chf(lam, t):
    # closed form of sum cos(kt)/(mu+k^2)^2 over sum 1/(mu+k^2)^2, both scaled
    # by 2 lam^2 sinh(lam pi) / (pi cosh(lam pi)); s = t' - pi in [-pi, pi]
    s = reduce_period(t) - math.pi
    x = math.pi * lam
    a = np.abs(lam * s)
    shift = np.exp(a - x) / (1.0 + math.exp(-2.0 * x))
    rc = shift * (1.0 + np.exp(-2.0 * a))
    rs = np.sign(s) * shift * -np.expm1(-2.0 * a)
    num = rc * (1.0 / lam + math.pi * coth(x)) - s * rs
    den = 1.0 / lam + 2.0 * math.pi * _csch(2.0 * x)
    return num / den


def _csch(x):
    e = math.exp(-x)
    return -2.0 * e / math.expm1(-2.0 * x)


def student_chf(s, t, tol=1e-8):
    """chf of a discrete Student-type law.

    nu = 1 is the CC chf, nu = 3 a closed form, nu in {5, 7} the series
    oracle.
    """
    scalar = np.ndim(t) == 0
    if s.nu == 1:
        return chf(make_cc(s.lam), t)
    if s.nu == 3:
        return _out(_student3_chf(s.lam, t), scalar)
    if s.nu in (5, 7):
        if scalar:
            return chf_series_oracle(s.lam, s.power, t, tol)
        return np.array([chf_series_oracle(s.lam, s.power, x, tol)
                         for x in np.ravel(t)]).reshape(np.shape(t))
    raise UnsupportedError(f"no chf for nu={s.nu}")


def sample_mean_chf(lam, n, t):
    """chf of the mean of n iid CC(lam) variables, ``chf(t/n)^n``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    scalar = np.ndim(t) == 0
    d = lam if isinstance(lam, CCDistribution) else make_cc(lam)
    v = np.exp(n * log_chf(d, np.asarray(t, dtype=np.float64) / n))
    return _out(v, scalar)


def limiting_scale(lam):
    """Cauchy scale of the limit of CC(lam) sample means, ``lam tanh(lam pi)``.

    Equals tanh(pi) at lam = 1; other scales come from the one-sided slope of
    the chf at 0+.
    """
    return lam * math.tanh(math.pi * lam)


def limiting_chf(lam, t):
    if lam <= 0:
        raise DomainError("lam must be positive")
    scalar = np.ndim(t) == 0
    v = np.exp(-np.abs(np.asarray(t, dtype=np.float64)) * limiting_scale(lam))
    return _out(v, scalar)
