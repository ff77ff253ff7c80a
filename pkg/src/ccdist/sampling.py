"""Random variates, goodness-of-fit utilities and the sample-mean experiment.

CC variates are drawn by rejection from a rounded continuous Cauchy with the
same scale.  The proposal puts mass ``q(k) = arctan(lam / (lam^2 + k^2 - 1/4))
/ pi`` on k != 0 and ``2 arctan(1 / (2 lam)) / pi`` on 0.  With
``x = lam / (lam^2 + k^2 - 1/4)`` the target-to-proposal ratio obeys::

    f(k) / q(k) = tanh(lam pi) lam / ((lam^2 + k^2) arctan x)
                <= tanh(lam pi) x / arctan x <= tanh(lam pi) / (1 - x^2 / 3)

and ``x`` falls with |k|, so a finite scan plus this bound caps the ratio.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import CCDistribution, make_cc
from .errors import DomainError
from .transform import limiting_scale

MAX_TRIALS = 10**6

_ENVELOPE_SCAN = 10_000


def make_rng(seed, index=None):
    """Generator for ``seed``; ``index`` selects an independent substream."""
    if index is None:
        return np.random.default_rng(np.random.SeedSequence(seed))
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def proposal_mass(lam, k):
    """P(round(Y) = k) for Y continuous Cauchy with scale lam."""
    k = np.abs(np.asarray(k, dtype=np.float64))
    with np.errstate(divide="ignore"):
        off = np.arctan(lam / (lam * lam + k * k - 0.25)) / math.pi
    centre = 2.0 * math.atan(0.5 / lam) / math.pi
    return np.where(k == 0, centre, off)


def _ratio(d, k):
    return d.pmf(k) / proposal_mass(d.lam, k)


def envelope_constant(d, scan=_ENVELOPE_SCAN):
    k0 = max(scan, math.ceil(10 * d.lam))
    peak = float(np.max(_ratio(d, np.arange(0, k0 + 1))))
    x = d.lam / (d.lam * d.lam + (k0 + 1.0) ** 2 - 0.25)
    tail = d.tanh_lpi / (1.0 - x * x / 3.0)
    return max(peak, tail) * (1.0 + 1e-9)


def sample_continuous_cauchy(scale, rng, size=None):
    """``scale * tan(pi (U - 1/2))`` with U in {0, 1/2} redrawn."""
    if not scale > 0:
        raise DomainError("scale must be positive")
    n = 1 if size is None else int(size)
    u = rng.random(n)
    bad = (u == 0.0) | (u == 0.5)
    while bad.any():
        u[bad] = rng.random(int(bad.sum()))
        bad = (u == 0.0) | (u == 0.5)
    x = scale * np.tan(math.pi * (u - 0.5))
    return float(x[0]) if size is None else x


class CCSampler:
    """Exact rejection sampler for one CC law."""

    def __init__(self, d):
        if not isinstance(d, CCDistribution):
            d = make_cc(d)
        if d.degenerate:
            raise DomainError("sampling needs lam > 0")
        self.dist = d
        self.envelope = envelope_constant(d)

    def draw(self, rng, size):
        out = np.empty(size, dtype=np.int64)
        filled = trials = 0
        while filled < size:
            want = size - filled
            batch = int(want * self.envelope * 1.1) + 16
            y = sample_continuous_cauchy(self.dist.lam, rng, batch)
            k = np.floor(y + 0.5)
            v = rng.random(batch)
            keep = k[v * self.envelope < _ratio(self.dist, k)][:want]
            if np.any(np.abs(keep) >= 2.0**63):
                raise OverflowError("variate outside int64 range")
            out[filled:filled + keep.size] = keep
            filled += keep.size
            trials += batch
            if trials > MAX_TRIALS * max(size, 1):
                raise RuntimeError("rejection sampler stalled; envelope is wrong")
        return out


def sample(d, rng, size=None):
    """Integer variate(s) from CC(d.lam)."""
    x = CCSampler(d).draw(rng, 1 if size is None else size)
    return int(x[0]) if size is None else x


def ks_distance(samples, cdf):
    """Two-sided sup distance between the empirical CDF and ``cdf``."""
    x = np.sort(np.asarray(samples, dtype=np.float64))
    n = x.size
    if n == 0:
        raise DomainError("ks_distance needs at least one sample")
    F = np.asarray(cdf(x), dtype=np.float64)
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - F), np.max(F - (i - 1) / n)))


def ks_critical(n):
    """Asymptotic 5% critical value of the one-sample KS statistic."""
    return 1.36 / math.sqrt(n)


def cauchy_cdf(scale):
    return lambda x: 0.5 + np.arctan(np.asarray(x) / scale) / math.pi


@dataclass(frozen=True)
class ExperimentReport:
    lam: float
    n: int
    replications: int
    seed: int
    ks_distance: float
    ks_critical: float
    scale_used: float
    passed: bool


def thread_cap():
    """Worker threads allowed by CC_DIST_THREADS; 0 or unset is sequential."""
    raw = os.environ.get("CC_DIST_THREADS", "0")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def sample_means(lam, n, replications, seed, threads=None):
    """Sample means of n CC(lam) draws, one substream per replication."""
    sampler = CCSampler(lam)

    def one(i):
        return sampler.draw(make_rng(seed, i), n).sum(dtype=np.float64) / n

    threads = thread_cap() if threads is None else threads
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            means = list(pool.map(one, range(replications)))
    else:
        means = [one(i) for i in range(replications)]
    return np.array(means)


def mean_convergence_experiment(lam, n, replications, seed, threads=None):
    """KS distance of CC(lam) sample means to the Cauchy(lam tanh(lam pi)) law."""
    if n < 1:
        raise DomainError("n must be >= 1")
    if replications < 100:
        raise DomainError("need at least 100 replications")
    means = sample_means(lam, n, replications, seed, threads)
    scale = limiting_scale(lam)
    dist = ks_distance(means, cauchy_cdf(scale))
    crit = ks_critical(replications)
    return ExperimentReport(float(lam), int(n), int(replications), int(seed),
                            dist, crit, scale, dist <= crit)
