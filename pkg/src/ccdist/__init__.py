"""Discrete Cauchy-Cacoullos distributions and their characteristic functions."""

from .distributions import (CCDistribution, CCMixture, StudentDiscrete, convolve,
                            iid_sum_pmf, make_cc, make_student, student_pmf)
from .errors import DomainError, ResourceError, UnsupportedError
from .sampling import (CCSampler, ExperimentReport, ks_distance, make_rng,
                       mean_convergence_experiment, sample, sample_continuous_cauchy)
from .series import (SeriesSum, brute_force_sum, cosh_ratio, sum_inverse_power,
                     zeta_even)
from .transform import (chf, chf_series_oracle, limiting_chf, mixture_chf,
                        reduce_period, sample_mean_chf, student_chf)

__version__ = "0.1.0"
