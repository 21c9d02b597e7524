"""Sharp constants, brute-force oracles, randomized inequality verification
and sharpness probes."""

from .constants import SharpConstants, lemma21_eval, m_function, log_arth_gap, solve_alpha
from .harness import InequalityReport, REGISTRY, verify_inequality, verify_suite
from .oracles import brute_force_extremum, cassinian_product_bound
from .probes import lambda_counterexample, sharpness_probe
