"""Covered-subcode erasure analysis for binary linear codes.

Thin re-export of the compiled core: Reed-Muller construction, minimum
support weights, exact weight-table curves, Monte Carlo estimators, and the
report-producing checkers.
"""

from becthresh._core import (  # noqa: F401
    InputError,
    LinearCode,
    ResourceLimitError,
    bit_recoverable,
    covered_subcode,
    dr_bruteforce,
    estimate_pstar,
    estimate_theta,
    exact_fr,
    exact_integral_gap,
    exact_weight_table,
    gaussian_binomial,
    load_code,
    mc_bit_error,
    mc_fr,
    min_distance,
    rm_code,
    rm_dimension,
    rm_dr_lower_bound,
    save_code,
    transition_width,
    verify_area_bound,
    verify_bitcapacity,
    verify_bittoblock,
    verify_margulis_russo,
    verify_nu_bound,
    verify_ratiorm,
    verify_rmbounds,
    verify_rmcapacity_preconditions,
    verify_straightshot,
    verify_tz_identity,
    wei_point,
    wei_subcode,
)

__version__ = "0.1.0"
