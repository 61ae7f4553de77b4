"""Parity-encoded fault-tolerance toolkit.

Thin Python face over the C++ core: cascade success probabilities, first-level
encoded error rates, Monte-Carlo simulation of the teleported correction
round, Bell-pair resource accounting, the state-level oracle suite, and an
in-process entry point to the command-line driver.
"""

from ._core import (
    level1_rates,
    optimal_code_size,
    oracle_verify,
    parity_state_cost,
    run_cli,
    rxx_cost,
    simulate,
    telecorrector_cost,
    walk_success,
    walk_success_mc,
    xx90_expected_bells,
    z90_cost,
)

__all__ = [
    "level1_rates",
    "optimal_code_size",
    "oracle_verify",
    "parity_state_cost",
    "run_cli",
    "rxx_cost",
    "simulate",
    "telecorrector_cost",
    "walk_success",
    "walk_success_mc",
    "xx90_expected_bells",
    "z90_cost",
]
