"""Smoothed counts of 2x2 integer matrices with fixed characteristic polynomial x^2 - t x + r."""

from .arith import Discriminant, Factorization, divisors_in_range, factorize, is_fundamental_discriminant, kronecker
from .counting import (
    CharPolyParams,
    CountResult,
    corollary_sum,
    count_exact_box,
    count_smoothed_congruence,
    count_smoothed_direct,
    tau_smoothed,
)
from .harness import ConvergenceRow, corollary_scan, pick_params, theorem_scan
from .mainterm import GammaDecomposition, K1, M1, corollary_main_term, gamma1, hooley_residual_scan, main_term
from .qcong import RootSet, poly_roots_mod, rho, rho_partial_sum, roots_mod, sqrt_roots_prime_power
from .weights import CANONICAL, QuadratureSpec, SmoothWeight, bump_eval, integrate_1d, integrate_2d
from .weyl import WeylQuery, dfi_bound_ratio, poisson_check, weyl_averaged, weyl_single

__version__ = "0.1.0"
