"""Exact counts of 132-avoiding permutations by occurrences of 12...k.

Three independent routes compute the same numbers: exhaustive enumeration
(:mod:`perm132.permcore`), truncated continued fractions
(:mod:`perm132.cfengine` on top of :mod:`perm132.bigseries`) and Chebyshev
closed forms (:mod:`perm132.chebgf`).
"""
from .bigseries import BiSeries, eval_y_one, monomial, reciprocal_unit, y_slice
from .cfengine import cf_F, cf_G, level_exponent, omega_series, s_ladder
from .chebgf import (
    RationalGF,
    XPolynomial,
    b_poly,
    cheb_identity_residual,
    expand,
    f_closed,
    f_closed_extended,
    phi0_closed,
    r_rational,
)
from .permcore import (
    Permutation,
    brute_one132_table,
    brute_table,
    count_occurrences,
    enumerate_132_avoiding,
)

__version__ = "0.1.0"
