"""Excedance, fixed-point and cycle statistics on colored permutation groups.

The groups G(r, n) (r colors, n digits), the signed permutations B_n = G(2, n)
and the even-signed subgroup D_n, with exact brute-force generating
polynomials and element-level checks of the identities they satisfy at s = -1.
"""

from .distribution import distribution, distribution_over
from .errors import DomainError, ExclabError, ParseError, ResourceLimitError
from .perm import (
    ColoredDigit,
    ColoredPermutation,
    GroupSpec,
    Restriction,
    act,
    cycle_count,
    enumerate_elements,
    format_window,
    inverse,
    is_derangement,
    multiply,
    parse_window,
    underlying,
)
from .poly import MultiPoly, q_factorial, q_int
from .stats import (
    OrderKind,
    StatBundle,
    compare,
    csum,
    exc_A,
    exc_abs,
    exc_clr,
    exc_full,
    exc_underlying,
    fix_abs,
    stat_bundle,
)
from .theorems import Theorem, closed_form, recursion_check

__version__ = "0.1.0"
