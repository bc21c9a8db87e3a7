"""Constants of the polynomial Hardy-Littlewood inequality: closed-form
bounds, certified witness ratios, numeric sup-norms and lemma checks."""

from .constants import (
    BoundReport, ConstantConfig, bh_constant_table, lower_bound_real, multilinear_hl_constant,
    polarization_bounds, theorem_hardy_bound, upper_bound_first,
)
from .multiindex import canonical_index, enumerate_exponents, exponent_of, multinomial, orbit_size
from .norms import (
    INF, McEstimate, SpaceParams, SupNormResult, coeff_norm, hl_exponent, sphere_mean_power,
    sup_norm, torus_mean_power,
)
from .polynomial import (
    HomoPoly, MultilinearView, complexify, evaluate, polar, polar_coefficient, random_polynomial,
    restrict_diagonal,
)
from .search import hl_ratio, search_lower_bound
from .verify import (
    BleiInstance, CheckReport, check_bayart, check_blei, check_complexification, check_eq888,
    check_harris,
)
from .witnesses import build_witness, witness_ratio, witness_sup_norm

__version__ = "0.1.0"
