"""Explicit bounds on preperiodic points of z^2 + c that are S-integral
relative to a point, over Q: exact local data, certified distance bounds,
assembled counting bounds, and a brute-force verification census."""

from .places import Place, PlaceSet, Rational, height, is_s_unit, log_abs, padic_val, rational
from .polys import (difference_poly, distinct_root_count, dynatomic,
                    generalized_dynatomic, iterate_map, orbit)
from .factorint import Factorization, factor_over_integers
from .heights import (BadPlaceBoundary, CertificationError, HeightConstants, LocalHeight,
                      canonical_height, direct_height_floor, height_constants,
                      is_preperiodic, local_height_arch, local_height_bad,
                      local_height_good)
from .arch import (CycleData, DeltaBound, HolderData, HypothesisUnverified,
                   a_b_infty_2, a_infty_1, arch_delta_bound, escape_radius,
                   find_attracting_cycle, holder_arch, hyperbolic_constants,
                   in_mandel_radius, julia_distance_lower, kosek_delta)
from .nonarch import (NonArchDelta, ResidueOrbit, attracting_delta, classify_disk,
                      delta_for_prime, indifferent_delta, r_p_constant, residue_orbit)
from .bounds import (BoundReport, EquidistInput, exact_pipeline_bound, int_bound,
                     lambert_threshold, main_bound, quant_equid_rhs,
                     truncation_constants, uniform_bound)
from .census import (CensusReport, PreperOrbit, certified_min_root_distance,
                     enumerate_preperiodic, newton_min_valuation, run_census,
                     sunit_differences, verify_delta_soundness, verify_sunit_theorem)

__version__ = "0.1.0"
