"""Multigraded free resolutions of monomial ideals and their star products."""

from .complexes import (BettiTable, ChainComplex, FreeModule, MonomialMatrix, betti_numbers,
                        evaluate_at_degree, h0_hilbert_at, homology_at, is_acyclic, minimalize,
                        reg_pd, scan_degrees, validate)
from .field import DenseMatrix, FieldConfig, homology_dim, rank
from .monomial import (MonomialIdeal, contains, format_ideal, gens_set, ideal_intersection,
                       ideal_product, ideal_sum, lcm_gcd, minimal_generators, parse_ideal,
                       parse_ideals, polarize, restriction_ideal)
from .star import (check_bounds, j_map, resolve_product, star_complex, star_map_left,
                   star_map_right, star_module)
from .taylor import koszul_betti, resolve, taylor_complex, upper_koszul_betti

__version__ = "0.1.0"
