"""Exact tools for biquotient cohomology rings, Property (*) and bundle inverses."""

from .ring import (CohomologyRing, DegreeFourClass, DegreeTwoClass, DimensionError,
                   build_ring, multiply, square, sum_of_squares, verify_graded_iso)
from .star import (Fails, Holds, SearchBudget, StarCertificate, StarStage, StarWitness,
                   Unknown, check_star, verify_certificate, verify_witness)
from .bundles import (BettiProfile, LineBundleSum, chern_summary, inverse_decision,
                      inverse_from_finite_order, pontryagin_of_realification,
                      sufficient_conditions)
from .families import (TorusActionSpec, catalog_low_dim, complete_to_unimodular,
                       freeness_check, is_admissible, line_bundle_presentation,
                       product_with_odd_sphere, q_first_pontryagin, ra_cohomology,
                       rp_matrix, rp_ring)
from .distinguish import (bounded_iso_search, distinguish, primitive_square_pairs,
                          rp_obstruction_check, u12_claim_check)

__version__ = "0.1.0"
