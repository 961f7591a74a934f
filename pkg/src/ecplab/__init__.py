"""Exact finite-field coding theory: GRS codes, error-correcting pairs and
Schur-product bounds."""

from .gf import GF, FieldElement, FieldSpec, field_extend, field_from_modulus, field_make
from .code import (DistanceBudgetExceeded, LinearCode, contains, dual, equals, extend_scalars,
                   is_mds, is_nondegenerate, min_distance, puncture, schur_product, shorten,
                   stabilizer, star)
from .grs import (INF, CauchySpec, GrsSpec, Moebius, bracket, cauchy_generator, cauchy_to_grs,
                  descend_field, dual_spec, grs_generator, grs_to_cauchy, moebius_apply,
                  moebius_three_points, recognize_grs, spec_transform, theta, trivial_grs)
from .ecp import (Decoded, DecodingFailure, EcpDecoder, EcpPair, build_c_from_pair,
                  build_ecp_for_grs, ecp_decode, ecp_uniqueness_check, search_ecp, verify_ecp)
from .pmds import kneser_slack, pmds_consequences, product_singleton_gap, second_proof_check

__version__ = "0.1.0"
