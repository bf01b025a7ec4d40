"""Exact-arithmetic toolkit for the integrated and differentiated bv spaces."""

from .core import (
    Alternating, Base, Constant, Decoration, Family, Geometric, PowerLaw, Seq, SpaceId,
    decorate, finite, parse_seq, space, spike, truncate,
)
from .duality import DualKind, dual_member, dual_member_via_matrix, pairing_partial
from .matclass import Flavor, class_check, corollary_suite, derived, reduce_and_check
from .operators import (
    DELTA, GAMMA, IDENTITY, SIGMA, apply, compose, entry, gamma_transform, invert, parse_operator,
    row_tail_sum, sigma_transform,
)
from .spaces import ak_defect, basis_vector, expansion_coefficients, member, norm
from .verdict import Status, Verdict

__version__ = "0.1.0"
