"""Elementary divisors of skew-subspace incidence matrices over GF(q)."""

from .exact_linalg import (
    congruent_mod,
    mat_identity_residual,
    mat_mul,
    p_elementary_divisors,
    p_rank,
    rational_rank,
    smith_normal_form,
    snf_profile,
)
from .field import FieldContext, FieldElement, enumerate_elements, make_field
from .formulas import (
    corollary_pranks,
    dk_table,
    family_beta_H,
    family_Gamma,
    family_H,
    family_H_alpha,
    hamada_set,
    q_binomial,
    srg_spectrum,
    theoremA_full_profile,
    theoremB_values,
    theoremC_profile,
)
from .geometry import (
    MEET,
    SKEW,
    GeometryContext,
    IncidenceMatrix,
    Subspace,
    build_incidence,
    count_points_avoiding,
    enumerate_subspaces,
    intersection_dim,
    make_geometry,
    read_matrix,
)
from .profile import DivisorProfile

__version__ = "0.1.0"
