"""Explicit certificates for Ramanujan-type partition congruences.

The pipeline: represent the relevant partition generating function inside a
finite-dimensional eta-quotient subspace mod m^i, compute the half-integral
weight Hecke matrix at a prime ell, take the order of the associated block
matrix over Z/m^i, and emit a certificate for

    p((m^j * ell^(2uK-1) * n + 1) / 24) == 0  (mod m^i).
"""

from .arith import Modulus, Residue, inverse_mod, kronecker, multiplicative_order
from .errors import (
    CapExceeded,
    InadmissibleN,
    InsufficientPrecision,
    MatchFailure,
    MismatchWithTheorem,
    NonzeroValuation,
    NotApplicable,
    NotAUnit,
    OverflowBudget,
    PartcertError,
    RingMismatch,
    SpanViolation,
)
from .qseries import (
    Series,
    SlotSeries,
    slot_delta,
    slot_twist,
    slot_u,
    slot_v,
    u_op,
    v_op,
)
from .modforms import (
    SpaceParams,
    SrsBasis,
    delta,
    dim_Ms,
    dim_srs,
    eisenstein,
    eta,
    eta_power,
    eta_quotient_form,
    miller_basis,
    srs_basis,
    sturm_slots,
)
from .hecke import (
    HeckeMatrix,
    block_x,
    eigen_split,
    eigenvalue,
    matrix_of_t,
    order_in_gl,
    order_in_pgl,
    recursion_matrices,
    recursion_scalars,
    t_ell2,
    verify_recursion,
)
from .partition import (
    FSlotSeries,
    PartitionTable,
    admissible_ns,
    check_admissible,
    f_series,
    match_to_basis,
    partition_mod,
    spot_check_congruence,
)
from .pipeline import (
    AbWeight,
    CongruenceCertificate,
    ab_weight,
    catalog_append,
    catalog_query,
    certify,
    k5,
    period_m,
    sporadic_check,
    tables,
)

__version__ = "0.1.0"
