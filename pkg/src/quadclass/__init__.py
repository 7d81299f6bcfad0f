"""Class numbers, regulators and L(1, chi) experiments for real
quadratic fields, with a particular focus on the thin family of
discriminants d = 4n^2 + 1."""

from .arith import (
    Factorization,
    SquarefreeDecomposition,
    charsum_partial,
    complete_sum_f,
    factorize,
    is_fundamental_discriminant,
    jacobsthal_check,
    kronecker,
    least_prime_factor_sieve,
    squarefree_decompose,
)
from .errors import ConsistencyError, ResourceError
from .family import (
    FamilyMember,
    construct_splitting,
    density_check,
    enumerate_family,
    extreme_search,
    statistic_sample,
)
from .forms import (
    EXTREME_REFERENCE,
    ClassNumberRecord,
    IndefiniteForm,
    class_number,
    extremal_statistic,
    narrow_class_number,
    reduce_form,
    reduced_forms,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .lfun import (
    LValueReport,
    approximation_census,
    euler_truncated,
    l_exact,
    l_report,
    tail_prime_sum,
)
from .moments import (
    MomentReport,
    b_coefficient,
    charsum_bound_census,
    comb_inequality_check,
    large_sieve_ratio,
    moment_empirical,
    prime_square_identity_check,
)
from .pell import (
    ContinuedFractionExpansion,
    FundamentalUnit,
    PellCensus,
    cf_sqrt,
    ell,
    fundamental_unit,
    pell_census,
    pell_census_aggregate,
)

__version__ = "0.1.0"
