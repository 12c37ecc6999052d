"""Exact tools for automorphism groups of low-dimensional real Lie algebras."""

from .linalg import (
    DEFAULT_TOL,
    Matrix,
    det,
    format_matrix,
    matexp,
    matmul,
    nullspace,
    parse_matrix,
    rat,
    rref,
)
from .algebra import (
    LieAlgebra,
    StructureTensor,
    Subspace,
    ad_matrix,
    bracket,
    center,
    change_basis,
    check_jacobi,
    derived_series,
    derived_subalgebra,
    killing_form,
    lower_central_series,
    new_lie_algebra,
    span,
    subalgebra_on,
    upper_central_series,
)
from .notation import (
    BlockPattern,
    ExplicitGen,
    MatrixFamily,
    OuterDer,
    SignMask,
    SignedPermutation,
    parse_block_pattern,
    parse_discrete,
    parse_weyl,
)
from .automorphisms import (
    AutDescriptor,
    ClosureCapExceeded,
    ReconstructionChoice,
    group_closure,
    inner_one_param,
    is_automorphism,
    is_derivation,
    is_inner_derivation,
    necessary_conditions,
    reconstruct,
    sign_mask,
    signed_permutation,
    trace_vector,
)
from .sums import (
    SumAutDescriptor,
    SumStructure,
    ZetaSpace,
    direct_sum,
    identification,
    is_isomorphism,
    sum_descriptor,
    synthesize,
    zeta_space,
)
from .decomposition import (
    Decomposition,
    MatchReport,
    decompose,
    decomposition_from_components,
    fitting_split,
    is_normal,
    krull_schmidt_match,
    normal_endomorphisms,
    validate_decomposition,
)
from .catalog import (
    CatalogEntry,
    descriptor,
    draw_sample,
    entries,
    instantiate,
    list_entries,
    lookup,
    sample_automorphism,
    verify_catalog,
)
from .serialize import (
    load_algebra,
    load_bundle,
    load_catalog,
    load_descriptor,
    load_matrix,
    save_algebra,
    save_bundle,
    save_catalog,
    save_descriptor,
    save_matrix,
)

__version__ = "0.1.0"
