"""Exact-arithmetic laboratory for skew pencils of linear forms.

Skew matrices of linear forms, their Pfaffians and rank-drop loci, the
apolarity pairing with dual forms, and the sheaf-cohomology dimension
bookkeeping that governs the moduli counts, all over the rationals or
a prime field, with no floating point anywhere.
"""

from .errors import (
    AlphabetMismatch,
    AmbiguousChase,
    DegenerateForm,
    DegenerateG,
    DegenerateInput,
    DegreeMismatch,
    EvenOrder,
    FormatError,
    GenericityError,
    InternalError,
    NoPointsFound,
    NotGorensteinSocle,
    NotSkew,
    OddDegree,
    OddOrder,
    RangeError,
    SingularMatrix,
    SkewlabError,
    SkewNormalizationFailure,
    SyzygyDefect,
    UsageError,
)
from .fields import GF, QQ, Field, is_prime
from .linalg import (
    IncrementalSpan,
    Matrix,
    column_space_canonical,
    complement_basis,
    det,
    inverse,
    kernel_basis,
    rank,
    rref,
    solve,
)
from .rings import (
    Alphabet,
    GradedSlice,
    HomogPoly,
    d_vars,
    dim_homog,
    format_poly,
    mono_index,
    monomials,
    parse_poly,
    poly_from_json,
    poly_to_json,
    slice_of_products,
    slices_equal,
    x_vars,
    y_vars,
)
from .apolarity import (
    apolar_pairing,
    apolar_rank,
    catalecticant_rank,
    differentiate,
    dual_socle_generator,
    hilbert_function,
    is_nondegenerate,
    mirror,
    pairing_matrix,
    partials_slice,
    perp_slice,
)
from .randomness import (
    SplitMix64,
    describe,
    random_form,
    random_nondegenerate_dual_form,
    random_nonzero_form,
    random_point,
    random_scalar_skew,
    random_skew_linear,
)
from .skew import (
    PolyMatrix,
    congruence,
    det_poly,
    evaluate_matrix,
    is_skew_matrix,
    mat_vec_poly,
    maximal_minors,
    pfaffian_poly,
    pfaffian_scalar,
    poly_matrix_from_json,
    poly_matrix_to_json,
    skew_linear,
    sub_pfaffians,
    tensor_flip,
    tensor_unflip,
)
from .correspond import (
    Certificate,
    congruence_transport,
    form_to_matrix,
    matrix_to_form,
)
from .degeneracy import (
    IncidenceResult,
    LocusProfile,
    ProjectionDatum,
    ScrollSample,
    even_scroll_sample,
    incidence_check,
    locus_profile,
    parametrization_points,
    veronese_projection,
    verify_in_image,
)
from .cohomology import (
    AffineForm,
    ChaseContext,
    ChaseResult,
    H0FResult,
    agreement,
    bott,
    chi_of,
    closed_form_tables,
    codim_rho,
    dim_gr,
    dim_h,
    dimension_ledger,
    euler_chi_o,
    euler_chi_omega,
    g_r_vector,
    grid_rows,
    h0F,
    koszul_chase,
    koszul_term_cohomology,
    kunneth,
    peel_exact_complex,
    sheaf_chase,
    slot3,
)

__version__ = "0.1.0"
