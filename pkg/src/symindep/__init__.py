"""Finite-scale combinatorial independence for subshifts and integer sets."""

from .errors import (
    HorizonExhaustedError,
    InputTooShortError,
    InvalidArgumentError,
    InvariantViolation,
    SizeLimitError,
    SymindepError,
    UnsupportedOperationError,
)
from .integer_sets import (
    BlockWitness,
    DensityReport,
    FamilySpec,
    SubsetWindow,
    anti_ss_sparse,
    block_witness,
    densities,
    difference_set,
    family_predicates,
    find_translate,
    fss_construct,
    ip_generate,
)
from .subshift import (
    Budget,
    CylinderSet,
    Subshift,
    SubshiftSpec,
    fibonacci,
    full_shift,
    golden_mean,
    is_minimal_window,
    is_mixing_window,
    orbit_closure,
    product,
    return_times,
    sft,
    substitution,
    thue_morse,
)
from .independence import (
    CylinderTuple,
    FeketeReport,
    IpBuilderReport,
    density_witness,
    find_independence_set,
    ip_independence_builder,
    is_independence_set,
    max_independence_within,
    realizable_patterns,
    sequence_entropy_bracket,
    single_set_independence,
)
from .avoidance import (
    AvoidanceInstance,
    Bookkeeping,
    bookkeeping,
    minimal_m_explorer,
    solve_prefix,
    verify_bounds,
    verify_word,
)
from .certificates import (
    ObstructionCertificate,
    SyndeticInput,
    build_obstruction,
    verify_certificate,
)
from .constructions import (
    KExampleParams,
    KPointRun,
    bernoulli_rs_witness,
    proximal_k_point,
    toy_k_params,
    toy_marker_params,
    verify_ie_window,
    verify_syndetic_zeros,
)

__version__ = "0.1.0"
