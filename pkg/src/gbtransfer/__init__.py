"""Exact Groebner kernel with a mod-p transfer harness for witness sweeps."""

from .polyarith import (
    AmbientMismatch,
    BadPrime,
    Field,
    GREVLEX,
    LEX,
    MonomialOrder,
    NEG_INF,
    Polynomial,
    PolyRing,
    PrimeField,
    QQ,
    RationalField,
    format_polynomial,
    is_prime,
    parse_polynomial,
    reduce_coeffs_mod_p,
    substitute,
)
from .groebner import (
    DegreeCapExceeded,
    GroebnerBasis,
    IdealPresentation,
    buchberger,
    ideal,
    ideal_contains,
    ideal_equal,
    ideal_member,
    normal_form,
    quotient_is_zero,
    s_polynomial,
)
from .predicates import (
    ComplexityReport,
    HeightResult,
    NotContained,
    ProbeResult,
    RadicalResult,
    UnitIdeal,
    complexity,
    dimension,
    height_in_quotient,
    height_poly,
    prime_probe,
    radical_equals,
    rational_maximal,
)
from .encoding import (
    ComplexityExceeded,
    IdealCode,
    code_from_json,
    code_size,
    code_to_json,
    decode_ideal,
    encode_ideal,
    normalize_generators,
)
from .transfer import (
    BudgetExceeded,
    Caps,
    CharZeroFailure,
    DegenerateGenerator,
    DiophantineSystem,
    SweepReport,
    VerificationResult,
    Witness,
    bad_primes,
    primes_in_range,
    reduce_witness_mod_p,
    search_witness_points,
    sweep,
    system_ring,
    verify_witness,
    witness_complexity,
)

__version__ = "0.1.0"
