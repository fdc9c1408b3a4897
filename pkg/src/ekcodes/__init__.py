"""Codes over pairs and s-tuples of disjoint k-subsets under the
transportation distance: exact metrics, cyclic and design-based
constructions, exact-arithmetic bounds, and verification/search tools."""

from .bounds import (
    BoundReport,
    QaryConstant,
    asymptotic_constant,
    balanced_split,
    divisibility_check,
    divisibility_levels,
    fractional_value,
    generalized_divisibility_check,
    known_value,
    packing_bound,
    upper_bound,
    upper_bound_split,
    witness_degree,
)
from .core import (
    Code,
    DegenerateParametersWarning,
    DisjointPair,
    ElementRangeError,
    KSubset,
    OverlapError,
    ParameterError,
    PartSizeError,
    QaryPairWord,
    QaryWord,
    STuple,
    canonicalize,
    code_from_json,
    code_to_json,
    enumerate_qary_words,
    enumerate_words,
    load_code,
    qary_word_count,
    save_code,
    word_count,
)
from .cyclic import (
    AntagonismReport,
    AntagonisticSearch,
    CyclicGeneratorPair,
    canonical_generator_form,
    circular_distance,
    generators_equivalent,
    is_antagonistic,
    multi_orbit_code,
    orbit_code,
    search_antagonistic,
)
from .designs import (
    BlockDesign,
    DesignVerification,
    affine_plane,
    compose_code,
    develop_difference_set,
    design_from_json,
    design_to_json,
    greedy_packing,
    load_design,
    planar_difference_set,
    save_design,
    verify_design,
    zero_sum_quadruples,
)
from .metric import (
    WitnessPair,
    pair_distance,
    qary_distance,
    qary_pair_distance,
    tuple_distance,
    witness_set,
    witness_splits,
    words_conflict,
)
from .search import (
    SearchReport,
    exact_max_code,
    exhaustive_max_code,
    greedy_code,
    min_distance_at_least,
    ratio_experiment,
    verify_code,
)

__version__ = "0.1.0"
