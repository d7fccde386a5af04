"""Finite p-group engine over prime-exponent pc presentations."""

from .presentation import (
    BudgetExceeded,
    InconsistentPresentation,
    PcPresentation,
    PresentationError,
    exps_to_word,
    word_to_exps,
)
from .quotient import Quotient, quotient_presentation
from .series import (
    DEFAULT_SCAN_BUDGET,
    SERIES_KINDS,
    agemo,
    compute_series,
    derived,
    frattini,
    frattini_rank,
    is_centric,
    lower_central_series,
    maximal_subgroups,
    omega,
    upper_central,
    upper_central_series,
)
from .subgroup import (
    Subgroup,
    SubgroupError,
    center,
    centralizer,
    class_key,
    close,
    commutator_subgroup,
    conjugacy_test,
    conjugates,
    intersection,
    join,
    normal_closure,
    normalizer,
    orbit_stabilizer,
    quotient_centralizer,
    subgroup_close,
    trivial,
    whole,
)
from .thompson import (
    ThompsonData,
    elementary_abelian_classes,
    elementary_rank,
    in_W_family,
    max_elementary_abelian,
    normal_elementary_abelian,
    thompson,
    weak_closure_W,
)
