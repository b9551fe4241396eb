"""Balanced, strongly orthogonal and well-balanced subsets of positive roots."""

from .balance import (
    DEFAULT_BUDGET,
    SignedCombination,
    SolverBudget,
    SubsetSelection,
    augment_balanced,
    augment_to_well_balanced,
    enumerate_strongly_orthogonal,
    find_zero_signing,
    is_balanced,
    is_well_balanced,
    lattice_membership_obstruction,
    max_strongly_orthogonal,
    strongly_orthogonal_pair,
    strongly_orthogonal_set,
)
from .certificates import Certificate
from .errors import (
    AlreadyWellBalanced,
    BudgetExceeded,
    DimensionMismatch,
    IdenticalRoots,
    InadmissibleRank,
    NotApplicable,
    NotARoot,
    SpecParseError,
)
from .extremal import (
    ExtremalReport,
    c5_remark_check,
    max_wellbalanced_cocardinality,
    min_balanced_cocardinality,
    thm32_value,
    thm41_value,
    verify_tables,
)
from .rootsys import DynkinLabel, RootSystem, build_root_system, positive_sum
from .verify import verify
from .witnesses import identity_sum, thm32_witness, thm41_witness

__version__ = "0.1.0"
