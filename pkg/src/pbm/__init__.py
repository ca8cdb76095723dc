"""Exact solver for integer matrices with prefix-sum bounds.

The library decides whether an integer matrix exists whose horizontal and
vertical prefix sums, entries, and total sum all sit inside prescribed
intervals, and produces either such a matrix or a short certificate of
impossibility.  On top of that sit linear optimization, sign-consistent
decomposition into k bounded parts, and toolkit constructors for the
classical alternating-sign-matrix families.
"""

from .core import (
    NEG_INF,
    POS_INF,
    ExtInt,
    ExtMatrix,
    IntMatrix,
    PbmInstance,
    SubsetMask,
    fin,
    instance_from_json,
    instance_to_json,
    validate_instance,
)
from .errors import (
    BadEntries,
    BadParams,
    BoundOrderViolation,
    BoundViolation,
    BudgetExceeded,
    DimensionMismatch,
    IllegalInfinity,
    InfeasibleInput,
    InfinityClash,
    InstanceFormatError,
    InternalError,
    NotKRegular,
    PbmError,
    PrescriptionOutOfEntryBounds,
)
from .segments import HORIZONTAL, VERTICAL, Segment, SegmentStats, maximal_segments, segment_stats
from .strongpair import (
    ConditionEval,
    InequalityRecord,
    StrongPairEval,
    condition_values,
    elementary_pair,
    eval_strong_pair,
    mask_sum,
)
from .circulation import (
    Arc,
    Circulation,
    CutWitness,
    Network,
    build_network,
    circulation_from_matrix,
    cut_to_certificate,
    find_feasible_circulation,
    matrix_from_circulation,
    min_cost_circulation,
    network_to_dot,
)
from .feasibility import (
    Certificate,
    ExtremalResult,
    FeasibilityResult,
    Prescription,
    StrictCheck,
    check_condition,
    check_strict,
    extremal_total_sum,
    optimize_cost,
    solve,
    solve_with_prescription,
)
from .decompose import Decomposition, decompose, decompose_k_regular_asm, shrink_instance
from .asmkit import (
    CompatibleAsmResult,
    SPartition,
    SegmentFamilyCertificate,
    SubordinateOptResult,
    asm_instance,
    aval_sign_instance,
    brualdi_dahl_instance,
    compatible_asm,
    higher_spin_instance,
    k_regular_instance,
    make_instance,
    max_plus_ones_subordinate,
    pasm_instance,
    subordinate_asm,
    sum_majorized_instance,
    wasm_instance,
)
from .oracle import EnumerationBudget, enumerate_pbms, matrix_satisfies

__version__ = "0.1.0"
