"""Purifiability analysis for mixed quantum states.

Decides whether pairs or sets of mixed states admit a physical (CPTP)
purification map, computes distinguishability quantities and
faithfulness bounds, and constructs the channels that achieve them.
"""

from .channels import (
    KrausChannel,
    compose,
    constant_channel,
    equal_distance_pure_outputs,
    is_cptp,
    pure_pair_contraction,
    random_channel,
    tensor_with_state,
)
from .errors import (
    ConstructionError,
    DimensionMismatchError,
    InfeasibleTargetError,
    InvalidChannelError,
    InvalidInputError,
    InvalidStateError,
)
from .metrics import CanonicalAngles, alpha_beta, canonical_angles, fidelity, trace_distance, wcd
from .purification import (
    DeltaBounds,
    EssentiallyPureCertificate,
    PurifiabilityVerdict,
    SweepRow,
    VERDICT_NO,
    VERDICT_UNDETERMINED,
    VERDICT_YES,
    analyze_set,
    can_purify_perfectly,
    delta_bounds,
    essentially_pure_family,
    max_purification_overlap,
    min_dimension_demo,
    orthogonal_union_decomposition,
    purify_state,
    random_essentially_pure_pair,
    sweep_rows,
)
from .states import (
    DensityMatrix,
    Ensemble,
    PureStateVector,
    figure_example,
    is_pure,
    purity,
    random_commuting_pair,
    random_mixed,
    random_pure,
    random_unitary,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalAngles",
    "ConstructionError",
    "DeltaBounds",
    "DensityMatrix",
    "DimensionMismatchError",
    "Ensemble",
    "EssentiallyPureCertificate",
    "InfeasibleTargetError",
    "InvalidChannelError",
    "InvalidInputError",
    "InvalidStateError",
    "KrausChannel",
    "PureStateVector",
    "PurifiabilityVerdict",
    "SweepRow",
    "VERDICT_NO",
    "VERDICT_UNDETERMINED",
    "VERDICT_YES",
    "alpha_beta",
    "analyze_set",
    "can_purify_perfectly",
    "canonical_angles",
    "compose",
    "constant_channel",
    "delta_bounds",
    "equal_distance_pure_outputs",
    "essentially_pure_family",
    "fidelity",
    "figure_example",
    "is_cptp",
    "is_pure",
    "max_purification_overlap",
    "min_dimension_demo",
    "orthogonal_union_decomposition",
    "pure_pair_contraction",
    "purify_state",
    "purity",
    "random_channel",
    "random_commuting_pair",
    "random_essentially_pure_pair",
    "random_mixed",
    "random_pure",
    "random_unitary",
    "tensor_with_state",
    "trace_distance",
    "wcd",
    "__version__",
]
