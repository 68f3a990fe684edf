"""Identifiability of redundant active sensing arrays under reduced waveform rank."""
from .errors import BudgetExceeded, DimensionError, NoFeasibleSupport
from .geometry import (
    ARRAY_I,
    ARRAY_II,
    ArrayGeometry,
    RedundancyPattern,
    SumCoarray,
    is_contiguous,
    is_redundant,
    random_geometry,
    redundancy_pattern,
    sum_coarray,
)
from .identifiability import (
    RecoveryResult,
    Scene,
    find_ambiguous_scene,
    l0_recover,
    random_scene,
    simulate,
    uniqueness_bound,
)
from .linalg import DEFAULT_TOL, numerical_rank
from .manifold import (
    AngularGrid,
    ManifoldMatrix,
    factorization_residual,
    khatri_rao,
    manifold,
    random_grid,
    uniform_grid,
    virtual_manifold,
)
from .rank_analysis import (
    InfeasibilityCertificate,
    RedundancyLimitedCheck,
    SearchResult,
    TradeoffCurve,
    kruskal_rank,
    kruskal_rank_oracle,
    max_krank_bound,
    redundancy_limited_check,
    structural_certificate,
    tradeoff_curve,
    waveform_search,
)
from .sensing import (
    SensingMatrix,
    WaveformMatrix,
    effective_pattern,
    effective_pattern_by_columns,
    proof_waveform,
    random_waveform,
    sensing_matrix,
    waveform_rank,
)

__version__ = "0.1.0"
