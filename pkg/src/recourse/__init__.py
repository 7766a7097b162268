"""Online graph algorithms with bounded recourse.

Three online algorithms, the adaptive adversaries that stress them, and
the offline brute-force oracles that certify their guarantees:

* shortest-path edge orientation for acyclic arrivals (in-degree <= c
  with few reorientations), plus the no-recourse greedy baseline,
* cascading all-flip orientation for arrivals of bounded arboricity,
* online bipartite b-matching via shortest augmenting paths.
"""

from .all_flip import (
    AllFlipConfig,
    AllFlipOrienter,
    PotentialDiagnostic,
    potential,
    root_away_orientation,
)
from .adversary import (
    LinearResult,
    RecordingDriver,
    SingleEdgeResult,
    SingleStepResult,
    TmHandle,
    TwoFlipResult,
    build_tm,
    linear_total_flips,
    pairing_norecourse,
    single_edge_budget,
    single_edge_budget_by_sum,
    single_edge_flips,
    single_step_log_flips,
    tm_edge_count,
    two_flip_forcer,
)
from .bmatch import (
    BMatchConfig,
    HeightAudit,
    HeightReport,
    MonotonicityResult,
    OnlineMatcher,
    check_height_monotonicity,
    run_with_audits,
    tail_bound_violations,
)
from .core import (
    NodeId,
    OrientationState,
    OrientedEdge,
    PathToUnsaturated,
    StateView,
    StepRecord,
)
from .errors import (
    AcyclicityViolationError,
    AdversaryDesyncError,
    ArboricityPromiseError,
    CapacityError,
    ContractViolationError,
    InfeasibleError,
    InternalConsistencyError,
    RecourseError,
    RejectedInputError,
)
from .oracle import OracleReport, arboricity, min_max_indegree, min_max_load
from .shortest_path import (
    FixingShortestPathOrienter,
    GreedyOrienter,
    ShortestPathOrienter,
    SpConfig,
)

__version__ = "0.1.0"
