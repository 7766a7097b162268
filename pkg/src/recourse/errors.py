"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: rejected input -> 1, bound
verification failure -> 2, infeasibility and contract errors -> 3.
"""


class RecourseError(Exception):
    """Base class for all library errors."""


class RejectedInputError(RecourseError):
    """Malformed input: self-loops, empty neighbor sets, bad parameters."""


class AcyclicityViolationError(RejectedInputError):
    """An edge arrival closed a cycle where the algorithm requires forests."""


class ContractViolationError(RecourseError):
    """A caller violated an operation's precondition (e.g. a head that is
    not an endpoint, or a reference orientation that is not valid)."""


class InternalConsistencyError(RecourseError):
    """State drifted from what an operation assumed (e.g. a stale path
    whose edges are no longer oriented along it)."""


class InfeasibleError(RecourseError):
    """The input cannot satisfy the promised feasibility condition
    (no unsaturated node reachable, offline matching does not exist)."""


class ArboricityPromiseError(InfeasibleError):
    """The cascade flip budget was exhausted: the input does not admit
    the promised sparse orientation."""


class AdversaryDesyncError(RecourseError):
    """The driven algorithm's observable state diverged from what the
    adversary construction requires (non-conforming variant)."""


class CapacityError(RecourseError):
    """Instance too large for an exhaustive oracle mode."""
