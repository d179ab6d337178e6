"""Node movement: mover selection, rejection-sampled jumps, rest-time bookkeeping.

Per movement phase the RNG stream is consumed in a fixed order (mover
selection first, then jump proposals in ascending node id) so that runs
with the same seed are bitwise reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Region

MAX_PROPOSALS = 10_000


@dataclass(frozen=True)
class MobilityParams:
    velocity: float
    t_rest: int
    t_move: int
    p_stat: float
    n_moves: int

    def __post_init__(self):
        if self.velocity <= 0:
            raise ValueError(f"velocity must be positive, got {self.velocity}")
        if self.t_rest < 0:
            raise ValueError(f"t_rest must be nonnegative, got {self.t_rest}")
        if self.t_move < 1:
            raise ValueError(f"t_move must be at least 1, got {self.t_move}")
        if not 0.0 <= self.p_stat <= 1.0:
            raise ValueError(f"p_stat must be in [0, 1], got {self.p_stat}")
        if self.n_moves < 0:
            raise ValueError(f"n_moves must be nonnegative, got {self.n_moves}")


@dataclass
class MobilityState:
    """Per-node movement eligibility: permanently static flags + rest cooldowns."""

    is_static: np.ndarray  # bool, shape (n,)
    rest_remaining: np.ndarray  # int, shape (n,)

    @property
    def n(self) -> int:
        return len(self.is_static)

    def eligible(self) -> np.ndarray:
        """Sorted ids of nodes allowed to move this phase."""
        return np.flatnonzero(~self.is_static & (self.rest_remaining == 0))


@dataclass
class ProposalResult:
    """Outcome of one rejection-sampling run for a single mover."""

    position: np.ndarray
    accepted: bool
    draws: int


@dataclass
class PhaseDiagnostics:
    """Per-phase mobility bookkeeping surfaced in simulation traces."""

    eligible_count: int
    mover_count: int
    proposal_draws: int = 0
    rejected_movers: int = 0


def init_mobility_state(
    n: int, params: MobilityParams, rng: np.random.Generator
) -> MobilityState:
    """Mark each node permanently static with probability p_stat; no cooldowns."""
    if n < 1:
        raise ValueError(f"need at least one node, got {n}")
    is_static = rng.random(n) < params.p_stat
    return MobilityState(is_static=is_static, rest_remaining=np.zeros(n, dtype=np.int64))


def select_movers(
    state: MobilityState, n_moves: int, rng: np.random.Generator
) -> np.ndarray:
    """Uniform sample without replacement from the eligible pool.

    Shrinks to the pool size when fewer than n_moves nodes are eligible.
    Returns sorted node ids.
    """
    eligible = state.eligible()
    k = min(n_moves, len(eligible))
    if k == 0:
        return np.empty(0, dtype=np.int64)
    chosen = rng.choice(eligible, size=k, replace=False)
    return np.sort(chosen)


def propose_move(
    current: np.ndarray,
    region: Region,
    velocity: float,
    rng: np.random.Generator,
    max_proposals: int = MAX_PROPOSALS,
) -> ProposalResult:
    """Rejection-sample a jump target.

    Candidates are uniform over the region; a candidate at normalized
    distance d = |candidate - current| / diagonal is accepted with
    probability min(1, d * velocity), so longer jumps are favored.
    After max_proposals rejections the node stays put and the result is
    flagged unaccepted.
    """
    if velocity <= 0:
        raise ValueError(f"velocity must be positive, got {velocity}")
    dims = np.asarray(region.dims)
    diag = region.diagonal()
    for draw in range(1, max_proposals + 1):
        candidate = rng.random(region.ndim) * dims
        d = float(np.linalg.norm(candidate - current)) / diag
        if rng.random() < d * velocity:
            return ProposalResult(position=candidate, accepted=True, draws=draw)
    return ProposalResult(position=np.array(current, copy=True), accepted=False,
                          draws=max_proposals)


def movement_step(
    state: MobilityState,
    positions: np.ndarray,
    params: MobilityParams,
    region: Region,
    rng: np.random.Generator,
) -> tuple[np.ndarray, set[int], PhaseDiagnostics]:
    """Run one movement phase.

    Selected movers get rejection-sampled new positions; everyone else keeps
    theirs bitwise. Actual movers start a t_rest cooldown; every other
    positive cooldown ticks down by one. Returns the new position array, the
    set of nodes whose position actually changed, and phase diagnostics.
    """
    diag = PhaseDiagnostics(eligible_count=len(state.eligible()), mover_count=0)
    movers = select_movers(state, params.n_moves, rng)
    new_positions = positions.copy()
    moved: set[int] = set()
    for i in movers:
        result = propose_move(positions[i], region, params.velocity, rng)
        diag.proposal_draws += result.draws
        if not result.accepted:
            diag.rejected_movers += 1
            continue
        if not np.array_equal(result.position, positions[i]):
            new_positions[i] = result.position
            moved.add(int(i))
    diag.mover_count = len(moved)

    resting = state.rest_remaining > 0
    state.rest_remaining[resting] -= 1
    for i in moved:
        state.rest_remaining[i] = params.t_rest
    return new_positions, moved, diag
