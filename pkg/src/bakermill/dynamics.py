"""Improving-response dynamics, including the weighted variant of the game.

Weights enter symmetrically: a baker's utility is the miller weight sum at
her location over the baker weight sum there (herself included), and the
mirror image for millers. Unit weights reproduce the plain game exactly.

States are compared with agent identities forgotten: per location, the
sorted multiset of baker weights and of miller weights. Interchangeable
agents therefore cannot mask a revisit, while distinct locations are never
conflated (ranges make locations genuinely different in general).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import GameError, Instance, StrategyProfile


class ScriptError(GameError):
    pass


@dataclass(frozen=True)
class WeightedInstance:
    instance: Instance
    baker_weights: tuple[int, ...]
    miller_weights: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "baker_weights", tuple(self.baker_weights))
        object.__setattr__(self, "miller_weights", tuple(self.miller_weights))
        if len(self.baker_weights) != self.instance.num_bakers:
            raise GameError("need exactly one weight per baker")
        if len(self.miller_weights) != self.instance.num_millers:
            raise GameError("need exactly one weight per miller")
        if any(w < 1 for w in self.baker_weights + self.miller_weights):
            raise GameError("weights must be positive integers")

    @classmethod
    def uniform(cls, instance: Instance) -> "WeightedInstance":
        """The plain game viewed as a weighted one (all weights 1)."""
        return cls(instance, (1,) * instance.num_bakers, (1,) * instance.num_millers)

    @property
    def is_uniform(self) -> bool:
        return set(self.baker_weights) == {1} and set(self.miller_weights) == {1}


@dataclass(frozen=True)
class Move:
    kind: str        # "baker" or "miller"
    agent: int
    origin: int
    target: int
    utility_before: Fraction
    utility_after: Fraction


@dataclass(frozen=True)
class ScriptedMove:
    """A move request by kind, endpoints and mover weight (agent ids resolve
    at run time: the lowest-id matching agent moves)."""

    kind: str
    origin: int
    target: int
    weight: int | None = None


@dataclass(frozen=True)
class DynamicsTrace:
    initial: StrategyProfile
    moves: tuple[Move, ...]
    states: tuple[StrategyProfile, ...]   # states[0] is the initial profile
    status: str    # converged-to-NE | cycle-detected | step-budget-exhausted
    revisit_index: int | None


def _weight_sums(winstance: WeightedInstance, profile: StrategyProfile):
    num_locations = winstance.instance.num_locations
    baker_sum = [0] * num_locations
    miller_sum = [0] * num_locations
    for b, loc in enumerate(profile.baker_locations):
        baker_sum[loc] += winstance.baker_weights[b]
    for m, loc in enumerate(profile.miller_locations):
        miller_sum[loc] += winstance.miller_weights[m]
    return baker_sum, miller_sum


def weighted_utilities(winstance: WeightedInstance, profile: StrategyProfile):
    """Per-agent utilities under weight-sum semantics, exact.

    Returns ``(baker_utilities, miller_utilities)`` indexed by agent id.
    """
    baker_sum, miller_sum = _weight_sums(winstance, profile)
    bakers = tuple(
        Fraction(miller_sum[loc], baker_sum[loc]) for loc in profile.baker_locations
    )
    millers = tuple(
        Fraction(baker_sum[loc], miller_sum[loc]) for loc in profile.miller_locations
    )
    return bakers, millers


def state_signature(winstance: WeightedInstance, profile: StrategyProfile):
    """Canonical state with agent identities forgotten, locations kept."""
    num_locations = winstance.instance.num_locations
    bakers: list[list[int]] = [[] for _ in range(num_locations)]
    millers: list[list[int]] = [[] for _ in range(num_locations)]
    for b, loc in enumerate(profile.baker_locations):
        bakers[loc].append(winstance.baker_weights[b])
    for m, loc in enumerate(profile.miller_locations):
        millers[loc].append(winstance.miller_weights[m])
    return tuple(
        (tuple(sorted(bakers[loc])), tuple(sorted(millers[loc])))
        for loc in range(num_locations)
    )


def _miller_move(winstance, baker_sum, miller_sum, m, loc, target):
    w = winstance.miller_weights[m]
    before = Fraction(baker_sum[loc], miller_sum[loc])
    after = Fraction(baker_sum[target], miller_sum[target] + w)
    return before, after


def _baker_move(winstance, baker_sum, miller_sum, b, loc, target):
    w = winstance.baker_weights[b]
    before = Fraction(miller_sum[loc], baker_sum[loc])
    after = Fraction(miller_sum[target], baker_sum[target] + w)
    return before, after


def step_improving(
    winstance: WeightedInstance,
    profile: StrategyProfile,
    policy: str = "first",
    scripted: ScriptedMove | None = None,
) -> Move | None:
    """One improving move under the given policy, or None when stable.

    The fixed scan order for "first" and for tie-breaking in "best" is
    millers by id, then bakers by id, targets by ascending location index.
    Policy "scripted" validates and resolves the move passed in
    ``scripted`` instead of searching.
    """
    if policy == "scripted":
        if scripted is None:
            raise GameError("policy 'scripted' needs a scripted move")
        return _apply_scripted(winstance, profile, scripted)
    if policy not in ("first", "best"):
        raise GameError(f"unknown policy {policy!r}")

    instance = winstance.instance
    baker_sum, miller_sum = _weight_sums(winstance, profile)
    best_move = None
    best_gain = None
    for m, loc in enumerate(profile.miller_locations):
        for target in range(instance.num_locations):
            if target == loc:
                continue
            before, after = _miller_move(winstance, baker_sum, miller_sum, m, loc, target)
            if after > before:
                move = Move("miller", m, loc, target, before, after)
                if policy == "first":
                    return move
                gain = after - before
                if best_gain is None or gain > best_gain:
                    best_move, best_gain = move, gain
    for b, loc in enumerate(profile.baker_locations):
        for target in instance.bakers[b]:
            if target == loc:
                continue
            before, after = _baker_move(winstance, baker_sum, miller_sum, b, loc, target)
            if after > before:
                move = Move("baker", b, loc, target, before, after)
                if policy == "first":
                    return move
                gain = after - before
                if best_gain is None or gain > best_gain:
                    best_move, best_gain = move, gain
    return best_move


def _apply_scripted(winstance, profile, scripted: ScriptedMove) -> Move:
    instance = winstance.instance
    names = instance.locations
    if scripted.kind not in ("baker", "miller"):
        raise ScriptError(f"unknown agent kind {scripted.kind!r}")
    for loc in (scripted.origin, scripted.target):
        if not 0 <= loc < instance.num_locations:
            raise ScriptError(f"unknown location index {loc}")
    if scripted.origin == scripted.target:
        raise ScriptError("a move must change location")

    if scripted.kind == "miller":
        positions = profile.miller_locations
        weights = winstance.miller_weights
    else:
        positions = profile.baker_locations
        weights = winstance.baker_weights
    agent = None
    for a, loc in enumerate(positions):
        if loc == scripted.origin and (scripted.weight is None or weights[a] == scripted.weight):
            agent = a
            break
    if agent is None:
        detail = "" if scripted.weight is None else f" of weight {scripted.weight}"
        raise ScriptError(
            f"no {scripted.kind}{detail} at {names[scripted.origin]!r}"
        )
    if scripted.kind == "baker" and scripted.target not in instance.bakers[agent]:
        raise ScriptError(
            f"baker {agent} may not move to {names[scripted.target]!r}"
        )

    baker_sum, miller_sum = _weight_sums(winstance, profile)
    if scripted.kind == "miller":
        before, after = _miller_move(
            winstance, baker_sum, miller_sum, agent, scripted.origin, scripted.target
        )
    else:
        before, after = _baker_move(
            winstance, baker_sum, miller_sum, agent, scripted.origin, scripted.target
        )
    if after <= before:
        raise ScriptError(
            f"{scripted.kind} move {names[scripted.origin]!r} -> "
            f"{names[scripted.target]!r} is not improving ({before} -> {after})"
        )
    return Move(scripted.kind, agent, scripted.origin, scripted.target, before, after)


def _apply(profile: StrategyProfile, move: Move) -> StrategyProfile:
    if move.kind == "miller":
        millers = list(profile.miller_locations)
        millers[move.agent] = move.target
        return StrategyProfile(profile.baker_locations, tuple(millers))
    bakers = list(profile.baker_locations)
    bakers[move.agent] = move.target
    return StrategyProfile(tuple(bakers), profile.miller_locations)


def run_dynamics(
    winstance: WeightedInstance,
    start: StrategyProfile,
    policy: str = "first",
    step_budget: int = 1000,
    script=None,
) -> DynamicsTrace:
    """Iterate improving moves until stability, a revisit, or the budget.

    With ``policy="scripted"`` the moves come from ``script`` (at most
    ``step_budget`` of them); a non-improving or unresolvable scripted move
    raises ScriptError naming the offending step. A revisit means the
    current canonical state equals an earlier one exactly.
    """
    if step_budget < 1:
        raise GameError("step budget must be positive")
    if policy == "scripted":
        if script is None:
            raise GameError("policy 'scripted' needs a script")
        steps = list(script)[:step_budget]
    elif policy in ("first", "best"):
        steps = range(step_budget)
    else:
        raise GameError(f"unknown policy {policy!r}")

    profile = start
    states = [start]
    moves: list[Move] = []
    seen = {state_signature(winstance, start): 0}
    status = None
    revisit = None
    for k, step in enumerate(steps):
        if policy == "scripted":
            try:
                move = _apply_scripted(winstance, profile, step)
            except ScriptError as exc:
                raise ScriptError(f"script step {k + 1}: {exc}") from None
        else:
            move = step_improving(winstance, profile, policy)
        if move is None:
            status = "converged-to-NE"
            break
        profile = _apply(profile, move)
        moves.append(move)
        states.append(profile)
        sig = state_signature(winstance, profile)
        if sig in seen:
            status = "cycle-detected"
            revisit = seen[sig]
            break
        seen[sig] = len(states) - 1
    if status is None:
        if step_improving(winstance, profile, "first") is None:
            status = "converged-to-NE"
        else:
            status = "step-budget-exhausted"
    return DynamicsTrace(start, tuple(moves), tuple(states), status, revisit)


def trace_lines(trace: DynamicsTrace, winstance: WeightedInstance) -> list[str]:
    """One record per move: kind, id, from, to, utility before and after."""
    from .model import format_fraction

    names = winstance.instance.locations
    return [
        " ".join(
            (
                move.kind,
                str(move.agent),
                names[move.origin],
                names[move.target],
                format_fraction(move.utility_before),
                format_fraction(move.utility_after),
            )
        )
        for move in trace.moves
    ]
