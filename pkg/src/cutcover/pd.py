"""Primal-dual covering solver: phased uniform dual growth on cores,
tight-link admission and reverse delete.

All arithmetic is exact, so "the slack reaches zero" is an equality test,
never a tolerance. A solve is deterministic: links that go tight at the
same growth step are admitted together in ascending id order, and the
reverse delete scans the strict reverse of the global addition sequence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import Infeasible
from .family import SetFamily, cores, residual
from .graph import Instance, Link, NodeSet, covers


@dataclass
class DualState:
    """Dual variables keyed by the sets they were raised on."""

    y: dict = field(default_factory=dict)
    total: Fraction = Fraction(0)

    def load(self, link: Link) -> Fraction:
        """Total dual weight pressing on a link."""
        acc = Fraction(0)
        for s, val in self.y.items():
            if covers(link, s):
                acc += val
        return acc


@dataclass(frozen=True)
class PhaseTrace:
    phase: int
    cores_snapshot: SetFamily
    epsilon: Fraction
    tight_link_ids: tuple
    residual_size: int


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solve: the pruned solution, its exact cost, the dual
    state, the per-phase trace and the pre-delete addition order."""

    solution: tuple
    cost: Fraction
    dual: DualState
    trace: tuple
    addition_order: tuple


def grow_phase(state: DualState, core_family: SetFamily, links, already_picked):
    """Raise duals uniformly on all cores until some unpicked link goes tight.

    Returns the exact growth amount and the ids of every link whose slack
    hits zero, ascending. Raises Infeasible when a core is crossed by no
    unpicked link.
    """
    core_sets = core_family.members
    if not core_sets:
        raise ValueError("grow_phase requires a non-empty core family")

    degree = {}
    slack = {}
    for link in links:
        if link.id in already_picked:
            continue
        d = sum(1 for c in core_sets if covers(link, c))
        if d:
            degree[link.id] = d
            slack[link.id] = link.cost - state.load(link)
    for c in core_sets:
        if not any(covers(links[lid], c) for lid in degree):
            raise Infeasible(c)

    epsilon = min(slack[lid] / d for lid, d in degree.items())
    newly_tight = sorted(
        lid for lid, d in degree.items() if slack[lid] == epsilon * d
    )

    if epsilon:
        for c in core_sets:
            state.y[c] = state.y.get(c, Fraction(0)) + epsilon
        state.total += epsilon * len(core_sets)
    return epsilon, newly_tight


def solve(inst: Instance, f: SetFamily) -> SolveResult:
    """Cover the family with the phased growth / reverse-delete scheme."""
    if f.n != inst.graph.n:
        raise ValueError("family ground set does not match the instance graph")
    state = DualState()
    picked = []
    picked_set = set()
    trace = []
    phase = 0
    while True:
        remaining = residual(f, [inst.links[i] for i in picked])
        if len(remaining) == 0:
            break
        core_family = cores(remaining)
        epsilon, tight = grow_phase(state, core_family, inst.links, picked_set)
        picked.extend(tight)
        picked_set.update(tight)
        trace.append(PhaseTrace(phase, core_family, epsilon, tuple(tight), len(remaining)))
        phase += 1
    solution = reverse_delete(picked, f, inst.links)
    cost = sum((inst.links[i].cost for i in solution), Fraction(0))
    return SolveResult(tuple(solution), cost, state, tuple(trace), tuple(picked))


def reverse_delete(addition_order, f: SetFamily, links):
    """Drop links in reverse addition order whenever the rest still covers f.

    The result is an inclusion-minimal cover of f, returned in the original
    addition order.
    """
    if len(f) == 0:
        return []
    counts = {}
    for m in f.masks:
        c = 0
        for lid in addition_order:
            link = links[lid]
            if ((m >> link.a) ^ (m >> link.b)) & 1:
                c += 1
        if c == 0:
            raise Infeasible(NodeSet(m, f.n), "addition order does not cover the family")
        counts[m] = c
    kept = set(addition_order)
    for lid in reversed(addition_order):
        link = links[lid]
        hit = [m for m in f.masks if ((m >> link.a) ^ (m >> link.b)) & 1]
        if all(counts[m] >= 2 for m in hit):
            kept.remove(lid)
            for m in hit:
                counts[m] -= 1
    return [lid for lid in addition_order if lid in kept]


def dual_feasible(inst: Instance, f: SetFamily, state: DualState) -> bool:
    """Every link carries dual load at most its cost, exactly."""
    return all(state.load(link) <= link.cost for link in inst.links)
