"""Certification of a solve: laminar witness families, the containment
tree over the crossing witnesses, the core-to-smallest-container mapping,
red-node accounting, and the crossing-density audit.

Audit failures are verdicts inside the report, never exceptions; the only
errors raised here concern malformed inputs (non-laminar tree input,
witness search running out of candidates or budget).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NotLaminar, SearchBudgetExceeded, WitnessSearchExhausted
from .family import SetFamily, cores, residual
from .graph import NodeSet, covers, crosses
from .pd import SolveResult, reverse_delete

DEFAULT_WITNESS_BUDGET = 1_000_000


def _laminar_pair(a: int, b: int) -> bool:
    inter = a & b
    return inter == 0 or inter == a or inter == b


@dataclass(frozen=True)
class LaminarFamily:
    """Family in which every pair is nested or disjoint."""

    n: int
    sets: tuple

    def __post_init__(self):
        object.__setattr__(self, "sets", tuple(self.sets))
        for i, s in enumerate(self.sets):
            for t in self.sets[i + 1:]:
                if not _laminar_pair(s.bits, t.bits):
                    raise NotLaminar(f"{s} and {t} partially overlap")


@dataclass(frozen=True)
class WitnessAssignment:
    """Maps each link of an inclusion-minimal cover to its witness set: the
    unique residual-family member that this link alone covers."""

    n: int
    witness: dict

    def link_ids(self) -> tuple:
        return tuple(sorted(self.witness))

    def sets(self) -> tuple:
        """Witness sets in ascending link-id order (the map is injective)."""
        return tuple(self.witness[lid] for lid in sorted(self.witness))

    def laminar_family(self) -> LaminarFamily:
        """The image as a validated laminar family; raises NotLaminar."""
        return LaminarFamily(self.n, self.sets())


@dataclass(frozen=True)
class WitnessTree:
    """Rooted containment tree over the crossing witness sets plus the
    ground set; a node is red when some core maps to its set."""

    n: int
    root: NodeSet
    parent: dict
    children: dict
    red: frozenset

    @property
    def nodes(self) -> tuple:
        return (self.root,) + tuple(self.parent)


def minimal_cover(link_ids, target: SetFamily, links):
    """Greedy reverse-scan pruning of a cover down to inclusion-minimality."""
    return reverse_delete(list(link_ids), target, links)


def find_witness_laminar(j_hat, f_res: SetFamily, links,
                         node_budget: int = DEFAULT_WITNESS_BUDGET) -> WitnessAssignment:
    """Backtracking search for a mutually laminar witness selection.

    Candidates for each link are the residual members covered by that link
    and no other link of the cover; inclusion-minimality of the cover makes
    every candidate list non-empty. Candidates are tried smallest first.
    """
    j_hat = list(j_hat)
    if not j_hat:
        return WitnessAssignment(f_res.n, {})

    candidates = {lid: [] for lid in j_hat}
    for m in f_res.masks:
        covering = [lid for lid in j_hat if ((m >> links[lid].a) ^ (m >> links[lid].b)) & 1]
        if len(covering) == 1:
            candidates[covering[0]].append(m)
    for lid, cand in candidates.items():
        if not cand:
            raise WitnessSearchExhausted(
                f"link {lid} has no witness candidate; the cover is not inclusion-minimal"
            )
        cand.sort(key=lambda m: (m.bit_count(), m))

    order = sorted(j_hat, key=lambda lid: (len(candidates[lid]), lid))
    chosen = []
    nodes = 0

    def assign(pos: int) -> bool:
        nonlocal nodes
        if pos == len(order):
            return True
        for m in candidates[order[pos]]:
            nodes += 1
            if nodes > node_budget:
                raise SearchBudgetExceeded(
                    f"witness search exceeded {node_budget} nodes"
                )
            if all(_laminar_pair(m, prev) for prev in chosen):
                chosen.append(m)
                if assign(pos + 1):
                    return True
                chosen.pop()
        return False

    if not assign(0):
        raise WitnessSearchExhausted(
            "no laminar witness selection exists; this signals a defect"
        )
    assignment = {lid: NodeSet(m, f_res.n) for lid, m in zip(order, chosen)}
    return WitnessAssignment(f_res.n, assignment)


def build_tree(l_star: SetFamily, red=frozenset()) -> WitnessTree:
    """Containment tree of the family plus the ground set as root."""
    n = l_star.n
    masks = l_star.masks
    for i, a in enumerate(masks):
        for b in masks[i + 1:]:
            if not _laminar_pair(a, b):
                raise NotLaminar(
                    f"{NodeSet(a, n)} and {NodeSet(b, n)} partially overlap"
                )
    root = NodeSet.full(n)
    parent = {}
    for m in masks:
        supersets = [q for q in masks if q != m and m & ~q == 0]
        if supersets:
            best = min(supersets, key=lambda q: (q.bit_count(), q))
            parent[NodeSet(m, n)] = NodeSet(best, n)
        else:
            parent[NodeSet(m, n)] = root
    children = {node: [] for node in list(parent) + [root]}
    for child, par in parent.items():
        children[par].append(child)
    children = {node: tuple(sorted(kids, key=lambda s: s.bits)) for node, kids in children.items()}
    return WitnessTree(n, root, parent, children, frozenset(red))


def psi_map(core_family: SetFamily, l_star: SetFamily) -> dict:
    """Each core to the smallest crossing-witness set containing it (the
    ground set when none does)."""
    if core_family.n != l_star.n:
        raise ValueError("mixed ground sets")
    n = l_star.n
    result = {}
    for c in core_family.masks:
        containers = [s for s in l_star.masks if c & ~s == 0]
        if containers:
            best = min(containers, key=lambda s: (s.bit_count(), s))
            result[NodeSet(c, n)] = NodeSet(best, n)
        else:
            result[NodeSet(c, n)] = NodeSet.full(n)
    return result


@dataclass(frozen=True)
class AuditReport:
    """Per-phase crossing-density audit.

    passed requires: the witness assignment re-checks (membership,
    uniqueness, laminarity), every witness set crosses at most one core,
    the crossing-witness count is at most twice the core count, and the
    three tree lemmas (red cover, empty remainder, disjoint child) hold.
    """

    phase: int
    num_cores: int
    lhat_size: int
    lstar_size: int
    crossing_pairs: int
    witness_valid: bool
    sparse_crossing_ok: bool
    density_bound_ok: bool
    red_cover_ok: bool
    empty_remainder_ok: bool
    disjoint_child_ok: bool
    passed: bool


def crossing_density_audit(phase: int, f_res: SetFamily, assignment: WitnessAssignment,
                           links) -> AuditReport:
    """Audit one phase's residual family against the witness assignment."""
    n = f_res.n
    core_family = cores(f_res)
    core_sets = core_family.members

    j_hat = assignment.link_ids()
    witness_valid = True
    for lid, s in assignment.witness.items():
        if s not in f_res:
            witness_valid = False
            break
        delta = [j for j in j_hat if covers(links[j], s)]
        if delta != [lid]:
            witness_valid = False
            break
    l_hat = assignment.sets()
    if witness_valid:
        for i, s in enumerate(l_hat):
            for t in l_hat[i + 1:]:
                if not _laminar_pair(s.bits, t.bits):
                    witness_valid = False
                    break
            if not witness_valid:
                break

    crossing_of = {s: [c for c in core_sets if crosses(s, c)] for s in l_hat}
    l_star = [s for s in l_hat if crossing_of[s]]
    crossing_pairs = sum(len(v) for v in crossing_of.values())
    sparse_ok = all(len(v) <= 1 for v in crossing_of.values())
    density_ok = len(l_star) <= 2 * len(core_sets)

    red_ok = remainder_ok = disjoint_ok = witness_valid and sparse_ok
    if witness_valid and sparse_ok:
        l_star_family = SetFamily(n, l_star)
        psi = psi_map(core_family, l_star_family)
        red = frozenset(psi.values())
        tree = build_tree(l_star_family, red)
        for s0 in l_star:
            c0 = crossing_of[s0][0]
            kids = tree.children[s0]
            is_red = s0 in red
            if not is_red and not any(k in red for k in kids):
                red_ok = False
            if not is_red:
                crossed_kids = [k for k in kids if crosses(k, c0)]
                remainder = s0.bits & ~c0.bits
                for k in crossed_kids:
                    remainder &= ~k.bits
                if not crossed_kids or remainder != 0:
                    remainder_ok = False
            if any((k.bits & c0.bits) == 0 for k in kids) and not is_red:
                disjoint_ok = False

    passed = (
        witness_valid
        and sparse_ok
        and density_ok
        and red_ok
        and remainder_ok
        and disjoint_ok
        and crossing_pairs == len(l_star)
    )
    return AuditReport(
        phase=phase,
        num_cores=len(core_sets),
        lhat_size=len(l_hat),
        lstar_size=len(l_star),
        crossing_pairs=crossing_pairs,
        witness_valid=witness_valid,
        sparse_crossing_ok=sparse_ok,
        density_bound_ok=density_ok,
        red_cover_ok=red_ok,
        empty_remainder_ok=remainder_ok,
        disjoint_child_ok=disjoint_ok,
        passed=passed,
    )


def audit_run(links, f: SetFamily, result: SolveResult, mode: str = "per-phase",
              node_budget: int = DEFAULT_WITNESS_BUDGET):
    """Audit every phase of a solve (or only the last, mode="final").

    Each phase is audited against the final solution pruned to an
    inclusion-minimal cover of that phase's cores.
    """
    if mode not in ("per-phase", "final"):
        raise ValueError(f"audit mode must be 'per-phase' or 'final', got {mode!r}")
    phases = result.trace if mode == "per-phase" else result.trace[-1:]
    picked_before = {}
    acc = []
    for pt in result.trace:
        picked_before[pt.phase] = list(acc)
        acc.extend(pt.tight_link_ids)
    reports = []
    for pt in phases:
        f_res = residual(f, [links[i] for i in picked_before[pt.phase]])
        core_family = cores(f_res)
        j_hat = minimal_cover(result.solution, core_family, links)
        assignment = find_witness_laminar(j_hat, f_res, links, node_budget)
        reports.append(crossing_density_audit(pt.phase, f_res, assignment, links))
    return reports
