"""Explicit set families, residuals, cores, and executable property checkers.

The checkers return `PropertyReport` verdicts rather than raising: a failed
check carries a counterexample tuple that replays the violated condition.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import GroundSetTooLarge
from .graph import NodeSet

DEFAULT_SAMPLE_BUDGET = 100_000

#: bit masks handed to the int64 kernels must fit a signed 64-bit word
_KERNEL_GROUND_LIMIT = 62


class SetFamily:
    """Deduplicated collection of non-trivial subsets of one ground set.

    Neither the empty set nor the full ground set may be a member. Members
    are kept in ascending mask order, which fixes the scan order (and hence
    the reported counterexamples) of every checker.
    """

    __slots__ = ("n", "_masks", "_mask_set", "_arr")

    def __init__(self, n: int, members: Iterable):
        full = (1 << n) - 1
        seen = set()
        for member in members:
            if isinstance(member, NodeSet):
                if member.n != n:
                    raise ValueError(f"member over ground set {member.n}, family over {n}")
                m = member.bits
            else:
                m = int(member)
                if m < 0 or m >> n:
                    raise ValueError(f"mask {m:#x} outside ground set [0, {n})")
            if m == 0:
                raise ValueError("the empty set cannot be a family member")
            if m == full:
                raise ValueError("the ground set cannot be a family member")
            seen.add(m)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_masks", tuple(sorted(seen)))
        object.__setattr__(self, "_mask_set", frozenset(seen))
        object.__setattr__(self, "_arr", None)

    def __setattr__(self, name, value):
        raise AttributeError("SetFamily is immutable")

    @property
    def masks(self) -> tuple:
        return self._masks

    @property
    def members(self) -> tuple:
        return tuple(NodeSet(m, self.n) for m in self._masks)

    def contains_mask(self, mask: int) -> bool:
        return mask in self._mask_set

    def masks_array(self) -> np.ndarray:
        if self.n > _KERNEL_GROUND_LIMIT:
            raise GroundSetTooLarge(
                f"mask kernels support ground sets up to {_KERNEL_GROUND_LIMIT}, got {self.n}"
            )
        if self._arr is None:
            object.__setattr__(self, "_arr", np.array(self._masks, dtype=np.int64))
        return self._arr

    def __len__(self) -> int:
        return len(self._masks)

    def __iter__(self) -> Iterator[NodeSet]:
        return iter(self.members)

    def __contains__(self, item) -> bool:
        if isinstance(item, NodeSet):
            return item.n == self.n and item.bits in self._mask_set
        return int(item) in self._mask_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.n == other.n
            and self._masks == other._masks
        )

    def __hash__(self) -> int:
        return hash((self.n, self._masks))

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, members={len(self._masks)})"


@dataclass(frozen=True)
class PropertyReport:
    """Verdict of one structural-property check.

    When a check fails, ``counterexample`` replays the violation. For the
    remainder properties it is ordered (core, enclosing set, removed
    subsets...); the pair checkers report the offending pair; symmetry
    reports the member whose complement is missing. The remainder checks
    also record how many configurations were tested, the largest number of
    removed subsets reached, and whether the enumeration was exhaustive.
    """

    name: str
    holds: bool
    counterexample: tuple | None = None
    tuples_tested: int | None = None
    max_k: int | None = None
    exhaustive: bool | None = None


def _link_endpoints_ok(f: SetFamily, links) -> None:
    for link in links:
        if link.a >= f.n or link.b >= f.n:
            raise ValueError(f"link ({link.a}, {link.b}) outside ground set [0, {f.n})")


def residual(f: SetFamily, cover_links) -> SetFamily:
    """Members of f crossed by none of the given links."""
    _link_endpoints_ok(f, cover_links)
    pairs = [(link.a, link.b) for link in cover_links]
    kept = []
    for m in f.masks:
        for a, b in pairs:
            if ((m >> a) ^ (m >> b)) & 1:
                break
        else:
            kept.append(m)
    return SetFamily(f.n, kept)


def cores(f: SetFamily) -> SetFamily:
    """Inclusion-minimal members of f."""
    if len(f) == 0:
        return SetFamily(f.n, ())
    flags = kernels.minimal_flags(f.masks_array())
    return SetFamily(f.n, (m for m, keep in zip(f.masks, flags) if keep))


def check_symmetry(f: SetFamily) -> PropertyReport:
    """Every member's complement is also a member."""
    full = (1 << f.n) - 1
    for m in f.masks:
        if not f.contains_mask(full ^ m):
            return PropertyReport("symmetry", False, (NodeSet(m, f.n),))
    return PropertyReport("symmetry", True)


def check_pliable(f: SetFamily) -> PropertyReport:
    """Every pair has at least two of its four corner sets in the family."""
    if len(f) < 2:
        return PropertyReport("pliable", True)
    a, b = kernels.pliable_violation(f.masks_array(), (1 << f.n) - 1)
    if a < 0:
        return PropertyReport("pliable", True)
    return PropertyReport("pliable", False, (NodeSet(int(a), f.n), NodeSet(int(b), f.n)))


def check_structural_submodularity(f: SetFamily) -> PropertyReport:
    """Every crossing pair keeps a corner from both the intersection/union
    side and the difference side."""
    if len(f) < 2:
        return PropertyReport("structural_submodularity", True)
    a, b = kernels.structsub_violation(f.masks_array(), (1 << f.n) - 1)
    if a < 0:
        return PropertyReport("structural_submodularity", True)
    return PropertyReport(
        "structural_submodularity", False, (NodeSet(int(a), f.n), NodeSet(int(b), f.n))
    )


def check_sparse_crossing(f: SetFamily) -> PropertyReport:
    """No member crosses two inclusion-minimal members."""
    if len(f) == 0:
        return PropertyReport("sparse_crossing", True)
    arr = f.masks_array()
    flags = kernels.minimal_flags(arr)
    s, c1, c2 = kernels.sparse_crossing_violation(arr, flags, (1 << f.n) - 1)
    if s < 0:
        return PropertyReport("sparse_crossing", True)
    return PropertyReport(
        "sparse_crossing",
        False,
        (NodeSet(int(s), f.n), NodeSet(int(c1), f.n), NodeSet(int(c2), f.n)),
    )


def check_disjoint_cores(f: SetFamily) -> PropertyReport:
    """Inclusion-minimal members are pairwise disjoint."""
    core_masks = cores(f).masks
    for i, a in enumerate(core_masks):
        for b in core_masks[i + 1:]:
            if a & b:
                return PropertyReport(
                    "disjoint_cores", False, (NodeSet(a, f.n), NodeSet(b, f.n))
                )
    return PropertyReport("disjoint_cores", True)


def check_gamma(f: SetFamily, sample_budget: int = DEFAULT_SAMPLE_BUDGET, seed: int = 0) -> PropertyReport:
    """Remainder property with a single removed subset (k = 1)."""
    return _check_remainder(f, sample_budget, 1, "gamma", seed)


def check_gamma_star(f: SetFamily, sample_budget: int = DEFAULT_SAMPLE_BUDGET, seed: int = 0) -> PropertyReport:
    """Remainder property with any number of pairwise-disjoint removed
    subsets (k >= 1)."""
    return _check_remainder(f, sample_budget, 0, "gamma_star", seed)


def _check_remainder(f: SetFamily, budget: int, kmax: int, name: str, seed: int) -> PropertyReport:
    if len(f) == 0:
        return PropertyReport(name, True, None, 0, 0, True)
    arr = f.masks_array()
    flags = kernels.minimal_flags(arr)
    full = (1 << f.n) - 1
    completed, violated, c, s0, chosen, tuples, max_k = kernels.gamma_star_exhaustive(
        arr, flags, full, budget, kmax
    )
    tuples = int(tuples)
    max_k = int(max_k)
    if violated:
        witness = (NodeSet(int(c), f.n), NodeSet(int(s0), f.n)) + tuple(
            NodeSet(int(m), f.n) for m in chosen
        )
        return PropertyReport(name, False, witness, tuples, max_k, bool(completed))
    if completed:
        return PropertyReport(name, True, None, tuples, max_k, True)
    return _sample_remainder(f, budget, kmax, name, seed, tuples, max_k)


def _sample_remainder(f: SetFamily, budget: int, kmax: int, name: str, seed: int,
                      tuples: int, max_k: int) -> PropertyReport:
    """Randomized configurations once exhaustive enumeration blew the budget.

    Draws a crossing (core, enclosing set) pair uniformly, then assembles a
    random disjoint subset selection from a shuffled candidate order.
    """
    rng = random.Random(seed)
    full = (1 << f.n) - 1
    arr = f.masks_array()

    configs = []
    for c in cores(f).masks:
        crossing = (arr & c != 0) & (arr & ~c != 0) & (c & ~arr != 0) & (full & ~(arr | c) != 0)
        crossers = arr[crossing]
        for s0 in crossers:
            cand = crossers[(crossers != s0) & (crossers & ~s0 == 0)]
            if cand.size:
                configs.append((int(c), int(s0), tuple(int(t) for t in cand)))
    if not configs:
        return PropertyReport(name, True, None, tuples, max_k, False)

    for _ in range(budget):
        c, s0, cand = configs[rng.randrange(len(configs))]
        order = rng.sample(range(len(cand)), len(cand))
        union = 0
        chosen = []
        for idx in order:
            t = cand[idx]
            if t & union:
                continue
            if chosen:
                if kmax and len(chosen) >= kmax:
                    break
                if rng.random() < 0.5:
                    continue
            chosen.append(t)
            union |= t
        tuples += 1
        max_k = max(max_k, len(chosen))
        rem = s0 & ~(union | c)
        if rem and not f.contains_mask(rem):
            witness = (NodeSet(c, f.n), NodeSet(s0, f.n)) + tuple(
                NodeSet(t, f.n) for t in chosen
            )
            return PropertyReport(name, False, witness, tuples, max_k, False)
    return PropertyReport(name, True, None, tuples, max_k, False)
