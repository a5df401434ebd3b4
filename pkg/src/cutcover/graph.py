"""Capacitated graphs, node subsets, cut evaluation and small-cut enumeration.

All capacities, costs and thresholds are exact rationals; floats are
rejected at construction time so that tightness comparisons downstream are
exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from .errors import GroundSetTooLarge

DEFAULT_ENUM_LIMIT = 20

#: largest scaled edge-weight total the int64 kernels accept before the
#: enumeration falls back to unbounded Python integers
_INT64_SAFE = 1 << 62


def _rat(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("exact rational required, got float; pass Fraction, int or 'p/q' string")
    return Fraction(value)


class NodeSet:
    """Immutable subset of the ground set [0, n), stored as a bit mask."""

    __slots__ = ("bits", "n")

    def __init__(self, bits: int, n: int):
        bits = int(bits)
        if n < 0:
            raise ValueError("ground-set size must be non-negative")
        if bits < 0 or bits >> n:
            raise ValueError(f"mask {bits:#x} has members outside the ground set [0, {n})")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name, value):
        raise AttributeError("NodeSet is immutable")

    @classmethod
    def of(cls, n: int, *elements: int) -> "NodeSet":
        return cls.from_iterable(n, elements)

    @classmethod
    def from_iterable(cls, n: int, elements: Iterable[int]) -> "NodeSet":
        bits = 0
        for v in elements:
            if not 0 <= v < n:
                raise ValueError(f"element {v} outside ground set [0, {n})")
            bits |= 1 << v
        return cls(bits, n)

    @classmethod
    def empty(cls, n: int) -> "NodeSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "NodeSet":
        return cls((1 << n) - 1, n)

    def complement(self) -> "NodeSet":
        return NodeSet(self.bits ^ ((1 << self.n) - 1), self.n)

    def _check(self, other: "NodeSet") -> None:
        if not isinstance(other, NodeSet):
            raise TypeError(f"expected NodeSet, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"mixed ground sets: {self.n} vs {other.n}")

    def __or__(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.bits | other.bits, self.n)

    def __and__(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "NodeSet") -> "NodeSet":
        self._check(other)
        return NodeSet(self.bits & ~other.bits, self.n)

    def __le__(self, other: "NodeSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other: "NodeSet") -> bool:
        return self <= other and self.bits != other.bits

    def is_subset_of(self, other: "NodeSet") -> bool:
        return self <= other

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __eq__(self, other) -> bool:
        return isinstance(other, NodeSet) and self.bits == other.bits and self.n == other.n

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __repr__(self) -> str:
        return f"NodeSet({{{', '.join(map(str, self))}}}, n={self.n})"


def crosses(a: NodeSet, b: NodeSet) -> bool:
    """True when all four corner regions of the pair are non-empty."""
    a._check(b)
    full = (1 << a.n) - 1
    return (
        a.bits & b.bits != 0
        and a.bits & ~b.bits != 0
        and b.bits & ~a.bits != 0
        and full & ~(a.bits | b.bits) != 0
    )


@dataclass(frozen=True)
class Link:
    """Priced candidate edge; id is its position in the instance link list."""

    a: int
    b: int
    cost: Fraction
    id: int

    def __post_init__(self):
        object.__setattr__(self, "cost", _rat(self.cost))
        if self.a == self.b:
            raise ValueError(f"link {self.id} is a self-loop on node {self.a}")
        if self.a < 0 or self.b < 0:
            raise ValueError("link endpoints must be non-negative")
        if self.cost < 0:
            raise ValueError(f"link {self.id} has negative cost {self.cost}")


@dataclass(frozen=True)
class CapGraph:
    """Undirected capacitated graph; parallel edges allowed, self-loops not."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        canon = []
        for u, v, cap in self.edges:
            cap = _rat(cap)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside ground set [0, {self.n})")
            if cap < 0:
                raise ValueError(f"edge ({u}, {v}) has negative capacity {cap}")
            canon.append((int(u), int(v), cap))
        object.__setattr__(self, "edges", tuple(canon))


@dataclass(frozen=True)
class Instance:
    """A capacitated graph, a cut threshold and the priced links."""

    graph: CapGraph
    threshold: Fraction
    links: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "threshold", _rat(self.threshold))
        object.__setattr__(self, "links", tuple(self.links))
        for pos, link in enumerate(self.links):
            if link.id != pos:
                raise ValueError(f"link at position {pos} carries id {link.id}")
            if link.a >= self.graph.n or link.b >= self.graph.n:
                raise ValueError(f"link ({link.a}, {link.b}) outside ground set")

    @classmethod
    def build(cls, graph: CapGraph, threshold, link_specs) -> "Instance":
        """Construct from (a, b, cost) triples, assigning positional ids."""
        links = tuple(Link(a, b, cost, i) for i, (a, b, cost) in enumerate(link_specs))
        return cls(graph, threshold, links)


def cut_capacity(g: CapGraph, s: NodeSet) -> Fraction:
    """Total capacity of edges with exactly one endpoint in s."""
    if s.n != g.n:
        raise ValueError(f"set over ground {s.n} against graph of size {g.n}")
    total = Fraction(0)
    bits = s.bits
    for u, v, cap in g.edges:
        if ((bits >> u) ^ (bits >> v)) & 1:
            total += cap
    return total


def covers(link: Link, s: NodeSet) -> bool:
    """True when exactly one endpoint of the link lies in s."""
    if link.a >= s.n or link.b >= s.n:
        raise ValueError(f"link ({link.a}, {link.b}) outside ground set [0, {s.n})")
    return ((s.bits >> link.a) ^ (s.bits >> link.b)) & 1 == 1


def delta_links(s: NodeSet, links) -> frozenset:
    """Ids of the links with exactly one endpoint in s."""
    return frozenset(link.id for link in links if covers(link, s))


def _scaled_edge_arrays(g: CapGraph, extra: Fraction):
    """Clear denominators; returns int64 arrays when they fit, else None."""
    denom = lcm(extra.denominator, *(cap.denominator for _, _, cap in g.edges)) if g.edges else extra.denominator
    weights = [int(cap * denom) for _, _, cap in g.edges]
    lam = int(extra * denom)
    if sum(weights) + abs(lam) >= _INT64_SAFE:
        return None, None, None, lam, denom
    eu = np.fromiter((u for u, _, _ in g.edges), np.int64, len(g.edges))
    ev = np.fromiter((v for _, v, _ in g.edges), np.int64, len(g.edges))
    ew = np.array(weights, dtype=np.int64)
    return eu, ev, ew, lam, denom


def _gray_walk(g: CapGraph):
    """Yield (mask, cut value) after each flip of the subset walk over
    {0..n-2}, with unbounded exact arithmetic."""
    n = g.n
    adj = [[] for _ in range(n)]
    for u, v, cap in g.edges:
        adj[u].append((v, cap))
        adj[v].append((u, cap))
    cur = 0
    cut = Fraction(0)
    for i in range(1, 1 << (n - 1)):
        b = (i & -i).bit_length() - 1
        side = (cur >> b) & 1
        for v, w in adj[b]:
            if ((cur >> v) & 1) == side:
                cut += w
            else:
                cut -= w
        cur ^= 1 << b
        yield cur, cut


def enumerate_small_cuts(g: CapGraph, threshold, limit: int = DEFAULT_ENUM_LIMIT):
    """The family of non-trivial sets whose cut capacity is strictly below
    the threshold; symmetric by construction."""
    from .family import SetFamily

    threshold = _rat(threshold)
    if g.n > limit:
        raise GroundSetTooLarge(f"ground set of size {g.n} exceeds enumeration limit {limit}")
    n = g.n
    if n < 2:
        return SetFamily(n, ())
    eu, ev, ew, lam, denom = _scaled_edge_arrays(g, threshold)
    if eu is not None:
        found = [int(m) for m in kernels.small_cut_masks(n, eu, ev, ew, lam)]
    else:
        found = [mask for mask, cut in _gray_walk(g) if cut < threshold]
    full = (1 << n) - 1
    masks = set(found)
    masks.update(full ^ m for m in found)
    return SetFamily(n, masks)


def incremental_cut_scan(g: CapGraph):
    """Masks and exact cut values of the representative subset half, in
    single-bit-flip order starting from the empty set.

    Exposed so the incremental maintenance can be audited against
    from-scratch recomputation.
    """
    if g.n == 0:
        return (), ()
    if g.n == 1:
        return (0,), (Fraction(0),)
    eu, ev, ew, lam, denom = _scaled_edge_arrays(g, Fraction(0))
    if eu is not None:
        mask_arr, val_arr = kernels.gray_cut_values(g.n, eu, ev, ew)
        masks = tuple(int(m) for m in mask_arr)
        vals = tuple(Fraction(int(v), denom) for v in val_arr)
        return masks, vals
    masks = [0]
    vals = [Fraction(0)]
    for mask, cut in _gray_walk(g):
        masks.append(mask)
        vals.append(cut)
    return tuple(masks), tuple(vals)


def nontrivial_cut_values(g: CapGraph):
    """Distinct cut capacities over all non-trivial subsets, ascending."""
    if g.n < 2:
        return ()
    _, vals = incremental_cut_scan(g)
    return tuple(sorted(set(vals[1:])))
