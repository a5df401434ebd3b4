"""Shared builders for graphs, families and random instances."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from cutcover import CapGraph, Instance, NodeSet, SetFamily


def ns(n, *elements):
    return NodeSet.from_iterable(n, elements)


def fam(n, *element_tuples):
    return SetFamily(n, [NodeSet.from_iterable(n, t) for t in element_tuples])


def triangle():
    return CapGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1)))


def cycle(n, cap=1):
    return CapGraph(n, tuple((i, (i + 1) % n, cap) for i in range(n)))


def k2(cap=1):
    return CapGraph(2, ((0, 1, cap),))


def random_graph(rng: random.Random, n, density=0.5, max_cap=5, rational=False):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                if rational:
                    cap = Fraction(rng.randint(0, max_cap), rng.randint(1, 4))
                else:
                    cap = Fraction(rng.randint(0, max_cap))
                edges.append((u, v, cap))
    return CapGraph(n, tuple(edges))


def random_instance(rng: random.Random, n, num_links, density=0.5, max_cost=10):
    """Feasible instance over a random graph: the links include a random
    spanning star (which crosses every non-trivial set) plus extras; the
    threshold sits at a high quantile of the distinct cut values."""
    from cutcover import nontrivial_cut_values

    g = random_graph(rng, n, density)
    values = nontrivial_cut_values(g)
    threshold = values[(3 * len(values)) // 4] if len(values) > 1 else values[0] + 1
    specs = []
    center = rng.randrange(n)
    for v in range(n):
        if v != center:
            specs.append((center, v, Fraction(rng.randint(1, max_cost))))
    for _ in range(num_links):
        a = rng.randrange(n)
        b = rng.randrange(n - 1)
        if b >= a:
            b += 1
        specs.append((a, b, Fraction(rng.randint(1, max_cost))))
    rng.shuffle(specs)
    return Instance.build(g, threshold, specs)


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
