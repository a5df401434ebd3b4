"""Branch-and-bound oracle against naive enumeration, and the ratio audit."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from cutcover import (
    Infeasible,
    Instance,
    SetFamily,
    SolveResult,
    TooManyLinks,
    ZeroOptimumViolation,
    enumerate_small_cuts,
    exact_optimum,
    ratio,
    residual,
    solve,
)
from cutcover.pd import DualState
from conftest import k2, random_instance


def naive_optimum(inst, family):
    """Vectorized enumeration of all link subsets; integer costs only."""
    links = inst.links
    num = len(links)
    cover_bits = np.zeros(len(family.masks), dtype=np.int64)
    for row, m in enumerate(family.masks):
        for link in links:
            if ((m >> link.a) ^ (m >> link.b)) & 1:
                cover_bits[row] |= 1 << link.id
    subsets = np.arange(1 << num, dtype=np.int64)
    covered = np.ones(subsets.size, dtype=bool)
    for bits in cover_bits:
        covered &= (subsets & bits) != 0
    if not covered.any():
        return None
    costs = np.zeros(subsets.size, dtype=np.int64)
    unit = np.array([int(l.cost) for l in links], dtype=np.int64)
    for lid in range(num):
        costs[(subsets >> lid) & 1 == 1] += unit[lid]
    candidates = np.flatnonzero(covered)
    return int(costs[candidates].min())


def _dummy_result(cost) -> SolveResult:
    return SolveResult((), Fraction(cost), DualState(), (), ())


def test_exact_empty_family():
    inst = Instance.build(k2(), 1, [(0, 1, 3)])
    res = exact_optimum(inst, SetFamily(2, ()))
    assert res.opt_cost == 0 and res.opt_links == ()


def test_exact_single_link():
    inst = Instance.build(k2(), 2, [(0, 1, 5)])
    f = enumerate_small_cuts(k2(), 2)
    res = exact_optimum(inst, f)
    assert res.opt_cost == 5 and res.opt_links == (0,)


def test_exact_infeasible():
    inst = Instance.build(k2(), 2, [])
    f = enumerate_small_cuts(k2(), 2)
    with pytest.raises(Infeasible):
        exact_optimum(inst, f)


def test_exact_too_many_links():
    inst = Instance.build(k2(), 2, [(0, 1, 1)] * 5)
    f = enumerate_small_cuts(k2(), 2)
    with pytest.raises(TooManyLinks):
        exact_optimum(inst, f, limit=4)


@pytest.mark.parametrize("seed", range(4))
def test_exact_agrees_with_naive(seed):
    rng = random.Random(seed)
    for _ in range(12):
        inst = random_instance(rng, rng.randint(3, 7), rng.randint(0, 6))
        f = enumerate_small_cuts(inst.graph, inst.threshold)
        expected = naive_optimum(inst, f)
        got = exact_optimum(inst, f)
        assert expected is not None
        assert got.opt_cost == expected
        # reported links really cover at the reported cost
        chosen = [inst.links[i] for i in got.opt_links]
        assert len(residual(f, chosen)) == 0
        assert sum((l.cost for l in chosen), Fraction(0)) == got.opt_cost


def test_warm_start_does_not_change_optimum(rng):
    for _ in range(8):
        inst = random_instance(rng, 6, 4)
        f = enumerate_small_cuts(inst.graph, inst.threshold)
        pd = solve(inst, f)
        cold = exact_optimum(inst, f)
        warm = exact_optimum(inst, f, warm_start=pd.solution)
        assert cold.opt_cost == warm.opt_cost
        assert warm.nodes_explored <= cold.nodes_explored + 1


def test_ratio_examples():
    opt = exact_optimum(
        Instance.build(k2(), 2, [(0, 1, 5)]), enumerate_small_cuts(k2(), 2)
    )
    assert ratio(_dummy_result(5), opt) == 1
    assert ratio(_dummy_result(15), opt) == 3


def test_ratio_zero_optimum():
    inst = Instance.build(k2(), 2, [(0, 1, 0)])
    f = enumerate_small_cuts(k2(), 2)
    opt = exact_optimum(inst, f)
    assert opt.opt_cost == 0
    assert ratio(_dummy_result(0), opt) == 1
    with pytest.raises(ZeroOptimumViolation):
        ratio(_dummy_result(1), opt)


def test_guarantee_chain_on_random_runs(rng):
    for _ in range(10):
        inst = random_instance(rng, rng.randint(3, 7), rng.randint(0, 5))
        f = enumerate_small_cuts(inst.graph, inst.threshold)
        res = solve(inst, f)
        opt = exact_optimum(inst, f, warm_start=res.solution)
        assert opt.opt_cost <= res.cost
        assert res.dual.total <= opt.opt_cost
        assert res.cost <= 5 * res.dual.total or res.cost == 0
        if opt.opt_cost > 0:
            assert ratio(res, opt) <= 5
