"""Set-family store, residuals, cores, and the property checkers."""

from __future__ import annotations

import pytest

from cutcover import (
    Link,
    NodeSet,
    SetFamily,
    check_disjoint_cores,
    check_gamma,
    check_gamma_star,
    check_pliable,
    check_sparse_crossing,
    check_structural_submodularity,
    check_symmetry,
    cores,
    crosses,
    delta_links,
    enumerate_small_cuts,
    residual,
)
from conftest import cycle, fam, ns, random_graph


def _links(*pairs):
    return [Link(a, b, 1, i) for i, (a, b) in enumerate(pairs)]


ARCS4 = enumerate_small_cuts(cycle(4), 3)


# ---------------------------------------------------------------- SetFamily

def test_family_rejects_trivial_members():
    with pytest.raises(ValueError):
        SetFamily(3, [0])
    with pytest.raises(ValueError):
        SetFamily(3, [0b111])
    with pytest.raises(ValueError):
        SetFamily(3, [ns(4, 0)])


def test_family_dedupes_and_sorts():
    f = SetFamily(3, [0b011, ns(3, 0, 1), 0b100])
    assert f.masks == (0b011, 0b100)
    assert len(f) == 2
    assert ns(3, 2) in f and 0b011 in f and ns(3, 0) not in f


# ---------------------------------------------------------------- residual

def test_residual_empty_cover_is_identity():
    assert residual(ARCS4, []) == ARCS4


def test_residual_two_element_ground_set():
    f = fam(2, (0,), (1,))
    assert len(residual(f, _links((0, 1)))) == 0


def test_residual_four_cycle_diagonal_link():
    # the arcs containing both or neither endpoint of (0, 2) survive
    left = residual(ARCS4, _links((0, 2)))
    assert set(left.masks) == {m for m in ARCS4.masks if ((m >> 0) & 1) == ((m >> 2) & 1)}
    assert set(left.members) == {ns(4, 1), ns(4, 3), ns(4, 0, 1, 2), ns(4, 0, 2, 3)}


def test_residual_brute_force(rng):
    for _ in range(20):
        g = random_graph(rng, 6, 0.5)
        f = enumerate_small_cuts(g, 4)
        pairs = [(rng.randrange(6), rng.randrange(6)) for _ in range(rng.randint(0, 4))]
        links = _links(*(p for p in pairs if p[0] != p[1]))
        expect = {m for m in f.masks if not delta_links(NodeSet(m, 6), links)}
        assert set(residual(f, links).masks) == expect


def test_residual_monotone(rng):
    for _ in range(10):
        g = random_graph(rng, 6, 0.5)
        f = enumerate_small_cuts(g, 4)
        pairs = [(rng.randrange(6), (rng.randrange(5) + 1 + rng.randrange(6)) % 6) for _ in range(5)]
        pairs = [p for p in pairs if p[0] != p[1]]
        small = _links(*pairs[:2])
        big = _links(*pairs)
        assert set(residual(f, big).masks) <= set(residual(f, small).masks)


# ---------------------------------------------------------------- cores

def test_cores_subset_inspection():
    f = fam(3, (0,), (0, 1), (2,))
    assert set(cores(f).members) == {ns(3, 0), ns(3, 2)}


def test_cores_empty():
    assert len(cores(SetFamily(4, ()))) == 0


def test_cores_four_cycle_singletons():
    assert sorted(len(c) for c in cores(ARCS4)) == [1, 1, 1, 1]


def test_cores_brute_force_and_idempotent(rng):
    for _ in range(20):
        n = rng.randint(3, 8)
        members = {rng.randint(1, (1 << n) - 2) for _ in range(rng.randint(1, 25))}
        f = SetFamily(n, members)
        expect = {
            m for m in f.masks
            if not any(o != m and o & ~m == 0 for o in f.masks)
        }
        c = cores(f)
        assert set(c.masks) == expect
        assert cores(c) == c


# ---------------------------------------------------------------- checkers

def test_symmetry_small_cut_family_holds(rng):
    for _ in range(8):
        g = random_graph(rng, 6, 0.5)
        assert check_symmetry(enumerate_small_cuts(g, 3)).holds


def test_symmetry_failure_counterexample():
    rep = check_symmetry(fam(3, (0,)))
    assert not rep.holds and rep.counterexample == (ns(3, 0),)


def test_symmetry_empty_family_vacuous():
    assert check_symmetry(SetFamily(3, ())).holds


def test_pliable_small_cut_family_holds(rng):
    for _ in range(8):
        g = random_graph(rng, 6, 0.5, rational=True)
        assert check_pliable(enumerate_small_cuts(g, 2)).holds


def test_pliable_failure_all_corners_absent():
    rep = check_pliable(fam(4, (0, 1), (1, 2)))
    assert not rep.holds
    assert rep.counterexample == (ns(4, 0, 1), ns(4, 1, 2))


def test_pliable_disjoint_differences_count():
    # differences equal the sets themselves, so the pair contributes two
    assert check_pliable(fam(4, (0,), (1,))).holds


def test_pliable_singleton_family_holds():
    assert check_pliable(fam(3, (0,))).holds


def test_structsub_small_cut_family_holds(rng):
    for _ in range(8):
        g = random_graph(rng, 6, 0.6, rational=True)
        assert check_structural_submodularity(enumerate_small_cuts(g, 3)).holds


def test_structsub_failure_on_crossing_pair():
    rep = check_structural_submodularity(fam(4, (0, 1), (1, 2)))
    assert not rep.holds
    assert rep.counterexample == (ns(4, 0, 1), ns(4, 1, 2))


def test_structsub_no_crossing_pair_vacuous():
    # nested and disjoint pairs are exempt
    assert check_structural_submodularity(fam(4, (0,), (0, 1), (2, 3))).holds


def test_sparse_crossing_small_cut_families(rng):
    for _ in range(8):
        g = random_graph(rng, 7, 0.4)
        assert check_sparse_crossing(enumerate_small_cuts(g, 3)).holds


def test_sparse_crossing_empty():
    assert check_sparse_crossing(SetFamily(5, ())).holds


def test_sparse_crossing_hand_built_failure():
    f = fam(5, (0, 1), (1, 2), (0, 2, 3))
    rep = check_sparse_crossing(f)
    assert not rep.holds
    s, c1, c2 = rep.counterexample
    # replay: both reported minimal sets really cross the reported member
    core_sets = set(cores(f).members)
    assert {c1, c2} <= core_sets
    assert crosses(s, c1) and crosses(s, c2)


def test_disjoint_cores_four_cycle():
    assert check_disjoint_cores(ARCS4).holds


def test_disjoint_cores_failure():
    rep = check_disjoint_cores(fam(4, (0, 1), (1, 2)))
    assert not rep.holds
    a, b = rep.counterexample
    assert a & b


def test_disjoint_cores_single_member():
    assert check_disjoint_cores(fam(4, (0, 1))).holds


# ---------------------------------------------------------------- gamma checks

def test_gamma_star_empty_and_vacuous():
    rep = check_gamma_star(SetFamily(4, ()))
    assert rep.holds and rep.exhaustive and rep.tuples_tested == 0
    # no core crosses any member: singleton cores cross nothing
    assert check_gamma_star(ARCS4).holds


def test_gamma_failure_and_replay():
    # core {3,4} crosses {0,1,2,3} and its subset {0,3}; remainder {1,2} missing
    f = fam(6, (3, 4), (0, 1, 2, 3), (0, 3))
    rep = check_gamma(f)
    assert not rep.holds
    c, s0, *subs = rep.counterexample
    assert c in cores(f).members
    assert crosses(s0, c) and all(crosses(s, c) for s in subs)
    assert all(s < s0 for s in subs)
    remainder = s0.bits & ~c.bits
    for s in subs:
        remainder &= ~s.bits
    assert remainder != 0 and not f.contains_mask(remainder)
    # adding the remainder set repairs the property
    assert check_gamma(fam(6, (3, 4), (0, 1, 2, 3), (0, 3), (1, 2))).holds


def test_gamma_star_distinguishes_k_two():
    # gamma (k=1) holds but the pair of disjoint subsets leaves {2} uncovered
    members = [(3, 4, 6), (0, 1, 2, 3, 4), (0, 3), (1, 4), (1, 2), (0, 2)]
    f = fam(7, *members)
    assert check_gamma(f).holds
    rep = check_gamma_star(f)
    assert not rep.holds and rep.max_k == 2
    c, s0, s1, s2 = rep.counterexample
    assert {s1, s2} == {ns(7, 0, 3), ns(7, 1, 4)}
    assert not s1 & s2
    # repaired by adding the remainder
    assert check_gamma_star(fam(7, *(members + [(2,)]))).holds


def test_gamma_star_small_cut_residuals(rng):
    # residual families of small-cut families satisfy the remainder property
    for _ in range(10):
        g = random_graph(rng, 6, rng.uniform(0.2, 0.6))
        f = enumerate_small_cuts(g, 4)
        pairs = [(rng.randrange(6), (rng.randrange(5) + 1 + rng.randrange(6)) % 6) for _ in range(3)]
        links = _links(*(p for p in pairs if p[0] != p[1]))
        rep = check_gamma_star(residual(f, links), sample_budget=50_000)
        assert rep.holds


def _many_config_family(drop_remainder_size=None):
    """One core {5..10} crossed by {0..7} and by fifteen two-element subsets
    {x, c}, x < 5 <= c <= 7; every subset of {0..4} is a member so each of
    the 135 removal configurations leaves a member (or nothing) behind."""
    from itertools import combinations

    members = [sum(1 << v for v in range(5, 11)), (1 << 8) - 1]
    for x in range(5):
        for c in (5, 6, 7):
            members.append((1 << x) | (1 << c))
    for r in range(1, 6):
        if r == drop_remainder_size:
            continue
        for sub in combinations(range(5), r):
            members.append(sum(1 << v for v in sub))
    return SetFamily(12, members)


def test_gamma_star_exhaustive_tuple_count():
    rep = check_gamma_star(_many_config_family(), sample_budget=10_000)
    assert rep.holds and rep.exhaustive
    assert rep.tuples_tested == 135 and rep.max_k == 3


def test_gamma_star_sampling_mode():
    # budget below the 135 configurations: the exhaustive pass aborts and
    # sampling takes over, deterministically, finding no violation
    f = _many_config_family()
    rep = check_gamma_star(f, sample_budget=60, seed=4)
    assert rep.holds and not rep.exhaustive
    assert rep.tuples_tested > 60
    assert rep == check_gamma_star(f, sample_budget=60, seed=4)


def test_gamma_star_planted_violation():
    rep = check_gamma_star(_many_config_family(drop_remainder_size=4), sample_budget=10_000)
    assert not rep.holds
    c, s0, *subs = rep.counterexample
    remainder = s0.bits & ~c.bits
    for s in subs:
        remainder &= ~s.bits
    assert remainder != 0 and not _many_config_family(drop_remainder_size=4).contains_mask(remainder)


# ---------------------------------------------------------------- restriction closure

def test_restriction_closure(rng):
    # symmetry, pliability and structural submodularity survive residuals
    for _ in range(15):
        n = rng.randint(4, 7)
        g = random_graph(rng, n, rng.uniform(0.3, 0.8))
        values = [1, 2, 3, 4]
        f = enumerate_small_cuts(g, rng.choice(values))
        pairs = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 5))]
        links = _links(*(p for p in pairs if p[0] != p[1]))
        r = residual(f, links)
        assert check_symmetry(r).holds
        assert check_pliable(r).holds
        assert check_structural_submodularity(r).holds
        assert check_disjoint_cores(r).holds
        assert check_sparse_crossing(r).holds
