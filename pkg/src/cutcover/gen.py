"""Deterministic random-instance generation.

Every instance is a pure function of (seed, index): one 64-bit mix seeds a
private RNG per index, so batches are reproducible byte-for-byte and
workers can generate independently.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GenerationExhausted
from .exact import DEFAULT_EXACT_LIMIT
from .family import DEFAULT_SAMPLE_BUDGET, SetFamily
from .graph import CapGraph, DEFAULT_ENUM_LIMIT, Instance, enumerate_small_cuts, nontrivial_cut_values

_MASK64 = (1 << 64) - 1


def _mix64(seed: int, index: int) -> int:
    """splitmix64 round over seed and index; stable across platforms."""
    x = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


@dataclass
class RunConfig:
    """Batch parameters; the seed fully determines every generated instance."""

    seed: int = 0
    count: int = 1
    n_range: tuple = (4, 10)
    density_range: tuple = (0.3, 0.7)
    cap_range: tuple = (1, 10)
    link_range: tuple = (3, 14)
    cost_range: tuple = (1, 20)
    lambda_policy: str = "quantile:0.5"
    audit_mode: str = "per-phase"
    sample_budget: int = DEFAULT_SAMPLE_BUDGET
    enum_limit: int = DEFAULT_ENUM_LIMIT
    exact_limit: int = DEFAULT_EXACT_LIMIT
    allow_infeasible: bool = False
    max_retries: int = 200
    fail_fast: bool = False
    workers: int = 1
    output: str | None = None
    csv_output: str | None = None

    def __post_init__(self):
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.count < 0:
            raise ValueError("count must be non-negative")
        for name in ("n_range", "density_range", "cap_range", "link_range", "cost_range"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name} is empty: {lo} > {hi}")
        if self.n_range[0] < 2:
            raise ValueError("instances need at least two vertices")
        if self.audit_mode not in ("per-phase", "final"):
            raise ValueError("audit_mode must be 'per-phase' or 'final'")
        _parse_lambda_policy(self.lambda_policy)


def _parse_lambda_policy(policy: str):
    kind, _, arg = policy.partition(":")
    if kind == "fixed":
        return "fixed", Fraction(arg)
    if kind == "quantile":
        q = Fraction(arg)
        if not 0 <= q <= 1:
            raise ValueError(f"quantile must lie in [0, 1], got {arg}")
        return "quantile", q
    raise ValueError(f"lambda policy must be 'fixed:<q>' or 'quantile:<f>', got {policy!r}")


def _pick_threshold(g: CapGraph, policy_kind: str, policy_arg: Fraction):
    if policy_kind == "fixed":
        return policy_arg
    values = nontrivial_cut_values(g)
    if len(values) < 2:
        return None
    idx = int(policy_arg * (len(values) - 1))
    return values[max(1, min(len(values) - 1, idx))]


def _family_feasible(family: SetFamily, links) -> bool:
    for m in family.masks:
        if not any(((m >> l.a) ^ (m >> l.b)) & 1 for l in links):
            return False
    return True


def gen_instance(cfg: RunConfig, index: int) -> Instance:
    """Instance number `index` of the batch; deterministic in (seed, index).

    Feasibility (every small cut crossed by some link) is guaranteed by
    rejection sampling unless cfg.allow_infeasible, in which case the first
    sample is returned as-is.
    """
    rng = random.Random(_mix64(cfg.seed, index))
    policy_kind, policy_arg = _parse_lambda_policy(cfg.lambda_policy)
    for _ in range(cfg.max_retries):
        n = rng.randint(*cfg.n_range)
        density = rng.uniform(*cfg.density_range)
        edges = []
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < density:
                    edges.append((u, v, Fraction(rng.randint(*cfg.cap_range))))
        graph = CapGraph(n, tuple(edges))
        threshold = _pick_threshold(graph, policy_kind, policy_arg)
        if threshold is None:
            continue
        family = enumerate_small_cuts(graph, threshold, cfg.enum_limit)
        for _ in range(20):
            num_links = rng.randint(*cfg.link_range)
            specs = []
            for _ in range(num_links):
                a = rng.randrange(n)
                b = rng.randrange(n - 1)
                if b >= a:
                    b += 1
                specs.append((a, b, Fraction(rng.randint(*cfg.cost_range))))
            inst = Instance.build(graph, threshold, specs)
            if cfg.allow_infeasible or _family_feasible(family, inst.links):
                return inst
    raise GenerationExhausted(
        f"no feasible instance for (seed={cfg.seed}, index={index}) "
        f"after {cfg.max_retries} attempts"
    )
