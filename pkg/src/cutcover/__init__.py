"""cutcover: cover every small cut of a capacitated graph with priced links.

A primal-dual solver (phased uniform dual growth plus reverse delete) for
the problem of covering all non-trivial cuts of capacity below a threshold,
together with an exact branch-and-bound oracle and a certification suite
that audits the structural facts the solver's factor-5 guarantee rests on:
disjoint cores, sparse crossing, the remainder properties of residual
families, and the two-per-core bound on crossing witness sets.
"""

from .errors import (
    CutCoverError,
    GenerationExhausted,
    GroundSetTooLarge,
    Infeasible,
    NotLaminar,
    SearchBudgetExceeded,
    TooManyLinks,
    WitnessSearchExhausted,
    ZeroOptimumViolation,
)
from .graph import (
    CapGraph,
    Instance,
    Link,
    NodeSet,
    covers,
    crosses,
    cut_capacity,
    delta_links,
    enumerate_small_cuts,
    incremental_cut_scan,
    nontrivial_cut_values,
)
from .family import (
    PropertyReport,
    SetFamily,
    check_disjoint_cores,
    check_gamma,
    check_gamma_star,
    check_pliable,
    check_sparse_crossing,
    check_structural_submodularity,
    check_symmetry,
    cores,
    residual,
)
from .pd import DualState, PhaseTrace, SolveResult, dual_feasible, grow_phase, reverse_delete, solve
from .certify import (
    AuditReport,
    LaminarFamily,
    WitnessAssignment,
    WitnessTree,
    audit_run,
    build_tree,
    crossing_density_audit,
    find_witness_laminar,
    minimal_cover,
    psi_map,
)
from .exact import ExactResult, exact_optimum, ratio
from .gen import RunConfig, gen_instance

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "CapGraph",
    "CutCoverError",
    "DualState",
    "ExactResult",
    "GenerationExhausted",
    "GroundSetTooLarge",
    "Infeasible",
    "Instance",
    "LaminarFamily",
    "Link",
    "NodeSet",
    "NotLaminar",
    "PhaseTrace",
    "PropertyReport",
    "RunConfig",
    "SearchBudgetExceeded",
    "SetFamily",
    "SolveResult",
    "TooManyLinks",
    "WitnessAssignment",
    "WitnessSearchExhausted",
    "WitnessTree",
    "ZeroOptimumViolation",
    "audit_run",
    "build_tree",
    "check_disjoint_cores",
    "check_gamma",
    "check_gamma_star",
    "check_pliable",
    "check_sparse_crossing",
    "check_structural_submodularity",
    "check_symmetry",
    "cores",
    "covers",
    "crosses",
    "crossing_density_audit",
    "cut_capacity",
    "delta_links",
    "dual_feasible",
    "enumerate_small_cuts",
    "exact_optimum",
    "find_witness_laminar",
    "gen_instance",
    "grow_phase",
    "incremental_cut_scan",
    "minimal_cover",
    "nontrivial_cut_values",
    "psi_map",
    "ratio",
    "residual",
    "reverse_delete",
    "solve",
]
