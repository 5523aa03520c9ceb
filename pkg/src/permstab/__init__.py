"""permstab: exact primitives for permutation stability experiments.

Free-group words and balls, finite actions with Hamming defects, coset
enumeration, generator and statistical metrics, hyperfinite certificates,
atomic invariant random subgroups with their finite models, and a
challenge/repair harness.  All ratios are exact fractions.
"""

from .words import (
    ConjugacyDecomposition,
    Word,
    ball,
    from_str,
    reduce,
    to_str,
    transfer_delta,
    verify_decomposition,
)
from .actions import (
    FiniteAction,
    Permutation,
    defect,
    disjoint_union,
    evaluate,
    fixed_fraction,
    hamming,
    is_solution,
    orbits,
    power,
    stabilizer_trace,
    trivial_action,
    tuple_distance,
)
from .cosets import (
    BudgetExhausted,
    CosetTable,
    GroupDoc,
    Presentation,
    catalog,
    class_data,
    conjugate_table,
    todd_coxeter,
)
from .metrics import (
    Bijection,
    TraceProfile,
    d_gen_exact,
    d_gen_upper,
    d_stat_trunc,
    gen_norm,
    local_profile,
)
from .hyperfinite import Decomposition, check, decompose
from .irs import (
    AtomicIRS,
    EmpiricalIRS,
    amplify,
    build_cosofic_action,
    cylinder_measure,
    irs_of_action,
    normal_chain_irs,
    shadow_profile,
    weakstar_dist_trunc,
)
from .lab import (
    Challenge,
    RepairReport,
    make_challenge,
    repair,
    run_experiment,
    standard_action,
    torus_action,
    validate_report,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
