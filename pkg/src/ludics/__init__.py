"""Computational ludics on finite designs: terms, reduction, paths, orthogonality and connectives."""

from .connectives import (
    LIBRARY,
    Connective,
    NegativeAction,
    beta_check_exhaustive,
    check_dual_decomposability_connective,
    check_harmony,
    enumerate_connectives,
    eta_condition_check,
    validate_connective,
)
from .interaction import (
    MultiDesign,
    check_dual_decomposability_paths,
    check_regularity,
    check_shuffle_decomposition,
    cut_multidesigns,
    iseq,
    msd_orthogonal,
    visitable,
)
from .orthogonality import AntiDesign, BehaviourWorkbench, orthogonal, orthogonal_pair
from .paths import Action, anti_view, biview, is_path, paths_of, shuffle, view
from .reduction import DEFAULT_FUEL, Converged, Diverged, FuelExhausted, head_normal_form, normalize, step
from .terms import (
    DAIMON,
    OMEGA,
    App,
    Branch,
    Daimon,
    Design,
    LudicsError,
    Omega,
    Signature,
    Sum,
    Var,
    alpha_eq,
    canonicalize,
    classify,
    substitute,
)

__version__ = "0.1.0"
