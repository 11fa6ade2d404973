"""Exact-arithmetic toolkit for limiting mixed Hodge structures.

Subpackages by layer: ``linalg`` (Gaussian-rational matrices and canonical
subspaces), ``hodge`` (filtrations, Deligne bigradings), ``weights``
(monodromy weight filtrations, polarization certificates), ``sl2``
(triples, positivity cones, extension tori), ``symbolic``/``periods``
(polynomial period matrices, tau functions, monodromy multipliers), and
``cli``/``bundle`` (the ``lmhs`` command and its JSON formats).
"""

from .linalg import (
    GMatrix,
    GScalar,
    NoSolution,
    SolveResult,
    Subspace,
    solve_linear,
    subspace_algebra,
)
from .hodge import (
    Bigrading,
    DecreasingFiltration,
    IncreasingFiltration,
    LieBigrading,
    MixedHodgeStructure,
    PolarizedLattice,
    deligne_bigrading,
    induced_lie_bigrading,
    is_r_split,
    kappa,
    validate_mhs,
)
from .weights import (
    NilpotentCone,
    PolarizationReport,
    cone_weight_filtration,
    centralizer_filtration,
    defs_decomposition,
    maximal_weight_set,
    monodromy_weight_filtration,
    polarization_check,
    primitive_graded,
    reduced_limit,
    verify_weight_axioms,
    weight_equivalence,
)
from .sl2 import (
    AmpleConeResult,
    ExtensionSpace,
    LatticeData,
    Sl2Triple,
    TorusDecomposition,
    ample_cone_search,
    chern_form,
    cone_membership,
    extension_space,
    grading_element,
    sl2_complete,
    torus_decomposition,
)
from .symbolic import LogPolynomial, Symbol, TauExpression
from .periods import (
    SymbolicFrame,
    build_lift,
    factor_monodromy,
    horizontal_basis,
    horizontal_coefficients,
    ipr_check,
    log_differential_map,
    monodromy_action,
    multiplier,
    multiplier_closed_form,
    schubert_coordinate,
    tau,
)
from .genus2 import builtin_genus2

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
