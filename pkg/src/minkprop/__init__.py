"""minkprop: generalized densities on Minkowski momentum and position space.

Mass-shell Leray densities, principal-value pole families, distributional
Fourier transforms, the Klein-Gordon/Weyl/Dirac propagator family -- all
realized as pairing functionals against a Fourier-closed family of
Gaussian-Hermite test functions -- plus the emergence of the commutator
propagator from graded commutators of free quantum fields on a
discretized Fock space.
"""

from __future__ import annotations

from ._kernels import BACKEND, HAS_NUMBA
from .core import (
    MINKOWSKI,
    FourVector,
    Mass,
    Metric,
    duality_pairing,
    energy_on_shell,
    minkowski_square,
)
from .densities_1d import Dist1d, pair_1d, verify_ft_table
from .dirac import (
    GAMMA,
    GammaAlgebra,
    MatPairing,
    dirac_residual,
    gamma_sharp,
    pair_dirac_family,
    pair_dirac_propagator,
)
from .fock import (
    FockMatrix,
    LatticeSpec,
    OpExpr,
    antifield_expr,
    ccr_suite,
    commutator_value,
    commutator_vs_propagator,
    field_expr,
    generator,
    graded_commutator,
    matrix_realize,
    multiply,
    normal_order_free,
)
from .fourier import TransformedDist, pair_transformed
from .mass_shell import MomShellDist, pair_shell_dist
from .propagators import (
    ELEMENTARY_TAGS,
    PROP_TAGS,
    SHELL_TAGS,
    PropKind,
    kg_residual,
    pair_propagator,
    pair_propagator_family,
    smeared_value,
)
from .quadrature import PairingResult, QuadConfig
from .testfns import TestFn, TestFnBundle, random_testfn

__version__ = "1.0.0"

__all__ = [
    "BACKEND",
    "HAS_NUMBA",
    "MINKOWSKI",
    "FourVector",
    "Mass",
    "Metric",
    "duality_pairing",
    "energy_on_shell",
    "minkowski_square",
    "Dist1d",
    "pair_1d",
    "verify_ft_table",
    "GAMMA",
    "GammaAlgebra",
    "MatPairing",
    "dirac_residual",
    "gamma_sharp",
    "pair_dirac_family",
    "pair_dirac_propagator",
    "FockMatrix",
    "LatticeSpec",
    "OpExpr",
    "antifield_expr",
    "ccr_suite",
    "commutator_value",
    "commutator_vs_propagator",
    "field_expr",
    "generator",
    "graded_commutator",
    "matrix_realize",
    "multiply",
    "normal_order_free",
    "TransformedDist",
    "pair_transformed",
    "MomShellDist",
    "pair_shell_dist",
    "ELEMENTARY_TAGS",
    "PROP_TAGS",
    "SHELL_TAGS",
    "PropKind",
    "kg_residual",
    "pair_propagator",
    "pair_propagator_family",
    "smeared_value",
    "PairingResult",
    "QuadConfig",
    "TestFn",
    "TestFnBundle",
    "random_testfn",
    "__version__",
]
