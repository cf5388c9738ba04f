"""Exactly solvable quantum systems from deformed classical polynomial families.

The package constructs, over exact rational arithmetic, the rationally
extended radial-oscillator and trigonometric systems whose eigenfunctions
involve exceptional Laguerre/Jacobi-type polynomial families, and verifies
them three independent ways: exact polynomial identities, numerical
orthogonality under the deformed weights, and a finite-difference eigensolver.
"""

from .classical import (
    IDENTITIES,
    TheoremHypothesisError,
    ZeroCountPrediction,
    binomial,
    jacobi,
    jacobi_is_degree_degenerate,
    klein_E,
    laguerre,
    nodeless_condition,
    predict_zero_count,
    verify_identity,
)
from .polycore import (
    ETA,
    IncompatiblePrefactorError,
    IndeterminateRootCountError,
    Interval,
    Poly,
    QuasiPoly,
    Rational,
    quasi_extract,
    rat,
    sturm_count,
)
from .quadrature import (
    GramReport,
    QuadRule,
    QuadratureConvergenceError,
    gram,
    inner_product,
    integrate,
    make_rule,
)
from .spectral import (
    GridSpec,
    SpectrumReport,
    Tridiag,
    compare_spectrum,
    default_grid,
    discretize,
    eigen_lowest,
    tridiag_from_potential,
)
from .systems import (
    Case,
    ConstructionError,
    NodelessnessError,
    ParameterError,
    Params,
    Prepotential,
    WeightExponents,
    XSystem,
    build_system,
    energy,
    exceptional_poly,
    family_energy,
    shifted_form_poly,
    level_poly,
    ode_residual,
    potential_eval,
    proportionality,
    wavefunction_eval,
    weight_exponents,
)
from .verify import SUITES, VerifyOutcome, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # exact core
    "Rational", "rat", "Poly", "ETA", "Interval", "QuasiPoly", "quasi_extract",
    "sturm_count", "IncompatiblePrefactorError", "IndeterminateRootCountError",
    # classical families
    "laguerre", "jacobi", "jacobi_is_degree_degenerate", "binomial",
    "IDENTITIES", "verify_identity", "klein_E", "predict_zero_count",
    "nodeless_condition", "ZeroCountPrediction", "TheoremHypothesisError",
    # systems
    "Case", "Params", "XSystem", "Prepotential", "WeightExponents",
    "build_system", "energy", "family_energy", "exceptional_poly", "shifted_form_poly",
    "level_poly", "proportionality", "ode_residual", "potential_eval",
    "wavefunction_eval", "weight_exponents",
    "ParameterError", "NodelessnessError", "ConstructionError",
    # quadrature
    "QuadRule", "make_rule", "integrate", "inner_product", "gram",
    "GramReport", "QuadratureConvergenceError",
    # spectral
    "GridSpec", "Tridiag", "tridiag_from_potential", "discretize",
    "eigen_lowest", "compare_spectrum", "default_grid", "SpectrumReport",
    # verification suites
    "SUITES", "run_suite", "VerifyOutcome",
]
