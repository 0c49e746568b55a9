"""Para-complex Riemannian geometry: metrics, characteristic connections,
curvature and Einstein diagnostics, checked against a real-coordinate oracle."""

from .core import EPS_INV, ParaComplex, PCArray, PCMatrix, conj_pc, invert_pc, matrix_inverse_pc, mul_pc, split_pc, unsplit_pc
from .errors import (
    AsymmetricInput,
    CheckError,
    DegenerateError,
    DegeneratePlane,
    ExprSyntaxError,
    IndexOutOfRange,
    InputError,
    JacobiViolation,
    NoSignWorks,
    NonRealScalar,
    NotAntisymmetric,
    NotNorden,
    NotSemisimple,
    NotSemisimpleWarning,
    ParaholoError,
    SchemaError,
    SingularProjection,
    SingularRealMetric,
    ZeroDivisor,
)
from .expr import Expression, conj_expr, diff_expr, eval_expr, is_paraholomorphic_expr, parse_expr
from .metric import (
    IOperator,
    ParaMetric,
    RealizedMetric,
    build_metric,
    check_norden,
    complexify_metric,
    default_samples,
    is_paraholomorphic_metric,
    realize_metric,
    twin_metric,
)
from .connection import (
    IndexedTensor,
    characteristic_connection,
    christoffel,
    fundamental_phi,
    fundamental_psi,
    is_paraholomorphic_connection,
    levi_civita_full,
    verify_characteristic_axioms,
)
from .curvature import (
    classify_characteristic_einstein,
    curvature_components,
    divergence_einstein,
    einstein_tensor,
    lower_curvature,
    real_ricci_oracle,
    ricci_components,
    scalar_curvature,
    sectional_curvature,
)
from .einstein import (
    EinsteinReport,
    check_theorem_correspondence,
    extract_einstein_constant,
    scalar_curvatures,
    twin_transfer,
)
from .liegroup import (
    LambdaFrame,
    LieAlgebraData,
    bch_lambda_series,
    invariant_metric,
    lie_connection,
    lie_curvature,
    lie_lowered_and_sectional,
    lie_ricci_and_einstein,
    mc_check,
    para_kahler_norden_realization,
    parallel_curvature_check,
    validate_structure,
)

__version__ = "0.1.0"
