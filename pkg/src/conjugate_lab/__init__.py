"""Conjugate functions on the unit circle and the integrability of their exponentials."""

from .circle import (
    ArcSet,
    CircleGrid,
    GradedGrid,
    SampledFn,
    StepSymbol,
    TrigPoly,
    cell_average,
    essential_range_gap,
    rho,
    sample,
    scale_symbol,
)
from .conjugator import (
    ConjugationReport,
    conjugate_grid,
    conjugate_multiplier,
    conjugate_pv,
    conjugate_step_exact,
    conjugate_step_on_grid,
    cross_check,
)
from .distribution import (
    DecayFit,
    DistributionCurve,
    IntegrabilityVerdict,
    distribution_curve,
    empirical_curve,
    exp_integral,
    fit_decay,
    layer_cake,
    verdict,
    zygmund_upper_check,
)
from .errors import *  # noqa: F401,F403
from .poisson import (
    DiskPoint,
    HardyGrowthCurve,
    RadialProbe,
    hardy_growth,
    herglotz,
    outer_eval,
    poisson_extend,
    poisson_kernel,
    radial_probe,
)
from .series import (
    JumpSymbolSpec,
    SeriesValue,
    asymptote,
    constant_B,
    jump_conjugate,
    jump_symbol,
    loglog_cos_series,
    loglog_sin_series,
)
from .strip import LambdaParam, StripPoint, disk_to_strip, g_lambda, g_lambda_shift_check, strip_to_disk

__version__ = "0.1.0"
