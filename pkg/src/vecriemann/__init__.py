"""Vector-valued Riemann and Henstock integration over computable space models."""

from .integration import (
    DivergenceError,
    FtcResult,
    IntegrabilityReport,
    IntegrationError,
    VectorFn,
    Verdict,
    adversarial_gap,
    cauchy_gap,
    continuity_modulus,
    ftc_check,
    henstock_integrate,
    indefinite_integral,
    integrate,
    riemann_sum,
)
from .oscillation import OscPoint, OscProfile, discontinuity_measure_upper, osc_interval, osc_point, osc_profile
from .partitions import (
    AnalyticGauge,
    ConstantGauge,
    InvalidGaugeError,
    NoFinePartitionError,
    PartitionError,
    PiecewiseGauge,
    TaggedPartition,
    cousin_fine,
    is_gauge_fine,
    mesh,
    tagged,
    uniform_partition,
)
from .spaces import (
    FiniteDim,
    InvalidInputError,
    NestedL1,
    SeqLp,
    SeqSup,
    SeqVec,
    SpaceMismatchError,
    StepFn,
    StepLp,
    add,
    norm,
    pair,
    quasi_constant,
    scale,
    unit,
    zero,
)

__version__ = "0.1.0"
