"""Wave-packet and stationary-scattering toolkit for quantum reflection of
slow atoms from a static or harmonically oscillating attractive surface."""

__version__ = "0.1.0"

from .errors import (
    ConfigurationError,
    EvanescentTransmissionError,
    ExtrapolationUnavailable,
    IntegrationFailure,
    NumericalBreakdownError,
    QReflectError,
    StationarityTimeout,
    UndefinedTransformError,
)
from .grid import (
    AbsorberSpec,
    GridSpec,
    PacketSpec,
    WaveField,
    calibrate_absorber,
    damping_mask,
    gaussian_packet,
)
from .potential import (
    PotentialParams,
    casimir_vdw,
    casimir_vdw_derivative,
    continued_potential,
    oscillating_potential,
)
from .propagator import (
    FixedTime,
    PropagationResult,
    SnapshotSpec,
    Stationary,
    TridiagonalOperator,
    build_hamiltonian,
    cn_step,
    propagate,
)
from .spectral import (
    MomentumSpectrum,
    SidebandReport,
    ZDistribution,
    inverse_momentum_spectrum,
    momentum_spectrum,
    reflectivity,
    sideband_decompose,
    z_transform,
)
from .stationary import ScatteringSolution, solve_scattering, stationary_reflectivity
