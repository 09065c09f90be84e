"""
Módulo de modelos - canal, variáveis de alocação e restrições de taxa
"""
from .channel_model import (
    ChannelGains,
    PhaseDurations,
    PowerAllocation,
    RateConstraints,
    SchemeCase,
    ORDEM_POTENCIAS,
    TOLERANCIA_POTENCIA,
    capacity,
    eval_zeta,
    eval_constraints,
    eval_constraints_array,
    classical_mac_allocation,
    outer_bound_gains,
    ajustar_potencia
)
from .errors import (
    ChannelModelError,
    InvalidParameterError,
    DegeneratePhaseError,
    InfeasibleAllocationError,
    SingularChannelError,
    SingularTopologyError,
    NumericalFailureError
)

__all__ = [
    'ChannelGains',
    'PhaseDurations',
    'PowerAllocation',
    'RateConstraints',
    'SchemeCase',
    'ORDEM_POTENCIAS',
    'TOLERANCIA_POTENCIA',
    'capacity',
    'eval_zeta',
    'eval_constraints',
    'eval_constraints_array',
    'classical_mac_allocation',
    'outer_bound_gains',
    'ajustar_potencia',
    'ChannelModelError',
    'InvalidParameterError',
    'DegeneratePhaseError',
    'InfeasibleAllocationError',
    'SingularChannelError',
    'SingularTopologyError',
    'NumericalFailureError'
]
