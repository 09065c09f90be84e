"""
Módulo de utilitários
"""
from .channel_generator import MockChannelGenerator
from .config import DEFAULT_CONFIG, SolverConfig
from .logging_config import configurar_logging
from .parallel import mapear_paralelo, resolver_workers

__all__ = [
    'MockChannelGenerator',
    'DEFAULT_CONFIG',
    'SolverConfig',
    'configurar_logging',
    'mapear_paralelo',
    'resolver_workers'
]
