"""
Módulo de planejamento - topologia, perda de percurso, mapas de esquemas e perfis de taxa
"""
from .planner import (
    Topology,
    SchemeMap,
    MapCell,
    ProfilePoint,
    ganho_por_distancia,
    gains_from_topology,
    individual_scheme_map,
    sum_scheme_map,
    familia_esperada,
    celulas_inconsistentes,
    rate_profile_on_line,
    perfil_dataframe,
    exportar_perfil_csv,
    diagnostico_gap
)

__all__ = [
    'Topology',
    'SchemeMap',
    'MapCell',
    'ProfilePoint',
    'ganho_por_distancia',
    'gains_from_topology',
    'individual_scheme_map',
    'sum_scheme_map',
    'familia_esperada',
    'celulas_inconsistentes',
    'rate_profile_on_line',
    'perfil_dataframe',
    'exportar_perfil_csv',
    'diagnostico_gap'
]
