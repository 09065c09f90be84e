"""
Módulo de analytics - otimizadores de taxa, regiões, busca de fases e oráculo
"""
from .individual_optimizer import (
    IndividualSolution,
    Table1Definitions,
    classificar_individual,
    maximize_individual_fixed_alpha,
    table1_definitions
)
from .sum_optimizer import (
    SumSolution,
    GainReport,
    Table2Definitions,
    classificar_soma,
    resolver_soma_convexo,
    maximize_sum_fixed_alphas,
    maximize_sum_symmetric,
    gain_vs_mac,
    table2_definitions
)
from .augmented_scheme import (
    AugmentedConstraints,
    AugmentedSolution,
    augmented_constraints,
    maximize_sum_augmented
)
from .rate_region import (
    RateRegion,
    region_for_allocation,
    classical_mac_region,
    filtrar_pareto,
    funcao_suporte,
    apice_soma,
    exportar_fronteira_csv,
    envelope_region,
    outer_bound_region
)
from .phase_optimizer import (
    SearchMethod,
    PhaseSearchResult,
    grid_search_individual,
    grid_search_sum,
    interpolate_individual,
    interpolate_sum,
    com_erro_aproximado,
    diagnostico_unimodalidade,
    symmetric_sweep
)
from .lookup_table import LookupTable
from .oracle import (
    OracleObjective,
    OracleConfig,
    oracle_individual,
    oracle_sum,
    run_oracle,
    diagnostico_convergencia,
    registro_ouro,
    salvar_ouro,
    carregar_ouro
)
from .kkt import residuo_kkt_individual, residuo_kkt_soma

__all__ = [
    'IndividualSolution',
    'Table1Definitions',
    'classificar_individual',
    'maximize_individual_fixed_alpha',
    'table1_definitions',
    'SumSolution',
    'GainReport',
    'Table2Definitions',
    'classificar_soma',
    'resolver_soma_convexo',
    'maximize_sum_fixed_alphas',
    'maximize_sum_symmetric',
    'gain_vs_mac',
    'table2_definitions',
    'AugmentedConstraints',
    'AugmentedSolution',
    'augmented_constraints',
    'maximize_sum_augmented',
    'RateRegion',
    'region_for_allocation',
    'classical_mac_region',
    'filtrar_pareto',
    'funcao_suporte',
    'apice_soma',
    'exportar_fronteira_csv',
    'envelope_region',
    'outer_bound_region',
    'SearchMethod',
    'PhaseSearchResult',
    'grid_search_individual',
    'grid_search_sum',
    'interpolate_individual',
    'interpolate_sum',
    'com_erro_aproximado',
    'diagnostico_unimodalidade',
    'symmetric_sweep',
    'LookupTable',
    'OracleObjective',
    'OracleConfig',
    'oracle_individual',
    'oracle_sum',
    'run_oracle',
    'diagnostico_convergencia',
    'registro_ouro',
    'salvar_ouro',
    'carregar_ouro',
    'residuo_kkt_individual',
    'residuo_kkt_soma'
]
