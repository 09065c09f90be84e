"""
Módulo de Relatórios e Visualizações
"""

from .graph_generator import GraphGenerator
from .dashboard_generator import DashboardGenerator
from .relatorio_texto import (
    gerar_relatorio_mapa,
    gerar_relatorio_perfil,
    gerar_relatorio_regioes,
    gerar_relatorio_ganhos,
    gerar_relatorio_busca,
    gerar_relatorio_varredura
)

__all__ = [
    'GraphGenerator',
    'DashboardGenerator',
    'gerar_relatorio_mapa',
    'gerar_relatorio_perfil',
    'gerar_relatorio_regioes',
    'gerar_relatorio_ganhos',
    'gerar_relatorio_busca',
    'gerar_relatorio_varredura'
]
