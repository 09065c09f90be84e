"""
Script de Demonstração - Geração de Relatórios

Este script demonstra o uso dos módulos de relatórios:
1. Gráficos PNG (regiões, mapas, perfil e varredura de fases)
2. Dashboard HTML interativo (regiões, mapas e perfil)
3. Resumos em texto
"""

import sys
from pathlib import Path

import numpy as np

# Adiciona o diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent))

from src.models import ChannelGains
from src.analytics import (
    classical_mac_region,
    envelope_region,
    filtrar_pareto,
    outer_bound_region,
    symmetric_sweep
)
from src.planning import Topology, individual_scheme_map, rate_profile_on_line, sum_scheme_map
from src.reports import (
    DashboardGenerator,
    GraphGenerator,
    gerar_relatorio_mapa,
    gerar_relatorio_perfil,
    gerar_relatorio_regioes,
    gerar_relatorio_varredura
)
from src.utils import configurar_logging

SAIDA = Path("output")


def preparar_dados_exemplo(workers=None):
    """Calcula regiões, mapas, perfil e varredura de exemplo"""
    print("\n" + "=" * 80)
    print("PREPARANDO DADOS DE EXEMPLO".center(80))
    print("=" * 80 + "\n")

    ch = ChannelGains(g12=2.0, g21=2.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    alcancavel = envelope_region(ch, alpha_grid_step=0.05, power_grid_points=4, workers=workers)
    limite = outer_bound_region(ch, alpha_grid_step=0.05, power_grid_points=4, workers=workers)
    mac = filtrar_pareto(classical_mac_region(ch).corners)
    print(f"✓ Regiões: {len(alcancavel)} pontos alcançáveis, {len(limite)} no limite externo")

    topologia = Topology()
    mapas = [
        individual_scheme_map(topologia, alpha1=0.5, resolution=41, workers=workers),
        sum_scheme_map(topologia, alpha1=0.2, alpha2=0.2, resolution=41, workers=workers),
    ]
    print(f"✓ {len(mapas)} mapas de esquemas")

    perfil = rate_profile_on_line(topologia, line=((-2.0, 0.0), (2.0, 0.0)), samples=41, workers=workers)
    print(f"✓ Perfil com {len(perfil)} amostras")

    varredura = symmetric_sweep(np.linspace(1.5, 10.0, 8), step=0.01, workers=workers)
    print(f"✓ Varredura simétrica com {len(varredura)} canais")

    return {
        'alcancavel': alcancavel,
        'mac': mac,
        'limite_externo': limite,
        'mapas': mapas,
        'perfil': perfil,
        'varredura': varredura,
    }


def demo_graficos(dados):
    """Gera os gráficos PNG"""
    print("\n" + "=" * 80)
    print("GRÁFICOS PNG".center(80))
    print("=" * 80 + "\n")

    gerador = GraphGenerator(output_dir=str(SAIDA / "graficos"), dpi=150)
    graficos = gerador.gerar_todos_graficos(dados)
    for caminho in graficos:
        print(f"✓ {caminho}")
    return graficos


def demo_dashboard(dados):
    """Gera o dashboard HTML"""
    print("\n" + "=" * 80)
    print("DASHBOARD HTML".center(80))
    print("=" * 80 + "\n")

    gerador = DashboardGenerator(output_dir=str(SAIDA / "dashboards"))
    caminho = gerador.gerar_dashboard(
        dados['mapas'],
        {'Perfil sobre o eixo dos usuários': dados['perfil']},
        regioes={chave: dados[chave] for chave in ('alcancavel', 'mac', 'limite_externo')},
    )
    print(f"✓ Dashboard salvo: {caminho}")
    print("  Abra o arquivo no navegador para visualizar")
    return caminho


def demo_resumos(dados):
    """Imprime e salva os resumos em texto"""
    print("\n" + "=" * 80)
    print("RESUMOS".center(80))
    print("=" * 80 + "\n")

    linhas = gerar_relatorio_regioes(dados['alcancavel'], dados['mac'], dados['limite_externo'])
    for mapa in dados['mapas']:
        linhas += gerar_relatorio_mapa(mapa)
    linhas += gerar_relatorio_perfil(dados['perfil'])
    linhas += gerar_relatorio_varredura(dados['varredura'])
    print("\n".join(linhas))

    caminho = SAIDA / "resumo.txt"
    caminho.parent.mkdir(parents=True, exist_ok=True)
    caminho.write_text("\n".join(linhas) + "\n", encoding="utf-8")
    return caminho


def main():
    """Executa todas as demonstrações"""
    configurar_logging('WARNING')
    dados = preparar_dados_exemplo()
    demo_graficos(dados)
    demo_dashboard(dados)
    demo_resumos(dados)

    print("\n" + "=" * 80)
    print(f"Arquivos gerados em {SAIDA.resolve()}")
    print("=" * 80)


if __name__ == "__main__":
    main()
