"""
Script Principal - Demonstração do Planejador de MAC Cooperativo

Este script demonstra todo o fluxo:
1. Canal com enlace forte entre usuários
2. Taxa individual e taxa soma com fases fixas
3. Busca de fases (grade e interpolação)
4. Verificação pelo oráculo de força bruta
5. Regiões de taxa e ganhos sobre o MAC clássico
6. Mapa de esquemas e perfil de taxa
"""
import sys
from pathlib import Path

# Adiciona o diretório raiz ao path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.models import ChannelGains
from src.analytics import (
    OracleConfig,
    OracleObjective,
    classical_mac_region,
    envelope_region,
    gain_vs_mac,
    grid_search_sum,
    interpolate_individual,
    interpolate_sum,
    maximize_individual_fixed_alpha,
    maximize_sum_fixed_alphas,
    oracle_individual,
    oracle_sum,
    filtrar_pareto,
)
from src.planning import Topology, individual_scheme_map, rate_profile_on_line
from src.reports import (
    gerar_relatorio_busca,
    gerar_relatorio_ganhos,
    gerar_relatorio_mapa,
    gerar_relatorio_perfil,
    gerar_relatorio_regioes,
)
from src.utils import MockChannelGenerator, configurar_logging


def print_header(titulo: str):
    """Imprime cabeçalho formatado"""
    print("\n" + "=" * 80)
    print(titulo.center(80))
    print("=" * 80 + "\n")


def print_section(titulo: str):
    """Imprime seção"""
    print("\n" + "-" * 80)
    print(titulo)
    print("-" * 80)


def print_linhas(linhas):
    for linha in linhas:
        print(linha)


def main():
    """Função principal"""
    configurar_logging('WARNING')

    print_header("PLANEJADOR DE MAC GAUSSIANO HALF-DUPLEX COOPERATIVO")
    print("Dois usuários half-duplex trocam mensagens antes de transmitir")
    print("cooperativamente ao destino em três fases.\n")

    # ==========================================================================
    # ETAPA 1: CANAL
    # ==========================================================================
    print_section("ETAPA 1: Canal")

    ch = ChannelGains(g12=2.0, g21=2.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    print(f"✓ Canal simétrico: {ch.to_dict()}")

    gerador = MockChannelGenerator(seed=42)
    aleatorio = gerador.gerar_canal(familia=2)
    print(f"✓ Canal aleatório (família 2): g12={aleatorio.g12:.3f}, g21={aleatorio.g21:.3f}, "
          f"g10={aleatorio.g10:.3f}, g20={aleatorio.g20:.3f}")

    # ==========================================================================
    # ETAPA 2: FASES FIXAS
    # ==========================================================================
    print_section("ETAPA 2: Otimização com fases fixas")

    individual = maximize_individual_fixed_alpha(ch, 0.3)
    print(f"✓ R1 máx (alpha1=0.3): {individual.rate:.6f} bits/s/Hz, esquema {individual.case_id.value}")
    print(f"  Resíduo KKT: {individual.kkt_residual:.2e}")

    soma = maximize_sum_fixed_alphas(ch, 0.2, 0.2)
    print(f"✓ Soma máx (alpha1=alpha2=0.2): {soma.sum_rate:.6f} bits/s/Hz, esquema {soma.case_id.value}")
    print(f"  Resíduo KKT: {soma.kkt_residual:.2e}")

    # ==========================================================================
    # ETAPA 3: BUSCA DE FASES
    # ==========================================================================
    print_section("ETAPA 3: Busca de fases")

    print_linhas(gerar_relatorio_busca(interpolate_individual(ch)))
    print_linhas(gerar_relatorio_busca(interpolate_sum(ch)))
    print_linhas(gerar_relatorio_busca(grid_search_sum(ch, step=0.05)))

    # ==========================================================================
    # ETAPA 4: ORÁCULO
    # ==========================================================================
    print_section("ETAPA 4: Verificação por força bruta")

    cfg = OracleConfig(power_grid_points=32, objective=OracleObjective.INDIVIDUAL_R1, refinements=4)
    taxa_oraculo, _ = oracle_individual(ch, individual.fases.alpha1, cfg)
    print(f"✓ Individual: otimizador {individual.rate:.6f} x oráculo {taxa_oraculo:.6f}")

    cfg = OracleConfig(power_grid_points=16, objective=OracleObjective.SUM_RATE, refinements=3)
    taxa_oraculo, _ = oracle_sum(ch, soma.fases.alpha1, soma.fases.alpha2, cfg)
    print(f"✓ Soma: otimizador {soma.sum_rate:.6f} x oráculo {taxa_oraculo:.6f}")

    # ==========================================================================
    # ETAPA 5: REGIÕES E GANHOS
    # ==========================================================================
    print_section("ETAPA 5: Regiões de taxa e ganhos")

    alcancavel = envelope_region(ch, alpha_grid_step=0.1, power_grid_points=3)
    mac = filtrar_pareto(classical_mac_region(ch).corners)
    print_linhas(gerar_relatorio_regioes(alcancavel, mac))
    print_linhas(gerar_relatorio_ganhos(gain_vs_mac(ch)))

    # ==========================================================================
    # ETAPA 6: PLANEJAMENTO
    # ==========================================================================
    print_section("ETAPA 6: Mapa de esquemas e perfil de taxa")

    topologia = Topology()
    mapa = individual_scheme_map(topologia, alpha1=0.5, resolution=21)
    print_linhas(gerar_relatorio_mapa(mapa))

    perfil = rate_profile_on_line(topologia, samples=21)
    print_linhas(gerar_relatorio_perfil(perfil))

    print_header("DEMONSTRAÇÃO CONCLUÍDA")
    print("Use 'python -m src.cli --help' para a linha de comando.")


if __name__ == "__main__":
    main()
