"""
Resumos em texto (listas de linhas) para terminal e arquivos .txt
"""
from typing import List, Optional, Sequence, Tuple

import pandas as pd

from src.analytics import GainReport, PhaseSearchResult, apice_soma
from src.planning import ProfilePoint, SchemeMap, diagnostico_gap

Ponto = Tuple[float, float]
LARGURA = 80


def _cabecalho(titulo: str) -> List[str]:
    return ["=" * LARGURA, titulo, "=" * LARGURA]


def gerar_relatorio_mapa(mapa: SchemeMap) -> List[str]:
    """Contagem e participação de cada esquema no mapa"""
    linhas = _cabecalho(f"MAPA DE ESQUEMAS ({mapa.objective})")
    total = len(mapa.cells)
    xmin, xmax, ymin, ymax = mapa.grid_bounds
    linhas.append(f"Grade: {mapa.resolution}x{mapa.resolution} em x=[{xmin}, {xmax}], y=[{ymin}, {ymax}]")
    for rotulo, quantidade in mapa.histograma().items():
        linhas.append(f"  {rotulo:<24} {quantidade:>7d}  ({100.0 * quantidade / total:5.1f}%)")
    return linhas


def gerar_relatorio_perfil(pontos: Sequence[ProfilePoint]) -> List[str]:
    """Ganho médio sobre o MAC e distância ao limite externo ao longo do perfil"""
    linhas = _cabecalho("PERFIL DE TAXA")
    if not pontos:
        linhas.append("Nenhuma amostra válida")
        return linhas
    ganho = [p.rate - p.baseline_rate for p in pontos]
    gap = diagnostico_gap(pontos)
    linhas += [
        f"Amostras: {len(pontos)}",
        f"Ganho médio sobre o MAC: {sum(ganho) / len(ganho):.6f}",
        f"Maior ganho sobre o MAC: {max(ganho):.6f}",
        f"Maior distância ao limite externo: {max(gap['gaps']):.6f}",
        f"Distância ao limite decresce com d10/d12: {'sim' if gap['monotono'] else 'não'}"
        f" ({gap['violacoes']} violações)",
    ]
    return linhas


def gerar_relatorio_regioes(alcancavel: Sequence[Ponto], mac: Sequence[Ponto],
                            limite_externo: Optional[Sequence[Ponto]] = None) -> List[str]:
    """Ápices de taxa soma e taxas individuais máximas de cada região"""
    linhas = _cabecalho("REGIÕES DE TAXA")
    regioes = [('Cooperativo', alcancavel), ('MAC clássico', mac)]
    if limite_externo is not None:
        regioes.append(('Limite externo', limite_externo))
    for nome, pontos in regioes:
        linhas.append(
            f"  {nome:<16} soma={apice_soma(pontos):.6f}  "
            f"R1 máx={max(p[0] for p in pontos):.6f}  R2 máx={max(p[1] for p in pontos):.6f}"
        )
    return linhas


def gerar_relatorio_ganhos(relatorio: GainReport) -> List[str]:
    """Ganhos sobre o MAC clássico, assintóticos e nas potências do canal"""
    linhas = _cabecalho("GANHOS SOBRE O MAC CLÁSSICO")
    for chave, valor in relatorio.to_dict().items():
        linhas.append(f"  {chave:<20} {valor:.6f}")
    return linhas


def gerar_relatorio_busca(resultado: PhaseSearchResult) -> List[str]:
    """Fases escolhidas, taxa e método de uma busca de fases"""
    linhas = _cabecalho(f"BUSCA DE FASES ({resultado.method.value})")
    fases = resultado.best_alphas
    linhas += [
        f"alpha1={fases.alpha1:.4f}  alpha2={fases.alpha2:.4f}  alpha3={fases.alpha3:.4f}",
        f"Taxa: {resultado.best_rate:.6f}",
        f"Pontos avaliados: {len(resultado.samples)}",
    ]
    if resultado.solution is not None:
        linhas.append(f"Esquema: {resultado.solution.case_id.value}")
    if resultado.approx_error_bound is not None:
        linhas.append(f"Diferença para a grade: {resultado.approx_error_bound:.6f}")
    return linhas


def gerar_relatorio_varredura(df: pd.DataFrame) -> List[str]:
    """Erros da interpolação frente à grade fina"""
    linhas = _cabecalho("VARREDURA SIMÉTRICA")
    for chave, coluna in (('alpha individual', 'erro_alpha_ind'), ('alpha soma', 'erro_alpha_soma')):
        linhas.append(f"  erro relativo máximo de {chave:<18} {100.0 * df[coluna].max():6.2f}%")
    for chave, coluna in (('taxa individual', 'erro_taxa_ind'), ('taxa soma', 'erro_taxa_soma')):
        linhas.append(f"  diferença máxima de {chave:<24} {df[coluna].max():.6f}")
    linhas.append(f"  canais unimodais (individual/soma): "
                  f"{int(df['unimodal_ind'].sum())}/{int(df['unimodal_soma'].sum())} de {len(df)}")
    return linhas
