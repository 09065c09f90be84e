"""
Regiões de taxa: polígono de uma alocação, MAC clássico, envelope alcançável e limite externo

O envelope é a união, sobre uma grade de fases e potências, das regiões de
cada alocação. A fronteira é obtida por escalarização com pesos em [0, 1]
(a região é convexa por compartilhamento de tempo) seguida de filtro de Pareto.
"""
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.models import (
    ChannelGains,
    ChannelModelError,
    DegeneratePhaseError,
    InvalidParameterError,
    PhaseDurations,
    PowerAllocation,
    capacity,
    eval_constraints,
    eval_constraints_array,
    outer_bound_gains,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig
from src.utils.parallel import mapear_paralelo

from .individual_optimizer import maximize_individual_fixed_alpha
from .sum_optimizer import maximize_sum_fixed_alphas, resolver_soma_convexo

logger = logging.getLogger(__name__)

Ponto = Tuple[float, float]
GrupoCandidato = Tuple[PhaseDurations, np.ndarray]

# Coincidência de vértices
TOL_VERTICE = 1e-12


@dataclass(frozen=True)
class RateRegion:
    """
    Região {R1 <= J1, R2 <= J2, R1 + R2 <= smin, R1 >= 0, R2 >= 0}

    Atributos:
        j1: Limite de R1
        j2: Limite de R2
        smin: Limite de R1 + R2 (menor entre S1..S4)
        corners: Vértices em sentido anti-horário a partir de (0, 0)
    """
    j1: float
    j2: float
    smin: float
    corners: Tuple[Ponto, ...]

    @classmethod
    def from_constraints(cls, j1: float, j2: float, smin: float) -> 'RateRegion':
        """Constrói a região calculando os vértices por interseção de retas"""
        for nome, valor in (('j1', j1), ('j2', j2), ('smin', smin)):
            if not math.isfinite(valor) or valor < 0:
                raise InvalidParameterError(f"{nome} deve ser finito e >= 0, recebido {valor}")
        a, b = min(j1, smin), min(j2, smin)
        candidatos = [
            (0.0, 0.0),
            (a, 0.0),
            (a, min(b, smin - a)),
            (min(a, smin - b), b),
            (0.0, b),
        ]
        vertices: List[Ponto] = []
        for ponto in candidatos:
            ponto = (float(ponto[0]), float(ponto[1]))
            if vertices and _mesmo_ponto(vertices[-1], ponto):
                continue
            vertices.append(ponto)
        if len(vertices) > 1 and _mesmo_ponto(vertices[-1], vertices[0]):
            vertices.pop()
        return cls(j1=float(j1), j2=float(j2), smin=float(smin), corners=tuple(vertices))

    @property
    def forma(self) -> str:
        """Classificação geométrica do polígono"""
        n = len(self.corners)
        if n == 5:
            return 'pentagono'
        if n == 4:
            return 'retangulo' if self.smin >= self.j1 + self.j2 else 'quadrilatero'
        return {3: 'triangulo', 2: 'segmento'}.get(n, 'ponto')

    def contem(self, r1: float, r2: float, tol: float = 1e-9) -> bool:
        """Verifica se (r1, r2) pertence à região"""
        return (-tol <= r1 <= self.j1 + tol and -tol <= r2 <= self.j2 + tol
                and r1 + r2 <= self.smin + tol)

    def suporte(self, peso: float) -> float:
        """max w R1 + (1 - w) R2 sobre a região"""
        return max(peso * r1 + (1.0 - peso) * r2 for r1, r2 in self.corners)

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'j1': self.j1,
            'j2': self.j2,
            'smin': self.smin,
            'corners': [list(c) for c in self.corners],
            'forma': self.forma,
        }

    @classmethod
    def from_dict(cls, dados: dict) -> 'RateRegion':
        """Reconstrói a partir de dicionário (vértices recalculados)"""
        return cls.from_constraints(dados['j1'], dados['j2'], dados['smin'])

    def to_json(self, caminho: Union[str, Path]) -> Path:
        """Salva a região em JSON"""
        caminho = Path(caminho)
        caminho.write_text(json.dumps(self.to_dict(), indent=2), encoding='utf-8')
        return caminho


def _mesmo_ponto(a: Ponto, b: Ponto) -> bool:
    return abs(a[0] - b[0]) <= TOL_VERTICE and abs(a[1] - b[1]) <= TOL_VERTICE


def region_for_allocation(ch: ChannelGains, pd: PhaseDurations, pa: PowerAllocation) -> RateRegion:
    """
    Região de taxas de uma alocação fixa

    Raises:
        InfeasibleAllocationError: se a alocação violar as restrições de potência
    """
    rc = eval_constraints(ch, pd, pa)
    return RateRegion.from_constraints(rc.j1, rc.j2, rc.smin)


def classical_mac_region(ch: ChannelGains) -> RateRegion:
    """Região do MAC clássico: J1 = C(g10² P1), J2 = C(g20² P2), smin = C(g10² P1 + g20² P2)"""
    G10, G20 = ch.g10 ** 2, ch.g20 ** 2
    return RateRegion.from_constraints(
        capacity(G10 * ch.p1),
        capacity(G20 * ch.p2),
        capacity(G10 * ch.p1 + G20 * ch.p2)
    )


def filtrar_pareto(pontos: Iterable[Ponto], tol: float = 1e-12) -> List[Ponto]:
    """
    Remove pontos dominados

    Returns:
        Pontos não dominados em ordem crescente de R1
    """
    ordenados = sorted({(float(a), float(b)) for a, b in pontos}, key=lambda p: (-p[0], -p[1]))
    fronteira: List[Ponto] = []
    melhor_r2 = -math.inf
    for r1, r2 in ordenados:
        if r2 > melhor_r2 + tol:
            fronteira.append((r1, r2))
            melhor_r2 = r2
    return fronteira[::-1]


def pesos_escalarizacao(quantidade: int) -> np.ndarray:
    """Pesos uniformes em [0, 1], sempre incluindo 0.5 (ápice de taxa soma)"""
    return np.unique(np.append(np.linspace(0.0, 1.0, quantidade), 0.5))


def funcao_suporte(pontos: Sequence[Ponto], pesos: Sequence[float]) -> np.ndarray:
    """max sobre os pontos de w R1 + (1 - w) R2 para cada peso w"""
    matriz = np.asarray(pontos, dtype=float)
    w = np.asarray(pesos, dtype=float)
    return np.max(np.outer(w, matriz[:, 0]) + np.outer(1.0 - w, matriz[:, 1]), axis=1)


def apice_soma(pontos: Sequence[Ponto]) -> float:
    """Maior R1 + R2 entre os pontos"""
    return max(r1 + r2 for r1, r2 in pontos)


def exportar_fronteira_csv(pontos: Sequence[Ponto], caminho: Union[str, Path]) -> Path:
    """Exporta pontos de fronteira em CSV com cabeçalho r1,r2"""
    caminho = Path(caminho)
    pd.DataFrame(list(pontos), columns=['r1', 'r2']).to_csv(caminho, index=False)
    return caminho


def grade_fases(passo: float) -> List[PhaseDurations]:
    """
    Pares (alpha1, alpha2) da grade com alpha3 > 0

    Raises:
        InvalidParameterError: se o passo não estiver em (0, 1)
    """
    if not 0 < passo < 1:
        raise InvalidParameterError(f"Passo de fase deve estar em (0, 1), recebido {passo}")
    valores = np.round(np.arange(0.0, 1.0, passo), 12)
    return [PhaseDurations(float(a1), float(a2))
            for a1 in valores for a2 in valores if a1 + a2 < 1.0 - 1e-12]


def grade_potencias(ch: ChannelGains, pd: PhaseDurations, pontos: int) -> np.ndarray:
    """
    Alocações de uma grade regular para fases fixas

    Cada usuário escolhe a fração u da energia gasta na sua fase de difusão e a
    fração v² da potência da fase 3 que vai para a parte cooperativa.

    Returns:
        Array (n, 6) na ordem canônica
    """
    eixo = np.linspace(0.0, 1.0, pontos)
    u1 = eixo if pd.alpha1 > 0 else np.zeros(1)
    u2 = eixo if pd.alpha2 > 0 else np.zeros(1)
    U1, V1, U2, V2 = np.meshgrid(u1, eixo, u2, eixo, indexing='ij')
    U1, V1, U2, V2 = (m.ravel() for m in (U1, V1, U2, V2))
    if pd.alpha3 == 0:
        U1, U2 = np.ones_like(U1), np.ones_like(U2)
    rho = np.zeros((U1.size, 6))
    if pd.alpha1 > 0:
        rho[:, 0] = U1 * ch.p1 / pd.alpha1
    if pd.alpha2 > 0:
        rho[:, 1] = U2 * ch.p2 / pd.alpha2
    if pd.alpha3 > 0:
        t1 = (1.0 - U1) * ch.p1 / pd.alpha3
        t2 = (1.0 - U2) * ch.p2 / pd.alpha3
        rho[:, 2], rho[:, 4] = (1.0 - V1 ** 2) * t1, V1 ** 2 * t1
        rho[:, 3], rho[:, 5] = (1.0 - V2 ** 2) * t2, V2 ** 2 * t2
    return np.unique(rho, axis=0)


def _ancoras(ch: ChannelGains, pd: PhaseDurations, config: SolverConfig) -> List[GrupoCandidato]:
    """Alocações ótimas (soma e individuais) da célula, com as fases que elas efetivamente usam"""
    grupos: List[GrupoCandidato] = []
    try:
        try:
            solucao = maximize_sum_fixed_alphas(ch, pd.alpha1, pd.alpha2, config)
        except DegeneratePhaseError:
            solucao = resolver_soma_convexo(ch, pd.alpha1, pd.alpha2, config)
        grupos.append((solucao.fases, solucao.allocation.to_array()[None, :]))
        if pd.alpha2 == 0:
            ind = maximize_individual_fixed_alpha(ch, pd.alpha1, config)
            grupos.append((ind.fases, ind.allocation.to_array()[None, :]))
        if pd.alpha1 == 0:
            ind = maximize_individual_fixed_alpha(ch.trocar_usuarios(), pd.alpha2, config)
            grupos.append((ind.fases.trocar_usuarios(),
                           ind.allocation.trocar_usuarios().to_array()[None, :]))
    except ChannelModelError as erro:
        logger.error("Âncora ignorada em alpha=(%.3f, %.3f): %s", pd.alpha1, pd.alpha2, erro)
    return grupos


def _validar_envelope(alpha_grid_step: float, power_grid_points: int):
    if not 0 < alpha_grid_step < 1:
        raise InvalidParameterError(f"alpha_grid_step deve estar em (0, 1), recebido {alpha_grid_step}")
    if int(power_grid_points) < 2:
        raise InvalidParameterError(f"power_grid_points deve ser >= 2, recebido {power_grid_points}")


def candidatos_envelope(
    ch: ChannelGains,
    alpha_grid_step: float,
    power_grid_points: int,
    config: SolverConfig = DEFAULT_CONFIG,
    workers: Optional[int] = 1,
    ancorar: bool = True
) -> List[GrupoCandidato]:
    """
    Alocações candidatas do envelope agrupadas por fases

    Returns:
        Lista de (fases, array (n, 6))
    """
    _validar_envelope(alpha_grid_step, power_grid_points)
    fases = grade_fases(alpha_grid_step)
    grupos: List[GrupoCandidato] = [(pd, grade_potencias(ch, pd, int(power_grid_points))) for pd in fases]
    if ancorar:
        for ancoras in mapear_paralelo(lambda pd: _ancoras(ch, pd, config), fases, workers):
            grupos.extend(ancoras)
    logger.debug("Envelope com %d grupos de fases", len(grupos))
    return grupos


def _vertices_grupos(ch: ChannelGains, grupos: Sequence[GrupoCandidato]) -> np.ndarray:
    """Vértices não triviais de todas as regiões candidatas avaliadas em ch"""
    blocos = []
    for pd_grupo, rho in grupos:
        valores = eval_constraints_array(ch, pd_grupo, rho)
        s = np.minimum.reduce([valores['s1'], valores['s2'], valores['s3'], valores['s4']])
        a, b = np.minimum(valores['j1'], s), np.minimum(valores['j2'], s)
        blocos.extend([
            np.column_stack([a, np.zeros_like(a)]),
            np.column_stack([a, np.minimum(b, s - a)]),
            np.column_stack([np.minimum(a, s - b), b]),
            np.column_stack([np.zeros_like(b), b]),
        ])
    return np.vstack(blocos)


def fronteira_de_candidatos(
    ch: ChannelGains,
    grupos: Sequence[GrupoCandidato],
    pesos: int = DEFAULT_CONFIG.pesos_envelope
) -> List[Ponto]:
    """Escalariza a união das regiões candidatas e filtra os pontos de Pareto"""
    if not grupos:
        raise InvalidParameterError("Grade de candidatos vazia")
    vertices = _vertices_grupos(ch, grupos)
    escolhidos = []
    for w in pesos_escalarizacao(pesos):
        indice = int(np.argmax(w * vertices[:, 0] + (1.0 - w) * vertices[:, 1]))
        escolhidos.append(tuple(vertices[indice]))
    return filtrar_pareto(escolhidos)


def envelope_region(
    ch: ChannelGains,
    alpha_grid_step: float = DEFAULT_CONFIG.passo_envelope,
    power_grid_points: int = 4,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> List[Ponto]:
    """
    Fronteira de Pareto da região alcançável

    Args:
        ch: Canal
        alpha_grid_step: Passo da grade de fases
        power_grid_points: Pontos por dimensão da grade de potências (>= 2)
        config: Tolerâncias e número de pesos
        workers: Threads para as âncoras

    Returns:
        Pontos (R1, R2) não dominados em ordem crescente de R1

    Raises:
        InvalidParameterError: para passo fora de (0, 1) ou menos de 2 pontos
    """
    config = config or DEFAULT_CONFIG
    grupos = candidatos_envelope(ch, alpha_grid_step, power_grid_points, config, workers)
    fronteira = fronteira_de_candidatos(ch, grupos, config.pesos_envelope)
    logger.info("Envelope alcançável: %d pontos, ápice de soma %.4f", len(fronteira), apice_soma(fronteira))
    return fronteira


def outer_bound_region(
    ch: ChannelGains,
    alpha_grid_step: float = DEFAULT_CONFIG.passo_envelope,
    power_grid_points: int = 4,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> List[Ponto]:
    """
    Fronteira do limite externo (g12² → g10² + g12², g21² → g20² + g21²)

    As alocações candidatas do envelope alcançável são reavaliadas nos ganhos
    fortalecidos, junto com as âncoras ótimas desses ganhos; assim o limite
    contém o envelope.

    Args:
        ch: Canal original
        alpha_grid_step: Passo da grade de fases
        power_grid_points: Pontos por dimensão da grade de potências
        config: Tolerâncias
        workers: Threads para as âncoras

    Returns:
        Pontos (R1, R2) não dominados em ordem crescente de R1
    """
    config = config or DEFAULT_CONFIG
    forte = outer_bound_gains(ch)
    grupos = candidatos_envelope(ch, alpha_grid_step, power_grid_points, config, workers)
    fases = grade_fases(alpha_grid_step)
    for ancoras in mapear_paralelo(lambda pd_: _ancoras(forte, pd_, config), fases, workers):
        grupos.extend(ancoras)
    fronteira = fronteira_de_candidatos(forte, grupos, config.pesos_envelope)
    logger.info("Limite externo: %d pontos, ápice de soma %.4f", len(fronteira), apice_soma(fronteira))
    return fronteira
