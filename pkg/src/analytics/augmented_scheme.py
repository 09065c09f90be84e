"""
Esquema aumentado: decodifica-e-encaminha parcial nas fases de difusão

Cada usuário também envia uma parte privada (rho10†, rho20†) nas fases 1 e 2,
que o outro usuário trata como ruído e o destino decodifica. As restrições de
potência viram

    alpha1 (rho11 + rho10†) + alpha3 (rho10 + rho13) = P1
    alpha2 (rho22 + rho20†) + alpha3 (rho20 + rho23) = P2

O ótimo do esquema aumentado tem rho10† = rho20† = 0, isto é, coincide com o
esquema de três fases. Este módulo verifica isso numericamente.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.optimize import minimize

from src.models import (
    ChannelGains,
    ChannelModelError,
    InfeasibleAllocationError,
    PhaseDurations,
    PowerAllocation,
    TOLERANCIA_POTENCIA,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig

from .sum_optimizer import maximize_sum_fixed_alphas

logger = logging.getLogger(__name__)

# Frações da potência da fase de difusão dadas à parte privada nas partidas
FRACOES_PARTIDA = (0.0, 0.1, 0.3)


@dataclass(frozen=True)
class AugmentedConstraints:
    """
    Restrições J1†, J2†, S1†..S4† do esquema aumentado

    Atributos:
        j1, j2: Restrições individuais
        s1..s4: Restrições de soma
    """
    j1: float
    j2: float
    s1: float
    s2: float
    s3: float
    s4: float

    @property
    def smin(self) -> float:
        """Menor restrição de soma"""
        return min(self.s1, self.s2, self.s3, self.s4)

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {'j1': self.j1, 'j2': self.j2, 's1': self.s1,
                's2': self.s2, 's3': self.s3, 's4': self.s4}


@dataclass
class AugmentedSolution:
    """
    Ótimo numérico da taxa soma do esquema aumentado

    Atributos:
        sum_rate: Taxa soma (bits/s/Hz)
        allocation: Potências do esquema de três fases
        rho10_dag: Potência privada do usuário 1 na fase 1
        rho20_dag: Potência privada do usuário 2 na fase 2
        fases: Durações de fase
        partidas: Taxa obtida em cada partida
    """
    sum_rate: float
    allocation: PowerAllocation
    rho10_dag: float
    rho20_dag: float
    fases: PhaseDurations
    partidas: List[Dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'sum_rate': self.sum_rate,
            'allocation': self.allocation.to_dict(),
            'rho10_dag': self.rho10_dag,
            'rho20_dag': self.rho20_dag,
            'fases': self.fases.to_dict(),
            'partidas': self.partidas,
        }


def _c(snr: float) -> float:
    return math.log2(1.0 + max(snr, 0.0))


def _restricoes_vetor(ch: ChannelGains, pd: PhaseDurations, v: np.ndarray) -> AugmentedConstraints:
    """Restrições aumentadas para v = (rho11, rho22, rho10, rho20, rho13, rho23, rho10†, rho20†)"""
    r11, r22, r10, r20, r13, r23, d10, d20 = (max(float(x), 0.0) for x in v)
    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3
    G12, G21, G10, G20 = ch.g12 ** 2, ch.g21 ** 2, ch.g10 ** 2, ch.g20 ** 2

    razao1 = G12 * r11 / (1.0 + G12 * d10)
    razao2 = G21 * r22 / (1.0 + G21 * d20)
    zeta = G10 * (r10 + r13) + G20 * (r20 + r23) + 2.0 * ch.g10 * ch.g20 * math.sqrt(r13 * r23)

    difusao1 = a1 * (_c(razao1) + _c(G10 * d10))
    difusao2 = a2 * (_c(razao2) + _c(G20 * d20))
    direto1 = a1 * _c(G10 * (r11 + d10))
    direto2 = a2 * _c(G20 * (r22 + d20))
    fase3 = a3 * _c(zeta)

    return AugmentedConstraints(
        j1=difusao1 + a3 * _c(G10 * r10),
        j2=difusao2 + a3 * _c(G20 * r20),
        s1=difusao1 + difusao2 + a3 * _c(G10 * r10 + G20 * r20),
        s2=a2 * _c(razao2) + direto1 + fase3,
        s3=a1 * _c(razao1) + direto2 + fase3,
        s4=direto1 + direto2 + fase3,
    )


def augmented_constraints(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation,
    rho10_dag: float = 0.0,
    rho20_dag: float = 0.0,
    tol: float = TOLERANCIA_POTENCIA
) -> AugmentedConstraints:
    """
    Avalia as restrições do esquema aumentado

    Args:
        ch: Canal
        pd: Durações de fase
        pa: Potências do esquema de três fases
        rho10_dag: Parte privada do usuário 1 na fase 1
        rho20_dag: Parte privada do usuário 2 na fase 2
        tol: Tolerância das restrições de potência aumentadas

    Returns:
        AugmentedConstraints (iguais às restrições originais quando rho† = 0)

    Raises:
        InfeasibleAllocationError: se as potências violarem as restrições aumentadas
    """
    if rho10_dag < 0 or rho20_dag < 0 or not math.isfinite(rho10_dag + rho20_dag):
        raise InfeasibleAllocationError("Potências privadas das fases de difusão devem ser >= 0")
    r1 = pd.alpha1 * (pa.rho11 + rho10_dag) + pd.alpha3 * (pa.rho10 + pa.rho13) - ch.p1
    r2 = pd.alpha2 * (pa.rho22 + rho20_dag) + pd.alpha3 * (pa.rho20 + pa.rho23) - ch.p2
    if abs(r1) > tol or abs(r2) > tol:
        raise InfeasibleAllocationError(
            f"Restrição de potência aumentada violada: residuos ({r1:.3e}, {r2:.3e})"
        )
    vetor = np.append(pa.to_array(), [rho10_dag, rho20_dag])
    return _restricoes_vetor(ch, pd, vetor)


def maximize_sum_augmented(
    ch: ChannelGains,
    alpha1: float,
    alpha2: float,
    config: Optional[SolverConfig] = None
) -> AugmentedSolution:
    """
    Maximiza min(S1†..S4†) por SLSQP na forma epigráfica, com várias partidas

    Uma das partidas é o ótimo do esquema de três fases (rho† = 0) quando as
    fases efetivas dele coincidem com as pedidas. Entre resultados de mesma
    taxa (até tol_kkt), prefere-se o de menor rho10† + rho20†.

    Args:
        ch: Canal
        alpha1: Duração da fase 1
        alpha2: Duração da fase 2 (alpha1 + alpha2 < 1)
        config: Tolerâncias

    Returns:
        AugmentedSolution
    """
    config = config or DEFAULT_CONFIG
    pd = PhaseDurations(alpha1, alpha2)
    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3

    # Variáveis: 8 potências e a taxa t
    limites = [
        (0.0, None if a1 > 0 else 0.0),
        (0.0, None if a2 > 0 else 0.0),
        (0.0, None if a3 > 0 else 0.0),
        (0.0, None if a3 > 0 else 0.0),
        (0.0, None if a3 > 0 else 0.0),
        (0.0, None if a3 > 0 else 0.0),
        (0.0, None if a1 > 0 else 0.0),
        (0.0, None if a2 > 0 else 0.0),
        (None, None),
    ]

    def restricao_taxa(z: np.ndarray) -> np.ndarray:
        rc = _restricoes_vetor(ch, pd, z[:8])
        return np.array([rc.s1, rc.s2, rc.s3, rc.s4]) - z[8]

    def potencia(z: np.ndarray) -> np.ndarray:
        return np.array([
            a1 * (z[0] + z[6]) + a3 * (z[2] + z[4]) - ch.p1,
            a2 * (z[1] + z[7]) + a3 * (z[3] + z[5]) - ch.p2,
        ])

    restricoes = [{'type': 'ineq', 'fun': restricao_taxa}, {'type': 'eq', 'fun': potencia}]

    partidas: List[np.ndarray] = []
    try:
        principal = maximize_sum_fixed_alphas(ch, alpha1, alpha2, config)
        if (abs(principal.fases.alpha1 - a1) < 1e-12 and abs(principal.fases.alpha2 - a2) < 1e-12):
            partidas.append(np.append(principal.allocation.to_array(), [0.0, 0.0]))
    except ChannelModelError as erro:
        logger.debug("Sem partida do esquema principal: %s", erro)

    for fracao in FRACOES_PARTIDA:
        p11 = ch.p1 / 3.0 / a1 if a1 > 0 else 0.0
        p22 = ch.p2 / 3.0 / a2 if a2 > 0 else 0.0
        fase3_1 = (ch.p1 - a1 * p11) / a3 / 2.0 if a3 > 0 else 0.0
        fase3_2 = (ch.p2 - a2 * p22) / a3 / 2.0 if a3 > 0 else 0.0
        partidas.append(np.array([
            p11 * (1 - fracao), p22 * (1 - fracao), fase3_1, fase3_2, fase3_1, fase3_2,
            p11 * fracao, p22 * fracao
        ]))

    melhor: Optional[np.ndarray] = None
    melhor_taxa = -math.inf
    registro: List[Dict] = []
    for partida in partidas:
        t0 = _restricoes_vetor(ch, pd, partida).smin
        resultado = minimize(
            lambda z: -z[8],
            np.append(partida, t0),
            method='SLSQP',
            bounds=limites,
            constraints=restricoes,
            options={'ftol': 1e-12, 'maxiter': 5 * config.max_iter}
        )
        z = np.clip(resultado.x[:8], 0.0, None)
        taxa = _restricoes_vetor(ch, pd, z).smin
        privadas = float(z[6] + z[7])
        registro.append({'taxa': taxa, 'privadas': privadas, 'sucesso': bool(resultado.success)})
        if np.max(np.abs(potencia(np.append(z, 0.0)))) > 1e-6:
            continue
        if taxa > melhor_taxa + config.tol_kkt or (
            abs(taxa - melhor_taxa) <= config.tol_kkt and melhor is not None
            and privadas < float(melhor[6] + melhor[7])
        ):
            melhor, melhor_taxa = z, taxa

    if melhor is None:
        logger.warning("Nenhuma partida SLSQP terminou viável em alpha=(%.4f, %.4f)", a1, a2)
        melhor = partidas[0]
        melhor_taxa = _restricoes_vetor(ch, pd, melhor).smin

    return AugmentedSolution(
        sum_rate=melhor_taxa,
        allocation=PowerAllocation.from_array(melhor[:6]),
        rho10_dag=float(melhor[6]),
        rho20_dag=float(melhor[7]),
        fases=pd,
        partidas=registro
    )
