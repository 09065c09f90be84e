"""
Maximização da taxa soma R1 + R2 com durações de fase fixas

Casos pela relação entre enlaces entre usuários e enlaces diretos:
    1 - g12 <= g10 e g21 <= g20: MAC clássico, sem cooperação
    2 - g12 > g10 e g21 > g20: ambos cooperam (2a com partes privadas, 2b sem)
    3 - g12 > g10 e g21 <= g20: só o usuário 1 difunde, alpha2 = 0
    4 - espelho do caso 3

Candidatos de forma fechada vêm das condições de estacionariedade com S1 e S4
ativas (e da variante só com S4 ativa), incluindo as estruturas mistas em que
apenas uma das partes privadas da fase 3 é positiva. Cada candidato passa pela validação
KKT; se nenhum passa, o programa convexo de reserva resolve a célula.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from src.models import (
    ChannelGains,
    DegeneratePhaseError,
    InvalidParameterError,
    PhaseDurations,
    PowerAllocation,
    SchemeCase,
    SingularChannelError,
    ajustar_potencia,
    capacity,
    classical_mac_allocation,
    eval_constraints,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig

from .kkt import residuo_kkt_soma
from .numerical_solvers import (
    maximizar_intervalo,
    raizes_2d,
    raizes_por_varredura,
    resolver_soma_numerico,
)

logger = logging.getLogger(__name__)

CHAVES_PARCIAIS_SOMA = ('rho11', 'rho22', 'rho10', 'rho20', 'rho13', 'rho23')

Candidato = Tuple[str, np.ndarray]


@dataclass
class SumSolution:
    """
    Solução do problema de taxa soma

    Atributos:
        sum_rate: Taxa soma maximizada (bits/s/Hz)
        allocation: Potências dos dois usuários
        case_id: Esquema ótimo identificado
        kkt_residual: Maior violação das condições KKT na solução
        fases: Durações de fase efetivamente usadas
        fallback_used: True se o programa convexo substituiu as formas fechadas
        diagnostico: Tentativas de forma fechada e seus resíduos
    """
    sum_rate: float
    allocation: PowerAllocation
    case_id: SchemeCase
    kkt_residual: float
    fases: PhaseDurations
    fallback_used: bool = False
    diagnostico: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Converte para dicionário serializável em JSON"""
        return {
            'sum_rate': self.sum_rate,
            'allocation': self.allocation.to_dict(),
            'case_id': self.case_id.value,
            'case_code': self.case_id.codigo,
            'kkt_residual': self.kkt_residual,
            'fases': self.fases.to_dict(),
            'fallback_used': self.fallback_used,
            'diagnostico': self.diagnostico,
        }


@dataclass(frozen=True)
class GainReport:
    """
    Ganhos do esquema cooperativo sobre o MAC clássico

    Atributos:
        delta_r1, delta_r2, delta_sum: Ganhos assintóticos (g12, g21, P → ∞)
        delta_r1_finito, delta_r2_finito, delta_sum_finito: Ganhos com as potências do canal
            e enlaces entre usuários ilimitados
    """
    delta_r1: float
    delta_r2: float
    delta_sum: float
    delta_r1_finito: float
    delta_r2_finito: float
    delta_sum_finito: float

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'delta_r1': self.delta_r1,
            'delta_r2': self.delta_r2,
            'delta_sum': self.delta_sum,
            'delta_r1_finito': self.delta_r1_finito,
            'delta_r2_finito': self.delta_r2_finito,
            'delta_sum_finito': self.delta_sum_finito,
        }


@dataclass(frozen=True)
class Table2Definitions:
    """
    Constantes auxiliares do algoritmo de taxa soma

    Atributos:
        valores: Escalares a1..a11, b1..b10, f1, f6 calculáveis a partir da alocação parcial
        residuos: Funções f2(a6), f3(rho11), f4(rho23), f5(rho13), f7(rho10), f8(rho13)
    """
    valores: Dict[str, float]
    residuos: Dict[str, Callable[[float], float]]

    def __getitem__(self, nome: str) -> float:
        return self.valores[nome]

    def to_dict(self) -> dict:
        """Escalares como dicionário"""
        return dict(self.valores)


def _log2_razao(ganho_forte: float, ganho_fraco: float, x: float) -> float:
    """log2((1 + G_forte x)/(1 + G_fraco x))"""
    return math.log2(1.0 + ganho_forte * x) - math.log2(1.0 + ganho_fraco * x)


def _estacionaria_privada(A: float, B: float, x: float, G_direto: float, G_cruzado: float) -> float:
    """Estacionariedade em rho11 (ou rho22) quando as partes privadas são positivas"""
    return A / (2.0 * (G_direto * x + G_direto / G_cruzado)) + B / (2.0 * (1.0 + G_direto * x)) - 1.0


class _ProblemaSoma:
    """Grandezas do problema de taxa soma com fases fixas (g10, g20 > 0)"""

    def __init__(self, ch: ChannelGains, pd: PhaseDurations):
        self.ch = ch
        self.pd = pd
        self.a1, self.a2, self.a3 = pd.alpha1, pd.alpha2, pd.alpha3
        self.G10, self.G20 = ch.g10 ** 2, ch.g20 ** 2
        self.G12, self.G21 = ch.g12 ** 2, ch.g21 ** 2

    def f1(self, x: float, w: float) -> float:
        """Ganho normalizado das fases de difusão sobre o destino"""
        total = 0.0
        if self.a1 > 0:
            total += self.a1 * _log2_razao(self.G12, self.G10, x)
        if self.a2 > 0:
            total += self.a2 * _log2_razao(self.G21, self.G20, w)
        return total / self.a3

    def _privada_e_cooperativa(self, x: float, w: float) -> Tuple[float, float]:
        """(A, B) = (1 + SNR privada, 1 + zeta) com S1 = S4 e rho23 = (g10²/g20²) rho13"""
        E = (self.G10 * (self.ch.p1 - self.a1 * x) + self.G20 * (self.ch.p2 - self.a2 * w)) / self.a3
        fator = 2.0 ** self.f1(x, w)
        A = 2.0 * (1.0 + E) / (1.0 + fator)
        return A, A * fator

    def alocacao_privada(self, x: float, w: float) -> np.ndarray:
        A, B = self._privada_e_cooperativa(x, w)
        c = (B - A) / (4.0 * self.G10)
        q = self.G10 * c / self.G20
        p = (self.ch.p1 - self.a1 * x) / self.a3 - c
        r = (self.ch.p2 - self.a2 * w) / self.a3 - q
        return np.array([x, w, p, r, c, q])

    def residuo_2a(self, v: np.ndarray) -> List[float]:
        x, w = v
        A, B = self._privada_e_cooperativa(x, w)
        return [_estacionaria_privada(A, B, x, self.G10, self.G12),
                _estacionaria_privada(A, B, w, self.G20, self.G21)]

    def _difusao(self, c: float, q: float) -> Tuple[float, float]:
        x = (self.ch.p1 - self.a3 * c) / self.a1 if self.a1 > 0 else 0.0
        w = (self.ch.p2 - self.a3 * q) / self.a2 if self.a2 > 0 else 0.0
        return x, w

    def residuo_2b(self, v: np.ndarray) -> List[float]:
        c, q = v
        x, w = self._difusao(c, q)
        u, s = self.ch.g20 * math.sqrt(q), self.ch.g10 * math.sqrt(c)
        B = 1.0 + (u + s) ** 2
        a3, a4 = 1.0 / self.G10 + x, 1.0 / self.G20 + w
        k1 = (x + 1.0 / self.G12) * (self.G10 * (u + s) / (s * B) - 1.0 / a3)
        k2 = (w + 1.0 / self.G21) * (self.G20 * (u + s) / (u * B) - 1.0 / a4)
        return [math.log2(B) - self.f1(x, w), k1 - k2]

    def residuo_s4_2(self, v: np.ndarray) -> List[float]:
        c, q = v
        x, w = self._difusao(c, q)
        u, s = self.ch.g20 * math.sqrt(q), self.ch.g10 * math.sqrt(c)
        B = 1.0 + (u + s) ** 2
        return [(1.0 / self.G10 + x) * self.G10 * (u + s) / (s * B) - 1.0,
                (1.0 / self.G20 + w) * self.G20 * (u + s) / (u * B) - 1.0]

    def residuo_3a(self, x: float) -> float:
        if x <= 0:
            return math.nan
        A, B = self._privada_e_cooperativa(x, 0.0)
        return _estacionaria_privada(A, B, x, self.G10, self.G12)

    def _partes_3b(self, x: float, q: float):
        c = (self.ch.p1 - self.a1 * x) / self.a3
        r = self.ch.p2 / self.a3 - q
        u, s = self.ch.g20 * math.sqrt(q), self.ch.g10 * math.sqrt(c)
        A = 1.0 + self.G20 * r
        return c, r, u, s, A, A + (u + s) ** 2

    def residuo_3b(self, v: np.ndarray) -> List[float]:
        x, q = v
        c, r, u, s, A, B = self._partes_3b(x, q)
        kappa = s * A / (u * B)
        e1 = math.log2(B / A) - self.f1(x, 0.0)
        e2 = (kappa * (x + 1.0 / self.G10) / (x + 1.0 / self.G12) + 1.0
              - (1.0 + self.G10 * x) * (u + s) / (s * B))
        return [e1, e2]

    def s1(self, vetor: np.ndarray) -> float:
        x, w, p, r, _, _ = vetor
        return (self.a1 * math.log2(1.0 + self.G12 * x) + self.a2 * math.log2(1.0 + self.G21 * w)
                + self.a3 * math.log2(1.0 + self.G10 * p + self.G20 * r))

    def s4(self, vetor: np.ndarray) -> float:
        x, w, p, r, c, q = vetor
        zeta = (self.G10 * (p + c) + self.G20 * (r + q)
                + 2.0 * self.ch.g10 * self.ch.g20 * math.sqrt(c * q))
        return (self.a1 * math.log2(1.0 + self.G10 * x) + self.a2 * math.log2(1.0 + self.G20 * w)
                + self.a3 * math.log2(1.0 + zeta))

    def alocacao_mista(self, x: float, w: float) -> Optional[np.ndarray]:
        """
        Alocação com rho20 = 0 < rho10 e S1 = S4, dados rho11 e rho22

        Com a fase 3 do usuário 1 fixa, S1 - S4 é estritamente decrescente em
        rho13; a raiz existe se o sinal muda entre rho13 = 0 e rho10 = 0.
        """
        total1 = (self.ch.p1 - self.a1 * x) / self.a3
        q = (self.ch.p2 - self.a2 * w) / self.a3
        if total1 <= 0 or q <= 0:
            return None

        def vetor(c: float) -> np.ndarray:
            return np.array([x, w, total1 - c, 0.0, c, q])

        def diferenca(c: float) -> float:
            v = vetor(c)
            return self.s1(v) - self.s4(v)

        if diferenca(0.0) <= 0 or diferenca(total1) >= 0:
            return None
        return vetor(brentq(diferenca, 0.0, total1, xtol=1e-14 * total1, maxiter=500))

    def _residuos_mistos(self, x: float, w: float) -> Optional[Tuple[float, float]]:
        """
        Estacionariedade em rho11 e rho22 com rho20 = 0 < rho10

        O peso lambda de S1 sai da igualdade das derivadas em rho10 e rho13:
        lambda/(1 - lambda) = g20 sqrt(rho23/rho13) A / (g10 B).
        """
        vetor = self.alocacao_mista(x, w)
        if vetor is None:
            return None
        _, _, p, _, c, q = vetor
        if c <= 0 or p <= 0:
            return None
        g10, g20 = self.ch.g10, self.ch.g20
        A = 1.0 + self.G10 * p
        B = 1.0 + self.G10 * (p + c) + self.G20 * q + 2.0 * g10 * g20 * math.sqrt(c * q)
        kappa = g20 * math.sqrt(q / c) * A / (g10 * B)
        lam = kappa / (1.0 + kappa)
        nu1 = lam * self.G10 / A + (1.0 - lam) * self.G10 / B
        nu2 = (1.0 - lam) * (self.G20 + g10 * g20 * math.sqrt(c / q)) / B
        e_x = lam * self.G12 / (1.0 + self.G12 * x) + (1.0 - lam) * self.G10 / (1.0 + self.G10 * x) - nu1
        e_w = lam * self.G21 / (1.0 + self.G21 * w) + (1.0 - lam) * self.G20 / (1.0 + self.G20 * w) - nu2
        return e_x, e_w

    def residuo_misto(self, v: np.ndarray) -> List[float]:
        residuos = self._residuos_mistos(float(v[0]), float(v[1]))
        return [math.nan, math.nan] if residuos is None else list(residuos)

    def residuo_misto_3(self, x: float) -> float:
        residuos = self._residuos_mistos(x, 0.0)
        return math.nan if residuos is None else residuos[0]

    def _viavel(self, vetor: np.ndarray, config: SolverConfig) -> bool:
        return bool(np.all(vetor >= -config.tol_potencia))

    def candidatos_caso2(self, config: SolverConfig) -> Iterator[Candidato]:
        """Candidatos 2a, 2b e só-S4 (ambos os usuários difundem)"""
        limites_difusao = (self.ch.p1 / self.a1, self.ch.p2 / self.a2)
        for x, w in raizes_2d(self.residuo_2a, limites_difusao, config):
            vetor = self.alocacao_privada(x, w)
            if self._viavel(vetor, config):
                yield '2a', vetor

        limites_cooperacao = (self.ch.p1 / self.a3, self.ch.p2 / self.a3)
        for residuo, nome in ((self.residuo_2b, '2b'), (self.residuo_s4_2, '2-S4')):
            for c, q in raizes_2d(residuo, limites_cooperacao, config):
                x, w = self._difusao(c, q)
                vetor = np.array([x, w, 0.0, 0.0, c, q])
                if self._viavel(vetor, config):
                    yield nome, vetor

        # Só uma parte privada positiva: usuário 1, depois o espelho para o usuário 2
        for x, w in raizes_2d(self.residuo_misto, limites_difusao, config):
            vetor = self.alocacao_mista(x, w)
            if vetor is not None:
                yield '2a-1', vetor
        espelho = _ProblemaSoma(self.ch.trocar_usuarios(), self.pd.trocar_usuarios())
        for w, x in raizes_2d(espelho.residuo_misto, limites_difusao[::-1], config):
            vetor = espelho.alocacao_mista(w, x)
            if vetor is not None:
                yield '2a-2', vetor[[1, 0, 3, 2, 5, 4]]

    def candidatos_caso3(self, config: SolverConfig) -> Iterator[Candidato]:
        """Candidatos 3a, 3b e só-S4 (apenas o usuário 1 difunde)"""
        x_max = self.ch.p1 / self.a1
        for x in raizes_por_varredura(self.residuo_3a, 0.0, x_max, config):
            vetor = self.alocacao_privada(x, 0.0)
            if self._viavel(vetor, config):
                yield '3a', vetor

        for x, q in raizes_2d(self.residuo_3b, (x_max, self.ch.p2 / self.a3), config):
            c, r = self._partes_3b(x, q)[:2]
            vetor = np.array([x, 0.0, 0.0, r, c, q])
            if self._viavel(vetor, config):
                yield '3b', vetor

        q = self.ch.p2 / self.a3

        def s4_em_c(c: float) -> float:
            return self.s4(np.array([(self.ch.p1 - self.a3 * c) / self.a1, 0.0, 0.0, 0.0, c, q]))

        c, _ = maximizar_intervalo(s4_em_c, 0.0, self.ch.p1 / self.a3, config)
        yield '3-S4', np.array([(self.ch.p1 - self.a3 * c) / self.a1, 0.0, 0.0, 0.0, c, q])

        for x in raizes_por_varredura(self.residuo_misto_3, 0.0, x_max, config):
            vetor = self.alocacao_mista(x, 0.0)
            if vetor is not None:
                yield '3a-1', vetor

        def sem_privadas(c: float) -> np.ndarray:
            return np.array([(self.ch.p1 - self.a3 * c) / self.a1, 0.0, 0.0, 0.0, c, q])

        def folga_sem_privadas(c: float) -> float:
            vetor = sem_privadas(c)
            return self.s1(vetor) - self.s4(vetor)

        # S1 e S4 ativas sem partes privadas
        for c in raizes_por_varredura(folga_sem_privadas, 0.0, self.ch.p1 / self.a3, config):
            yield '3b-0', sem_privadas(c)


def classificar_soma(
    ch: ChannelGains,
    fases: PhaseDurations,
    alocacao: PowerAllocation,
    config: SolverConfig = DEFAULT_CONFIG
) -> SchemeCase:
    """
    Rotula o esquema de taxa soma pelas fases efetivas e pela estrutura da alocação

    Args:
        ch: Canal
        fases: Fases efetivas
        alocacao: Alocação de potência
        config: Limiar relativo de potência nula

    Returns:
        SchemeCase do problema de taxa soma
    """
    if fases.alpha1 == 0 and fases.alpha2 == 0:
        return SchemeCase.CLASSICAL_MAC
    if fases.alpha1 == 0:
        return SchemeCase.MIRROR
    limiar = config.tol_estrutura * max(1.0, (ch.p1 + ch.p2) / max(fases.alpha3, config.epsilon_fase))
    if fases.alpha2 > 0:
        sem_privadas = alocacao.rho10 <= limiar and alocacao.rho20 <= limiar
        return SchemeCase.BOTH_DF if sem_privadas else SchemeCase.BOTH_PDF
    if alocacao.rho10 <= limiar:
        return SchemeCase.USER1_DF_USER2_DIRECT
    return SchemeCase.USER1_PDF_USER2_DIRECT


def _solucao(ch: ChannelGains, fases: PhaseDurations, alocacao: PowerAllocation,
             config: SolverConfig, precisao: Optional[float] = None, **extras) -> SumSolution:
    rc = eval_constraints(ch, fases, alocacao, tol=config.tol_potencia)
    taxa = rc.smin
    return SumSolution(
        sum_rate=taxa,
        allocation=alocacao,
        case_id=classificar_soma(ch, fases, alocacao, config),
        kkt_residual=residuo_kkt_soma(ch, fases, alocacao, taxa, config, precisao),
        fases=fases,
        **extras
    )


def _solucao_mac(ch: ChannelGains, config: SolverConfig) -> SumSolution:
    fases, alocacao = classical_mac_allocation(ch)
    return _solucao(ch, fases, alocacao, config,
                    diagnostico={'metodo': 'forma_fechada', 'caso': '1'})


def _resolver_com_candidatos(
    ch: ChannelGains,
    fases: PhaseDurations,
    candidatos: Optional[Iterator[Candidato]],
    config: SolverConfig
) -> SumSolution:
    """Valida os candidatos em ordem e recorre ao programa convexo se nenhum passar"""
    tentativas: List[Dict] = []
    if candidatos is not None:
        for caso, vetor in candidatos:
            alocacao = ajustar_potencia(ch, fases, vetor)
            rc = eval_constraints(ch, fases, alocacao, tol=config.tol_potencia)
            residuo = residuo_kkt_soma(ch, fases, alocacao, rc.smin, config)
            tentativas.append({'caso': caso, 'residuo_kkt': residuo})
            logger.debug("Caso %s em alpha=(%.4f, %.4f): soma=%.6f residuo=%.2e",
                         caso, fases.alpha1, fases.alpha2, rc.smin, residuo)
            if residuo <= config.tol_kkt:
                return _solucao(ch, fases, alocacao, config, diagnostico={
                    'metodo': 'forma_fechada', 'caso_tentado': caso, 'tentativas': tentativas
                })
    else:
        tentativas.append({'caso': '-', 'status': 'ganho direto nulo'})

    logger.warning(
        "Nenhuma forma fechada passou na validação KKT em alpha=(%.4f, %.4f); usando programa convexo",
        fases.alpha1, fases.alpha2
    )
    _, alocacao = resolver_soma_numerico(ch, fases, config)
    return _solucao(ch, fases, alocacao, config, precisao=config.tol_polimento, fallback_used=True,
                    diagnostico={'metodo': 'cvxpy', 'tentativas': tentativas})


def resolver_soma_convexo(
    ch: ChannelGains,
    alpha1: float,
    alpha2: float,
    config: Optional[SolverConfig] = None
) -> SumSolution:
    """
    Resolve a taxa soma diretamente pelo programa convexo, sem análise de casos

    Usado nas células degeneradas das buscas de fase (por exemplo alpha1 = 0
    quando ambos os usuários cooperariam).
    """
    config = config or DEFAULT_CONFIG
    fases = PhaseDurations(alpha1, alpha2)
    if fases.alpha1 == 0 and fases.alpha2 == 0:
        return _solucao_mac(ch, config)
    _, alocacao = resolver_soma_numerico(ch, fases, config)
    return _solucao(ch, fases, alocacao, config, precisao=config.tol_polimento, fallback_used=True,
                    diagnostico={'metodo': 'cvxpy', 'motivo': 'celula_degenerada'})


def maximize_sum_fixed_alphas(
    ch: ChannelGains,
    alpha1: float,
    alpha2: float,
    config: Optional[SolverConfig] = None
) -> SumSolution:
    """
    Maximiza R1 + R2 com (alpha1, alpha2) fixos

    Args:
        ch: Canal
        alpha1: Duração da fase 1
        alpha2: Duração da fase 2 (alpha1 + alpha2 < 1)
        config: Tolerâncias (padrão: DEFAULT_CONFIG)

    Returns:
        SumSolution com as fases efetivas: (0, 0) no caso 1, (alpha1, 0) no
        caso 3 e (0, alpha2) no caso 4

    Raises:
        InvalidParameterError: se as fases forem inválidas
        DegeneratePhaseError: se as fases não permitirem o caso do canal
        NumericalFailureError: se o programa convexo de reserva falhar
    """
    config = config or DEFAULT_CONFIG
    fases = PhaseDurations(alpha1, alpha2)
    if fases.alpha3 <= 0:
        raise DegeneratePhaseError("alpha1 + alpha2 deve ser < 1 para haver fase cooperativa")

    forte1 = ch.g12 > ch.g10
    forte2 = ch.g21 > ch.g20
    if not forte1 and not forte2:
        return _solucao_mac(ch, config)

    if forte1 and forte2:
        if fases.alpha1 == 0 or fases.alpha2 == 0:
            raise DegeneratePhaseError(
                f"Caso 2 exige alpha1 > 0 e alpha2 > 0, recebido ({fases.alpha1}, {fases.alpha2})"
            )
        candidatos = None
        if ch.g10 > 0 and ch.g20 > 0:
            candidatos = _ProblemaSoma(ch, fases).candidatos_caso2(config)
        return _resolver_com_candidatos(ch, fases, candidatos, config)

    if forte1:
        return _resolver_caso3(ch, fases.alpha1, config)

    espelho = _resolver_caso3(ch.trocar_usuarios(), fases.alpha2, config)
    diagnostico = dict(espelho.diagnostico)
    diagnostico['subcaso'] = espelho.case_id.codigo
    return SumSolution(
        sum_rate=espelho.sum_rate,
        allocation=espelho.allocation.trocar_usuarios(),
        case_id=SchemeCase.MIRROR,
        kkt_residual=espelho.kkt_residual,
        fases=espelho.fases.trocar_usuarios(),
        fallback_used=espelho.fallback_used,
        diagnostico=diagnostico
    )


def _resolver_caso3(ch: ChannelGains, alpha1: float, config: SolverConfig) -> SumSolution:
    """Caso 3: alpha2 forçado a zero, alpha3 = 1 - alpha1"""
    if alpha1 <= 0 or alpha1 >= 1:
        raise DegeneratePhaseError(f"Caso 3 exige 0 < alpha1 < 1, recebido {alpha1}")
    fases = PhaseDurations(alpha1, 0.0)
    candidatos = None
    if ch.g10 > 0 and ch.g20 > 0:
        candidatos = _ProblemaSoma(ch, fases).candidatos_caso3(config)
    return _resolver_com_candidatos(ch, fases, candidatos, config)


def _validar_simetrico(ch: ChannelGains, alpha: float):
    escala = max(1.0, ch.g10, ch.g12, ch.p1)
    if not ch.e_simetrico(tol=1e-12 * escala):
        raise InvalidParameterError("Canal não é simétrico (g10=g20, g12=g21, P1=P2)")
    if not isinstance(alpha, (int, float, np.floating)) or not math.isfinite(alpha):
        raise InvalidParameterError(f"alpha deve ser finito, recebido {alpha!r}")
    if alpha < 0 or alpha >= 0.5:
        raise InvalidParameterError(f"alpha deve estar em [0, 0.5), recebido {alpha}")


def _candidatos_simetricos(ch: ChannelGains, alpha: float, config: SolverConfig) -> Iterator[Candidato]:
    """Candidatos 2a, 2b e só-S4 com alocações espelhadas entre os usuários"""
    G, G12, P = ch.g10 ** 2, ch.g12 ** 2, ch.p1
    resto = 1.0 - 2.0 * alpha

    def f1(x: float) -> float:
        return 2.0 * alpha / resto * _log2_razao(G12, G, x)

    def privada(x: float) -> Tuple[float, float]:
        E = 2.0 * G * (P - alpha * x) / resto
        fator = 2.0 ** f1(x)
        A = 2.0 * (1.0 + E) / (1.0 + fator)
        return A, A * fator

    def residuo_2a(x: float) -> float:
        A, B = privada(x)
        return _estacionaria_privada(A, B, x, G, G12)

    for x in raizes_por_varredura(residuo_2a, 0.0, P / alpha, config):
        A, B = privada(x)
        c = (B - A) / (4.0 * G)
        p = (P - alpha * x) / resto - c
        vetor = np.array([x, x, p, p, c, c])
        if np.all(vetor >= -config.tol_potencia):
            yield '2a', vetor

    def x_de_c(c: float) -> float:
        return (P - resto * c) / alpha

    def residuo_2b(c: float) -> float:
        return math.log2(1.0 + 4.0 * G * c) - f1(x_de_c(c))

    c_max = P / resto
    for c in raizes_por_varredura(residuo_2b, 0.0, c_max, config):
        yield '2b', np.array([x_de_c(c), x_de_c(c), 0.0, 0.0, c, c])

    # Só S4 ativa: 2(1 + G x) = 1 + 4 G c, linear em c
    c = (1.0 + 2.0 * G * P / alpha) / (4.0 * G + 2.0 * G * resto / alpha)
    c = min(max(c, 0.0), c_max)
    yield 'S4', np.array([x_de_c(c), x_de_c(c), 0.0, 0.0, c, c])


def maximize_sum_symmetric(
    ch_symmetric: ChannelGains,
    alpha: float,
    config: Optional[SolverConfig] = None
) -> SumSolution:
    """
    Caminho rápido para canais simétricos com alpha1 = alpha2 = alpha

    As alocações são espelhadas (rho11 = rho22, rho10 = rho20, rho13 = rho23),
    reduzindo cada subcaso a uma busca de raiz unidimensional.

    Args:
        ch_symmetric: Canal com g10 = g20, g12 = g21 e P1 = P2
        alpha: Duração comum das fases de difusão (0 <= alpha < 0.5)
        config: Tolerâncias

    Returns:
        SumSolution

    Raises:
        InvalidParameterError: se o canal não for simétrico ou alpha estiver fora de [0, 0.5)
    """
    config = config or DEFAULT_CONFIG
    _validar_simetrico(ch_symmetric, alpha)
    ch = ch_symmetric
    if ch.g12 <= ch.g10 or alpha == 0:
        return _solucao_mac(ch, config)

    fases = PhaseDurations(alpha, alpha)
    candidatos = None
    if ch.g10 > 0 and ch.p1 > 0:
        candidatos = _candidatos_simetricos(ch, float(alpha), config)
    return _resolver_com_candidatos(ch, fases, candidatos, config)


def gain_vs_mac(ch: ChannelGains) -> GainReport:
    """
    Ganhos máximos do esquema cooperativo sobre o MAC clássico

    Assintóticos (g12, g21, P → ∞):
        Δ(R1) = C((g20² + 2 g10 g20)/g10²), Δ(R2) = C((g10² + 2 g10 g20)/g20²),
        Δ(R1+R2) = C(2 g10 g20/(g10² + g20²)).
    Com as potências do canal, os ganhos são S4 máxima (beamforming coerente
    com toda a potência) menos a taxa do MAC clássico correspondente.

    Args:
        ch: Canal (g10, g20 > 0)

    Returns:
        GainReport

    Raises:
        SingularChannelError: se g10 = 0 ou g20 = 0
    """
    if ch.g10 == 0 or ch.g20 == 0:
        raise SingularChannelError("Ganhos exigem g10 > 0 e g20 > 0")
    G10, G20 = ch.g10 ** 2, ch.g20 ** 2
    cruzado = 2.0 * ch.g10 * ch.g20
    beamforming = cruzado * math.sqrt(ch.p1 * ch.p2)
    return GainReport(
        delta_r1=capacity((G20 + cruzado) / G10),
        delta_r2=capacity((G10 + cruzado) / G20),
        delta_sum=capacity(cruzado / (G10 + G20)),
        delta_r1_finito=capacity((G20 * ch.p2 + beamforming) / (1.0 + G10 * ch.p1)),
        delta_r2_finito=capacity((G10 * ch.p1 + beamforming) / (1.0 + G20 * ch.p2)),
        delta_sum_finito=capacity(beamforming / (1.0 + G10 * ch.p1 + G20 * ch.p2)),
    )


def _exigir(parcial: Mapping[str, float], *nomes: str) -> Tuple[float, ...]:
    faltando = [nome for nome in nomes if nome not in parcial]
    if faltando:
        raise InvalidParameterError(f"Alocação parcial sem {faltando}")
    return tuple(float(parcial[nome]) for nome in nomes)


def table2_definitions(
    ch: ChannelGains,
    alpha1: float,
    alpha2: float,
    rho_partial: Optional[Mapping[str, float]] = None
) -> Table2Definitions:
    """
    Calcula as definições auxiliares do algoritmo de taxa soma

    b5, b6 e b7 dependem de símbolos sem definição e não são calculados.

    Args:
        ch: Canal
        alpha1: Duração da fase 1
        alpha2: Duração da fase 2 (alpha1 + alpha2 < 1)
        rho_partial: Potências conhecidas; cada escalar ou resíduo usa só as que precisa

    Returns:
        Table2Definitions

    Raises:
        SingularChannelError: se algum ganho for nulo
        DegeneratePhaseError: se alpha1 >= 1 ou alpha3 = 0
        InvalidParameterError: ao chamar um resíduo sem as potências que ele usa
    """
    if min(ch.g10, ch.g20, ch.g12, ch.g21) == 0:
        raise SingularChannelError("As definições dividem por todos os ganhos; nenhum pode ser nulo")
    fases = PhaseDurations(alpha1, alpha2)
    if fases.alpha3 <= 0 or fases.alpha1 >= 1:
        raise DegeneratePhaseError("As definições exigem alpha1 < 1 e alpha3 > 0")

    parcial = dict(rho_partial or {})
    desconhecidas = set(parcial) - set(CHAVES_PARCIAIS_SOMA)
    if desconhecidas:
        raise InvalidParameterError(f"Potências desconhecidas: {sorted(desconhecidas)}")

    a1_, a2_, a3_ = fases.alpha1, fases.alpha2, fases.alpha3
    G10, G20, G12, G21 = ch.g10 ** 2, ch.g20 ** 2, ch.g12 ** 2, ch.g21 ** 2
    g10, g20 = ch.g10, ch.g20
    problema = _ProblemaSoma(ch, fases)

    v: Dict[str, float] = {
        'a1': 1.0 / G10 - 1.0 / G12,
        'a2': 1.0 / G20 - 1.0 / G21,
        'a7': 2.0 * G20,
        'a8': 2.0 * G10 / (1.0 - a1_),
        'a11': (1.0 + G10 * ch.p1 + G20 * ch.p2) / (1.0 - a1_),
    }
    v['b2'] = (2.0 + a1_) / (1.0 - a1_) * G10 * v['a1'] + 2.0 * v['a11']

    def b3_de(a3: float) -> float:
        return (2.0 * a3 - v['a1']) / (a3 - v['a1'])

    if 'rho11' in parcial:
        rho11 = parcial['rho11']
        v['a3'] = 1.0 / G10 + rho11
        v['a5'] = rho11 + 1.0 / G12
        v['b3'] = b3_de(v['a3'])
        v['f6'] = a1_ / a3_ * _log2_razao(G12, G10, rho11)
    if 'rho22' in parcial:
        v['a4'] = 1.0 / G20 + parcial['rho22']
    if 'rho10' in parcial and 'rho20' in parcial:
        v['a6'] = 1.0 + G10 * parcial['rho10'] + G20 * parcial['rho20']
    if 'rho10' in parcial:
        v['a9'] = 1.0 + G10 * parcial['rho10'] + G20 * ch.p2 / (1.0 - a1_)
        v['a10'] = (G10 * ch.p1 + a1_) / (1.0 - a1_) - G10 * parcial['rho10']
        v['b4'] = v['a1'] * (v['a9'] + 3.0 * v['a10'])
    if 'a3' in v and 'a6' in v:
        v['b1'] = 2.0 * G20 * (v['a2'] + v['a3']) + v['a6'] * (2.0 - v['b3'])
    if 'rho11' in parcial and 'rho22' in parcial:
        v['f1'] = problema.f1(parcial['rho11'], parcial['rho22'])
    if 'a5' in v and 'rho13' in parcial:
        rho13 = parcial['rho13']
        v['b8'] = v['b2'] + G10 * rho13 - G10 * (v['a5'] + v['a1'])
        v['b9'] = g10 / g20 * (v['a5'] + v['a1']) / v['a5'] * math.sqrt(rho13)
        if 'rho23' in parcial and rho13 > 0 and parcial['rho23'] > 0:
            v['b10'] = _b10(g10, g20, v['a1'], v['a5'], rho13, parcial['rho23'])

    def f2(a6: float) -> float:
        rho11, rho22 = _exigir(parcial, 'rho11', 'rho22')
        a3 = 1.0 / G10 + rho11
        return 2.0 * G10 * a3 - b3_de(a3) * a6 - (2.0 ** problema.f1(rho11, rho22) - 1.0) * a6

    def f3(rho11: float) -> float:
        rho22, rho10, rho20 = _exigir(parcial, 'rho22', 'rho10', 'rho20')
        a3 = 1.0 / G10 + rho11
        a6 = 1.0 + G10 * rho10 + G20 * rho20
        privada = (G10 * ch.p1 + G20 * ch.p2 - a1_ * G10 * rho11 - a2_ * G20 * rho22) / a3_
        return 0.5 * (2.0 * G10 * a3 - b3_de(a3) * a6) + a6 - 1.0 - privada

    def f4(rho23: float) -> float:
        rho11, rho22, rho13 = _exigir(parcial, 'rho11', 'rho22', 'rho13')
        a3, a4 = 1.0 / G10 + rho11, 1.0 / G20 + rho22
        soma = g10 * math.sqrt(rho13) + g20 * math.sqrt(rho23)
        return ((1.0 + soma ** 2) * (v['a1'] / a3 - v['a2'] / a4)
                + g10 * (g10 + g20 * math.sqrt(rho23 / rho13)) * (a3 - v['a1'])
                - g20 * (g20 + g10 * math.sqrt(rho13 / rho23)) * (a4 - v['a2']))

    def f5(rho13: float) -> float:
        rho11, rho22, rho23 = _exigir(parcial, 'rho11', 'rho22', 'rho23')
        fator = 2.0 ** problema.f1(rho11, rho22) - 1.0
        return rho13 - (math.sqrt(fator) - g20 * math.sqrt(rho23)) ** 2 / G10

    def f7(rho10: float) -> float:
        rho11, rho20 = _exigir(parcial, 'rho11', 'rho20')
        a3 = 1.0 / G10 + rho11
        a6 = 1.0 + G10 * rho10 + G20 * rho20
        f6 = a1_ / a3_ * _log2_razao(G12, G10, rho11)
        return 2.0 * G10 * a3 - b3_de(a3) * a6 - a6 * (2.0 ** f6 - 1.0)

    def f8(rho13: float) -> float:
        rho11, rho22, rho23 = _exigir(parcial, 'rho11', 'rho22', 'rho23')
        a5 = rho11 + 1.0 / G12
        soma = g10 * math.sqrt(rho13) + g20 * math.sqrt(rho23)
        return (_b10(g10, g20, v['a1'], a5, rho13, rho23)
                - soma ** 2 / (2.0 ** problema.f1(rho11, rho22) - 1.0))

    return Table2Definitions(
        valores=v,
        residuos={'f2': f2, 'f3': f3, 'f4': f4, 'f5': f5, 'f7': f7, 'f8': f8}
    )


def _b10(g10: float, g20: float, a1: float, a5: float, rho13: float, rho23: float) -> float:
    soma = g10 * math.sqrt(rho13) + g20 * math.sqrt(rho23)
    numerador = (a5 + a1) * g10 * (g10 + g20 * math.sqrt(rho23 / rho13)) - soma ** 2
    denominador = 1.0 + (a5 + a1) / a5 * g10 / g20 * math.sqrt(rho13 / rho23)
    return numerador / denominador
