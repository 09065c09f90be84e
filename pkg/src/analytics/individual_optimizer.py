"""
Maximização da taxa individual do usuário 1 com alpha1 fixo

O usuário 2 apenas coopera: alpha2 = 0, rho22 = rho20 = 0 e
rho23 = P2/(1-alpha1). O problema restante é

    max R1  s.a.  R1 <= J1,  R1 <= S4,  alpha1 rho11 + (1-alpha1)(rho10 + rho13) = P1

e a análise KKT leva aos casos:
    1  - Direct: g12 <= g10, transmissão direta durante todo o bloco
    2a - PdfRepetition: J1 = S4 com rho10 > 0 e rho13 > 0
    2b - DecodeForward: rho10 = 0, rho13 > 0
    3a - PdfNoRepetition: J1 < S4, rho13 = 0, rho10 > 0
    3b - TwoHop: J1 < S4, rho10 = rho13 = 0

Cada candidato de forma fechada é validado pelo resíduo KKT; se nenhum passa,
o solver numérico de reserva é usado.
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
    NumericalFailureError,
    PhaseDurations,
    PowerAllocation,
    SchemeCase,
    SingularChannelError,
    ajustar_potencia,
    capacity,
    eval_constraints,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig

from .kkt import residuo_kkt_individual
from .numerical_solvers import (
    raizes_por_varredura,
    resolver_individual_numerico,
    taxas_individuais,
)

logger = logging.getLogger(__name__)

CHAVES_PARCIAIS = ('rho11', 'rho10', 'rho13', 'rho23')


@dataclass
class IndividualSolution:
    """
    Solução do problema de taxa individual

    Atributos:
        rate: R1 maximizada (bits/s/Hz)
        allocation: Potências, com rho22 = rho20 = 0 e rho23 = P2/(1-alpha1)
        case_id: Esquema ótimo identificado
        kkt_residual: Maior violação das condições KKT na solução
        fases: Durações de fase efetivamente usadas (alpha1 = 0 no caso Direct)
        fallback_used: True se o solver numérico substituiu as formas fechadas
        diagnostico: Tentativas de forma fechada e seus resíduos
    """
    rate: float
    allocation: PowerAllocation
    case_id: SchemeCase
    kkt_residual: float
    fases: PhaseDurations
    fallback_used: bool = False
    diagnostico: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Converte para dicionário serializável em JSON"""
        return {
            'rate': self.rate,
            'allocation': self.allocation.to_dict(),
            'case_id': self.case_id.value,
            'case_code': self.case_id.codigo,
            'kkt_residual': self.kkt_residual,
            'fases': self.fases.to_dict(),
            'fallback_used': self.fallback_used,
            'diagnostico': self.diagnostico,
        }


@dataclass(frozen=True)
class Table1Definitions:
    """
    Constantes auxiliares do algoritmo de taxa individual

    Atributos:
        valores: Escalares a1..a5, b1, b2, f1, f3 que a alocação parcial permite calcular
        f2: Resíduo em rho13 cuja raiz é o caso 2a (rho11 pela raiz maior da quadrática)
        f4: Resíduo em rho13 cuja raiz é o caso 2b (rho10 = 0)
    """
    valores: Dict[str, float]
    f2: Callable[[float], float]
    f4: Callable[[float], float]

    def __getitem__(self, nome: str) -> float:
        return self.valores[nome]

    def to_dict(self) -> dict:
        """Escalares como dicionário"""
        return dict(self.valores)


class _ProblemaIndividual:
    """Grandezas do problema individual com alpha1 e rho23 fixos"""

    def __init__(self, ch: ChannelGains, alpha1: float, rho23: Optional[float] = None):
        self.ch = ch
        self.alpha1 = alpha1
        self.alpha3 = 1.0 - alpha1
        self.q = ch.p2 / self.alpha3 if rho23 is None else float(rho23)
        self.c_max = ch.p1 / self.alpha3
        self.G10 = ch.g10 ** 2
        self.G12 = ch.g12 ** 2
        self.G20 = ch.g20 ** 2
        self.razao = ch.g20 / ch.g10
        self.a1 = 1.0 / self.G10 - 1.0 / self.G12

    def a4(self, c: float) -> float:
        if self.q == 0 or self.razao == 0:
            return 1.0
        return 1.0 + self.razao * math.sqrt(self.q / c)

    def a5(self, c: float) -> float:
        return c + self.razao ** 2 * self.q + 2.0 * self.razao * math.sqrt(c * self.q)

    def quadratica(self, c: float) -> Tuple[float, float, float]:
        """Coeficientes (a4, b1, b2) de a4 z² - b1 z + b2 = 0, com z = rho11 + g10⁻²"""
        a4, a5 = self.a4(c), self.a5(c)
        K = self.ch.p1 + 1.0 / self.G10 - self.alpha3 * c
        b1 = a4 * K + self.alpha1 * self.a1 + self.alpha3 * (a4 * self.a1 + a5)
        b2 = self.a1 * (K + self.alpha3 * a5)
        return a4, b1, b2

    def potencias_2a(self, c: float) -> Optional[Tuple[float, float]]:
        """(rho11, rho10) estacionários para rho13 = c, ou None se a raiz não existe"""
        a4, b1, b2 = self.quadratica(c)
        discriminante = b1 ** 2 - 4.0 * a4 * b2
        if discriminante < 0:
            return None
        z = (b1 + math.sqrt(discriminante)) / (2.0 * a4)
        if z <= self.a1:
            return None
        K = self.ch.p1 + 1.0 / self.G10 - self.alpha3 * c
        x = z - 1.0 / self.G10
        p = (K - self.alpha1 * z) / self.alpha3 - 1.0 / self.G10
        return x, p

    def folga_2a(self, c: float) -> float:
        """J1 - S4 ao longo da curva estacionária (nan fora do domínio)"""
        potencias = self.potencias_2a(c)
        if potencias is None:
            return math.nan
        x, p = potencias
        if 1.0 + self.G10 * p <= 0 or 1.0 + self.G12 * x <= 0 or 1.0 + self.G10 * x <= 0:
            return math.nan
        j1, s4 = taxas_individuais(self.ch, self.alpha1, x, p, c, self.q)
        return j1 - s4

    def x_2b(self, c: float) -> float:
        return (self.ch.p1 - self.alpha3 * c) / self.alpha1

    def folga_2b(self, c: float) -> float:
        """J1 - S4 com rho10 = 0; decrescente em c"""
        j1, s4 = taxas_individuais(self.ch, self.alpha1, self.x_2b(c), 0.0, c, self.q)
        return j1 - s4

    def derivada_s4_2b(self, c: float) -> float:
        """Sinal de dS4/dc ao longo de rho10 = 0 (S4 é côncava em c)"""
        zeta = self.G10 * self.a5(c)
        return -self.G10 / (1.0 + self.G10 * self.x_2b(c)) + self.G10 * self.a4(c) / (1.0 + zeta)

    def f1(self, x: float, p: float, c: float) -> float:
        return (self.alpha1 * capacity(self.G10 * x)
                + self.alpha3 * capacity(self.G10 * (p + self.a5(c)))
                - self.alpha1 * capacity(self.G12 * x))

    def f2(self, c: float) -> float:
        potencias = self.potencias_2a(c)
        if potencias is None:
            return math.nan
        x, p = potencias
        try:
            f1 = self.f1(x, p, c)
        except InvalidParameterError:
            return math.nan
        return ((self.ch.p1 - self.alpha1 * x) / self.alpha3 - c
                - (2.0 ** (f1 / self.alpha3) - 1.0) / self.G10)

    def f3(self, c: float) -> float:
        return self.alpha3 / self.alpha1 * capacity(self.G10 * self.a5(c))

    def f4(self, c: float) -> float:
        r = self.G12 / self.G10
        return self.x_2b(c) - ((1.0 - r) / (2.0 ** self.f3(c) - r) - 1.0) / self.G10

    def candidato_2a(self, config: SolverConfig) -> Optional[Tuple[float, float, float]]:
        for c in raizes_por_varredura(self.folga_2a, 0.0, self.c_max, config):
            x, p = self.potencias_2a(c)
            if x >= -config.tol_potencia and p >= -config.tol_potencia:
                return x, p, c
        return None

    def pico_s4_2b(self, config: SolverConfig) -> float:
        """Maximizador de S4 em c ao longo de rho10 = 0"""
        if self.derivada_s4_2b(self.c_max) >= 0:
            return self.c_max
        inferior = self.c_max * 1e-12
        if self.derivada_s4_2b(inferior) <= 0:
            return 0.0
        return brentq(self.derivada_s4_2b, inferior, self.c_max,
                      xtol=config.tol_raiz, maxiter=config.max_iter)

    def candidato_2b(self, config: SolverConfig) -> Optional[Tuple[float, float, float]]:
        c_pico = self.pico_s4_2b(config)
        if self.folga_2b(c_pico) >= 0:
            # S4 sozinha limita; J1 tem folga no maximizador de S4
            return self.x_2b(c_pico), 0.0, c_pico
        if self.folga_2b(0.0) < 0:
            return None
        c = brentq(self.folga_2b, 0.0, c_pico, xtol=config.tol_raiz, maxiter=config.max_iter)
        return self.x_2b(c), 0.0, c

    def candidato_3a(self) -> Optional[Tuple[float, float, float]]:
        x = self.ch.p1 + self.alpha3 * self.a1
        p = self.ch.p1 - self.alpha1 * self.a1
        if p < 0:
            return None
        j1, s4 = taxas_individuais(self.ch, self.alpha1, x, p, 0.0, self.q)
        return (x, p, 0.0) if j1 <= s4 else None

    def candidato_3b(self) -> Optional[Tuple[float, float, float]]:
        x = self.ch.p1 / self.alpha1
        j1, s4 = taxas_individuais(self.ch, self.alpha1, x, 0.0, 0.0, self.q)
        return (x, 0.0, 0.0) if j1 <= s4 else None

    def candidatos(self, config: SolverConfig) -> Iterator[Tuple[str, Optional[Tuple[float, float, float]]]]:
        """Candidatos na ordem da cascata 2a → 2b → 3a → 3b"""
        yield '2a', self.candidato_2a(config)
        yield '2b', self.candidato_2b(config)
        yield '3a', self.candidato_3a()
        yield '3b', self.candidato_3b()


def _validar_alpha1(alpha1: float):
    if not isinstance(alpha1, (int, float, np.floating)) or not math.isfinite(alpha1):
        raise InvalidParameterError(f"alpha1 deve ser um número finito, recebido {alpha1!r}")
    if alpha1 < 0 or alpha1 > 1:
        raise InvalidParameterError(f"alpha1 deve estar em [0, 1), recebido {alpha1}")


def classificar_individual(
    ch: ChannelGains,
    fases: PhaseDurations,
    alocacao: PowerAllocation,
    config: SolverConfig = DEFAULT_CONFIG
) -> SchemeCase:
    """
    Rotula o esquema pela estrutura da alocação

    Args:
        ch: Canal
        fases: Fases efetivas
        alocacao: Alocação de potência
        config: Limiar relativo de potência nula

    Returns:
        SchemeCase do problema individual
    """
    if fases.alpha1 == 0:
        return SchemeCase.DIRECT
    limiar = config.tol_estrutura * max(1.0, ch.p1 / max(fases.alpha3, config.epsilon_fase))
    privada = alocacao.rho10 > limiar
    cooperativa = alocacao.rho13 > limiar
    if cooperativa:
        return SchemeCase.PDF_REPETITION if privada else SchemeCase.DECODE_FORWARD
    return SchemeCase.PDF_NO_REPETITION if privada else SchemeCase.TWO_HOP


def _solucao_direta(ch: ChannelGains, config: SolverConfig) -> IndividualSolution:
    fases = PhaseDurations(0.0, 0.0)
    alocacao = PowerAllocation(rho10=ch.p1, rho23=ch.p2)
    rc = eval_constraints(ch, fases, alocacao, tol=config.tol_potencia)
    taxa = min(rc.j1, rc.s4)
    return IndividualSolution(
        rate=taxa,
        allocation=alocacao,
        case_id=SchemeCase.DIRECT,
        kkt_residual=residuo_kkt_individual(ch, fases, alocacao, taxa, config),
        fases=fases,
        diagnostico={'metodo': 'forma_fechada', 'caso': '1'}
    )


def maximize_individual_fixed_alpha(
    ch: ChannelGains,
    alpha1: float,
    config: Optional[SolverConfig] = None
) -> IndividualSolution:
    """
    Maximiza R1 com alpha1 fixo

    Args:
        ch: Canal
        alpha1: Duração da fase 1 (0 <= alpha1 < 1)
        config: Tolerâncias (padrão: DEFAULT_CONFIG)

    Returns:
        IndividualSolution

    Raises:
        InvalidParameterError: se alpha1 estiver fora de [0, 1]
        DegeneratePhaseError: se alpha1 = 1 quando a cooperação é útil (g12 > g10)
    """
    config = config or DEFAULT_CONFIG
    _validar_alpha1(alpha1)
    alpha1 = float(alpha1)

    if ch.g12 <= ch.g10 or alpha1 == 0 or ch.p1 == 0:
        return _solucao_direta(ch, config)
    if alpha1 >= 1:
        raise DegeneratePhaseError("alpha1 = 1 não deixa fase cooperativa para o usuário 1")

    fases = PhaseDurations(alpha1)
    tentativas: List[Dict] = []

    if ch.g10 > 0:
        problema = _ProblemaIndividual(ch, alpha1)
        for caso, candidato in problema.candidatos(config):
            if candidato is None:
                tentativas.append({'caso': caso, 'status': 'inviavel'})
                continue
            x, p, c = candidato
            alocacao = ajustar_potencia(
                ch, fases, np.array([x, 0.0, p, 0.0, c, problema.q]), fixos_usuario2=True
            )
            rc = eval_constraints(ch, fases, alocacao, tol=config.tol_potencia)
            taxa = min(rc.j1, rc.s4)
            residuo = residuo_kkt_individual(ch, fases, alocacao, taxa, config)
            tentativas.append({'caso': caso, 'residuo_kkt': residuo})
            logger.debug("Caso %s em alpha1=%.4f: taxa=%.6f residuo=%.2e", caso, alpha1, taxa, residuo)
            if residuo <= config.tol_kkt:
                return IndividualSolution(
                    rate=taxa,
                    allocation=alocacao,
                    case_id=classificar_individual(ch, fases, alocacao, config),
                    kkt_residual=residuo,
                    fases=fases,
                    diagnostico={'metodo': 'forma_fechada', 'caso_tentado': caso,
                                 'tentativas': tentativas}
                )
    else:
        tentativas.append({'caso': '2a', 'status': 'g10 = 0'})

    logger.warning(
        "Nenhuma forma fechada passou na validação KKT (alpha1=%.4f); usando solver numérico",
        alpha1
    )
    taxa, alocacao = resolver_individual_numerico(ch, alpha1, config)
    if not math.isfinite(taxa):
        raise NumericalFailureError(
            "Solver numérico individual retornou taxa não finita",
            {'alpha1': alpha1, 'canal': ch.to_dict(), 'tentativas': tentativas}
        )
    return IndividualSolution(
        rate=taxa,
        allocation=alocacao,
        case_id=classificar_individual(ch, fases, alocacao, config),
        kkt_residual=residuo_kkt_individual(ch, fases, alocacao, taxa, config),
        fases=fases,
        fallback_used=True,
        diagnostico={'metodo': 'brent_aninhado', 'tentativas': tentativas}
    )


def table1_definitions(
    ch: ChannelGains,
    alpha1: float,
    rho_partial: Optional[Mapping[str, float]] = None
) -> Table1Definitions:
    """
    Calcula as definições auxiliares do algoritmo de taxa individual

    a1 = g10⁻² - g12⁻², a2 = g10⁻² + rho11, a3 = g12⁻² + rho11,
    a4 = 1 + (g20/g10) sqrt(rho23/rho13),
    a5 = rho13 + (g20²/g10²) rho23 + 2 (g20/g10) sqrt(rho13 rho23),
    b1, b2 coeficientes da quadrática em rho11 + g10⁻²,
    f1 = alpha1 C(g10² rho11) + (1-alpha1) C(g10²(rho10 + a5)) - alpha1 C(g12² rho11),
    f3 = ((1-alpha1)/alpha1) C(g10² a5).

    Args:
        ch: Canal
        alpha1: Duração da fase 1 (0 < alpha1 < 1)
        rho_partial: Potências conhecidas (rho11, rho10, rho13, rho23); rho23
            padrão é P2/(1-alpha1)

    Returns:
        Table1Definitions com os escalares calculáveis e os resíduos f2, f4

    Raises:
        SingularChannelError: se g10 = 0 ou g12 = 0
        DegeneratePhaseError: se alpha1 não estiver em (0, 1)
    """
    if ch.g10 == 0 or ch.g12 == 0:
        raise SingularChannelError("As definições dividem por g10 e g12; ambos devem ser > 0")
    _validar_alpha1(alpha1)
    if not 0 < alpha1 < 1:
        raise DegeneratePhaseError(f"As definições exigem 0 < alpha1 < 1, recebido {alpha1}")

    parcial = dict(rho_partial or {})
    desconhecidas = set(parcial) - set(CHAVES_PARCIAIS)
    if desconhecidas:
        raise InvalidParameterError(f"Potências desconhecidas: {sorted(desconhecidas)}")

    problema = _ProblemaIndividual(ch, alpha1, parcial.get('rho23'))
    valores: Dict[str, float] = {'a1': problema.a1}

    rho11 = parcial.get('rho11')
    rho10 = parcial.get('rho10')
    rho13 = parcial.get('rho13')
    if rho11 is not None:
        valores['a2'] = 1.0 / problema.G10 + rho11
        valores['a3'] = 1.0 / problema.G12 + rho11
    if rho13 is not None:
        valores['a5'] = problema.a5(rho13)
        valores['f3'] = problema.f3(rho13)
        if rho13 > 0:
            a4, b1, b2 = problema.quadratica(rho13)
            valores.update({'a4': a4, 'b1': b1, 'b2': b2})
        if rho11 is not None and rho10 is not None:
            valores['f1'] = problema.f1(rho11, rho10, rho13)

    return Table1Definitions(valores=valores, f2=problema.f2, f4=problema.f4)
