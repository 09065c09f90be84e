"""
Otimização das durações de fase

Duas estratégias envolvem os otimizadores de fases fixas:
- busca exaustiva em grade (1-D em alpha1 para R1, 2-D em (alpha1, alpha2) para a soma);
- interpolação quadrática a partir de poucos pontos grosseiros, com a taxa
  final sempre recalculada pelo otimizador de fases fixas no vértice.
"""
import logging
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.models import (
    ChannelGains,
    ChannelModelError,
    DegeneratePhaseError,
    InvalidParameterError,
    NumericalFailureError,
    PhaseDurations,
    classical_mac_allocation,
    eval_constraints,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig
from src.utils.parallel import mapear_paralelo

from .individual_optimizer import IndividualSolution, maximize_individual_fixed_alpha
from .sum_optimizer import (
    SumSolution,
    maximize_sum_fixed_alphas,
    maximize_sum_symmetric,
    resolver_soma_convexo,
)

logger = logging.getLogger(__name__)

Solucao = Union[IndividualSolution, SumSolution]
Amostra = Tuple[PhaseDurations, float]

# Curvatura mínima (em módulo) para aceitar um ajuste quadrático como côncavo
CURVATURA_MINIMA = 1e-12


class SearchMethod(Enum):
    """Estratégia que produziu as fases"""
    GRID = "Grid"
    INTERPOLATED = "Interpolated"


@dataclass
class PhaseSearchResult:
    """
    Resultado de uma busca de fases

    Atributos:
        best_alphas: Fases efetivas da melhor solução
        best_rate: Taxa da melhor solução (sempre de um otimizador de fases fixas)
        method: Grid ou Interpolated
        samples: Pares (fases pedidas, taxa) avaliados
        approx_error_bound: |interpolada - grade| quando as duas buscas rodaram
        solution: Solução de fases fixas em best_alphas
        diagnostico: Informações da busca (células ignoradas, vértice ajustado, ...)
    """
    best_alphas: PhaseDurations
    best_rate: float
    method: SearchMethod
    samples: List[Amostra] = field(default_factory=list)
    approx_error_bound: Optional[float] = None
    solution: Optional[Solucao] = None
    diagnostico: Dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        """Converte para dicionário serializável em JSON"""
        return {
            'best_alphas': self.best_alphas.to_dict(),
            'best_rate': self.best_rate,
            'method': self.method.value,
            'samples': [
                {'alpha1': fases.alpha1, 'alpha2': fases.alpha2, 'rate': taxa}
                for fases, taxa in self.samples
            ],
            'approx_error_bound': self.approx_error_bound,
            'solution': self.solution.to_dict() if self.solution is not None else None,
            'diagnostico': self.diagnostico,
        }


# ---------------------------------------------------------------------------
# Avaliação de células
# ---------------------------------------------------------------------------

def _avaliar_individual(ch: ChannelGains, config: SolverConfig) -> Callable[[PhaseDurations], Optional[Solucao]]:
    def avaliar(fases: PhaseDurations) -> Optional[Solucao]:
        try:
            return maximize_individual_fixed_alpha(ch, fases.alpha1, config)
        except ChannelModelError as erro:
            logger.error("Célula alpha1=%.4f ignorada: %s", fases.alpha1, erro)
            return None
    return avaliar


def _avaliar_soma(ch: ChannelGains, config: SolverConfig) -> Callable[[PhaseDurations], Optional[Solucao]]:
    def avaliar(fases: PhaseDurations) -> Optional[Solucao]:
        try:
            try:
                return maximize_sum_fixed_alphas(ch, fases.alpha1, fases.alpha2, config)
            except DegeneratePhaseError:
                return resolver_soma_convexo(ch, fases.alpha1, fases.alpha2, config)
        except ChannelModelError as erro:
            logger.error("Célula alpha=(%.4f, %.4f) ignorada: %s", fases.alpha1, fases.alpha2, erro)
            return None
    return avaliar


def _avaliar_simetrico(ch: ChannelGains, config: SolverConfig) -> Callable[[PhaseDurations], Optional[Solucao]]:
    def avaliar(fases: PhaseDurations) -> Optional[Solucao]:
        try:
            return maximize_sum_symmetric(ch, fases.alpha1, config)
        except ChannelModelError as erro:
            logger.error("Célula simétrica alpha=%.4f ignorada: %s", fases.alpha1, erro)
            return None
    return avaliar


def _taxa(solucao: Solucao) -> float:
    return solucao.rate if isinstance(solucao, IndividualSolution) else solucao.sum_rate


def _avaliar_grade(
    avaliar: Callable[[PhaseDurations], Optional[Solucao]],
    fases: Sequence[PhaseDurations],
    workers: Optional[int]
) -> Tuple[List[Amostra], List[Optional[Solucao]]]:
    solucoes = mapear_paralelo(avaliar, fases, workers)
    amostras = [(pd_, _taxa(s)) for pd_, s in zip(fases, solucoes) if s is not None]
    return amostras, solucoes


def _melhor_da_grade(
    fases: Sequence[PhaseDurations],
    solucoes: Sequence[Optional[Solucao]],
    amostras: List[Amostra],
    ignoradas: int
) -> PhaseSearchResult:
    """Argmax com desempate pelo primeiro ponto da grade"""
    melhor: Optional[Solucao] = None
    for solucao in solucoes:
        if solucao is not None and (melhor is None or _taxa(solucao) > _taxa(melhor)):
            melhor = solucao
    if melhor is None:
        raise NumericalFailureError(
            "Nenhuma célula da grade de fases pôde ser resolvida",
            {'celulas': len(fases)}
        )
    return PhaseSearchResult(
        best_alphas=melhor.fases,
        best_rate=_taxa(melhor),
        method=SearchMethod.GRID,
        samples=amostras,
        solution=melhor,
        diagnostico={'celulas': len(fases), 'ignoradas': ignoradas}
    )


# ---------------------------------------------------------------------------
# Grades
# ---------------------------------------------------------------------------

def _validar_passo(passo: float):
    if not isinstance(passo, (int, float)) or not 0 < passo < 1:
        raise InvalidParameterError(f"Passo deve estar em (0, 1), recebido {passo!r}")


def grade_alpha1(passo: float, epsilon: float, limite: float = 1.0) -> List[float]:
    """
    Valores {0, passo, 2 passo, ...} abaixo de limite - epsilon, mais o próprio limite - epsilon
    """
    _validar_passo(passo)
    topo = limite - epsilon
    valores = [float(v) for v in np.round(np.arange(0.0, topo, passo), 12) if v < topo - 1e-12]
    valores.append(topo)
    return valores


def grade_simplex(passo: float, epsilon: float) -> List[PhaseDurations]:
    """Pares (k passo, m passo) com alpha1 + alpha2 <= 1 - epsilon"""
    _validar_passo(passo)
    valores = np.round(np.arange(0.0, 1.0, passo), 12)
    return [PhaseDurations(float(a1), float(a2))
            for a1 in valores for a2 in valores if a1 + a2 <= 1.0 - epsilon]


def grid_search_individual(
    ch: ChannelGains,
    step: Optional[float] = None,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> PhaseSearchResult:
    """
    Busca exaustiva de alpha1 para a taxa individual R1

    Avalia alpha1 em {0, step, 2 step, ...} e em 1 - epsilon. Células que
    falham são registradas em log e ignoradas.

    Args:
        ch: Canal
        step: Passo da grade (padrão: config.passo_individual)
        config: Tolerâncias
        workers: Threads

    Returns:
        PhaseSearchResult com method = Grid
    """
    config = config or DEFAULT_CONFIG
    step = config.passo_individual if step is None else step
    fases = [PhaseDurations(a) for a in grade_alpha1(step, config.epsilon_fase)]
    logger.info("Busca em grade da taxa individual: %d valores de alpha1", len(fases))
    amostras, solucoes = _avaliar_grade(_avaliar_individual(ch, config), fases, workers)
    resultado = _melhor_da_grade(fases, solucoes, amostras, len(fases) - len(amostras))
    logger.info("Melhor alpha1=%.4f com R1=%.6f", resultado.best_alphas.alpha1, resultado.best_rate)
    return resultado


def grid_search_sum(
    ch: ChannelGains,
    step: Optional[float] = None,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> PhaseSearchResult:
    """
    Busca exaustiva de (alpha1, alpha2) para a taxa soma

    Células degeneradas para o caso do canal (alpha1 = 0 ou alpha2 = 0 no
    caso 2) são resolvidas pelo programa convexo, o que faz de (0, 0) o MAC
    clássico.

    Args:
        ch: Canal
        step: Passo da grade (padrão: config.passo_soma)
        config: Tolerâncias
        workers: Threads

    Returns:
        PhaseSearchResult com method = Grid
    """
    config = config or DEFAULT_CONFIG
    step = config.passo_soma if step is None else step
    fases = grade_simplex(step, config.epsilon_fase)
    logger.info("Busca em grade da taxa soma: %d pares de fases", len(fases))
    amostras, solucoes = _avaliar_grade(_avaliar_soma(ch, config), fases, workers)
    resultado = _melhor_da_grade(fases, solucoes, amostras, len(fases) - len(amostras))
    logger.info("Melhor alpha=(%.4f, %.4f) com soma=%.6f",
                resultado.best_alphas.alpha1, resultado.best_alphas.alpha2, resultado.best_rate)
    return resultado


# ---------------------------------------------------------------------------
# Interpolação quadrática
# ---------------------------------------------------------------------------

def vertice_quadratico(alphas: Sequence[float], taxas: Sequence[float]) -> Optional[float]:
    """
    Vértice da parábola pelos três pontos (alpha, taxa)

    Returns:
        Abscissa do máximo, ou None se os pontos forem colineares, repetidos
        ou a parábola não for côncava
    """
    x = np.asarray(alphas, dtype=float)
    y = np.asarray(taxas, dtype=float)
    if x.size != 3 or len(set(x.tolist())) < 3:
        return None
    try:
        a, b, _ = np.linalg.solve(np.vander(x, 3), y)
    except np.linalg.LinAlgError:
        return None
    if not a < -CURVATURA_MINIMA:
        return None
    return float(-b / (2.0 * a))


def _vizinhos(indice: int, total: int) -> List[int]:
    """Índice e seus dois vizinhos; nas bordas, os três mais próximos"""
    if total < 3:
        return list(range(total))
    inicio = min(max(indice - 1, 0), total - 3)
    return [inicio, inicio + 1, inicio + 2]


def _interpolar_1d(
    avaliar: Callable[[PhaseDurations], Optional[Solucao]],
    alphas: Sequence[float],
    construir: Callable[[float], PhaseDurations],
    limite: float,
    workers: Optional[int]
) -> PhaseSearchResult:
    fases = [construir(a) for a in alphas]
    solucoes = mapear_paralelo(avaliar, fases, workers)
    validos = [(a, s) for a, s in zip(alphas, solucoes) if s is not None]
    if len(validos) < 3:
        raise NumericalFailureError(
            "Interpolação precisa de ao menos três amostras resolvidas",
            {'amostras': len(validos)}
        )
    amostras = [(construir(a), _taxa(s)) for a, s in validos]
    taxas = [_taxa(s) for _, s in validos]
    k = int(np.argmax(taxas))
    estencil = _vizinhos(k, len(validos))
    vertice = vertice_quadratico([validos[i][0] for i in estencil], [taxas[i] for i in estencil])
    if vertice is None:
        logger.debug("Ajuste quadrático degenerado; usando melhor amostra grosseira")
        melhor = validos[k][1]
        return PhaseSearchResult(
            best_alphas=melhor.fases, best_rate=_taxa(melhor), method=SearchMethod.GRID,
            samples=amostras, solution=melhor,
            diagnostico={'ajuste': 'degenerado', 'estencil': [validos[i][0] for i in estencil]}
        )

    alpha = float(min(max(vertice, 0.0), limite))
    solucao = avaliar(construir(alpha))
    if solucao is None:
        melhor = validos[k][1]
        return PhaseSearchResult(
            best_alphas=melhor.fases, best_rate=_taxa(melhor), method=SearchMethod.GRID,
            samples=amostras, solution=melhor, diagnostico={'ajuste': 'vertice_sem_solucao'}
        )
    return PhaseSearchResult(
        best_alphas=solucao.fases,
        best_rate=_taxa(solucao),
        method=SearchMethod.INTERPOLATED,
        samples=amostras,
        solution=solucao,
        diagnostico={'vertice': vertice, 'estencil': [validos[i][0] for i in estencil]}
    )


def _validar_pontos(nome: str, valor: int):
    if not isinstance(valor, (int, np.integer)) or valor < 3:
        raise InvalidParameterError(f"{nome} deve ser um inteiro >= 3, recebido {valor!r}")


def interpolate_individual(
    ch: ChannelGains,
    coarse_points: int = 8,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> PhaseSearchResult:
    """
    alpha1 por interpolação quadrática sobre L pontos grosseiros

    Os pontos são uniformes em [0, 1 - epsilon]. A melhor amostra e suas duas
    vizinhas definem a parábola; o vértice, limitado a [0, 1 - epsilon], é
    resolvido pelo otimizador de fases fixas.

    Args:
        ch: Canal
        coarse_points: L >= 3
        config: Tolerâncias
        workers: Threads

    Returns:
        PhaseSearchResult (Interpolated, ou Grid se o ajuste for degenerado)

    Raises:
        InvalidParameterError: se L < 3
    """
    config = config or DEFAULT_CONFIG
    _validar_pontos('coarse_points', coarse_points)
    limite = 1.0 - config.epsilon_fase
    alphas = [float(a) for a in np.linspace(0.0, limite, coarse_points)]
    resultado = _interpolar_1d(_avaliar_individual(ch, config), alphas, PhaseDurations, limite, workers)
    logger.info("Interpolação individual: alpha1=%.4f R1=%.6f (%s)",
                resultado.best_alphas.alpha1, resultado.best_rate, resultado.method.value)
    return resultado


def _coeficientes_biquadraticos(pontos: np.ndarray, valores: np.ndarray) -> Optional[np.ndarray]:
    """Coeficientes de S = c0 + c1 a1 + c2 a2 + c3 a1² + c4 a2² pelos cinco pontos"""
    a1, a2 = pontos[:, 0], pontos[:, 1]
    matriz = np.column_stack([np.ones_like(a1), a1, a2, a1 ** 2, a2 ** 2])
    try:
        return np.linalg.solve(matriz, valores)
    except np.linalg.LinAlgError:
        return None


def interpolar_estencil_2d(
    pontos: Sequence[Tuple[float, float]],
    valores: Sequence[float],
    base: Tuple[float, float]
) -> Optional[Tuple[Tuple[float, float], Tuple[bool, bool]]]:
    """
    Ponto estacionário da quadrática separável pelos cinco pontos do estêncil

    Em cada eixo sem curvatura negativa a coordenada fica no valor de base.

    Args:
        pontos: Cinco pares (alpha1, alpha2)
        valores: Taxas nesses pares
        base: Melhor amostra grosseira

    Returns:
        ((alpha1, alpha2), (eixo1_interpolado, eixo2_interpolado)), ou None se o sistema for singular
    """
    coef = _coeficientes_biquadraticos(np.asarray(pontos, dtype=float), np.asarray(valores, dtype=float))
    if coef is None:
        return None
    _, c1, c2, c3, c4 = coef
    novo = list(base)
    interpolado = [False, False]
    for eixo, (linear, quadratico) in enumerate(((c1, c3), (c2, c4))):
        if quadratico < -CURVATURA_MINIMA:
            novo[eixo] = float(-linear / (2.0 * quadratico))
            interpolado[eixo] = True
    return (novo[0], novo[1]), (interpolado[0], interpolado[1])


def projetar_simplex(alpha1: float, alpha2: float, epsilon: float) -> Tuple[float, float]:
    """Limita (alpha1, alpha2) a alpha_i >= 0 e alpha1 + alpha2 <= 1 - epsilon"""
    a1, a2 = max(alpha1, 0.0), max(alpha2, 0.0)
    topo = 1.0 - epsilon
    if a1 + a2 > topo:
        escala = topo / (a1 + a2)
        a1, a2 = a1 * escala, a2 * escala
    return a1, a2


def _eixo(indices: set, centro: int) -> Optional[List[int]]:
    """Três índices viáveis de um eixo em torno do centro, preferindo os vizinhos imediatos"""
    for trio in ([centro - 1, centro, centro + 1], [centro, centro + 1, centro + 2],
                 [centro - 2, centro - 1, centro]):
        if all(i in indices for i in trio):
            return trio
    return None


def interpolate_sum(
    ch: ChannelGains,
    coarse_points_alpha1: int = 8,
    coarse_points_alpha2: int = 8,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> PhaseSearchResult:
    """
    (alpha1, alpha2) por interpolação quadrática bivariada

    A grade grosseira L x T cobre [0, 1 - epsilon]² restrita ao simplex. A
    melhor amostra e quatro vizinhas (duas por eixo) determinam os cinco
    coeficientes da quadrática sem termo cruzado. O ponto estacionário é
    projetado no simplex e resolvido pelo otimizador de fases fixas.

    Args:
        ch: Canal
        coarse_points_alpha1: L >= 3
        coarse_points_alpha2: T >= 3
        config: Tolerâncias
        workers: Threads

    Returns:
        PhaseSearchResult (Interpolated, ou Grid se o ajuste for singular ou plano)

    Raises:
        InvalidParameterError: se L ou T < 3
    """
    config = config or DEFAULT_CONFIG
    _validar_pontos('coarse_points_alpha1', coarse_points_alpha1)
    _validar_pontos('coarse_points_alpha2', coarse_points_alpha2)
    topo = 1.0 - config.epsilon_fase
    eixo1 = np.linspace(0.0, topo, coarse_points_alpha1)
    eixo2 = np.linspace(0.0, topo, coarse_points_alpha2)
    celulas = [(i, j) for i in range(len(eixo1)) for j in range(len(eixo2))
               if eixo1[i] + eixo2[j] <= topo + 1e-12]
    fases = [PhaseDurations(*projetar_simplex(float(eixo1[i]), float(eixo2[j]), config.epsilon_fase))
             for i, j in celulas]

    avaliar = _avaliar_soma(ch, config)
    solucoes = mapear_paralelo(avaliar, fases, workers)
    taxas = {celula: _taxa(s) for celula, s in zip(celulas, solucoes) if s is not None}
    amostras = [(pd_, _taxa(s)) for pd_, s in zip(fases, solucoes) if s is not None]
    if not taxas:
        raise NumericalFailureError("Nenhuma amostra grosseira da soma pôde ser resolvida",
                                    {'celulas': len(celulas)})

    posicao = {celula: k for k, celula in enumerate(celulas)}
    melhor_celula = max(taxas, key=lambda c: (taxas[c], -posicao[c]))
    melhor = solucoes[posicao[melhor_celula]]
    i0, j0 = melhor_celula

    def grade(diagnostico: Dict) -> PhaseSearchResult:
        return PhaseSearchResult(
            best_alphas=melhor.fases, best_rate=_taxa(melhor), method=SearchMethod.GRID,
            samples=amostras, solution=melhor, diagnostico=diagnostico
        )

    linha = _eixo({i for (i, j) in taxas if j == j0}, i0)
    coluna = _eixo({j for (i, j) in taxas if i == i0}, j0)
    if linha is None or coluna is None:
        return grade({'ajuste': 'estencil_incompleto'})

    estencil = [(i, j0) for i in linha] + [(i0, j) for j in coluna if j != j0]
    pontos = [(float(eixo1[i]), float(eixo2[j])) for i, j in estencil]
    ajuste = interpolar_estencil_2d(pontos, [taxas[c] for c in estencil],
                                    (float(eixo1[i0]), float(eixo2[j0])))
    if ajuste is None:
        return grade({'ajuste': 'singular', 'estencil': pontos})
    (a1, a2), interpolado = ajuste
    if not any(interpolado):
        return grade({'ajuste': 'sem_curvatura', 'estencil': pontos})

    a1, a2 = projetar_simplex(a1, a2, config.epsilon_fase)
    solucao = avaliar(PhaseDurations(a1, a2))
    if solucao is None:
        return grade({'ajuste': 'vertice_sem_solucao', 'estencil': pontos})
    logger.info("Interpolação da soma: alpha=(%.4f, %.4f) soma=%.6f", a1, a2, solucao.sum_rate)
    return PhaseSearchResult(
        best_alphas=solucao.fases,
        best_rate=solucao.sum_rate,
        method=SearchMethod.INTERPOLATED,
        samples=amostras,
        solution=solucao,
        diagnostico={'estacionario': [a1, a2], 'eixos_interpolados': list(interpolado),
                     'estencil': pontos}
    )


def com_erro_aproximado(interpolado: PhaseSearchResult, grade: PhaseSearchResult) -> PhaseSearchResult:
    """Cópia do resultado interpolado com approx_error_bound = |interpolada - grade|"""
    return replace(interpolado, approx_error_bound=abs(interpolado.best_rate - grade.best_rate))


# ---------------------------------------------------------------------------
# Diagnósticos e varredura simétrica
# ---------------------------------------------------------------------------

def diagnostico_unimodalidade(taxas: Sequence[float], tol: float = 1e-9) -> Dict:
    """
    Conta máximos locais estritos de uma varredura de fase

    Valores consecutivos iguais (até tol) formam um patamar contado uma vez.

    Args:
        taxas: Taxas na ordem das fases varridas
        tol: Tolerância de igualdade

    Returns:
        {'maximos_locais': n, 'unimodal': n <= 1, 'posicoes': índices do início de cada patamar máximo}
    """
    patamares: List[Tuple[int, float]] = []
    for k, valor in enumerate(taxas):
        if patamares and abs(valor - patamares[-1][1]) <= tol:
            continue
        patamares.append((k, float(valor)))
    posicoes = []
    for m, (indice, valor) in enumerate(patamares):
        esquerda = patamares[m - 1][1] if m > 0 else -math.inf
        direita = patamares[m + 1][1] if m + 1 < len(patamares) else -math.inf
        if valor > esquerda and valor > direita:
            posicoes.append(indice)
    return {'maximos_locais': len(posicoes), 'unimodal': len(posicoes) <= 1, 'posicoes': posicoes}


def _interpolar_simetrico(ch: ChannelGains, coarse_points: int, config: SolverConfig,
                          workers: Optional[int]) -> PhaseSearchResult:
    limite = 0.5 - config.epsilon_fase
    alphas = [float(a) for a in np.linspace(0.0, limite, coarse_points)]
    return _interpolar_1d(_avaliar_simetrico(ch, config), alphas,
                          lambda a: PhaseDurations(a, a), limite, workers)


def _grade_simetrica(ch: ChannelGains, step: float, config: SolverConfig,
                     workers: Optional[int]) -> PhaseSearchResult:
    fases = [PhaseDurations(a, a) for a in grade_alpha1(step, config.epsilon_fase, limite=0.5)]
    amostras, solucoes = _avaliar_grade(_avaliar_simetrico(ch, config), fases, workers)
    return _melhor_da_grade(fases, solucoes, amostras, len(fases) - len(amostras))


def _erro_relativo(interpolado: float, grade: float) -> float:
    if grade == 0:
        return abs(interpolado)
    return abs(interpolado - grade) / abs(grade)


def symmetric_sweep(
    g12_values: Sequence[float],
    g10: float = 1.0,
    p: float = 2.0,
    step: float = 0.005,
    coarse_points: int = 8,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> pd.DataFrame:
    """
    Fases e taxas ótimas de canais simétricos em função de g12

    Para cada g12 (com g21 = g12, g20 = g10, P1 = P2 = p) roda a busca em
    grade e a interpolação para R1 (alpha1) e para a soma (alpha1 = alpha2),
    e registra o MAC clássico como referência.

    Args:
        g12_values: Valores de g12
        g10: Ganho direto comum
        p: Potência comum
        step: Passo das grades finas
        coarse_points: Pontos grosseiros da interpolação
        config: Tolerâncias
        workers: Threads

    Returns:
        DataFrame com uma linha por g12: alphas e taxas de grade e
        interpolação, erros relativos de alpha, diferenças de taxa,
        taxas do MAC clássico e diagnóstico de unimodalidade
    """
    config = config or DEFAULT_CONFIG
    _validar_pontos('coarse_points', coarse_points)
    linhas = []
    for g12 in g12_values:
        ch = ChannelGains(g12=g12, g21=g12, g10=g10, g20=g10, p1=p, p2=p)
        fases_mac, alocacao_mac = classical_mac_allocation(ch)
        mac = eval_constraints(ch, fases_mac, alocacao_mac)

        ind_grade = grid_search_individual(ch, step, config, workers)
        ind_interp = com_erro_aproximado(interpolate_individual(ch, coarse_points, config, workers), ind_grade)
        soma_grade = _grade_simetrica(ch, step, config, workers)
        soma_interp = com_erro_aproximado(_interpolar_simetrico(ch, coarse_points, config, workers), soma_grade)

        linhas.append({
            'g12': float(g12),
            'alpha_ind_grade': ind_grade.best_alphas.alpha1,
            'r1_grade': ind_grade.best_rate,
            'alpha_ind_interp': ind_interp.best_alphas.alpha1,
            'r1_interp': ind_interp.best_rate,
            'erro_alpha_ind': _erro_relativo(ind_interp.best_alphas.alpha1, ind_grade.best_alphas.alpha1),
            'erro_taxa_ind': ind_interp.approx_error_bound,
            'alpha_soma_grade': soma_grade.best_alphas.alpha1,
            'soma_grade': soma_grade.best_rate,
            'alpha_soma_interp': soma_interp.best_alphas.alpha1,
            'soma_interp': soma_interp.best_rate,
            'erro_alpha_soma': _erro_relativo(soma_interp.best_alphas.alpha1, soma_grade.best_alphas.alpha1),
            'erro_taxa_soma': soma_interp.approx_error_bound,
            'r1_mac': min(mac.j1, mac.s4),
            'soma_mac': mac.smin,
            'unimodal_ind': diagnostico_unimodalidade([t for _, t in ind_grade.samples])['unimodal'],
            'unimodal_soma': diagnostico_unimodalidade([t for _, t in soma_grade.samples])['unimodal'],
        })
        logger.info("g12=%.3f: alpha* individual=%.4f, alpha* soma=%.4f",
                    g12, ind_grade.best_alphas.alpha1, soma_grade.best_alphas.alpha1)
    return pd.DataFrame(linhas)
