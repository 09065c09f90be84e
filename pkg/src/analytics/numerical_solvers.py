"""
Solvers numéricos de reserva para os problemas com fases fixas

Usados quando nenhuma forma fechada passa na validação KKT:
- taxa individual: busca de Brent limitada aninhada (seção áurea + parábola)
  sobre a redução côncava em rho13 e, internamente, em rho11;
- taxa soma: programa convexo em cvxpy, max t s.a. t <= S_k.
"""
import itertools
import logging
import math
from typing import Callable, Iterator, List, Sequence, Tuple

import cvxpy as cp
import numpy as np
from scipy.optimize import brentq, minimize_scalar, root
from scipy.special import expit, logit

from src.models import (
    ChannelGains,
    InvalidParameterError,
    NumericalFailureError,
    PhaseDurations,
    PowerAllocation,
    ajustar_potencia,
    eval_constraints,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig

from .kkt import escala_potencia

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)

# Frações de partida (por coordenada) das buscas de raiz em 2-D
PARTIDAS_2D = (0.5, 0.15, 0.85)

# Resíduo máximo (norma infinito) para aceitar uma raiz 2-D
TOL_RESIDUO_2D = 1e-9


def raizes_por_varredura(
    funcao: Callable[[float], float],
    inferior: float,
    superior: float,
    config: SolverConfig = DEFAULT_CONFIG
) -> List[float]:
    """
    Isola raízes por mudança de sinal numa grade e refina cada uma por Brent

    Pontos onde funcao retorna nan (fora do domínio) interrompem o isolamento.
    O extremo inferior não é avaliado.

    Returns:
        Raízes em ordem crescente
    """
    pontos = np.linspace(inferior, superior, config.pontos_varredura_raiz + 1)[1:]
    valores = [funcao(float(v)) for v in pontos]
    raizes = []
    for k in range(len(pontos) - 1):
        v0, v1 = valores[k], valores[k + 1]
        if math.isnan(v0) or math.isnan(v1):
            continue
        if v0 == 0:
            raizes.append(float(pontos[k]))
        elif v0 * v1 < 0:
            try:
                raizes.append(brentq(funcao, pontos[k], pontos[k + 1],
                                     xtol=config.tol_raiz, maxiter=config.max_iter))
            except (ValueError, RuntimeError) as erro:
                logger.debug("Brent falhou em [%.3e, %.3e]: %s", pontos[k], pontos[k + 1], erro)
    if valores and valores[-1] == 0:
        raizes.append(float(pontos[-1]))
    return raizes


def raizes_2d(
    funcao: Callable[[np.ndarray], Sequence[float]],
    superiores: Tuple[float, float],
    config: SolverConfig = DEFAULT_CONFIG
) -> Iterator[np.ndarray]:
    """
    Procura raízes de um sistema 2x2 no retângulo aberto (0, X) x (0, Y)

    O retângulo é parametrizado por sigmoides, de modo que o método de Powell
    (hybr) nunca sai do domínio. Várias partidas são tentadas e raízes
    repetidas são descartadas.

    Args:
        funcao: Resíduo vetorial nas coordenadas originais
        superiores: Limites (X, Y) do retângulo
        config: Tolerâncias

    Yields:
        Raízes (arrays de 2 posições) em coordenadas originais
    """
    escala = np.asarray(superiores, dtype=float)
    if np.any(escala <= 0):
        return

    def em_sigmoide(s: np.ndarray) -> np.ndarray:
        try:
            valor = np.asarray(funcao(escala * expit(s)), dtype=float)
        except (ValueError, ZeroDivisionError, OverflowError):
            return np.full(2, 1e6)
        return np.where(np.isfinite(valor), valor, 1e6)

    encontradas: List[np.ndarray] = []
    for fracoes in itertools.product(PARTIDAS_2D, PARTIDAS_2D):
        solucao = root(em_sigmoide, logit(np.array(fracoes)), method='hybr',
                       options={'xtol': 1e-12, 'maxfev': 20 * config.max_iter})
        if not solucao.success:
            continue
        ponto = escala * expit(solucao.x)
        if np.max(np.abs(em_sigmoide(solucao.x))) > TOL_RESIDUO_2D:
            continue
        if any(np.allclose(ponto, anterior, rtol=1e-8, atol=1e-12) for anterior in encontradas):
            continue
        encontradas.append(ponto)
        yield ponto


def taxas_individuais(ch: ChannelGains, alpha1: float, x: float, p: float,
                      c: float, q: float) -> Tuple[float, float]:
    """
    Avalia (J1, S4) do problema individual sem validação

    Args:
        ch: Canal
        alpha1: Duração da fase 1
        x: rho11
        p: rho10
        c: rho13
        q: rho23 (fixo em P2/(1-alpha1))

    Returns:
        Tupla (J1, S4) em bits/s/Hz
    """
    a3 = 1.0 - alpha1
    G10, G12 = ch.g10 ** 2, ch.g12 ** 2
    zeta = G10 * (p + c) + ch.g20 ** 2 * q + 2.0 * ch.g10 * ch.g20 * math.sqrt(c * q)
    j1 = alpha1 * math.log2(1.0 + G12 * x) + a3 * math.log2(1.0 + G10 * p)
    s4 = alpha1 * math.log2(1.0 + G10 * x) + a3 * math.log2(1.0 + zeta)
    return j1, s4


def maximizar_intervalo(funcao: Callable[[float], float], inferior: float,
                         superior: float, config: SolverConfig) -> Tuple[float, float]:
    """
    Maximiza uma função côncava em [inferior, superior]

    Compara o resultado de Brent com os extremos, que o método limitado nunca
    avalia exatamente.

    Returns:
        Tupla (argumento, valor)
    """
    if superior - inferior <= 0:
        return inferior, funcao(inferior)
    resultado = minimize_scalar(
        lambda v: -funcao(v),
        bounds=(inferior, superior),
        method='bounded',
        options={'xatol': config.tol_raiz * max(1.0, superior), 'maxiter': 5 * config.max_iter}
    )
    candidatos = [(float(resultado.x), -float(resultado.fun)),
                  (inferior, funcao(inferior)),
                  (superior, funcao(superior))]
    return max(candidatos, key=lambda par: par[1])


def resolver_individual_numerico(
    ch: ChannelGains,
    alpha1: float,
    config: SolverConfig = DEFAULT_CONFIG
) -> Tuple[float, PowerAllocation]:
    """
    Maximiza min(J1, S4) por busca aninhada em (rho13, rho11)

    Para rho13 fixo, min(J1, S4) é côncava em rho11; o máximo parcial é
    côncavo em rho13. Ambas as buscas são de Brent limitadas.

    Args:
        ch: Canal
        alpha1: Duração da fase 1 (0 <= alpha1 < 1)
        config: Tolerâncias

    Returns:
        Tupla (taxa, alocacao)
    """
    a3 = 1.0 - alpha1
    q = ch.p2 / a3
    c_max = ch.p1 / a3

    def potencias(c: float, x: float) -> Tuple[float, float]:
        p = max(0.0, (ch.p1 - a3 * c - alpha1 * x) / a3)
        return x, p

    def melhor_x(c: float) -> Tuple[float, float]:
        if alpha1 == 0:
            return 0.0, min(taxas_individuais(ch, alpha1, 0.0, potencias(c, 0.0)[1], c, q))
        x_max = max(0.0, (ch.p1 - a3 * c) / alpha1)

        def objetivo(x: float) -> float:
            _, p = potencias(c, x)
            return min(taxas_individuais(ch, alpha1, x, p, c, q))

        return maximizar_intervalo(objetivo, 0.0, x_max, config)

    c_otimo, _ = maximizar_intervalo(lambda c: melhor_x(c)[1], 0.0, c_max, config)
    x_otimo, _ = melhor_x(c_otimo)
    _, p_otimo = potencias(c_otimo, x_otimo)

    pd = PhaseDurations(alpha1, 0.0)
    alocacao = ajustar_potencia(
        ch, pd, np.array([x_otimo, 0.0, p_otimo, 0.0, c_otimo, q]), fixos_usuario2=True
    )
    rc = eval_constraints(ch, pd, alocacao, tol=config.tol_potencia)
    return min(rc.j1, rc.s4), alocacao


def _capacidade_cvx(expressao) -> cp.Expression:
    return cp.log(1 + expressao) / LN2


def resolver_soma_numerico(
    ch: ChannelGains,
    pd: PhaseDurations,
    config: SolverConfig = DEFAULT_CONFIG
) -> Tuple[float, PowerAllocation]:
    """
    Maximiza min(S1, S2, S3, S4) como programa convexo

    Variáveis de fases com duração nula são omitidas. O termo de beamforming
    sqrt(rho13 rho23) entra como média geométrica (côncava).

    Args:
        ch: Canal
        pd: Durações de fase (alpha3 > 0)
        config: Tolerâncias

    Returns:
        Tupla (taxa_soma, alocacao) com a alocação projetada nas igualdades de potência

    Raises:
        InvalidParameterError: se alpha3 = 0
        NumericalFailureError: se o solver não convergir
    """
    if pd.alpha3 <= 0:
        raise InvalidParameterError("A fase cooperativa precisa de duração positiva")

    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3
    G12, G21, G10, G20 = ch.g12 ** 2, ch.g21 ** 2, ch.g10 ** 2, ch.g20 ** 2

    rho = cp.Variable(6, nonneg=True)
    t = cp.Variable()
    r11, r22, r10, r20, r13, r23 = (rho[k] for k in range(6))

    zeta = G10 * (r10 + r13) + G20 * (r20 + r23)
    if ch.g10 * ch.g20 > 0:
        zeta = zeta + 2 * ch.g10 * ch.g20 * cp.geo_mean(cp.hstack([r13, r23]))

    fase3 = a3 * _capacidade_cvx(zeta)
    i1 = a1 * _capacidade_cvx(G12 * r11)
    i2 = a2 * _capacidade_cvx(G21 * r22)
    i5 = a3 * _capacidade_cvx(G10 * r10 + G20 * r20)
    direto1 = a1 * _capacidade_cvx(G10 * r11)
    direto2 = a2 * _capacidade_cvx(G20 * r22)

    restricoes = [
        t <= i1 + i2 + i5,
        t <= i2 + direto1 + fase3,
        t <= i1 + direto2 + fase3,
        t <= direto1 + direto2 + fase3,
        a1 * r11 + a3 * (r10 + r13) == ch.p1,
        a2 * r22 + a3 * (r20 + r23) == ch.p2,
    ]
    if a1 == 0:
        restricoes.append(r11 == 0)
    if a2 == 0:
        restricoes.append(r22 == 0)

    problema = cp.Problem(cp.Maximize(t), restricoes)
    try:
        problema.solve()
    except cp.error.SolverError as erro:
        raise NumericalFailureError(
            f"Solver convexo falhou: {erro}",
            {'alpha1': a1, 'alpha2': a2, 'canal': ch.to_dict()}
        ) from erro

    if problema.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE) or rho.value is None:
        raise NumericalFailureError(
            f"Solver convexo terminou com status {problema.status}",
            {'alpha1': a1, 'alpha2': a2, 'canal': ch.to_dict()}
        )
    if problema.status == cp.OPTIMAL_INACCURATE:
        logger.warning("Solver convexo retornou solução imprecisa em alpha=(%.4f, %.4f)", a1, a2)

    alocacao = polir_alocacao(ch, pd, np.asarray(rho.value, dtype=float), config)
    rc = eval_constraints(ch, pd, alocacao, tol=config.tol_potencia)
    return rc.smin, alocacao


def polir_alocacao(
    ch: ChannelGains,
    pd: PhaseDurations,
    valores: np.ndarray,
    config: SolverConfig = DEFAULT_CONFIG
) -> PowerAllocation:
    """
    Zera as potências abaixo da exatidão do solver e projeta nas igualdades

    O ponto interior do solver deixa resíduos da ordem de 1e-7 onde a potência
    ótima é nula.

    Args:
        ch: Canal
        pd: Durações de fase
        valores: Vetor de potências na ordem canônica
        config: tol_polimento define o limiar (relativo a P/alpha3)

    Returns:
        PowerAllocation viável
    """
    v = np.clip(np.asarray(valores, dtype=float), 0.0, None)
    v[v <= config.tol_polimento * escala_potencia(ch, pd)] = 0.0
    return ajustar_potencia(ch, pd, v)
