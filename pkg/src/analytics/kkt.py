"""
Resíduo das condições KKT nas soluções dos problemas de alocação de potência

Com fases fixas, os dois problemas (taxa individual e taxa soma) são convexos na
forma epigráfica max t s.a. t <= restrição_k, igualdades de potência e rho >= 0.
Um ponto é ótimo se existirem multiplicadores lambda_k >= 0 (apenas nas
restrições ativas, somando 1), nu livres nas igualdades e mu_i >= 0 (apenas nas
variáveis no limite zero) com

    sum_k lambda_k grad r_k - sum_e nu_e grad g_e + mu = 0.

Os multiplicadores são ajustados por mínimos quadrados não negativos (NNLS) e o
resíduo reportado é a maior violação entre estacionariedade, viabilidade de
potência e não negatividade.
"""
import math
from typing import Dict, List, Optional, Sequence

import numpy as np
from scipy.optimize import nnls

from src.models import ChannelGains, PhaseDurations, PowerAllocation, eval_constraints
from src.utils.config import DEFAULT_CONFIG, SolverConfig

LN2 = math.log(2.0)

# Derivada infinita do termo cruzado quando rho13 = 0 < rho23 (ou vice-versa)
LIMITE_GRADIENTE = 1e12

# Potência abaixo disso conta como limite zero ativo
LIMIAR_ZERO = 1e-9

# Índices na ordem canônica
I11, I22, I10, I20, I13, I23 = range(6)


def escala_potencia(ch: ChannelGains, pd: PhaseDurations) -> float:
    """Maior potência por fase possível (P/alpha3), usada para limiares relativos"""
    if pd.alpha3 <= 0:
        return max(1.0, ch.p1, ch.p2)
    return max(1.0, max(ch.p1, ch.p2) / pd.alpha3)


def _derivada_cruzada(g10: float, g20: float, proprio: float, outro: float) -> float:
    """Derivada de 2 g10 g20 sqrt(proprio*outro) em relação a proprio"""
    if g10 * g20 == 0:
        return 0.0
    if proprio > 0:
        return g10 * g20 * math.sqrt(outro / proprio)
    if outro > 0:
        return LIMITE_GRADIENTE
    return 0.0


def gradientes_restricoes(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation
) -> Dict[str, np.ndarray]:
    """
    Gradientes de J1, J2, S1..S4 em relação às seis potências (bits por unidade de potência)

    Returns:
        Dicionário nome → vetor de 6 posições na ordem canônica
    """
    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3
    G12, G21, G10, G20 = ch.g12 ** 2, ch.g21 ** 2, ch.g10 ** 2, ch.g20 ** 2
    r = pa.to_array()

    A = 1.0 + G10 * r[I10] + G20 * r[I20]
    B = 1.0 + (G10 * (r[I10] + r[I13]) + G20 * (r[I20] + r[I23])
               + 2.0 * ch.g10 * ch.g20 * math.sqrt(r[I13] * r[I23]))

    def vetor(entradas: Dict[int, float]) -> np.ndarray:
        v = np.zeros(6)
        for indice, valor in entradas.items():
            v[indice] = valor
        return v

    g_i1 = vetor({I11: a1 * G12 / (LN2 * (1.0 + G12 * r[I11]))})
    g_i2 = vetor({I22: a2 * G21 / (LN2 * (1.0 + G21 * r[I22]))})
    g_i3 = vetor({I10: a3 * G10 / (LN2 * (1.0 + G10 * r[I10]))})
    g_i4 = vetor({I20: a3 * G20 / (LN2 * (1.0 + G20 * r[I20]))})
    g_i5 = vetor({I10: a3 * G10 / (LN2 * A), I20: a3 * G20 / (LN2 * A)})
    g_fase3 = vetor({
        I10: a3 * G10 / (LN2 * B),
        I20: a3 * G20 / (LN2 * B),
        I13: a3 * (G10 + _derivada_cruzada(ch.g10, ch.g20, r[I13], r[I23])) / (LN2 * B),
        I23: a3 * (G20 + _derivada_cruzada(ch.g10, ch.g20, r[I23], r[I13])) / (LN2 * B),
    })
    g_direto1 = vetor({I11: a1 * G10 / (LN2 * (1.0 + G10 * r[I11]))})
    g_direto2 = vetor({I22: a2 * G20 / (LN2 * (1.0 + G20 * r[I22]))})

    return {
        'j1': g_i1 + g_i3,
        'j2': g_i2 + g_i4,
        's1': g_i1 + g_i2 + g_i5,
        's2': g_i2 + g_direto1 + g_fase3,
        's3': g_i1 + g_direto2 + g_fase3,
        's4': g_direto1 + g_direto2 + g_fase3,
    }


def _residuo_estacionariedade(
    gradientes_ativos: Sequence[np.ndarray],
    gradientes_potencia: Sequence[np.ndarray],
    livres: Sequence[int],
    no_limite: Sequence[int]
) -> float:
    """Ajusta multiplicadores por NNLS e retorna o maior resíduo escalado"""
    if not gradientes_ativos:
        return 1.0

    colunas: List[np.ndarray] = []
    for grad in gradientes_ativos:
        colunas.append(np.append(grad[list(livres)], 1.0))
    for grad in gradientes_potencia:
        parte = np.append(grad[list(livres)], 0.0)
        colunas.append(-parte)
        colunas.append(parte)
    for indice in no_limite:
        coluna = np.zeros(len(livres) + 1)
        coluna[list(livres).index(indice)] = 1.0
        colunas.append(coluna)

    A = np.column_stack(colunas)
    b = np.zeros(len(livres) + 1)
    b[-1] = 1.0

    # Escala cada linha de estacionariedade pela maior entrada
    escala = np.maximum(1.0, np.max(np.abs(A[:-1]), axis=1))
    A[:-1] /= escala[:, None]

    theta, _ = nnls(A, b, maxiter=50 * A.shape[1])
    return float(np.max(np.abs(A @ theta - b)))


def _residuo(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation,
    taxa: float,
    nomes: Sequence[str],
    livres: Sequence[int],
    gradientes_potencia: Sequence[np.ndarray],
    config: SolverConfig,
    precisao: Optional[float] = None
) -> float:
    rc = eval_constraints(ch, pd, pa, tol=math.inf)
    valores = {nome: getattr(rc, nome) for nome in nomes}
    grads = gradientes_restricoes(ch, pd, pa)

    tol_ativo, limiar_zero = config.tol_ativo, LIMIAR_ZERO
    if precisao is not None:
        # Ponto de solver numérico: folgas e potências na ordem da exatidão dele
        tol_ativo = max(tol_ativo, precisao)
        limiar_zero = max(limiar_zero, precisao * escala_potencia(ch, pd))
    limiar = tol_ativo * max(1.0, abs(taxa))
    ativos = [grads[nome] for nome in nomes if valores[nome] - taxa <= limiar]
    violacao_taxa = max(0.0, taxa - min(valores.values()))

    r = pa.to_array()
    no_limite = [i for i in livres if r[i] <= limiar_zero]
    estacionario = _residuo_estacionariedade(ativos, gradientes_potencia, livres, no_limite)

    r1, r2 = pa.residuos_potencia(ch, pd)
    return max(estacionario, violacao_taxa, abs(r1), abs(r2))


def residuo_kkt_individual(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation,
    taxa: float,
    config: SolverConfig = DEFAULT_CONFIG
) -> float:
    """
    Resíduo KKT do problema max R1 s.a. R1 <= J1, R1 <= S4

    As potências do usuário 2 são fixas; as variáveis livres são rho11, rho10 e
    rho13 (apenas as de fases com duração positiva).

    Args:
        ch: Canal
        pd: Fases efetivas (alpha2 = 0)
        pa: Alocação candidata
        taxa: Taxa candidata (min(J1, S4))
        config: Tolerâncias

    Returns:
        Maior violação das condições KKT
    """
    livres = []
    if pd.alpha1 > 0:
        livres.append(I11)
    if pd.alpha3 > 0:
        livres.extend([I10, I13])
    if not livres:
        return 0.0
    potencia1 = np.array([pd.alpha1, 0.0, pd.alpha3, 0.0, pd.alpha3, 0.0])
    return _residuo(ch, pd, pa, taxa, ('j1', 's4'), livres, [potencia1], config)


def residuo_kkt_soma(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation,
    taxa: float,
    config: SolverConfig = DEFAULT_CONFIG,
    precisao: Optional[float] = None
) -> float:
    """
    Resíduo KKT do problema max min(S1, S2, S3, S4) com as duas igualdades de potência

    Args:
        ch: Canal
        pd: Fases efetivas
        pa: Alocação candidata
        taxa: Taxa soma candidata
        config: Tolerâncias
        precisao: Exatidão relativa do ponto quando ele vem de um solver numérico;
            alarga os limiares de restrição ativa e de potência nula

    Returns:
        Maior violação das condições KKT
    """
    livres = []
    if pd.alpha1 > 0:
        livres.append(I11)
    if pd.alpha2 > 0:
        livres.append(I22)
    if pd.alpha3 > 0:
        livres.extend([I10, I20, I13, I23])
    if not livres:
        return 0.0
    potencia1 = np.array([pd.alpha1, 0.0, pd.alpha3, 0.0, pd.alpha3, 0.0])
    potencia2 = np.array([0.0, pd.alpha2, 0.0, pd.alpha3, 0.0, pd.alpha3])
    return _residuo(ch, pd, pa, taxa, ('s1', 's2', 's3', 's4'), livres,
                    [potencia1, potencia2], config, precisao)
