"""
Oráculo de força bruta para os problemas de fases fixas

Maximiza min(J1, S4) ou min(S1..S4) por grade densa com zoom, sem usar
nenhuma condição de otimalidade. Cada usuário é descrito por duas frações em
[0, 1]: u, a parte da energia gasta na sua fase de difusão, e v, a raiz da
fração cooperativa da potência da fase 3 (rho13 = v² (1-u) P/alpha3). A grade
em v é uniforme em sqrt(rho13), onde o termo de beamforming é linear.

Lento por construção: serve para validar os otimizadores e gerar valores de
referência.
"""
import hashlib
import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.models import (
    ChannelGains,
    DegeneratePhaseError,
    InvalidParameterError,
    PhaseDurations,
    PowerAllocation,
    eval_constraints,
    eval_constraints_array,
)
from src.utils.config import DEFAULT_CONFIG

logger = logging.getLogger(__name__)

# Abaixo disso a grade é grosseira demais para comparar com formas fechadas
PONTOS_RECOMENDADOS = 8

# Células de cada lado do melhor ponto mantidas no zoom
MARGEM_ZOOM = 2


class OracleObjective(Enum):
    """Objetivo maximizado pelo oráculo"""
    INDIVIDUAL_R1 = "IndividualR1"
    SUM_RATE = "SumRate"


@dataclass(frozen=True)
class OracleConfig:
    """
    Configuração do oráculo

    Atributos:
        power_grid_points: Pontos por dimensão livre (>= 2; aviso abaixo de 8)
        alpha_step: Passo das varreduras de fase (0 < passo <= 0.5)
        objective: IndividualR1 ou SumRate
        refinements: Passadas de zoom após a grade inicial
    """
    power_grid_points: int = DEFAULT_CONFIG.pontos_oraculo
    alpha_step: float = 0.05
    objective: OracleObjective = OracleObjective.SUM_RATE
    refinements: int = DEFAULT_CONFIG.refinamentos_oraculo

    def __post_init__(self):
        """Validações após inicialização"""
        if not isinstance(self.power_grid_points, (int, np.integer)) or self.power_grid_points < 2:
            raise InvalidParameterError(
                f"power_grid_points deve ser um inteiro >= 2, recebido {self.power_grid_points!r}"
            )
        if self.power_grid_points < PONTOS_RECOMENDADOS:
            logger.warning("Grade do oráculo com %d pontos por dimensão (< %d): resultado grosseiro",
                           self.power_grid_points, PONTOS_RECOMENDADOS)
        if not 0 < self.alpha_step <= 0.5:
            raise InvalidParameterError(f"alpha_step deve estar em (0, 0.5], recebido {self.alpha_step}")
        if not isinstance(self.refinements, (int, np.integer)) or self.refinements < 0:
            raise InvalidParameterError(f"refinements deve ser um inteiro >= 0, recebido {self.refinements!r}")
        if not isinstance(self.objective, OracleObjective):
            object.__setattr__(self, 'objective', OracleObjective(self.objective))

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'power_grid_points': int(self.power_grid_points),
            'alpha_step': self.alpha_step,
            'objective': self.objective.value,
            'refinements': int(self.refinements),
        }


def _alocacoes(ch: ChannelGains, pd: PhaseDurations, coords: np.ndarray) -> np.ndarray:
    """Converte (u1, v1, u2, v2) em potências na ordem canônica; as igualdades valem por construção"""
    u1, v1, u2, v2 = (coords[:, k] for k in range(4))
    rho = np.zeros((coords.shape[0], 6))
    if pd.alpha1 > 0:
        rho[:, 0] = u1 * ch.p1 / pd.alpha1
    if pd.alpha2 > 0:
        rho[:, 1] = u2 * ch.p2 / pd.alpha2
    t1 = (1.0 - u1) * ch.p1 / pd.alpha3
    t2 = (1.0 - u2) * ch.p2 / pd.alpha3
    rho[:, 2], rho[:, 4] = (1.0 - v1 ** 2) * t1, v1 ** 2 * t1
    rho[:, 3], rho[:, 5] = (1.0 - v2 ** 2) * t2, v2 ** 2 * t2
    return rho


def _maximizar_em_grade(
    objetivo: Callable[[np.ndarray], np.ndarray],
    ativas: Sequence[bool],
    cfg: OracleConfig
) -> Tuple[np.ndarray, float]:
    """
    Grade regular em [0, 1]^d com zoom de ±2 células em torno do melhor ponto

    Dimensões inativas ficam fixas em 0. A avaliação percorre o primeiro eixo
    em blocos para limitar a memória; o desempate é pelo primeiro ponto.
    """
    d = len(ativas)
    inferior = np.zeros(d)
    superior = np.array([1.0 if ativa else 0.0 for ativa in ativas])
    n = int(cfg.power_grid_points)
    melhor_ponto: Optional[np.ndarray] = None
    melhor_valor = -np.inf

    for _ in range(int(cfg.refinements) + 1):
        eixos = [np.linspace(inferior[k], superior[k], n) if ativas[k] else np.zeros(1) for k in range(d)]
        for primeiro in eixos[0]:
            malha = np.meshgrid(np.array([primeiro]), *eixos[1:], indexing='ij')
            coords = np.column_stack([m.ravel() for m in malha])
            valores = objetivo(coords)
            indice = int(np.argmax(valores))
            if valores[indice] > melhor_valor:
                melhor_valor = float(valores[indice])
                melhor_ponto = coords[indice].copy()
        espacamento = (superior - inferior) / (n - 1)
        inferior = np.where(ativas, np.clip(melhor_ponto - MARGEM_ZOOM * espacamento, 0.0, 1.0), 0.0)
        superior = np.where(ativas, np.clip(melhor_ponto + MARGEM_ZOOM * espacamento, 0.0, 1.0), 0.0)

    return melhor_ponto, melhor_valor


def _alocacao_final(ch: ChannelGains, pd: PhaseDurations, coords: np.ndarray) -> PowerAllocation:
    alocacao = PowerAllocation.from_array(_alocacoes(ch, pd, coords[None, :])[0])
    alocacao.verificar(ch, pd, tol=1e-9 * max(1.0, ch.p1 + ch.p2))
    return alocacao


def oracle_individual(
    ch: ChannelGains,
    alpha1: float,
    cfg: Optional[OracleConfig] = None
) -> Tuple[float, PowerAllocation]:
    """
    Máximo de min(J1, S4) por grade em (rho11, rho13) com rho10 eliminado

    O usuário 2 apenas coopera: rho23 = P2/(1-alpha1).

    Args:
        ch: Canal
        alpha1: Duração da fase 1 (0 <= alpha1 < 1)
        cfg: Configuração do oráculo

    Returns:
        Tupla (taxa, alocacao)

    Raises:
        InvalidParameterError: se alpha1 estiver fora de [0, 1]
        DegeneratePhaseError: se alpha1 = 1
    """
    cfg = cfg or OracleConfig(objective=OracleObjective.INDIVIDUAL_R1)
    if not 0 <= alpha1 <= 1:
        raise InvalidParameterError(f"alpha1 deve estar em [0, 1), recebido {alpha1}")
    if alpha1 >= 1:
        raise DegeneratePhaseError("alpha1 = 1 não deixa fase cooperativa")
    pd = PhaseDurations(alpha1)

    def objetivo(coords: np.ndarray) -> np.ndarray:
        completos = np.column_stack([coords, np.zeros(len(coords)), np.ones(len(coords))])
        valores = eval_constraints_array(ch, pd, _alocacoes(ch, pd, completos))
        return np.minimum(valores['j1'], valores['s4'])

    ponto, _ = _maximizar_em_grade(objetivo, [pd.alpha1 > 0, True], cfg)
    alocacao = _alocacao_final(ch, pd, np.append(ponto, [0.0, 1.0]))
    rc = eval_constraints(ch, pd, alocacao, tol=1e-9 * max(1.0, ch.p1 + ch.p2))
    return min(rc.j1, rc.s4), alocacao


def oracle_sum(
    ch: ChannelGains,
    alpha1: float,
    alpha2: float,
    cfg: Optional[OracleConfig] = None
) -> Tuple[float, PowerAllocation]:
    """
    Máximo de min(S1, S2, S3, S4) por grade em (rho11, rho13, rho22, rho23)

    Args:
        ch: Canal
        alpha1: Duração da fase 1
        alpha2: Duração da fase 2 (alpha1 + alpha2 < 1)
        cfg: Configuração do oráculo

    Returns:
        Tupla (taxa_soma, alocacao)

    Raises:
        DegeneratePhaseError: se alpha1 + alpha2 >= 1
    """
    cfg = cfg or OracleConfig(objective=OracleObjective.SUM_RATE)
    pd = PhaseDurations(alpha1, alpha2)
    if pd.alpha3 <= 0:
        raise DegeneratePhaseError("O oráculo da soma exige alpha1 + alpha2 < 1")

    def objetivo(coords: np.ndarray) -> np.ndarray:
        valores = eval_constraints_array(ch, pd, _alocacoes(ch, pd, coords))
        return np.minimum.reduce([valores['s1'], valores['s2'], valores['s3'], valores['s4']])

    ativas = [pd.alpha1 > 0, True, pd.alpha2 > 0, True]
    ponto, _ = _maximizar_em_grade(objetivo, ativas, cfg)
    alocacao = _alocacao_final(ch, pd, ponto)
    rc = eval_constraints(ch, pd, alocacao, tol=1e-9 * max(1.0, ch.p1 + ch.p2))
    return rc.smin, alocacao


def run_oracle(ch: ChannelGains, fases: PhaseDurations,
               cfg: OracleConfig) -> Tuple[float, PowerAllocation]:
    """Despacha pelo objetivo da configuração"""
    if cfg.objective == OracleObjective.INDIVIDUAL_R1:
        return oracle_individual(ch, fases.alpha1, cfg)
    return oracle_sum(ch, fases.alpha1, fases.alpha2, cfg)


def diagnostico_convergencia(
    ch: ChannelGains,
    fases: PhaseDurations,
    objetivo: OracleObjective = OracleObjective.SUM_RATE,
    pontos: Sequence[int] = (8, 16, 32),
    refinements: int = 0
) -> Dict:
    """
    Taxa do oráculo para grades sucessivamente maiores

    Returns:
        {'pontos', 'taxas', 'diferencas', 'cauchy'}; cauchy indica se cada
        diferença é menor ou igual à anterior (diagnóstico, não garantia)
    """
    taxas: List[float] = []
    for n in pontos:
        cfg = OracleConfig(power_grid_points=int(n), objective=objetivo, refinements=refinements)
        taxas.append(run_oracle(ch, fases, cfg)[0])
    diferencas = [abs(b - a) for a, b in zip(taxas, taxas[1:])]
    cauchy = all(d2 <= d1 + 1e-12 for d1, d2 in zip(diferencas, diferencas[1:]))
    return {'pontos': list(pontos), 'taxas': taxas, 'diferencas': diferencas, 'cauchy': cauchy}


# ---------------------------------------------------------------------------
# Valores de referência
# ---------------------------------------------------------------------------

def _digest(cenario: Dict, config: Dict) -> str:
    texto = json.dumps({'scenario': cenario, 'config': config}, sort_keys=True)
    return hashlib.sha256(texto.encode('utf-8')).hexdigest()


def registro_ouro(ch: ChannelGains, fases: PhaseDurations, cfg: OracleConfig) -> Dict:
    """
    Roda o oráculo e monta o registro {scenario, rate, allocation, config, digest}
    """
    taxa, alocacao = run_oracle(ch, fases, cfg)
    cenario = {'channel': ch.to_dict(), 'phases': fases.to_dict()}
    return {
        'scenario': cenario,
        'rate': taxa,
        'allocation': alocacao.to_dict(),
        'config': cfg.to_dict(),
        'digest': _digest(cenario, cfg.to_dict()),
    }


def salvar_ouro(registros: Sequence[Dict], caminho: Union[str, Path]) -> Path:
    """Salva registros de referência em JSON com chaves ordenadas"""
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    caminho.write_text(json.dumps(list(registros), indent=2, sort_keys=True), encoding='utf-8')
    return caminho


def carregar_ouro(caminho: Union[str, Path]) -> List[Dict]:
    """
    Carrega registros de referência conferindo o digest de cada um

    Raises:
        InvalidParameterError: se algum digest não corresponder ao cenário
    """
    registros = json.loads(Path(caminho).read_text(encoding='utf-8'))
    for registro in registros:
        if registro.get('digest') != _digest(registro['scenario'], registro['config']):
            raise InvalidParameterError(f"Digest inválido no registro de referência {registro.get('digest')!r}")
    return registros
