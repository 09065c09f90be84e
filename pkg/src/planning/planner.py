"""
Planejamento geométrico da rede

Converte posições em ganhos pelo modelo de perda de percurso g = d^(-gamma/2),
classifica o esquema ótimo em cada posição do destino e gera mapas de
esquemas e perfis de taxa ao longo de uma reta.
"""
import json
import logging
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from src.analytics.individual_optimizer import maximize_individual_fixed_alpha
from src.analytics.phase_optimizer import interpolate_individual, interpolate_sum
from src.analytics.sum_optimizer import maximize_sum_fixed_alphas, resolver_soma_convexo
from src.models import (
    ChannelGains,
    ChannelModelError,
    DegeneratePhaseError,
    InvalidParameterError,
    PhaseDurations,
    SchemeCase,
    SingularTopologyError,
    capacity,
    outer_bound_gains,
)
from src.utils.config import DEFAULT_CONFIG, SolverConfig
from src.utils.parallel import mapear_paralelo

logger = logging.getLogger(__name__)

Posicao = Tuple[float, float]
Limites = Tuple[float, float, float, float]

# Distância abaixo da qual o destino é considerado sobre um usuário
DISTANCIA_MINIMA = 1e-3

GAMMA_PADRAO = 2.4
LIMITES_PADRAO: Limites = (-2.0, 2.0, -2.0, 2.0)
OBJETIVOS = ('individual', 'sum')
ROTULO_SINGULAR = 'Singular'


def _posicao(nome: str, valor: Sequence[float]) -> Posicao:
    try:
        x, y = (float(v) for v in valor)
    except (TypeError, ValueError) as erro:
        raise InvalidParameterError(f"{nome} deve ser um par (x, y), recebido {valor!r}") from erro
    if not (math.isfinite(x) and math.isfinite(y)):
        raise InvalidParameterError(f"{nome} deve ter coordenadas finitas, recebido {valor!r}")
    return x, y


@dataclass(frozen=True)
class Topology:
    """
    Posições dos nós no plano e expoente de perda de percurso

    Atributos:
        user1_pos: Posição do usuário 1
        user2_pos: Posição do usuário 2
        dest_pos: Posição do destino
        gamma: Expoente de perda de percurso (> 0)
    """
    user1_pos: Posicao = (-0.5, 0.0)
    user2_pos: Posicao = (0.5, 0.0)
    dest_pos: Posicao = (0.0, 1.0)
    gamma: float = GAMMA_PADRAO

    def __post_init__(self):
        """Validações após inicialização"""
        for nome in ('user1_pos', 'user2_pos', 'dest_pos'):
            object.__setattr__(self, nome, _posicao(nome, getattr(self, nome)))
        if not isinstance(self.gamma, (int, float)) or not math.isfinite(self.gamma) or self.gamma <= 0:
            raise InvalidParameterError(f"gamma deve ser positivo, recebido {self.gamma!r}")
        for nome, distancia in self.distancias().items():
            if distancia < DISTANCIA_MINIMA:
                raise SingularTopologyError(f"Nós coincidentes: {nome} = {distancia:.2e}")

    def distancias(self) -> Dict[str, float]:
        """Distâncias d12, d10 e d20"""
        return {
            'd12': math.dist(self.user1_pos, self.user2_pos),
            'd10': math.dist(self.user1_pos, self.dest_pos),
            'd20': math.dist(self.user2_pos, self.dest_pos),
        }

    def com_destino(self, destino: Sequence[float]) -> 'Topology':
        """Mesma topologia com outro destino"""
        return replace(self, dest_pos=_posicao('dest_pos', destino))

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'user1_pos': list(self.user1_pos),
            'user2_pos': list(self.user2_pos),
            'dest_pos': list(self.dest_pos),
            'gamma': self.gamma,
        }

    @classmethod
    def from_dict(cls, dados: dict) -> 'Topology':
        """Reconstrói a partir de dicionário"""
        return cls(**{k: dados[k] for k in ('user1_pos', 'user2_pos', 'dest_pos', 'gamma') if k in dados})


def ganho_por_distancia(distancia: float, gamma: float) -> float:
    """g = d^(-gamma/2)"""
    return distancia ** (-gamma / 2.0)


def gains_from_topology(t: Topology, p1: float, p2: float) -> ChannelGains:
    """
    Ganhos do canal pela perda de percurso, com g12 = g21 por reciprocidade

    Args:
        t: Topologia válida
        p1: Potência do usuário 1
        p2: Potência do usuário 2

    Returns:
        ChannelGains
    """
    d = t.distancias()
    g12 = ganho_por_distancia(d['d12'], t.gamma)
    return ChannelGains(
        g12=g12, g21=g12,
        g10=ganho_por_distancia(d['d10'], t.gamma),
        g20=ganho_por_distancia(d['d20'], t.gamma),
        p1=p1, p2=p2
    )


# ---------------------------------------------------------------------------
# Mapas de esquemas
# ---------------------------------------------------------------------------

@dataclass
class MapCell:
    """
    Célula de um mapa de esquemas

    Atributos:
        x, y: Posição do destino
        case: Esquema ótimo (None se a célula for singular)
        rate: Taxa máxima (nan se singular)
        gains: Ganhos do canal na célula (None se singular)
        fases: Fases efetivas da solução
    """
    x: float
    y: float
    case: Optional[SchemeCase]
    rate: float
    gains: Optional[ChannelGains] = None
    fases: Optional[PhaseDurations] = None

    @property
    def singular(self) -> bool:
        return self.case is None

    @property
    def rotulo(self) -> str:
        return ROTULO_SINGULAR if self.case is None else self.case.value


@dataclass
class SchemeMap:
    """
    Mapa de esquemas ótimos por posição do destino

    Atributos:
        objective: 'individual' ou 'sum'
        grid_bounds: (xmin, xmax, ymin, ymax)
        resolution: Pontos por eixo
        cells: Células em ordem de linhas (y externo, x interno)
        parametros: Fases pedidas, potências e gamma
    """
    objective: str
    grid_bounds: Limites
    resolution: int
    cells: List[MapCell] = field(default_factory=list)
    parametros: Dict = field(default_factory=dict)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.grid_bounds[0], self.grid_bounds[1], self.resolution)

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.grid_bounds[2], self.grid_bounds[3], self.resolution)

    def celula(self, i: int, j: int) -> MapCell:
        """Célula da linha i (y) e coluna j (x)"""
        return self.cells[i * self.resolution + j]

    def to_dataframe(self) -> pd.DataFrame:
        """Tabela x, y, case, rate"""
        return pd.DataFrame({
            'x': [c.x for c in self.cells],
            'y': [c.y for c in self.cells],
            'case': [c.rotulo for c in self.cells],
            'rate': [c.rate for c in self.cells],
        })

    def histograma(self) -> Dict[str, int]:
        """Número de células por esquema, em ordem de nome"""
        contagem: Dict[str, int] = {}
        for c in self.cells:
            contagem[c.rotulo] = contagem.get(c.rotulo, 0) + 1
        return dict(sorted(contagem.items()))

    def matriz_taxas(self) -> np.ndarray:
        """Taxas como matriz (resolution x resolution), linhas em y"""
        return np.array([c.rate for c in self.cells]).reshape(self.resolution, self.resolution)

    def matriz_casos(self) -> np.ndarray:
        """Rótulos como matriz de strings, linhas em y"""
        return np.array([c.rotulo for c in self.cells], dtype=object).reshape(self.resolution, self.resolution)

    def exportar_csv(self, caminho: Union[str, Path]) -> Path:
        """CSV x,y,case,rate com separador decimal '.' e 6 casas"""
        caminho = Path(caminho)
        caminho.parent.mkdir(parents=True, exist_ok=True)
        self.to_dataframe().to_csv(caminho, index=False, float_format='%.6f')
        return caminho

    def resumo(self) -> dict:
        """Resumo serializável: parâmetros da grade e histograma de esquemas"""
        return {
            'objective': self.objective,
            'grid_bounds': list(self.grid_bounds),
            'resolution': self.resolution,
            'parametros': self.parametros,
            'histograma': self.histograma(),
        }

    def exportar_json(self, caminho: Union[str, Path]) -> Path:
        """JSON com o resumo do mapa"""
        caminho = Path(caminho)
        caminho.parent.mkdir(parents=True, exist_ok=True)
        caminho.write_text(json.dumps(self.resumo(), indent=2, sort_keys=True), encoding='utf-8')
        return caminho


def _validar_grade(bounds: Sequence[float], resolution: int) -> Limites:
    if not isinstance(resolution, (int, np.integer)) or resolution < 2:
        raise InvalidParameterError(f"resolution deve ser um inteiro >= 2, recebido {resolution!r}")
    try:
        xmin, xmax, ymin, ymax = (float(v) for v in bounds)
    except (TypeError, ValueError) as erro:
        raise InvalidParameterError(f"bounds deve ser (xmin, xmax, ymin, ymax), recebido {bounds!r}") from erro
    if not (xmin < xmax and ymin < ymax):
        raise InvalidParameterError(f"Limites da grade vazios: {bounds!r}")
    return xmin, xmax, ymin, ymax


def _resolver_individual(ch: ChannelGains, alpha1: float, config: SolverConfig,
                         otimizar_fases: bool) -> Tuple[SchemeCase, float, PhaseDurations]:
    if otimizar_fases:
        solucao = interpolate_individual(ch, config=config).solution
    else:
        solucao = maximize_individual_fixed_alpha(ch, alpha1, config)
    return solucao.case_id, solucao.rate, solucao.fases


def _resolver_soma(ch: ChannelGains, alpha1: float, alpha2: float, config: SolverConfig,
                   otimizar_fases: bool) -> Tuple[SchemeCase, float, PhaseDurations]:
    if otimizar_fases:
        solucao = interpolate_sum(ch, config=config).solution
    else:
        try:
            solucao = maximize_sum_fixed_alphas(ch, alpha1, alpha2, config)
        except DegeneratePhaseError:
            solucao = resolver_soma_convexo(ch, alpha1, alpha2, config)
    return solucao.case_id, solucao.sum_rate, solucao.fases


def _celula(
    t_template: Topology,
    destino: Posicao,
    p1: float,
    p2: float,
    resolver: Callable[[ChannelGains], Tuple[SchemeCase, float, PhaseDurations]]
) -> MapCell:
    x, y = destino
    try:
        ch = gains_from_topology(t_template.com_destino(destino), p1, p2)
        caso, taxa, fases = resolver(ch)
    except SingularTopologyError as erro:
        logger.error("Célula (%.4f, %.4f) singular: %s", x, y, erro)
        return MapCell(x=x, y=y, case=None, rate=math.nan)
    except ChannelModelError as erro:
        logger.error("Célula (%.4f, %.4f) sem solução: %s", x, y, erro)
        return MapCell(x=x, y=y, case=None, rate=math.nan)
    return MapCell(x=x, y=y, case=caso, rate=taxa, gains=ch, fases=fases)


def _mapa(
    objetivo: str,
    t_template: Topology,
    bounds: Sequence[float],
    resolution: int,
    p1: float,
    p2: float,
    resolver: Callable[[ChannelGains], Tuple[SchemeCase, float, PhaseDurations]],
    parametros: Dict,
    workers: Optional[int]
) -> SchemeMap:
    limites = _validar_grade(bounds, resolution)
    xs = np.linspace(limites[0], limites[1], resolution)
    ys = np.linspace(limites[2], limites[3], resolution)
    destinos = [(float(x), float(y)) for y in ys for x in xs]
    logger.info("Mapa de esquemas (%s): %dx%d células", objetivo, resolution, resolution)
    celulas = mapear_paralelo(lambda d: _celula(t_template, d, p1, p2, resolver), destinos, workers)
    parametros = dict(parametros, p1=p1, p2=p2, gamma=t_template.gamma,
                      user1_pos=list(t_template.user1_pos), user2_pos=list(t_template.user2_pos))
    return SchemeMap(objective=objetivo, grid_bounds=limites, resolution=resolution,
                     cells=celulas, parametros=parametros)


def individual_scheme_map(
    t_template: Topology,
    alpha1: float = 0.5,
    bounds: Sequence[float] = LIMITES_PADRAO,
    resolution: int = 101,
    p1: float = 2.0,
    p2: float = 2.0,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1,
    otimizar_fases: bool = False
) -> SchemeMap:
    """
    Esquema ótimo para a taxa individual R1 em cada posição do destino

    Args:
        t_template: Topologia com as posições dos usuários e gamma
        alpha1: Duração da fase 1 (fixa em todas as células)
        bounds: (xmin, xmax, ymin, ymax)
        resolution: Pontos por eixo (>= 2)
        p1, p2: Potências
        config: Tolerâncias
        workers: Threads
        otimizar_fases: Se True, alpha1 é escolhido por célula por interpolação

    Returns:
        SchemeMap; células sobre um usuário ficam marcadas como singulares
    """
    config = config or DEFAULT_CONFIG
    return _mapa('individual', t_template, bounds, resolution, p1, p2,
                 lambda ch: _resolver_individual(ch, alpha1, config, otimizar_fases),
                 {'alpha1': alpha1, 'otimizar_fases': otimizar_fases}, workers)


def sum_scheme_map(
    t_template: Topology,
    alpha1: float = 0.2,
    alpha2: float = 0.2,
    bounds: Sequence[float] = LIMITES_PADRAO,
    resolution: int = 101,
    p1: float = 2.0,
    p2: float = 2.0,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1,
    otimizar_fases: bool = False
) -> SchemeMap:
    """
    Esquema ótimo para a taxa soma em cada posição do destino

    Células onde as fases pedidas são degeneradas para o caso do canal são
    resolvidas pelo programa convexo.

    Args:
        t_template: Topologia com as posições dos usuários e gamma
        alpha1, alpha2: Durações das fases de difusão
        bounds: (xmin, xmax, ymin, ymax)
        resolution: Pontos por eixo (>= 2)
        p1, p2: Potências
        config: Tolerâncias
        workers: Threads
        otimizar_fases: Se True, as fases são escolhidas por célula por interpolação

    Returns:
        SchemeMap
    """
    config = config or DEFAULT_CONFIG
    PhaseDurations(alpha1, alpha2)
    return _mapa('sum', t_template, bounds, resolution, p1, p2,
                 lambda ch: _resolver_soma(ch, alpha1, alpha2, config, otimizar_fases),
                 {'alpha1': alpha1, 'alpha2': alpha2, 'otimizar_fases': otimizar_fases}, workers)


def familia_esperada(ch: ChannelGains, objetivo: str) -> int:
    """Família de casos (1 a 4) ditada pelos sinais de g12 - g10 e g21 - g20"""
    forte1 = ch.g12 > ch.g10
    forte2 = ch.g21 > ch.g20
    if objetivo == 'individual':
        return 1 if not forte1 else 2
    if forte1 and forte2:
        return 2
    if forte1:
        return 3
    if forte2:
        return 4
    return 1


def celulas_inconsistentes(mapa: SchemeMap) -> List[MapCell]:
    """
    Células cujo esquema contradiz os sinais dos ganhos

    Na taxa individual as famílias 2 e 3 (cooperação) são ambas aceitas
    quando g12 > g10.
    """
    inconsistentes = []
    for c in mapa.cells:
        if c.singular:
            continue
        esperada = familia_esperada(c.gains, mapa.objective)
        obtida = c.case.familia
        if mapa.objective == 'individual' and esperada == 2:
            ok = obtida in (2, 3)
        else:
            ok = obtida == esperada
        if not ok:
            inconsistentes.append(c)
    return inconsistentes


# ---------------------------------------------------------------------------
# Perfis de taxa
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProfilePoint:
    """
    Amostra de um perfil de taxa

    Atributos:
        x, y: Posição do destino
        rate: Taxa ótima
        baseline_rate: Taxa do MAC clássico
        outer_bound_rate: Taxa do limite externo nas mesmas fases
        razao_d10_d12: d10/d12 na posição
    """
    x: float
    y: float
    rate: float
    baseline_rate: float
    outer_bound_rate: float
    razao_d10_d12: float

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            'x': self.x, 'y': self.y, 'rate': self.rate,
            'baseline_rate': self.baseline_rate,
            'outer_bound_rate': self.outer_bound_rate,
            'razao_d10_d12': self.razao_d10_d12,
        }


def _taxa_mac(ch: ChannelGains, objetivo: str) -> float:
    if objetivo == 'individual':
        return capacity(ch.g10 ** 2 * ch.p1)
    return capacity(ch.g10 ** 2 * ch.p1 + ch.g20 ** 2 * ch.p2)


def _amostra_perfil(
    t_template: Topology,
    destino: Posicao,
    objetivo: str,
    alpha1: float,
    alpha2: float,
    p1: float,
    p2: float,
    config: SolverConfig
) -> Optional[ProfilePoint]:
    try:
        t = t_template.com_destino(destino)
        ch = gains_from_topology(t, p1, p2)
        forte = outer_bound_gains(ch)
        if objetivo == 'individual':
            _, taxa, fases = _resolver_individual(ch, alpha1, config, False)
            limite = maximize_individual_fixed_alpha(forte, fases.alpha1, config).rate
        else:
            _, taxa, fases = _resolver_soma(ch, alpha1, alpha2, config, False)
            _, limite, _ = _resolver_soma(forte, fases.alpha1, fases.alpha2, config, False)
    except SingularTopologyError as erro:
        logger.error("Amostra (%.4f, %.4f) do perfil ignorada: %s", destino[0], destino[1], erro)
        return None
    d = t.distancias()
    return ProfilePoint(
        x=destino[0], y=destino[1], rate=taxa,
        baseline_rate=_taxa_mac(ch, objetivo),
        outer_bound_rate=limite,
        razao_d10_d12=d['d10'] / d['d12'],
    )


def rate_profile_on_line(
    t_template: Topology,
    line: Tuple[Posicao, Posicao] = ((-2.0, 0.0), (2.0, 0.0)),
    samples: int = 41,
    objective: str = 'individual',
    alpha1: float = 0.5,
    alpha2: float = 0.0,
    p1: float = 2.0,
    p2: float = 2.0,
    config: Optional[SolverConfig] = None,
    workers: Optional[int] = 1
) -> List[ProfilePoint]:
    """
    Taxa ótima, MAC clássico e limite externo com o destino sobre um segmento

    O limite externo é calculado pelo mesmo otimizador nos ganhos fortalecidos,
    nas fases efetivas da solução alcançável.

    Args:
        t_template: Topologia com as posições dos usuários
        line: Extremos do segmento
        samples: Número de amostras (>= 2)
        objective: 'individual' ou 'sum'
        alpha1, alpha2: Fases (alpha2 só na soma)
        p1, p2: Potências
        config: Tolerâncias
        workers: Threads

    Returns:
        Amostras não singulares, na ordem do segmento
    """
    config = config or DEFAULT_CONFIG
    if objective not in OBJETIVOS:
        raise InvalidParameterError(f"objective deve ser um de {OBJETIVOS}, recebido {objective!r}")
    if not isinstance(samples, (int, np.integer)) or samples < 2:
        raise InvalidParameterError(f"samples deve ser um inteiro >= 2, recebido {samples!r}")
    inicio, fim = _posicao('inicio', line[0]), _posicao('fim', line[1])
    destinos = [(float(x), float(y)) for x, y in zip(np.linspace(inicio[0], fim[0], samples),
                                                     np.linspace(inicio[1], fim[1], samples))]
    pontos = mapear_paralelo(
        lambda d: _amostra_perfil(t_template, d, objective, alpha1, alpha2, p1, p2, config),
        destinos, workers
    )
    validos = [p for p in pontos if p is not None]
    logger.info("Perfil de taxa (%s): %d de %d amostras válidas", objective, len(validos), samples)
    return validos


def perfil_dataframe(pontos: Sequence[ProfilePoint]) -> pd.DataFrame:
    """Perfil como DataFrame"""
    return pd.DataFrame([p.to_dict() for p in pontos],
                        columns=['x', 'y', 'rate', 'baseline_rate', 'outer_bound_rate', 'razao_d10_d12'])


def exportar_perfil_csv(pontos: Sequence[ProfilePoint], caminho: Union[str, Path]) -> Path:
    """CSV do perfil com 6 casas decimais"""
    caminho = Path(caminho)
    caminho.parent.mkdir(parents=True, exist_ok=True)
    perfil_dataframe(pontos).to_csv(caminho, index=False, float_format='%.6f')
    return caminho


def diagnostico_gap(pontos: Sequence[ProfilePoint], tol: float = 1e-6) -> Dict:
    """
    Verifica se a distância ao limite externo diminui quando d10/d12 cresce

    Returns:
        {'monotono': bool, 'violacoes': número de pares consecutivos em que o gap cresce}
    """
    ordenados = sorted(pontos, key=lambda p: p.razao_d10_d12)
    gaps = [p.outer_bound_rate - p.rate for p in ordenados]
    violacoes = sum(1 for a, b in zip(gaps, gaps[1:]) if b > a + tol)
    return {'monotono': violacoes == 0, 'violacoes': violacoes, 'gaps': gaps}
