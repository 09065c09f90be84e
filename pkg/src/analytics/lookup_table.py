"""
Tabela de fases ótimas pré-calculadas

Uma grade de canais é resolvida uma vez pela busca em grade e salva em JSON.
A consulta encontra o canal mais próximo da grade (em escala log1p) e refina
localmente em torno das fases armazenadas.
"""
import itertools
import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from src.models import ChannelGains, InvalidParameterError, PhaseDurations
from src.utils.config import DEFAULT_CONFIG, SolverConfig

from .phase_optimizer import (
    PhaseSearchResult,
    SearchMethod,
    _avaliar_individual,
    _avaliar_soma,
    _melhor_da_grade,
    grid_search_individual,
    grid_search_sum,
)

logger = logging.getLogger(__name__)

CAMPOS_CANAL = ['g12', 'g21', 'g10', 'g20', 'p1', 'p2']
CAMPOS = CAMPOS_CANAL + ['alpha1', 'alpha2', 'rate']
OBJETIVOS = ('individual', 'sum')

# Passos de refinamento de cada lado do valor armazenado
VIZINHANCA_REFINO = 2


def _validar_objetivo(objetivo: str):
    if objetivo not in OBJETIVOS:
        raise InvalidParameterError(f"Objetivo deve ser um de {OBJETIVOS}, recebido {objetivo!r}")


class LookupTable:
    """
    Tabela (canal → fases ótimas) para um objetivo

    Atributos:
        objetivo: 'individual' ou 'sum'
        tabela: DataFrame com g12, g21, g10, g20, p1, p2, alpha1, alpha2, rate
        passo_refino: Passo da grade local usada na consulta
    """

    def __init__(self, objetivo: str, tabela: pd.DataFrame, passo_refino: float = 0.01):
        _validar_objetivo(objetivo)
        faltando = [c for c in CAMPOS if c not in tabela.columns]
        if faltando:
            raise InvalidParameterError(f"Tabela sem as colunas {faltando}")
        if tabela.empty:
            raise InvalidParameterError("Tabela de fases vazia")
        if not 0 < passo_refino < 1:
            raise InvalidParameterError(f"passo_refino deve estar em (0, 1), recebido {passo_refino}")
        self.objetivo = objetivo
        self.tabela = tabela[CAMPOS].reset_index(drop=True)
        self.passo_refino = passo_refino
        self._chaves = np.log1p(self.tabela[CAMPOS_CANAL].to_numpy(dtype=float))

    def __len__(self) -> int:
        return len(self.tabela)

    @staticmethod
    def grade_canais(
        g12: Sequence[float],
        g21: Sequence[float],
        g10: Sequence[float],
        g20: Sequence[float],
        p1: Sequence[float],
        p2: Sequence[float]
    ) -> List[ChannelGains]:
        """Produto cartesiano dos valores de cada parâmetro"""
        return [ChannelGains(*valores) for valores in itertools.product(g12, g21, g10, g20, p1, p2)]

    @classmethod
    def construir(
        cls,
        canais: Iterable[ChannelGains],
        objetivo: str = 'sum',
        passo: Optional[float] = None,
        config: Optional[SolverConfig] = None,
        workers: Optional[int] = 1
    ) -> 'LookupTable':
        """
        Resolve a busca em grade para cada canal

        Args:
            canais: Canais da grade
            objetivo: 'individual' ou 'sum'
            passo: Passo da busca em grade (padrão do config para o objetivo)
            config: Tolerâncias
            workers: Threads por busca

        Returns:
            LookupTable
        """
        _validar_objetivo(objetivo)
        config = config or DEFAULT_CONFIG
        linhas = []
        for ch in canais:
            if objetivo == 'individual':
                resultado = grid_search_individual(ch, passo, config, workers)
            else:
                resultado = grid_search_sum(ch, passo, config, workers)
            linha = ch.to_dict()
            linha.update(alpha1=resultado.best_alphas.alpha1, alpha2=resultado.best_alphas.alpha2,
                         rate=resultado.best_rate)
            linhas.append(linha)
        logger.info("Tabela de fases (%s) com %d canais", objetivo, len(linhas))
        passo_refino = passo if passo is not None else (
            config.passo_individual if objetivo == 'individual' else config.passo_soma)
        return cls(objetivo, pd.DataFrame(linhas, columns=CAMPOS), passo_refino)

    def salvar(self, caminho: Union[str, Path]) -> Path:
        """Salva como array JSON de registros"""
        caminho = Path(caminho)
        caminho.parent.mkdir(parents=True, exist_ok=True)
        registros = self.tabela.to_dict(orient='records')
        for registro in registros:
            registro['objective'] = self.objetivo
        caminho.write_text(json.dumps(registros, indent=2), encoding='utf-8')
        return caminho

    @classmethod
    def carregar(cls, caminho: Union[str, Path], objetivo: Optional[str] = None,
                 passo_refino: float = 0.01) -> 'LookupTable':
        """
        Carrega uma tabela salva

        Raises:
            FileNotFoundError: se o arquivo não existir
            InvalidParameterError: se o conteúdo não for um array de registros válido
        """
        dados = json.loads(Path(caminho).read_text(encoding='utf-8'))
        if not isinstance(dados, list):
            raise InvalidParameterError("Arquivo de tabela deve conter um array JSON")
        objetivos = {registro.get('objective') for registro in dados} - {None}
        if objetivo is None:
            if len(objetivos) != 1:
                raise InvalidParameterError("Objetivo da tabela ausente ou ambíguo")
            objetivo = objetivos.pop()
        return cls(objetivo, pd.DataFrame(dados), passo_refino)

    def mais_proximo(self, ch: ChannelGains) -> pd.Series:
        """Registro do canal da grade mais próximo (distância euclidiana em log1p)"""
        chave = np.log1p(np.array([getattr(ch, c) for c in CAMPOS_CANAL]))
        indice = int(np.argmin(np.sum((self._chaves - chave) ** 2, axis=1)))
        return self.tabela.iloc[indice]

    def consultar(self, ch: ChannelGains, config: Optional[SolverConfig] = None) -> PhaseSearchResult:
        """
        Fases para um canal qualquer

        Toma as fases do canal mais próximo da grade e avalia uma grade local de
        ±2 passos de refino em torno delas, no próprio canal.

        Returns:
            PhaseSearchResult (method = Grid) com o registro usado no diagnóstico
        """
        config = config or DEFAULT_CONFIG
        registro = self.mais_proximo(ch)
        topo = 1.0 - config.epsilon_fase
        deslocamentos = self.passo_refino * np.arange(-VIZINHANCA_REFINO, VIZINHANCA_REFINO + 1)

        if self.objetivo == 'individual':
            valores = sorted({float(np.clip(registro['alpha1'] + d, 0.0, topo)) for d in deslocamentos})
            fases = [PhaseDurations(a) for a in valores]
            avaliar = _avaliar_individual(ch, config)
        else:
            pares = set()
            for d1, d2 in itertools.product(deslocamentos, deslocamentos):
                a1 = float(np.clip(registro['alpha1'] + d1, 0.0, topo))
                a2 = float(np.clip(registro['alpha2'] + d2, 0.0, topo))
                if a1 + a2 <= topo:
                    pares.add((a1, a2))
            fases = [PhaseDurations(a1, a2) for a1, a2 in sorted(pares)]
            avaliar = _avaliar_soma(ch, config)

        solucoes = [avaliar(pd_) for pd_ in fases]
        amostras = [(pd_, s.rate if self.objetivo == 'individual' else s.sum_rate)
                    for pd_, s in zip(fases, solucoes) if s is not None]
        resultado = _melhor_da_grade(fases, solucoes, amostras, len(fases) - len(amostras))
        resultado.method = SearchMethod.GRID
        resultado.diagnostico['registro'] = {k: float(registro[k]) for k in CAMPOS}
        return resultado
