"""
Gerador Automático de Gráficos
Gera visualizações (PNG) das regiões de taxa, mapas de esquemas, perfis e varreduras de fase
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd
import seaborn as sns
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from src.planning import ProfilePoint, SchemeMap, perfil_dataframe

logger = logging.getLogger(__name__)

# Configuração de estilo
plt.style.use('seaborn-v0_8-darkgrid')
sns.set_palette("husl")

Ponto = Tuple[float, float]


class GraphGenerator:
    """
    Gerador de gráficos para o planejador de MAC cooperativo.

    Gráficos:
    1. Regiões de taxa (alcançável, MAC clássico e limite externo)
    2. Mapa de esquemas ótimos por posição do destino
    3. Perfil de taxa sobre um segmento
    4. Varredura de fases do caso simétrico (grade x interpolação)
    """

    def __init__(self, output_dir: str = "output/graficos", dpi: int = 150):
        """
        Inicializa o gerador de gráficos.

        Args:
            output_dir: Diretório para salvar os gráficos
            dpi: Resolução dos gráficos
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.dpi = dpi

    def _save_figure(self, fig: plt.Figure, nome: str) -> Path:
        """Salva figura com fundo branco"""
        caminho = self.output_dir / f"{nome}.png"
        fig.savefig(
            caminho,
            dpi=self.dpi,
            bbox_inches='tight',
            facecolor='white',
            edgecolor='none'
        )
        plt.close(fig)
        logger.info("Gráfico salvo: %s", caminho)
        return caminho

    @staticmethod
    def _escada(pontos: Sequence[Ponto]) -> Tuple[np.ndarray, np.ndarray]:
        """Fronteira fechada nos eixos: (0, R2 máx) ... (R1 máx, 0)"""
        matriz = np.asarray(sorted(pontos), dtype=float)
        r1 = np.concatenate(([0.0], matriz[:, 0], [matriz[-1, 0]]))
        r2 = np.concatenate(([matriz[0, 1]], matriz[:, 1], [0.0]))
        return r1, r2

    def grafico_regioes(
        self,
        alcancavel: Sequence[Ponto],
        mac: Sequence[Ponto],
        limite_externo: Optional[Sequence[Ponto]] = None,
        titulo: str = "Regiões de Taxa",
        nome: str = "01_regioes"
    ) -> Path:
        """
        Gráfico 1: fronteiras das regiões de taxa no plano (R1, R2)

        Args:
            alcancavel: Fronteira de Pareto do esquema cooperativo
            mac: Vértices (ou fronteira) do MAC clássico
            limite_externo: Fronteira do limite externo, se calculada
        """
        fig, ax = plt.subplots(figsize=(8, 7))

        curvas = [('Cooperativo (alcançável)', alcancavel, '-'), ('MAC clássico', mac, '--')]
        if limite_externo is not None:
            curvas.append(('Limite externo', limite_externo, ':'))
        for rotulo, pontos, estilo in curvas:
            r1, r2 = self._escada(pontos)
            ax.plot(r1, r2, estilo, linewidth=2, label=rotulo)

        ax.set_title(titulo, fontsize=14, fontweight='bold', pad=15)
        ax.set_xlabel('R1 (bits/s/Hz)', fontsize=12)
        ax.set_ylabel('R2 (bits/s/Hz)', fontsize=12)
        ax.set_xlim(left=0)
        ax.set_ylim(bottom=0)
        ax.legend(loc='upper right')

        return self._save_figure(fig, nome)

    def grafico_mapa_esquemas(
        self,
        mapa: SchemeMap,
        titulo: Optional[str] = None,
        nome: Optional[str] = None
    ) -> Path:
        """
        Gráfico 2: esquema ótimo em cada posição do destino

        Cores categóricas por esquema; os usuários aparecem como marcadores.
        """
        casos = mapa.matriz_casos()
        rotulos = sorted(set(casos.ravel()))
        indices = np.vectorize(rotulos.index)(casos)
        cores = ListedColormap(sns.color_palette("husl", len(rotulos)))

        fig, ax = plt.subplots(figsize=(9, 8))
        ax.pcolormesh(mapa.xs, mapa.ys, indices, cmap=cores, shading='nearest',
                      vmin=-0.5, vmax=len(rotulos) - 0.5)

        for chave, marcador in (('user1_pos', 'o'), ('user2_pos', 's')):
            if chave in mapa.parametros:
                x, y = mapa.parametros[chave]
                ax.plot(x, y, marcador, color='black', markersize=9)

        legenda = [Patch(facecolor=cores(i), label=r) for i, r in enumerate(rotulos)]
        ax.legend(handles=legenda, loc='upper left', bbox_to_anchor=(1.02, 1.0))
        ax.set_aspect('equal')
        ax.set_title(titulo or f"Esquemas ótimos ({mapa.objective})", fontsize=14, fontweight='bold', pad=15)
        ax.set_xlabel('x do destino', fontsize=12)
        ax.set_ylabel('y do destino', fontsize=12)

        return self._save_figure(fig, nome or f"02_mapa_{mapa.objective}")

    def grafico_perfil(
        self,
        pontos: Sequence[ProfilePoint],
        titulo: str = "Perfil de Taxa",
        nome: str = "03_perfil"
    ) -> Path:
        """
        Gráfico 3: taxa ótima, MAC clássico e limite externo ao longo do segmento
        """
        df = perfil_dataframe(pontos)
        posicao = np.hypot(df['x'] - df['x'].iloc[0], df['y'] - df['y'].iloc[0])

        fig, ax = plt.subplots(figsize=(11, 6))
        ax.plot(posicao, df['outer_bound_rate'], ':', linewidth=2, label='Limite externo')
        ax.plot(posicao, df['rate'], '-', linewidth=2, label='Cooperativo')
        ax.plot(posicao, df['baseline_rate'], '--', linewidth=2, label='MAC clássico')

        ax.set_title(titulo, fontsize=14, fontweight='bold', pad=15)
        ax.set_xlabel('Distância ao início do segmento', fontsize=12)
        ax.set_ylabel('Taxa (bits/s/Hz)', fontsize=12)
        ax.legend()

        return self._save_figure(fig, nome)

    def grafico_varredura_simetrica(
        self,
        df: pd.DataFrame,
        titulo: str = "Fases Ótimas: Grade x Interpolação",
        nome: str = "04_varredura_simetrica"
    ) -> Path:
        """
        Gráfico 4: fase ótima em função de g12 no caso simétrico

        Args:
            df: DataFrame de symmetric_sweep
        """
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(14, 6))

        ax1.plot(df['g12'], df['alpha_ind_grade'], '-', linewidth=2, label='Grade')
        ax1.plot(df['g12'], df['alpha_ind_interp'], 'o', markersize=4, label='Interpolação')
        ax1.set_title('Taxa individual', fontsize=12, fontweight='bold')
        ax1.set_xlabel('g12', fontsize=11)
        ax1.set_ylabel('alpha ótimo', fontsize=11)
        ax1.legend()

        ax2.plot(df['g12'], df['alpha_soma_grade'], '-', linewidth=2, label='Grade')
        ax2.plot(df['g12'], df['alpha_soma_interp'], 'o', markersize=4, label='Interpolação')
        ax2.set_title('Taxa soma', fontsize=12, fontweight='bold')
        ax2.set_xlabel('g12', fontsize=11)
        ax2.set_ylabel('alpha ótimo', fontsize=11)
        ax2.legend()

        fig.suptitle(titulo, fontsize=14, fontweight='bold')
        return self._save_figure(fig, nome)

    def gerar_todos_graficos(self, dados: Dict) -> List[Path]:
        """
        Gera os gráficos para os dados disponíveis.

        Args:
            dados: Dicionário com qualquer subconjunto de
                {
                    'alcancavel': List[Ponto],
                    'mac': List[Ponto],
                    'limite_externo': List[Ponto],
                    'mapas': List[SchemeMap],
                    'perfil': List[ProfilePoint],
                    'varredura': pd.DataFrame
                }

        Returns:
            Caminhos dos gráficos gerados
        """
        graficos: List[Path] = []
        tarefas = []
        if 'alcancavel' in dados and 'mac' in dados:
            tarefas.append(('regiões', lambda: self.grafico_regioes(
                dados['alcancavel'], dados['mac'], dados.get('limite_externo'))))
        for mapa in dados.get('mapas', []):
            tarefas.append((f'mapa {mapa.objective}', lambda m=mapa: self.grafico_mapa_esquemas(m)))
        if dados.get('perfil'):
            tarefas.append(('perfil', lambda: self.grafico_perfil(dados['perfil'])))
        if 'varredura' in dados:
            tarefas.append(('varredura', lambda: self.grafico_varredura_simetrica(dados['varredura'])))

        for rotulo, tarefa in tarefas:
            try:
                graficos.append(tarefa())
            except (ValueError, KeyError, IndexError) as erro:
                logger.warning("Erro no gráfico de %s: %s", rotulo, erro)

        logger.info("Total de gráficos gerados: %d/%d", len(graficos), len(tarefas))
        return graficos
