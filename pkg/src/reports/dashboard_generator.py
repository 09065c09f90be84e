"""
Gerador de Dashboard HTML Interativo
Página única com Plotly: regiões de taxa no topo, mapas de esquemas lado a
lado com a contagem de células por esquema e perfis de taxa ao final
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import plotly.express as px
import plotly.graph_objects as go

from src.planning import ProfilePoint, SchemeMap, perfil_dataframe

from .graph_generator import GraphGenerator, Ponto

logger = logging.getLogger(__name__)


class DashboardGenerator:
    """
    Gerador de dashboards HTML interativos com Plotly.

    Layout:
    - Regiões de taxa (cooperativo, MAC clássico e limite externo)
    - Um painel por mapa de esquemas, com o histograma de esquemas ao lado
    - Perfis de taxa em largura total
    """

    def __init__(self, output_dir: str = "output/dashboards"):
        """
        Inicializa o gerador de dashboards.

        Args:
            output_dir: Diretório para salvar os dashboards
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)

        self.cores = {
            'cooperativo': '#4CAF50',
            'mac': '#2196F3',
            'limite': '#F44336',
        }

    def grafico_regioes_interativo(self, regioes: Dict[str, Sequence[Ponto]]) -> go.Figure:
        """
        Fronteiras das regiões de taxa no plano (R1, R2)

        Args:
            regioes: {'alcancavel': ..., 'mac': ..., 'limite_externo': ...}; só as presentes são desenhadas
        """
        fig = go.Figure()
        for chave, nome, cor, traco in (
            ('limite_externo', 'Limite externo', self.cores['limite'], 'dot'),
            ('alcancavel', 'Cooperativo (alcançável)', self.cores['cooperativo'], 'solid'),
            ('mac', 'MAC clássico', self.cores['mac'], 'dash'),
        ):
            pontos = regioes.get(chave)
            if not pontos:
                continue
            r1, r2 = GraphGenerator._escada(pontos)
            fig.add_trace(go.Scatter(
                x=r1, y=r2, name=nome, mode='lines',
                line=dict(color=cor, dash=traco, width=3),
                hovertemplate=f'<b>{nome}</b><br>R1=%{{x:.4f}}<br>R2=%{{y:.4f}}<extra></extra>'
            ))

        fig.update_layout(
            title=dict(text="Regiões de taxa", font=dict(size=18, color='#333')),
            xaxis=dict(title="R1 (bits/s/Hz)", rangemode='tozero'),
            yaxis=dict(title="R2 (bits/s/Hz)", rangemode='tozero', scaleanchor='x'),
            template="plotly_white",
            height=520
        )
        return fig

    @staticmethod
    def _paleta(rotulos: Sequence[str]) -> Dict[str, str]:
        cores = px.colors.qualitative.Plotly
        return {rotulo: cores[i % len(cores)] for i, rotulo in enumerate(sorted(rotulos))}

    def grafico_mapa_interativo(self, mapa: SchemeMap, titulo: Optional[str] = None) -> go.Figure:
        """Heatmap categórico do esquema ótimo; hover mostra a taxa"""
        casos = mapa.matriz_casos()
        rotulos = sorted(set(casos.ravel()))
        paleta = self._paleta(rotulos)
        indices = np.vectorize(rotulos.index)(casos)
        n = len(rotulos)
        escala = []
        for i, rotulo in enumerate(rotulos):
            escala += [(i / n, paleta[rotulo]), ((i + 1) / n, paleta[rotulo])]

        fig = go.Figure(go.Heatmap(
            x=mapa.xs,
            y=mapa.ys,
            z=indices,
            customdata=np.dstack((casos, mapa.matriz_taxas())),
            colorscale=escala,
            zmin=-0.5,
            zmax=n - 0.5,
            showscale=False,
            hovertemplate='x=%{x:.3f}, y=%{y:.3f}<br>' +
                          '<b>%{customdata[0]}</b><br>' +
                          'Taxa: %{customdata[1]:.4f}<extra></extra>'
        ))

        usuarios = [mapa.parametros[k] for k in ('user1_pos', 'user2_pos') if k in mapa.parametros]
        if usuarios:
            fig.add_trace(go.Scatter(
                x=[u[0] for u in usuarios], y=[u[1] for u in usuarios],
                mode='markers+text', text=['U1', 'U2'][:len(usuarios)], textposition='top center',
                marker=dict(color='black', size=10), showlegend=False
            ))

        fig.update_layout(
            title=dict(text=titulo or f"Esquemas ótimos ({mapa.objective})", font=dict(size=18, color='#333')),
            xaxis_title="x do destino",
            yaxis_title="y do destino",
            yaxis=dict(scaleanchor='x'),
            template="plotly_white",
            height=520
        )
        return fig

    def grafico_histograma(self, mapa: SchemeMap) -> go.Figure:
        """Células por esquema, nas mesmas cores do mapa"""
        histograma = mapa.histograma()
        paleta = self._paleta(histograma.keys())
        rotulos = sorted(histograma, key=histograma.get, reverse=True)
        fig = go.Figure(go.Bar(
            x=[histograma[r] for r in rotulos],
            y=rotulos,
            orientation='h',
            marker_color=[paleta[r] for r in rotulos],
            hovertemplate='<b>%{y}</b><br>Células: %{x}<extra></extra>'
        ))
        fig.update_layout(
            title=dict(text="Células por esquema", font=dict(size=16, color='#333')),
            xaxis_title="Células",
            yaxis=dict(autorange='reversed'),
            template="plotly_white",
            height=520
        )
        return fig

    def grafico_perfil_interativo(self, pontos: Sequence[ProfilePoint],
                                  titulo: str = "Perfil de Taxa") -> go.Figure:
        """Taxa cooperativa, MAC clássico e limite externo sobre o segmento"""
        df = perfil_dataframe(pontos)
        posicao = np.hypot(df['x'] - df['x'].iloc[0], df['y'] - df['y'].iloc[0])

        fig = go.Figure()
        for coluna, nome, cor, traco in (
            ('outer_bound_rate', 'Limite externo', self.cores['limite'], 'dot'),
            ('rate', 'Cooperativo', self.cores['cooperativo'], 'solid'),
            ('baseline_rate', 'MAC clássico', self.cores['mac'], 'dash'),
        ):
            fig.add_trace(go.Scatter(
                x=posicao, y=df[coluna], name=nome, mode='lines',
                line=dict(color=cor, dash=traco, width=3),
                customdata=df['razao_d10_d12'],
                hovertemplate=f'<b>{nome}</b><br>' +
                              'Taxa: %{y:.4f}<br>' +
                              'd10/d12: %{customdata:.3f}<extra></extra>'
            ))

        fig.update_layout(
            title=dict(text=titulo, font=dict(size=18, color='#333')),
            xaxis_title="Distância ao início do segmento",
            yaxis_title="Taxa (bits/s/Hz)",
            template="plotly_white",
            hovermode='x unified',
            height=450
        )
        return fig

    @staticmethod
    def _painel(classe: str, figuras: Sequence[go.Figure]) -> str:
        corpo = "".join(
            f'<div class="figura">{fig.to_html(full_html=False, include_plotlyjs=False)}</div>'
            for fig in figuras
        )
        return f'<section class="painel {classe}">{corpo}</section>\n'

    def gerar_dashboard(
        self,
        mapas: Sequence[SchemeMap] = (),
        perfis: Optional[Dict[str, Sequence[ProfilePoint]]] = None,
        regioes: Optional[Dict[str, Sequence[Ponto]]] = None,
        nome_arquivo: str = "dashboard.html"
    ) -> Path:
        """
        Gera dashboard HTML de página única.

        Args:
            mapas: Mapas de esquemas (um painel mapa + histograma cada)
            perfis: Perfis nomeados {titulo: pontos}
            regioes: Fronteiras {'alcancavel', 'mac', 'limite_externo'}
            nome_arquivo: Nome do arquivo

        Returns:
            Path do arquivo gerado
        """
        paineis: List[Tuple[str, List[go.Figure]]] = []
        if regioes:
            paineis.append(('regioes', [self.grafico_regioes_interativo(regioes)]))
        for mapa in mapas:
            paineis.append(('mapa', [self.grafico_mapa_interativo(mapa), self.grafico_histograma(mapa)]))
        for titulo, pontos in (perfis or {}).items():
            paineis.append(('perfil', [self.grafico_perfil_interativo(pontos, titulo)]))

        secoes_html = "".join(self._painel(classe, figuras) for classe, figuras in paineis)

        html_template = f"""<!DOCTYPE html>
<html lang="pt-BR">
<head>
    <meta charset="UTF-8">
    <title>Dashboard - MAC Cooperativo</title>
    <script src="https://cdn.plot.ly/plotly-2.27.0.min.js"></script>
    <style>
        body {{ font-family: 'Segoe UI', Tahoma, sans-serif; background-color: #f5f5f5; margin: 0; }}
        header {{ background: #3f51b5; color: white; padding: 16px 24px; }}
        main {{ max-width: 1400px; margin: 0 auto; padding: 16px; }}
        .painel {{ background: white; border-radius: 6px; margin-bottom: 16px; padding: 8px;
                   display: grid; gap: 8px; }}
        .painel.regioes {{ grid-template-columns: minmax(0, 720px); justify-content: center; }}
        .painel.mapa {{ grid-template-columns: 2fr 1fr; }}
        .painel.perfil {{ grid-template-columns: 1fr; }}
    </style>
</head>
<body>
    <header><h1>Planejamento do MAC Cooperativo</h1></header>
    <main>
    {secoes_html}
    </main>
</body>
</html>
"""
        caminho = self.output_dir / nome_arquivo
        caminho.write_text(html_template, encoding='utf-8')
        logger.info("Dashboard HTML salvo: %s (%d painéis)", caminho, len(paineis))
        return caminho
