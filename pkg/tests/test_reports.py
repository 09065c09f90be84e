import matplotlib

matplotlib.use("Agg")

import pandas as pd  # noqa: E402
import pytest  # noqa: E402

from src.analytics import classical_mac_region, gain_vs_mac, grid_search_individual  # noqa: E402
from src.planning import Topology, individual_scheme_map, rate_profile_on_line  # noqa: E402
from src.reports import (  # noqa: E402
    DashboardGenerator,
    GraphGenerator,
    gerar_relatorio_busca,
    gerar_relatorio_ganhos,
    gerar_relatorio_mapa,
    gerar_relatorio_perfil,
    gerar_relatorio_regioes,
    gerar_relatorio_varredura,
)

ALCANCAVEL = [(0.0, 2.0), (1.0, 1.8), (1.6, 1.0), (2.0, 0.0)]


@pytest.fixture(scope="module")
def mapa():
    return individual_scheme_map(Topology(), resolution=3)


@pytest.fixture(scope="module")
def perfil():
    return rate_profile_on_line(Topology(), ((-2.0, 0.5), (2.0, 0.5)), samples=5)


@pytest.fixture
def varredura():
    return pd.DataFrame({
        'g12': [2.0, 3.0],
        'alpha_ind_grade': [0.4, 0.5], 'alpha_ind_interp': [0.41, 0.49],
        'erro_alpha_ind': [0.025, 0.02], 'erro_taxa_ind': [1e-4, 2e-4],
        'alpha_soma_grade': [0.2, 0.25], 'alpha_soma_interp': [0.21, 0.24],
        'erro_alpha_soma': [0.05, 0.04], 'erro_taxa_soma': [3e-4, 1e-4],
        'unimodal_ind': [True, True], 'unimodal_soma': [True, False],
    })


def test_graficos_png(tmp_path, mapa, perfil, varredura, canal_simetrico):
    gerador = GraphGenerator(output_dir=str(tmp_path / "graficos"), dpi=50)
    mac = classical_mac_region(canal_simetrico).corners
    graficos = gerador.gerar_todos_graficos({
        'alcancavel': ALCANCAVEL,
        'mac': mac,
        'mapas': [mapa],
        'perfil': perfil,
        'varredura': varredura,
    })
    assert len(graficos) == 4
    assert all(caminho.suffix == '.png' and caminho.stat().st_size > 0 for caminho in graficos)


def test_dashboard_html(tmp_path, mapa, perfil, canal_simetrico):
    gerador = DashboardGenerator(output_dir=str(tmp_path / "dashboards"))
    regioes = {'alcancavel': ALCANCAVEL, 'mac': classical_mac_region(canal_simetrico).corners}
    caminho = gerador.gerar_dashboard(mapas=[mapa], perfis={'Perfil y=0.5': perfil}, regioes=regioes)
    html = caminho.read_text(encoding='utf-8')
    assert caminho.name == "dashboard.html"
    assert html.count('<section class="painel') == 3
    assert html.count('class="painel mapa"') == 1
    assert html.count('class="figura"') == 4
    assert "Perfil y=0.5" in html


def test_dashboard_sem_regioes(tmp_path, mapa):
    gerador = DashboardGenerator(output_dir=str(tmp_path / "dashboards"))
    html = gerador.gerar_dashboard(mapas=[mapa], nome_arquivo="so_mapa.html").read_text(encoding='utf-8')
    assert 'class="painel regioes"' not in html
    assert html.count('<section class="painel') == 1


def test_histograma_do_mapa(tmp_path, mapa):
    fig = DashboardGenerator(output_dir=str(tmp_path)).grafico_histograma(mapa)
    assert sum(fig.data[0].x) == len(mapa.cells)


def test_relatorio_mapa(mapa):
    linhas = gerar_relatorio_mapa(mapa)
    assert "MAPA DE ESQUEMAS (individual)" in linhas
    assert len(linhas) == 4 + len(mapa.histograma())


def test_relatorio_perfil(perfil):
    linhas = gerar_relatorio_perfil(perfil)
    assert "Amostras: 5" in linhas
    assert gerar_relatorio_perfil([])[-1] == "Nenhuma amostra válida"


def test_relatorio_regioes(canal_simetrico):
    linhas = gerar_relatorio_regioes(ALCANCAVEL, classical_mac_region(canal_simetrico).corners)
    assert len(linhas) == 5
    assert "soma=2.800000" in linhas[3]


def test_relatorio_ganhos(canal_simetrico):
    linhas = gerar_relatorio_ganhos(gain_vs_mac(canal_simetrico))
    assert len(linhas) == 3 + 6


def test_relatorio_busca(canal_caso1):
    linhas = gerar_relatorio_busca(grid_search_individual(canal_caso1, step=0.5))
    assert linhas[1] == "BUSCA DE FASES (Grid)"
    assert "Esquema: Direct" in linhas


def test_relatorio_varredura(varredura):
    linhas = gerar_relatorio_varredura(varredura)
    assert linhas[-1].endswith("2/1 de 2")
