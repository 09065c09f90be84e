import json
import math

import pandas as pd
import pytest

from src.analytics import LookupTable, SearchMethod
from src.analytics.lookup_table import CAMPOS
from src.models import ChannelGains, InvalidParameterError


@pytest.fixture
def tabela_individual():
    canais = LookupTable.grade_canais([0.5, 5.0], [5.0], [1.0], [1.0], [2.0], [2.0])
    return LookupTable.construir(canais, objetivo='individual', passo=0.25)


def test_grade_de_canais_e_produto_cartesiano():
    canais = LookupTable.grade_canais([1.0, 2.0], [1.0, 2.0, 3.0], [1.0], [1.0], [2.0], [1.0, 2.0])
    assert len(canais) == 12
    assert all(isinstance(ch, ChannelGains) for ch in canais)


def test_construcao(tabela_individual):
    assert len(tabela_individual) == 2
    assert list(tabela_individual.tabela.columns) == CAMPOS
    assert tabela_individual.tabela.loc[0, 'alpha1'] == 0.0


def test_consulta_no_proprio_canal_nao_piora(tabela_individual):
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    armazenada = tabela_individual.tabela.loc[1, 'rate']
    resultado = tabela_individual.consultar(ch)
    assert resultado.method == SearchMethod.GRID
    assert resultado.best_rate >= armazenada - 1e-12
    assert resultado.diagnostico['registro']['g12'] == 5.0


def test_canal_mais_proximo(tabela_individual):
    assert tabela_individual.mais_proximo(
        ChannelGains(g12=4.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0))['g12'] == 5.0
    assert tabela_individual.mais_proximo(
        ChannelGains(g12=0.6, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0))['g12'] == 0.5


def test_salvar_e_carregar(tabela_individual, tmp_path):
    caminho = tabela_individual.salvar(tmp_path / "tabelas" / "individual.json")
    registros = json.loads(caminho.read_text())
    assert {r['objective'] for r in registros} == {'individual'}
    carregada = LookupTable.carregar(caminho)
    assert carregada.objetivo == 'individual'
    pd.testing.assert_frame_equal(carregada.tabela, tabela_individual.tabela)


def test_tabela_da_soma_em_canal_sem_cooperacao(canal_caso1):
    tabela = LookupTable.construir([canal_caso1], objetivo='sum', passo=0.5)
    resultado = tabela.consultar(canal_caso1)
    assert resultado.best_rate == pytest.approx(math.log2(5))


@pytest.mark.parametrize("objetivo", ['max', ''])
def test_objetivo_invalido(objetivo):
    with pytest.raises(InvalidParameterError):
        LookupTable(objetivo, pd.DataFrame([dict.fromkeys(CAMPOS, 1.0)]))


def test_tabela_sem_colunas_ou_vazia():
    with pytest.raises(InvalidParameterError):
        LookupTable('sum', pd.DataFrame({'g12': [1.0]}))
    with pytest.raises(InvalidParameterError):
        LookupTable('sum', pd.DataFrame(columns=CAMPOS))


def test_arquivo_que_nao_e_lista(tmp_path):
    caminho = tmp_path / "tabela.json"
    caminho.write_text(json.dumps({'g12': 1.0}))
    with pytest.raises(InvalidParameterError):
        LookupTable.carregar(caminho)


def test_arquivo_sem_objetivo(tmp_path):
    caminho = tmp_path / "tabela.json"
    caminho.write_text(json.dumps([dict.fromkeys(CAMPOS, 1.0)]))
    with pytest.raises(InvalidParameterError):
        LookupTable.carregar(caminho)
    assert len(LookupTable.carregar(caminho, objetivo='sum')) == 1
