import math

import numpy as np
import pytest

from src.analytics import maximize_individual_fixed_alpha, maximize_sum_fixed_alphas
from src.models import InvalidParameterError, SchemeCase, SingularTopologyError
from src.planning import (
    Topology,
    celulas_inconsistentes,
    diagnostico_gap,
    familia_esperada,
    gains_from_topology,
    ganho_por_distancia,
    individual_scheme_map,
    perfil_dataframe,
    rate_profile_on_line,
    sum_scheme_map,
)


def _canal(topologia, destino):
    return gains_from_topology(topologia.com_destino(destino), 2.0, 2.0)


def test_perda_de_percurso():
    assert ganho_por_distancia(1.0, 2.4) == pytest.approx(1.0)
    assert ganho_por_distancia(0.5, 2.4) == pytest.approx(2.0 ** 1.2)
    assert ganho_por_distancia(0.5, 2.4) == pytest.approx(2.297, abs=1e-3)


def test_ganhos_da_topologia_padrao(topologia):
    ch = gains_from_topology(topologia, 2.0, 2.0)
    assert ch.g12 == pytest.approx(1.0)
    assert ch.g21 == ch.g12
    assert ch.g10 == pytest.approx(ch.g20)
    assert ch.g10 == pytest.approx(math.sqrt(1.25) ** -1.2)


def test_destino_sobre_usuario():
    with pytest.raises(SingularTopologyError):
        Topology(dest_pos=(-0.5, 0.0))
    with pytest.raises(SingularTopologyError):
        Topology().com_destino((0.5, 0.0))


@pytest.mark.parametrize("kwargs", [
    {'gamma': 0.0},
    {'gamma': -2.4},
    {'dest_pos': (0.0, math.nan)},
    {'user1_pos': (1.0,)},
])
def test_topologia_invalida(kwargs):
    with pytest.raises(InvalidParameterError):
        Topology(**kwargs)


def test_topologia_serializa(topologia):
    assert Topology.from_dict(topologia.to_dict()) == topologia


def test_destino_perto_do_usuario1_transmite_direto(topologia):
    ch = _canal(topologia, (-0.5, 0.1))
    assert ch.g10 > ch.g12
    assert maximize_individual_fixed_alpha(ch, 0.5).case_id == SchemeCase.DIRECT


def _pontos_em_arco(centro, raios, angulos_graus):
    return [(centro[0] + r * math.cos(math.radians(t)), centro[1] + r * math.sin(math.radians(t)))
            for r in raios for t in angulos_graus]


def _pontos_em_grade(passo=0.1, limite=2.0):
    eixo = np.arange(-limite, limite + 1e-9, passo)
    return [(float(x), float(y)) for x in eixo for y in eixo]


def test_destino_alem_do_usuario2_usa_dois_saltos(topologia):
    ch = _canal(topologia, (1.55, 0.0))
    solucao = maximize_individual_fixed_alpha(ch, 0.5)
    assert solucao.case_id == SchemeCase.TWO_HOP
    assert solucao.fases.alpha1 == 0.5


def test_faixa_de_dois_saltos_atras_do_usuario2(topologia):
    pontos = [p for p in _pontos_em_arco(topologia.user2_pos, (1.03, 1.07, 1.11), (0, 5, -5, 10, -10, 15, -15))
              if math.dist(p, topologia.user1_pos) > 2.0 and 1.0 < math.dist(p, topologia.user2_pos) < 1.15]
    assert len(pontos) >= 20
    for destino in pontos:
        assert maximize_individual_fixed_alpha(_canal(topologia, destino), 0.5).case_id == SchemeCase.TWO_HOP


def test_regiao_direta_em_torno_do_usuario1(topologia):
    pontos = [p for p in _pontos_em_grade()
              if 0.05 < math.dist(p, topologia.user1_pos) < 1.0]
    assert len(pontos) >= 20
    for destino in pontos:
        assert maximize_individual_fixed_alpha(_canal(topologia, destino), 0.5).case_id == SchemeCase.DIRECT


def test_regiao_de_mac_classico_entre_os_usuarios(topologia):
    pontos = [p for p in _pontos_em_grade()
              if 0.05 < math.dist(p, topologia.user1_pos) < 1.0
              and 0.05 < math.dist(p, topologia.user2_pos) < 1.0]
    assert len(pontos) >= 20
    for destino in pontos:
        caso = maximize_sum_fixed_alphas(_canal(topologia, destino), 0.2, 0.2).case_id
        assert caso == SchemeCase.CLASSICAL_MAC


def test_soma_entre_usuarios_e_mac_classico(topologia):
    ch = _canal(topologia, (0.0, 0.3))
    assert maximize_sum_fixed_alphas(ch, 0.2, 0.2).case_id == SchemeCase.CLASSICAL_MAC


def test_soma_do_lado_do_usuario2_coopera_so_o_usuario1(topologia):
    ch = _canal(topologia, (1.2, 0.0))
    assert familia_esperada(ch, 'sum') == 3
    assert maximize_sum_fixed_alphas(ch, 0.2, 0.2).case_id.familia == 3


def test_transmissao_direta_perto_do_usuario1(topologia):
    mapa = individual_scheme_map(topologia, alpha1=0.5, resolution=11)
    celulas = [c for c in mapa.cells
               if not c.singular and math.dist((c.x, c.y), topologia.user1_pos) < 1.0]
    assert len(celulas) >= 10
    assert all(c.case == SchemeCase.DIRECT for c in celulas)


def test_mac_classico_perto_dos_dois_usuarios(topologia):
    mapa = sum_scheme_map(topologia, alpha1=0.2, alpha2=0.2, resolution=11)
    celulas = [c for c in mapa.cells
               if not c.singular
               and math.dist((c.x, c.y), topologia.user1_pos) < 1.0
               and math.dist((c.x, c.y), topologia.user2_pos) < 1.0]
    assert len(celulas) >= 5
    assert all(c.case == SchemeCase.CLASSICAL_MAC for c in celulas)


def test_mapa_minimo(topologia):
    mapa = individual_scheme_map(topologia, resolution=2)
    assert len(mapa.cells) == 4
    assert sum(mapa.histograma().values()) == 4
    assert mapa.matriz_taxas().shape == (2, 2)
    assert celulas_inconsistentes(mapa) == []


@pytest.mark.parametrize("kwargs", [
    {'resolution': 1},
    {'resolution': 2.5},
    {'bounds': (1.0, -1.0, -1.0, 1.0)},
    {'bounds': (0.0, 1.0)},
])
def test_grade_invalida(topologia, kwargs):
    with pytest.raises(InvalidParameterError):
        individual_scheme_map(topologia, **kwargs)


def test_mapa_da_soma_espelhado(topologia):
    mapa = sum_scheme_map(topologia, resolution=9, bounds=(-2.0, 2.0, -2.0, 2.0))
    singulares = [c for c in mapa.cells if c.singular]
    assert {(c.x, c.y) for c in singulares} == {(-0.5, 0.0), (0.5, 0.0)}
    assert all(math.isnan(c.rate) for c in singulares)
    taxas = mapa.matriz_taxas()
    espelhadas = taxas[:, ::-1]
    validas = ~np.isnan(taxas)
    assert np.allclose(taxas[validas], espelhadas[validas], atol=1e-5)
    assert celulas_inconsistentes(mapa) == []


def test_exportacao_do_mapa(topologia, tmp_path):
    mapa = individual_scheme_map(topologia, resolution=3)
    csv = mapa.exportar_csv(tmp_path / "mapa" / "individual.csv")
    linhas = csv.read_text().strip().splitlines()
    assert linhas[0] == "x,y,case,rate"
    assert len(linhas) == 10
    resumo = mapa.exportar_json(tmp_path / "mapa" / "individual.json")
    assert resumo.exists()
    assert mapa.resumo()['resolution'] == 3


def test_perfil_sobre_a_reta_dos_usuarios(topologia):
    pontos = rate_profile_on_line(topologia, ((-2.0, 0.0), (2.0, 0.0)), samples=41)
    assert len(pontos) == 39
    for p in pontos:
        assert p.rate >= p.baseline_rate - 1e-9
        assert p.rate <= p.outer_bound_rate + 1e-6
    df = perfil_dataframe(pontos)
    assert list(df.columns) == ['x', 'y', 'rate', 'baseline_rate', 'outer_bound_rate', 'razao_d10_d12']
    diagnostico = diagnostico_gap(pontos)
    assert len(diagnostico['gaps']) == 39


@pytest.mark.parametrize("kwargs", [
    {'samples': 1},
    {'objective': 'max'},
])
def test_perfil_invalido(topologia, kwargs):
    with pytest.raises(InvalidParameterError):
        rate_profile_on_line(topologia, **kwargs)
