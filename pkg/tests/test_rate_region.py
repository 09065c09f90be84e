import json
import math

import pandas as pd
import pytest

from src.analytics import (
    RateRegion,
    classical_mac_region,
    envelope_region,
    exportar_fronteira_csv,
    filtrar_pareto,
    funcao_suporte,
    apice_soma,
    maximize_sum_fixed_alphas,
    outer_bound_region,
    region_for_allocation,
)
from src.analytics.rate_region import pesos_escalarizacao
from src.models import ChannelGains, InvalidParameterError, PhaseDurations, PowerAllocation
from src.utils import DEFAULT_CONFIG

PESOS = pesos_escalarizacao(DEFAULT_CONFIG.pesos_envelope)


def _contem(externa, interna, tol=1e-6):
    """Toda direção de suporte da região interna é alcançada pela externa"""
    return all(funcao_suporte(externa, PESOS) >= funcao_suporte(interna, PESOS) - tol)


def test_pentagono():
    regiao = RateRegion.from_constraints(1.0, 1.0, 1.5)
    assert regiao.corners == ((0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0))
    assert regiao.forma == 'pentagono'


def test_retangulo_quando_soma_folgada():
    regiao = RateRegion.from_constraints(1.0, 1.0, 2.5)
    assert regiao.corners == ((0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0))
    assert regiao.forma == 'retangulo'


def test_regiao_rejeita_limite_negativo():
    with pytest.raises(InvalidParameterError):
        RateRegion.from_constraints(-1.0, 1.0, 1.0)


def test_pertinencia_e_suporte():
    regiao = RateRegion.from_constraints(1.0, 1.0, 1.5)
    assert regiao.contem(0.5, 0.9)
    assert not regiao.contem(0.8, 0.8)
    assert regiao.suporte(0.5) == pytest.approx(0.75)
    assert regiao.suporte(1.0) == pytest.approx(1.0)


def test_regiao_do_mac_classico():
    regiao = classical_mac_region(ChannelGains(g12=0.0, g21=0.0, g10=1.0, g20=2.0, p1=2.0, p2=1.0))
    assert regiao.j1 == pytest.approx(math.log2(3))
    assert regiao.j2 == pytest.approx(math.log2(5))
    assert regiao.smin == pytest.approx(math.log2(7))


def test_mac_com_usuario_sem_potencia_vira_segmento():
    regiao = classical_mac_region(ChannelGains(g12=0.0, g21=0.0, g10=1.0, g20=1.0, p1=0.0, p2=2.0))
    assert regiao.j1 == 0.0
    assert regiao.forma == 'segmento'


def test_regiao_de_alocacao_fixa():
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    regiao = region_for_allocation(ch, PhaseDurations(0.0), PowerAllocation(rho10=2.0, rho20=2.0))
    mac = classical_mac_region(ch)
    assert regiao.smin == pytest.approx(math.log2(5))
    assert (regiao.j1, regiao.j2) == pytest.approx((mac.j1, mac.j2))
    assert regiao.forma == mac.forma


def test_serializacao_recalcula_vertices(tmp_path):
    regiao = RateRegion.from_constraints(1.0, 2.0, 2.5)
    caminho = regiao.to_json(tmp_path / "regiao.json")
    assert RateRegion.from_dict(json.loads(caminho.read_text())) == regiao


def test_filtro_de_pareto():
    pontos = [(0.0, 2.0), (1.0, 1.0), (0.5, 0.5), (2.0, 0.0), (1.0, 0.9)]
    assert filtrar_pareto(pontos) == [(0.0, 2.0), (1.0, 1.0), (2.0, 0.0)]


def test_exportacao_csv(tmp_path):
    caminho = exportar_fronteira_csv([(0.0, 1.0), (1.0, 0.0)], tmp_path / "f.csv")
    df = pd.read_csv(caminho)
    assert list(df.columns) == ['r1', 'r2']
    assert len(df) == 2


def test_sem_enlace_entre_usuarios_envelope_igual_ao_mac():
    ch = ChannelGains(g12=0.0, g21=0.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    fronteira = envelope_region(ch, alpha_grid_step=0.25, power_grid_points=3)
    assert apice_soma(fronteira) == pytest.approx(math.log2(5), abs=1e-9)
    assert max(r1 for r1, _ in fronteira) == pytest.approx(math.log2(3), abs=1e-9)


def test_regioes_aninhadas(canal_simetrico):
    mac = classical_mac_region(canal_simetrico).corners
    alcancavel = envelope_region(canal_simetrico, alpha_grid_step=0.25, power_grid_points=3)
    limite = outer_bound_region(canal_simetrico, alpha_grid_step=0.25, power_grid_points=3)
    assert _contem(alcancavel, mac)
    assert _contem(limite, alcancavel)
    assert apice_soma(alcancavel) > math.log2(5) + 0.1


def test_apice_do_envelope_inclui_otimo_da_grade(canal_simetrico):
    fronteira = envelope_region(canal_simetrico, alpha_grid_step=0.25, power_grid_points=2)
    otimo = maximize_sum_fixed_alphas(canal_simetrico, 0.25, 0.25)
    assert apice_soma(fronteira) >= otimo.sum_rate - 1e-9


def test_limite_externo_sem_enlace_contem_envelope():
    ch = ChannelGains(g12=0.0, g21=0.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    alcancavel = envelope_region(ch, alpha_grid_step=0.25, power_grid_points=3)
    limite = outer_bound_region(ch, alpha_grid_step=0.25, power_grid_points=3)
    assert _contem(limite, alcancavel)
    assert apice_soma(limite) >= apice_soma(alcancavel) - 1e-9


@pytest.mark.parametrize("passo, pontos", [(0.0, 3), (1.0, 3), (0.5, 1)])
def test_parametros_do_envelope(canal_simetrico, passo, pontos):
    with pytest.raises(InvalidParameterError):
        envelope_region(canal_simetrico, alpha_grid_step=passo, power_grid_points=pontos)


@pytest.mark.slow
def test_aninhamento_em_canais_aleatorios(gerador):
    for ch in gerador.gerar_canais(50):
        mac = classical_mac_region(ch).corners
        alcancavel = envelope_region(ch, alpha_grid_step=0.1, power_grid_points=3)
        limite = outer_bound_region(ch, alpha_grid_step=0.1, power_grid_points=3)
        assert _contem(alcancavel, mac)
        assert _contem(limite, alcancavel)


@pytest.mark.slow
def test_gap_ao_limite_diminui_com_enlace_mais_forte():
    gaps = []
    for g12 in (2.0, 5.0):
        ch = ChannelGains(g12=g12, g21=g12, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
        alcancavel = envelope_region(ch, alpha_grid_step=0.05, power_grid_points=4)
        limite = outer_bound_region(ch, alpha_grid_step=0.05, power_grid_points=4)
        gaps.append(apice_soma(limite) - apice_soma(alcancavel))
    assert 0 <= gaps[1] < gaps[0]
