import math

import numpy as np
import pytest

from src.analytics import (
    SearchMethod,
    com_erro_aproximado,
    diagnostico_unimodalidade,
    grid_search_individual,
    grid_search_sum,
    interpolate_individual,
    interpolate_sum,
    maximize_individual_fixed_alpha,
    maximize_sum_fixed_alphas,
    symmetric_sweep,
)
from src.analytics.phase_optimizer import (
    grade_alpha1,
    grade_simplex,
    interpolar_estencil_2d,
    projetar_simplex,
    vertice_quadratico,
)
from src.models import InvalidParameterError


def test_grade_alpha1_inclui_borda():
    assert grade_alpha1(0.5, 1e-6) == [0.0, 0.5, 1.0 - 1e-6]
    assert set(grade_alpha1(0.5, 1e-6)) <= set(grade_alpha1(0.25, 1e-6))


def test_grade_simplex_respeita_fase_cooperativa():
    fases = grade_simplex(0.25, 1e-6)
    assert all(pd.alpha3 >= 1e-6 - 1e-15 for pd in fases)
    assert len(fases) == 10


@pytest.mark.parametrize("passo", [0.0, 1.0, "0.1"])
def test_passo_invalido(canal_simetrico, passo):
    with pytest.raises(InvalidParameterError):
        grid_search_individual(canal_simetrico, step=passo)


def test_grade_individual_caso1_fica_em_zero(canal_caso1):
    resultado = grid_search_individual(canal_caso1, step=0.25)
    assert resultado.best_alphas.alpha1 == 0.0
    assert resultado.best_rate == pytest.approx(math.log2(3))
    assert resultado.method == SearchMethod.GRID


def test_grade_fina_nao_perde_para_grossa(canal_simetrico):
    grossa = grid_search_individual(canal_simetrico, step=0.5)
    fina = grid_search_individual(canal_simetrico, step=0.25)
    assert fina.best_rate >= grossa.best_rate - 1e-12


def test_grade_individual_e_maximo_das_amostras(canal_assimetrico):
    resultado = grid_search_individual(canal_assimetrico, step=0.1)
    assert resultado.best_rate == pytest.approx(max(t for _, t in resultado.samples))
    refeito = maximize_individual_fixed_alpha(canal_assimetrico, resultado.best_alphas.alpha1)
    assert refeito.rate == pytest.approx(resultado.best_rate)


def test_grade_soma_simetrica(canal_simetrico):
    resultado = grid_search_sum(canal_simetrico, step=0.25)
    assert resultado.best_rate >= maximize_sum_fixed_alphas(canal_simetrico, 0.25, 0.25).sum_rate - 1e-12
    assert resultado.best_rate > math.log2(5)
    taxas = {(pd.alpha1, pd.alpha2): taxa for pd, taxa in resultado.samples}
    for (a1, a2), taxa in taxas.items():
        if (a2, a1) in taxas:
            assert taxa == pytest.approx(taxas[(a2, a1)], abs=1e-4)


def test_grade_soma_caso1_e_mac(canal_caso1):
    resultado = grid_search_sum(canal_caso1, step=0.5)
    assert resultado.best_rate == pytest.approx(math.log2(5))
    assert (resultado.best_alphas.alpha1, resultado.best_alphas.alpha2) == (0.0, 0.0)


def test_vertice_quadratico():
    assert vertice_quadratico((0.0, 0.5, 1.0), (0.0, 1.0, 0.0)) == pytest.approx(0.5)
    assert vertice_quadratico((0.0, 0.5, 1.0), (0.0, 0.5, 1.0)) is None
    assert vertice_quadratico((0.0, 0.5, 1.0), (1.0, 0.0, 1.0)) is None
    assert vertice_quadratico((0.0, 0.0, 1.0), (0.0, 1.0, 0.0)) is None


def test_estencil_recupera_superficie_separavel():
    def superficie(a1, a2):
        return 3.0 - (a1 - 0.3) ** 2 - 2.0 * (a2 - 0.2) ** 2

    pontos = [(0.125, 0.25), (0.25, 0.25), (0.375, 0.25), (0.25, 0.125), (0.25, 0.375)]
    valores = [superficie(*p) for p in pontos]
    (a1, a2), interpolado = interpolar_estencil_2d(pontos, valores, (0.25, 0.25))
    assert (a1, a2) == pytest.approx((0.3, 0.2))
    assert interpolado == (True, True)


def test_estencil_plano_mantem_base():
    pontos = [(0.125, 0.25), (0.25, 0.25), (0.375, 0.25), (0.25, 0.125), (0.25, 0.375)]
    (a1, a2), interpolado = interpolar_estencil_2d(pontos, [1.0] * 5, (0.25, 0.25))
    assert (a1, a2) == (0.25, 0.25)
    assert interpolado == (False, False)


def test_projecao_no_simplex():
    a1, a2 = projetar_simplex(0.8, 0.6, 0.0)
    assert a1 + a2 == pytest.approx(1.0)
    assert a1 / a2 == pytest.approx(0.8 / 0.6)
    assert projetar_simplex(-0.2, 0.3, 1e-6) == (0.0, 0.3)


@pytest.mark.parametrize("pontos", [2, 3.5])
def test_interpolacao_exige_tres_pontos(canal_simetrico, pontos):
    with pytest.raises(InvalidParameterError):
        interpolate_individual(canal_simetrico, coarse_points=pontos)


def test_interpolacao_individual(canal_simetrico):
    resultado = interpolate_individual(canal_simetrico, coarse_points=8)
    assert resultado.method in (SearchMethod.INTERPOLATED, SearchMethod.GRID)
    assert len(resultado.samples) >= 3
    assert resultado.best_rate == pytest.approx(resultado.solution.rate)
    assert resultado.best_rate > maximize_individual_fixed_alpha(canal_simetrico, 0.0).rate

    grade = grid_search_individual(canal_simetrico, step=0.05)
    comparado = com_erro_aproximado(resultado, grade)
    assert comparado.approx_error_bound == pytest.approx(abs(resultado.best_rate - grade.best_rate))
    assert resultado.approx_error_bound is None


def test_interpolacao_soma_caso1_volta_para_grade(canal_caso1):
    resultado = interpolate_sum(canal_caso1, 4, 4)
    assert resultado.method == SearchMethod.GRID
    assert resultado.diagnostico['ajuste'] == 'sem_curvatura'
    assert (resultado.best_alphas.alpha1, resultado.best_alphas.alpha2) == (0.0, 0.0)


def test_interpolacao_soma_serializa(canal_simetrico):
    dados = interpolate_sum(canal_simetrico, 5, 5).to_dict()
    assert dados['method'] in ('Grid', 'Interpolated')
    assert dados['solution']['sum_rate'] == pytest.approx(dados['best_rate'])


@pytest.mark.parametrize("taxas, maximos", [
    ([1.0, 2.0, 3.0, 2.0, 1.0], 1),
    ([1.0, 3.0, 1.0, 3.0, 1.0], 2),
    ([1.0, 2.0, 2.0, 1.0], 1),
    ([2.0, 2.0, 2.0], 1),
])
def test_diagnostico_unimodalidade(taxas, maximos):
    diagnostico = diagnostico_unimodalidade(taxas)
    assert diagnostico['maximos_locais'] == maximos
    assert diagnostico['unimodal'] == (maximos <= 1)


def test_varredura_simetrica():
    df = symmetric_sweep([3.0], step=0.1, coarse_points=4)
    assert len(df) == 1
    linha = df.iloc[0]
    assert linha['soma_mac'] == pytest.approx(math.log2(5))
    assert linha['r1_mac'] == pytest.approx(math.log2(3))
    assert linha['soma_grade'] >= linha['soma_mac'] - 1e-9
    assert linha['erro_taxa_ind'] >= 0
    assert 0.0 <= linha['alpha_soma_grade'] < 0.5


@pytest.mark.slow
def test_interpolacao_perto_da_grade_fina(canal_simetrico):
    grade = grid_search_individual(canal_simetrico, step=0.005)
    interpolado = interpolate_individual(canal_simetrico, coarse_points=8)
    espacamento = 1.0 / 7
    assert abs(interpolado.best_alphas.alpha1 - grade.best_alphas.alpha1) <= espacamento
    assert interpolado.best_rate == pytest.approx(grade.best_rate, abs=1e-2)


@pytest.mark.slow
def test_varredura_simetrica_monotona_em_g12():
    df = symmetric_sweep([1.5, 2.0, 3.0, 5.0, 7.0, 9.0, 10.0], step=0.005)
    alphas = df['alpha_ind_grade'].to_numpy()
    somas = df['soma_grade'].to_numpy()
    # alpha1 individual não cresce com g12 (a menos de um passo da grade)
    assert np.all(np.diff(alphas) <= 0.005 + 1e-12)
    assert np.all(np.diff(somas) >= -1e-9)
    assert somas[-1] - somas[-2] < 0.01
    assert np.all(np.abs(df['erro_taxa_ind'].to_numpy()) <= 1e-2)
    assert np.all(np.abs(df['soma_interp'] - df['soma_grade']).to_numpy() <= 1e-2)
