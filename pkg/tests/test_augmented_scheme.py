import pytest

from src.analytics import augmented_constraints, maximize_sum_augmented, maximize_sum_fixed_alphas
from src.models import (
    InfeasibleAllocationError,
    PhaseDurations,
    PowerAllocation,
    eval_constraints,
)


def test_sem_partes_privadas_reproduz_restricoes(canal_assimetrico):
    fases = PhaseDurations(0.2, 0.2)
    pa = PowerAllocation(rho11=2.0, rho22=2.0, rho10=4 / 3, rho20=4 / 3, rho13=4 / 3, rho23=4 / 3)
    aumentadas = augmented_constraints(canal_assimetrico, fases, pa)
    originais = eval_constraints(canal_assimetrico, fases, pa)
    for nome in ('j1', 'j2', 's1', 's2', 's3', 's4'):
        assert getattr(aumentadas, nome) == pytest.approx(getattr(originais, nome))
    assert aumentadas.smin == pytest.approx(originais.smin)


def test_parte_privada_consome_orcamento(canal_assimetrico):
    fases = PhaseDurations(0.2, 0.2)
    pa = PowerAllocation(rho11=1.0, rho22=2.0, rho10=4 / 3, rho20=4 / 3, rho13=4 / 3, rho23=4 / 3)
    aumentadas = augmented_constraints(canal_assimetrico, fases, pa, rho10_dag=1.0)
    assert aumentadas.j1 > 0
    with pytest.raises(InfeasibleAllocationError):
        augmented_constraints(canal_assimetrico, fases, pa, rho10_dag=2.0)
    with pytest.raises(InfeasibleAllocationError):
        augmented_constraints(canal_assimetrico, fases, pa, rho10_dag=-1.0)


@pytest.mark.parametrize("alphas", [(0.2, 0.2), (0.3, 0.1)])
def test_otimo_aumentado_nao_usa_partes_privadas(canal_assimetrico, alphas):
    aumentado = maximize_sum_augmented(canal_assimetrico, *alphas)
    tres_fases = maximize_sum_fixed_alphas(canal_assimetrico, *alphas)
    assert aumentado.rho10_dag + aumentado.rho20_dag <= 1e-4
    assert aumentado.sum_rate == pytest.approx(tres_fases.sum_rate, abs=1e-4)
    assert len(aumentado.partidas) >= 3


def test_to_dict(canal_simetrico):
    dados = maximize_sum_augmented(canal_simetrico, 0.2, 0.2).to_dict()
    assert {'sum_rate', 'allocation', 'rho10_dag', 'rho20_dag', 'fases', 'partidas'} <= set(dados)


@pytest.mark.slow
def test_partes_privadas_nulas_em_canais_aleatorios(gerador):
    verificados = 0
    for ch in gerador.gerar_canais(40, familia=2):
        alpha1, alpha2 = gerador.gerar_par_alpha()
        aumentado = maximize_sum_augmented(ch, alpha1, alpha2)
        tres_fases = maximize_sum_fixed_alphas(ch, alpha1, alpha2)
        assert aumentado.rho10_dag + aumentado.rho20_dag <= 1e-4
        assert aumentado.sum_rate == pytest.approx(tres_fases.sum_rate, abs=1e-4)
        verificados += 1
    assert verificados == 40
