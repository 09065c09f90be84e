import json
import math
from pathlib import Path

import pytest

from src.analytics import (
    OracleConfig,
    OracleObjective,
    carregar_ouro,
    diagnostico_convergencia,
    maximize_individual_fixed_alpha,
    maximize_sum_fixed_alphas,
    oracle_individual,
    oracle_sum,
    registro_ouro,
    run_oracle,
    salvar_ouro,
)
from src.models import (
    ChannelGains,
    DegeneratePhaseError,
    InvalidParameterError,
    PhaseDurations,
    PowerAllocation,
)

GOLDEN = Path(__file__).parent / "golden" / "mac_classico.json"


def test_caso1_coincide_com_transmissao_direta(canal_caso1, oraculo_individual):
    taxa, alocacao = oracle_individual(canal_caso1, 0.0, oraculo_individual)
    assert taxa == pytest.approx(maximize_individual_fixed_alpha(canal_caso1, 0.3).rate, abs=1e-9)
    assert alocacao.rho10 == pytest.approx(canal_caso1.p1)


def test_caso1_soma_coincide_com_mac(canal_caso1, oraculo_soma):
    taxa, _ = oracle_sum(canal_caso1, 0.0, 0.0, oraculo_soma)
    assert taxa == pytest.approx(math.log2(5), abs=1e-9)


@pytest.mark.parametrize("alpha1", [0.2, 0.5])
def test_otimizador_individual_contra_oraculo(canal_simetrico, oraculo_individual, alpha1):
    otimo = maximize_individual_fixed_alpha(canal_simetrico, alpha1).rate
    taxa, alocacao = oracle_individual(canal_simetrico, alpha1, oraculo_individual)
    assert taxa <= otimo + 1e-9
    assert taxa >= otimo - 5e-3
    alocacao.verificar(canal_simetrico, PhaseDurations(alpha1), tol=1e-8)


def test_otimizador_soma_contra_oraculo(canal_assimetrico, oraculo_soma):
    otimo = maximize_sum_fixed_alphas(canal_assimetrico, 0.2, 0.2).sum_rate
    taxa, _ = oracle_sum(canal_assimetrico, 0.2, 0.2, oraculo_soma)
    assert taxa <= otimo + 1e-5
    assert taxa >= otimo - 1e-2


def test_despacho_pelo_objetivo(canal_caso1):
    fases = PhaseDurations(0.0, 0.0)
    individual = run_oracle(canal_caso1, fases, OracleConfig(8, objective=OracleObjective.INDIVIDUAL_R1,
                                                             refinements=0))
    soma = run_oracle(canal_caso1, fases, OracleConfig(8, objective=OracleObjective.SUM_RATE, refinements=0))
    assert individual[0] == pytest.approx(math.log2(3))
    assert soma[0] == pytest.approx(math.log2(5))


@pytest.mark.parametrize("kwargs", [
    {'power_grid_points': 1},
    {'power_grid_points': 4.5},
    {'alpha_step': 0.0},
    {'alpha_step': 0.6},
    {'refinements': -1},
])
def test_configuracao_invalida(kwargs):
    with pytest.raises(InvalidParameterError):
        OracleConfig(**kwargs)


def test_configuracao_aceita_objetivo_textual():
    cfg = OracleConfig(objective="IndividualR1")
    assert cfg.objective == OracleObjective.INDIVIDUAL_R1
    assert cfg.to_dict()['objective'] == "IndividualR1"


def test_fases_degeneradas(canal_simetrico, oraculo_soma, oraculo_individual):
    with pytest.raises(DegeneratePhaseError):
        oracle_sum(canal_simetrico, 0.5, 0.5, oraculo_soma)
    with pytest.raises(DegeneratePhaseError):
        oracle_individual(canal_simetrico, 1.0, oraculo_individual)
    with pytest.raises(InvalidParameterError):
        oracle_individual(canal_simetrico, 1.5, oraculo_individual)


def test_diagnostico_de_convergencia(canal_simetrico):
    diagnostico = diagnostico_convergencia(canal_simetrico, PhaseDurations(0.3),
                                           OracleObjective.INDIVIDUAL_R1, pontos=(4, 8, 16))
    assert diagnostico['pontos'] == [4, 8, 16]
    assert len(diagnostico['taxas']) == 3
    assert len(diagnostico['diferencas']) == 2
    assert isinstance(diagnostico['cauchy'], bool)


def test_registros_de_referencia(canal_caso1, tmp_path):
    cfg = OracleConfig(8, objective=OracleObjective.SUM_RATE, refinements=0)
    registro = registro_ouro(canal_caso1, PhaseDurations(0.0, 0.0), cfg)
    caminho = salvar_ouro([registro], tmp_path / "ouro" / "registros.json")
    assert carregar_ouro(caminho) == [registro]


def test_digest_adulterado(canal_caso1, tmp_path):
    cfg = OracleConfig(8, objective=OracleObjective.SUM_RATE, refinements=0)
    registro = registro_ouro(canal_caso1, PhaseDurations(0.0, 0.0), cfg)
    registro['scenario']['channel']['p1'] = 3.0
    caminho = tmp_path / "adulterado.json"
    caminho.write_text(json.dumps([registro]), encoding='utf-8')
    with pytest.raises(InvalidParameterError):
        carregar_ouro(caminho)


def test_valores_de_referencia_versionados():
    for registro in carregar_ouro(GOLDEN):
        ch = ChannelGains.from_dict(registro['scenario']['channel'])
        fases = PhaseDurations.from_dict(registro['scenario']['phases'])
        taxa, alocacao = run_oracle(ch, fases, OracleConfig(**registro['config']))
        assert taxa == pytest.approx(registro['rate'], abs=1e-9)
        esperada = PowerAllocation.from_dict(registro['allocation']).to_array()
        assert alocacao.to_array() == pytest.approx(esperada, abs=1e-9)


@pytest.mark.slow
def test_otimizadores_contra_oraculo_em_canais_aleatorios(gerador):
    cfg_ind = OracleConfig(64, objective=OracleObjective.INDIVIDUAL_R1, refinements=6)
    cfg_soma = OracleConfig(32, objective=OracleObjective.SUM_RATE, refinements=6)
    for ch in gerador.gerar_canais(100):
        individual = maximize_individual_fixed_alpha(ch, 0.3)
        taxa, _ = run_oracle(ch, individual.fases, cfg_ind)
        assert abs(taxa - individual.rate) <= 1e-3

        alpha1, alpha2 = gerador.gerar_par_alpha()
        try:
            soma = maximize_sum_fixed_alphas(ch, alpha1, alpha2)
        except DegeneratePhaseError:
            continue
        taxa, _ = run_oracle(ch, soma.fases, cfg_soma)
        assert taxa <= soma.sum_rate + 1e-5
        assert taxa >= soma.sum_rate - 1e-3


@pytest.mark.slow
def test_soma_do_canal_simetrico_contra_oraculo(canal_simetrico):
    cfg = OracleConfig(32, objective=OracleObjective.SUM_RATE, refinements=6)
    soma = maximize_sum_fixed_alphas(canal_simetrico, 0.2, 0.2)
    taxa, _ = run_oracle(canal_simetrico, soma.fases, cfg)
    assert taxa == pytest.approx(soma.sum_rate, abs=1e-3)
    assert soma.sum_rate - math.log2(5) < math.log2(1.8)
