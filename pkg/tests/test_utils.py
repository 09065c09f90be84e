import json
import logging
import time

import pytest
from pydantic import ValidationError

from src.models import InvalidParameterError
from src.utils import (
    DEFAULT_CONFIG,
    MockChannelGenerator,
    SolverConfig,
    configurar_logging,
    mapear_paralelo,
    resolver_workers,
)
from src.utils.scenario import Scenario

GANHOS = {'g12': 5.0, 'g21': 5.0, 'g10': 1.0, 'g20': 1.0}


class TestScenario:

    def test_cenario_com_ganhos(self):
        cenario = Scenario(gains=GANHOS, p1=1.0, solver={'max_iter': 50})
        ch = cenario.canal()
        assert (ch.g12, ch.p1, ch.p2) == (5.0, 1.0, 2.0)
        assert cenario.solver_config().max_iter == 50
        assert cenario.solver_config().tol_kkt == DEFAULT_CONFIG.tol_kkt

    def test_cenario_com_topologia(self):
        cenario = Scenario(topology={'dest_pos': (0.0, 2.0)})
        assert cenario.canal().g12 == pytest.approx(1.0)
        assert cenario.topologia().dest_pos == (0.0, 2.0)

    @pytest.mark.parametrize("dados", [
        {'gains': GANHOS, 'topology': {}},
        {},
        {'gains': GANHOS, 'alpha1': 0.7, 'alpha2': 0.6},
        {'gains': GANHOS, 'search': 'table'},
        {'gains': GANHOS, 'solver': {'tolerancia': 1e-3}},
        {'gains': GANHOS, 'step': 1.0},
        {'gains': GANHOS, 'coarse_points': 2},
        {'gains': GANHOS, 'modo': 'rapido'},
        {'gains': dict(GANHOS, g12=-1.0)},
    ])
    def test_cenario_invalido(self, dados):
        with pytest.raises(ValidationError):
            Scenario(**dados)

    def test_tabela_inexistente(self, tmp_path):
        with pytest.raises(ValidationError):
            Scenario(gains=GANHOS, search='table', lookup_table=tmp_path / "nao_existe.json")

    def test_carregar_arquivo(self, tmp_path):
        caminho = tmp_path / "cenario.json"
        caminho.write_text(json.dumps({'gains': GANHOS, 'objective': 'individual', 'alpha1': 0.3}))
        cenario = Scenario.carregar(caminho)
        assert cenario.objective == 'individual'
        assert cenario.alpha1 == 0.3
        with pytest.raises(FileNotFoundError):
            Scenario.carregar(tmp_path / "ausente.json")


class TestSolverConfig:

    def test_padroes(self):
        assert DEFAULT_CONFIG.tol_potencia == 1e-9
        assert DEFAULT_CONFIG.passo_soma == 0.02
        assert SolverConfig.from_dict(DEFAULT_CONFIG.to_dict()) == DEFAULT_CONFIG

    def test_chave_desconhecida(self):
        with pytest.raises(InvalidParameterError, match="desconhecidos"):
            SolverConfig.from_dict({'tol_kkt': 1e-5, 'tolerancia': 1e-3})

    @pytest.mark.parametrize("dados", [{'tol_kkt': 0.0}, {'max_iter': -1}, {'passo_soma': 1.0}])
    def test_valores_invalidos(self, dados):
        with pytest.raises(InvalidParameterError):
            SolverConfig.from_dict(dados)


class TestParalelo:

    def test_preserva_ordem(self):
        def lento(i):
            time.sleep(0.001 * (10 - i))
            return i * i

        assert mapear_paralelo(lento, range(10), workers=4) == [i * i for i in range(10)]
        assert mapear_paralelo(lento, range(10), workers=1) == [i * i for i in range(10)]

    def test_workers(self):
        assert resolver_workers(None) >= 1
        assert resolver_workers(0) == 1
        assert resolver_workers(3) == 3


class TestGerador:

    @pytest.mark.parametrize("familia, forte1, forte2", [
        (1, False, False), (2, True, True), (3, True, False), (4, False, True),
    ])
    def test_familia_forcada(self, familia, forte1, forte2):
        for ch in MockChannelGenerator(seed=3).gerar_canais(10, familia=familia):
            assert (ch.g12 > ch.g10) == forte1
            assert (ch.g21 > ch.g20) == forte2

    def test_semente_reprodutivel(self):
        assert MockChannelGenerator(5).gerar_canais(3) == MockChannelGenerator(5).gerar_canais(3)

    def test_familia_invalida(self):
        with pytest.raises(InvalidParameterError):
            MockChannelGenerator().gerar_canal(familia=5)


def test_logging_instala_um_handler():
    logger = configurar_logging("DEBUG")
    configurar_logging(logging.WARNING)
    assert len(logger.handlers) == 1
    assert logger.level == logging.WARNING
    assert logger.propagate is False
