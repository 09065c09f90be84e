import json
import math

import pytest

from src.cli import SAIDA_INVALIDA, SAIDA_OK, cenario_de_argumentos, criar_parser, main

CANAL_UNITARIO = ['--g12', '1', '--g21', '1', '--g10', '1', '--g20', '1']
CANAL_CASO1 = ['--g12', '0.5', '--g21', '0.5', '--g10', '1', '--g20', '1']


def _rodar(capsys, argv):
    codigo = main(argv)
    return codigo, capsys.readouterr()


def test_ganhos_em_json(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['gains', *CANAL_UNITARIO, '--json', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    dados = json.loads(saida.out)
    assert dados['delta_sum_finito'] == pytest.approx(0.848, abs=1e-3)
    assert (tmp_path / 'ganhos.json').is_file()


def test_cenario_inexistente(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['gains', '--scenario', str(tmp_path / 'nao_existe.json'), '-q'])
    assert codigo == SAIDA_INVALIDA
    assert saida.out == ''


def test_alpha_fora_do_intervalo(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['maximize', *CANAL_CASO1, '--objective', 'individual',
                                    '--alpha1', '1.5', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_INVALIDA
    assert 'alpha1' in saida.err


def test_fases_fixas_exigem_alpha(capsys, tmp_path):
    codigo, _ = _rodar(capsys, ['maximize', *CANAL_CASO1, '--objective', 'sum', '--alpha1', '0.2',
                                '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_INVALIDA


def test_maximizar_sem_cooperacao(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['maximize', *CANAL_CASO1, '--objective', 'individual',
                                    '--alpha1', '0.3', '--json', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    dados = json.loads(saida.out)
    assert dados['case_id'] == 'Direct'
    assert dados['rate'] == pytest.approx(math.log2(3))
    assert dados['ganho_sobre_mac'] == pytest.approx(0.0, abs=1e-12)
    assert (tmp_path / 'maximizacao.json').is_file()


def test_maximizar_soma_por_grade(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['maximize', *CANAL_CASO1, '--objective', 'sum', '--search', 'grid',
                                    '--step', '0.5', '--json', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    dados = json.loads(saida.out)
    assert dados['method'] == 'Grid'
    assert dados['rate'] == pytest.approx(math.log2(5))


def test_mapa_minimo(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['map', '--objective', 'individual', '--resolution', '2',
                                    '--json', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    dados = json.loads(saida.out)
    assert sum(dados['histograma'].values()) == 4
    assert (tmp_path / 'mapa_individual.csv').is_file()
    assert (tmp_path / 'mapa_individual.json').is_file()


def test_regiao(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['region', *CANAL_UNITARIO, '--alpha-step', '0.25', '--power-points', '2',
                                    '--json', '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    dados = json.loads(saida.out)
    assert dados['apice_mac'] == pytest.approx(math.log2(5))
    assert dados['apice_alcancavel'] >= dados['apice_mac'] - 1e-9
    for nome in ('regiao_mac.csv', 'regiao_alcancavel.csv', 'regiao_limite_externo.csv', 'regiao.json'):
        assert (tmp_path / nome).is_file()


def test_saida_em_texto(capsys, tmp_path):
    codigo, saida = _rodar(capsys, ['gains', *CANAL_UNITARIO, '-q', '--output-dir', str(tmp_path)])
    assert codigo == SAIDA_OK
    assert 'delta_sum: ' in saida.out


def test_arquivo_de_cenario_prevalece(tmp_path):
    caminho = tmp_path / 'cenario.json'
    caminho.write_text(json.dumps({'gains': {'g12': 5.0, 'g21': 5.0, 'g10': 1.0, 'g20': 1.0}, 'p1': 4.0}))
    args = criar_parser().parse_args(['maximize', '--dest', '0', '2', '--p1', '1', '--alpha1', '0.3',
                                      '--scenario', str(caminho)])
    cenario = cenario_de_argumentos(args)
    assert cenario.topology is None
    assert cenario.canal().g12 == 5.0
    assert cenario.p1 == 4.0
    assert cenario.alpha1 == 0.3
