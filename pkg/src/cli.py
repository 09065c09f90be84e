"""
Linha de comando do planejador de MAC cooperativo

Subcomandos:
    region    Fronteiras da região alcançável, do MAC clássico e do limite externo
    maximize  Taxa individual ou soma, com fases fixas ou buscadas
    map       Mapa de esquemas ótimos por posição do destino
    gains     Ganhos do esquema cooperativo sobre o MAC clássico
    oracle    Compara o otimizador com o oráculo de força bruta

Códigos de saída: 0 sucesso, 1 falha numérica, 2 entrada inválida.
Com --json, stdout recebe apenas o resultado em JSON; logs vão para stderr.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import ValidationError

from src.analytics import (
    LookupTable,
    OracleConfig,
    OracleObjective,
    PhaseSearchResult,
    classical_mac_region,
    envelope_region,
    exportar_fronteira_csv,
    filtrar_pareto,
    gain_vs_mac,
    grid_search_individual,
    grid_search_sum,
    interpolate_individual,
    interpolate_sum,
    maximize_individual_fixed_alpha,
    maximize_sum_fixed_alphas,
    outer_bound_region,
    apice_soma,
    run_oracle,
)
from src.models import (
    ChannelModelError,
    InvalidParameterError,
    NumericalFailureError,
    capacity,
)
from src.planning import exportar_perfil_csv, individual_scheme_map, rate_profile_on_line, sum_scheme_map
from src.utils.logging_config import configurar_logging
from src.utils.scenario import Scenario

logger = logging.getLogger(__name__)

SAIDA_OK = 0
SAIDA_NUMERICA = 1
SAIDA_INVALIDA = 2

CAMPOS_GANHO = ('g12', 'g21', 'g10', 'g20')


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _parser_comum() -> argparse.ArgumentParser:
    comum = argparse.ArgumentParser(add_help=False)
    comum.add_argument('--scenario', type=Path, help='Arquivo JSON de cenário (sobrescreve as flags)')
    comum.add_argument('--json', action='store_true', help='Imprime apenas o resultado em JSON')
    comum.add_argument('--threads', type=int, default=None, help='Máximo de threads (padrão: todos os núcleos)')
    comum.add_argument('--output-dir', dest='output_dir', type=Path, help='Diretório dos arquivos gerados')
    verbosidade = comum.add_mutually_exclusive_group()
    verbosidade.add_argument('-v', '--verbose', action='store_true', help='Logs em nível DEBUG')
    verbosidade.add_argument('-q', '--quiet', action='store_true', help='Apenas avisos e erros')

    canal = comum.add_argument_group('canal')
    for nome in CAMPOS_GANHO:
        canal.add_argument(f'--{nome}', type=float, help=f'Ganho {nome}')
    canal.add_argument('--p1', type=float, help='Potência do usuário 1')
    canal.add_argument('--p2', type=float, help='Potência do usuário 2')
    canal.add_argument('--dest', type=float, nargs=2, metavar=('X', 'Y'), help='Posição do destino')
    canal.add_argument('--user1', type=float, nargs=2, metavar=('X', 'Y'), help='Posição do usuário 1')
    canal.add_argument('--user2', type=float, nargs=2, metavar=('X', 'Y'), help='Posição do usuário 2')
    canal.add_argument('--gamma', type=float, help='Expoente de perda de percurso')
    return comum


def _adicionar_fases(parser: argparse.ArgumentParser):
    parser.add_argument('--objective', choices=['individual', 'sum'], help='Objetivo')
    parser.add_argument('--alpha1', type=float, help='Duração da fase 1')
    parser.add_argument('--alpha2', type=float, help='Duração da fase 2')


def criar_parser() -> argparse.ArgumentParser:
    """Parser com os cinco subcomandos"""
    parser = argparse.ArgumentParser(
        prog='coopmac',
        description='Planejador de MAC gaussiano half-duplex com cooperação entre transmissores'
    )
    comum = _parser_comum()
    sub = parser.add_subparsers(dest='comando', required=True)

    region = sub.add_parser('region', parents=[comum], help='Fronteiras das regiões de taxa')
    region.add_argument('--alpha-step', dest='alpha_grid_step', type=float, help='Passo da grade de fases')
    region.add_argument('--power-points', dest='power_grid_points', type=int, help='Pontos da grade de potências')

    maximize = sub.add_parser('maximize', parents=[comum], help='Maximiza a taxa individual ou soma')
    _adicionar_fases(maximize)
    maximize.add_argument('--search', choices=['fixed', 'grid', 'interp', 'table'], help='Estratégia de fases')
    maximize.add_argument('--step', type=float, help='Passo da busca em grade')
    maximize.add_argument('--coarse-points', dest='coarse_points', type=int, help='Pontos da interpolação')
    maximize.add_argument('--table', dest='lookup_table', type=Path, help='Tabela de fases (search=table)')

    mapa = sub.add_parser('map', parents=[comum], help='Mapa de esquemas por posição do destino')
    _adicionar_fases(mapa)
    mapa.add_argument('--bounds', type=float, nargs=4, metavar=('XMIN', 'XMAX', 'YMIN', 'YMAX'))
    mapa.add_argument('--resolution', type=int, help='Pontos por eixo')
    mapa.add_argument('--optimize-phases', dest='otimizar_fases', action='store_true', default=None,
                      help='Escolhe as fases por célula (interpolação)')
    mapa.add_argument('--line', type=float, nargs=4, metavar=('X0', 'Y0', 'X1', 'Y1'),
                      help='Também gera o perfil de taxa sobre este segmento')
    mapa.add_argument('--samples', type=int, help='Amostras do perfil')

    sub.add_parser('gains', parents=[comum], help='Ganhos sobre o MAC clássico')

    oraculo = sub.add_parser('oracle', parents=[comum], help='Verificação por força bruta')
    _adicionar_fases(oraculo)
    oraculo.add_argument('--points', dest='oracle_points', type=int, help='Pontos por dimensão')
    oraculo.add_argument('--refinements', type=int, help='Passadas de zoom')
    return parser


# ---------------------------------------------------------------------------
# Cenário
# ---------------------------------------------------------------------------

CAMPOS_DIRETOS = ('p1', 'p2', 'objective', 'alpha1', 'alpha2', 'search', 'step', 'coarse_points',
                  'lookup_table', 'alpha_grid_step', 'power_grid_points', 'bounds', 'resolution',
                  'otimizar_fases', 'samples', 'oracle_points', 'refinements', 'output_dir')


def cenario_de_argumentos(args: argparse.Namespace) -> Scenario:
    """
    Monta o cenário a partir das flags e do arquivo --scenario

    Valores do arquivo prevalecem sobre as flags; se o arquivo define o canal
    (gains ou topology), o canal das flags é descartado.
    """
    dados: Dict[str, Any] = {}
    for campo in CAMPOS_DIRETOS:
        valor = getattr(args, campo, None)
        if valor is not None:
            dados[campo] = valor
    if dados.get('bounds') is not None:
        dados['bounds'] = tuple(dados['bounds'])
    if getattr(args, 'line', None) is not None:
        x0, y0, x1, y1 = args.line
        dados['line'] = ((x0, y0), (x1, y1))

    ganhos = {nome: getattr(args, nome) for nome in CAMPOS_GANHO if getattr(args, nome) is not None}
    topologia = {chave: tuple(valor) if isinstance(valor, list) else valor
                 for chave, valor in (('dest_pos', args.dest), ('user1_pos', args.user1),
                                      ('user2_pos', args.user2), ('gamma', args.gamma))
                 if valor is not None}
    if ganhos:
        dados['gains'] = ganhos
    if topologia or (not ganhos and args.comando == 'map'):
        dados['topology'] = topologia

    if args.scenario is not None:
        arquivo = json.loads(args.scenario.read_text(encoding='utf-8'))
        if not isinstance(arquivo, dict):
            raise InvalidParameterError("O arquivo de cenário deve conter um objeto JSON")
        if 'gains' in arquivo or 'topology' in arquivo:
            dados.pop('gains', None)
            dados.pop('topology', None)
        dados.update(arquivo)
    return Scenario.model_validate(dados)


# ---------------------------------------------------------------------------
# Saída
# ---------------------------------------------------------------------------

def _escrever_json(caminho: Path, dados: Any) -> Path:
    caminho.parent.mkdir(parents=True, exist_ok=True)
    caminho.write_text(json.dumps(dados, indent=2, sort_keys=True), encoding='utf-8')
    return caminho


def _formatar(valor: Any) -> str:
    if isinstance(valor, float):
        return f"{valor:.6f}"
    if isinstance(valor, dict):
        return ", ".join(f"{k}={_formatar(v)}" for k, v in valor.items())
    if isinstance(valor, list):
        return ", ".join(_formatar(v) for v in valor)
    return str(valor)


def imprimir_resultado(resultado: Dict[str, Any], como_json: bool):
    """Escreve o resultado em stdout (JSON único ou linhas chave: valor)"""
    if como_json:
        print(json.dumps(resultado, sort_keys=True))
        return
    for chave, valor in resultado.items():
        print(f"{chave}: {_formatar(valor)}")


# ---------------------------------------------------------------------------
# Comandos
# ---------------------------------------------------------------------------

def cmd_region(cenario: Scenario, workers: Optional[int]) -> Dict[str, Any]:
    """Escreve as três fronteiras em CSV e um resumo em JSON"""
    ch = cenario.canal()
    config = cenario.solver_config()
    saida = cenario.output_dir
    saida.mkdir(parents=True, exist_ok=True)
    alcancavel = envelope_region(ch, cenario.alpha_grid_step, cenario.power_grid_points, config, workers)
    limite = outer_bound_region(ch, cenario.alpha_grid_step, cenario.power_grid_points, config, workers)
    mac = classical_mac_region(ch)
    fronteira_mac = filtrar_pareto(mac.corners)

    arquivos = [
        exportar_fronteira_csv(fronteira_mac, saida / 'regiao_mac.csv'),
        exportar_fronteira_csv(alcancavel, saida / 'regiao_alcancavel.csv'),
        exportar_fronteira_csv(limite, saida / 'regiao_limite_externo.csv'),
    ]
    resumo = {
        'canal': ch.to_dict(),
        'mac': mac.to_dict(),
        'apice_mac': mac.smin,
        'apice_alcancavel': apice_soma(alcancavel),
        'apice_limite_externo': apice_soma(limite),
    }
    arquivos.append(_escrever_json(saida / 'regiao.json', resumo))
    resumo['arquivos'] = [str(a) for a in arquivos]
    return resumo


def _resultado_busca(resultado: PhaseSearchResult) -> Dict[str, Any]:
    dados = resultado.solution.to_dict()
    dados['method'] = resultado.method.value
    dados['best_alphas'] = resultado.best_alphas.to_dict()
    dados['amostras'] = len(resultado.samples)
    return dados


def cmd_maximize(cenario: Scenario, workers: Optional[int]) -> Dict[str, Any]:
    """Resolve o objetivo com a estratégia de fases pedida e grava maximizacao.json"""
    ch = cenario.canal()
    config = cenario.solver_config()

    if cenario.search == 'fixed':
        if cenario.alpha1 is None or (cenario.objective == 'sum' and cenario.alpha2 is None):
            raise InvalidParameterError("search = 'fixed' exige --alpha1 (e --alpha2 para a soma)")
        if cenario.objective == 'individual':
            dados = maximize_individual_fixed_alpha(ch, cenario.alpha1, config).to_dict()
        else:
            dados = maximize_sum_fixed_alphas(ch, cenario.alpha1, cenario.alpha2, config).to_dict()
        dados['method'] = 'Fixed'
    elif cenario.search == 'grid':
        busca = grid_search_individual if cenario.objective == 'individual' else grid_search_sum
        dados = _resultado_busca(busca(ch, cenario.step, config, workers))
    elif cenario.search == 'interp':
        if cenario.objective == 'individual':
            resultado = interpolate_individual(ch, cenario.coarse_points, config, workers)
        else:
            resultado = interpolate_sum(ch, cenario.coarse_points, cenario.coarse_points, config, workers)
        dados = _resultado_busca(resultado)
    else:
        tabela = LookupTable.carregar(cenario.lookup_table)
        if tabela.objetivo != cenario.objective:
            raise InvalidParameterError(
                f"Tabela é do objetivo {tabela.objetivo!r}, pedido {cenario.objective!r}"
            )
        dados = _resultado_busca(tabela.consultar(ch, config))

    taxa = dados['rate'] if cenario.objective == 'individual' else dados['sum_rate']
    if cenario.objective == 'individual':
        mac = capacity(ch.g10 ** 2 * ch.p1)
    else:
        mac = capacity(ch.g10 ** 2 * ch.p1 + ch.g20 ** 2 * ch.p2)
    dados.update(objective=cenario.objective, rate=taxa, mac_rate=mac, ganho_sobre_mac=taxa - mac,
                 canal=ch.to_dict())
    arquivo = _escrever_json(cenario.output_dir / 'maximizacao.json', dados)
    dados['arquivos'] = [str(arquivo)]
    return dados


def cmd_map(cenario: Scenario, workers: Optional[int]) -> Dict[str, Any]:
    """Escreve o mapa (CSV x,y,case,rate) e o histograma de esquemas (JSON)"""
    topologia = cenario.topologia()
    config = cenario.solver_config()
    if cenario.objective == 'individual':
        alpha1 = 0.5 if cenario.alpha1 is None else cenario.alpha1
        mapa = individual_scheme_map(topologia, alpha1, cenario.bounds, cenario.resolution,
                                     cenario.p1, cenario.p2, config, workers, cenario.otimizar_fases)
        alpha2 = 0.0
    else:
        alpha1 = 0.2 if cenario.alpha1 is None else cenario.alpha1
        alpha2 = 0.2 if cenario.alpha2 is None else cenario.alpha2
        mapa = sum_scheme_map(topologia, alpha1, alpha2, cenario.bounds, cenario.resolution,
                              cenario.p1, cenario.p2, config, workers, cenario.otimizar_fases)
    saida = cenario.output_dir
    arquivos = [
        mapa.exportar_csv(saida / f'mapa_{cenario.objective}.csv'),
        mapa.exportar_json(saida / f'mapa_{cenario.objective}.json'),
    ]
    if cenario.line is not None:
        perfil = rate_profile_on_line(topologia, cenario.line, cenario.samples, cenario.objective,
                                      alpha1, alpha2, cenario.p1, cenario.p2, config, workers)
        arquivos.append(exportar_perfil_csv(perfil, saida / f'perfil_{cenario.objective}.csv'))
    resumo = mapa.resumo()
    resumo['arquivos'] = [str(a) for a in arquivos]
    return resumo


def cmd_gains(cenario: Scenario, workers: Optional[int]) -> Dict[str, Any]:
    """Ganhos assintóticos e com as potências do cenário"""
    ch = cenario.canal()
    dados = gain_vs_mac(ch).to_dict()
    arquivo = _escrever_json(cenario.output_dir / 'ganhos.json', dict(dados, canal=ch.to_dict()))
    dados['arquivos'] = [str(arquivo)]
    return dados


def cmd_oracle(cenario: Scenario, workers: Optional[int]) -> Dict[str, Any]:
    """Roda o otimizador e o oráculo nas fases efetivas reportadas pelo otimizador"""
    ch = cenario.canal()
    config = cenario.solver_config()
    if cenario.objective == 'individual':
        alpha1 = 0.5 if cenario.alpha1 is None else cenario.alpha1
        solucao = maximize_individual_fixed_alpha(ch, alpha1, config)
        taxa = solucao.rate
        objetivo = OracleObjective.INDIVIDUAL_R1
    else:
        alpha1 = 0.2 if cenario.alpha1 is None else cenario.alpha1
        alpha2 = 0.2 if cenario.alpha2 is None else cenario.alpha2
        solucao = maximize_sum_fixed_alphas(ch, alpha1, alpha2, config)
        taxa = solucao.sum_rate
        objetivo = OracleObjective.SUM_RATE
    cfg = OracleConfig(power_grid_points=cenario.oracle_points, objective=objetivo,
                       refinements=cenario.refinements)
    taxa_oraculo, alocacao = run_oracle(ch, solucao.fases, cfg)
    dados = {
        'objective': cenario.objective,
        'fases': solucao.fases.to_dict(),
        'case_id': solucao.case_id.value,
        'rate': taxa,
        'oracle_rate': taxa_oraculo,
        'diferenca': taxa - taxa_oraculo,
        'oracle_allocation': alocacao.to_dict(),
        'oracle_config': cfg.to_dict(),
    }
    arquivo = _escrever_json(cenario.output_dir / 'oraculo.json', dados)
    dados['arquivos'] = [str(arquivo)]
    return dados


COMANDOS = {
    'region': cmd_region,
    'maximize': cmd_maximize,
    'map': cmd_map,
    'gains': cmd_gains,
    'oracle': cmd_oracle,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Ponto de entrada; retorna o código de saída"""
    args = criar_parser().parse_args(argv)
    nivel = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    configurar_logging(nivel)

    try:
        cenario = cenario_de_argumentos(args)
        resultado = COMANDOS[args.comando](cenario, args.threads)
    except NumericalFailureError as erro:
        print(f"erro numérico: {erro}", file=sys.stderr)
        return SAIDA_NUMERICA
    except ValidationError as erro:
        mensagem = "; ".join(f"{'.'.join(str(p) for p in e['loc'])}: {e['msg']}" for e in erro.errors())
        print(f"cenário inválido: {mensagem}", file=sys.stderr)
        return SAIDA_INVALIDA
    except (ChannelModelError, FileNotFoundError, json.JSONDecodeError) as erro:
        print(f"entrada inválida: {erro}", file=sys.stderr)
        return SAIDA_INVALIDA

    imprimir_resultado(resultado, args.json)
    return SAIDA_OK


if __name__ == '__main__':
    sys.exit(main())
