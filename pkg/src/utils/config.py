"""
Configuração numérica dos solvers
"""
from dataclasses import dataclass, fields, replace
from typing import Any, Mapping

from src.models.errors import InvalidParameterError


@dataclass(frozen=True)
class SolverConfig:
    """
    Tolerâncias e valores padrão usados pelos otimizadores

    Atributos:
        tol_potencia: Tolerância absoluta das igualdades de potência
        tol_kkt: Resíduo KKT máximo para aceitar uma forma fechada
        tol_raiz: Tolerância das buscas de raiz (na variável)
        max_iter: Máximo de iterações por busca de raiz
        tol_ativo: Folga relativa abaixo da qual uma restrição é considerada ativa
        tol_estrutura: Limiar relativo para considerar uma potência nula na classificação
        tol_polimento: Exatidão relativa assumida para pontos do programa convexo; potências
            abaixo dela (vezes a escala P/alpha3) são zeradas e os limiares KKT se alargam a ela
        epsilon_fase: Margem que mantém alpha3 > 0 nas varreduras
        passo_individual: Passo padrão da busca em alpha1
        passo_soma: Passo padrão da busca em (alpha1, alpha2)
        passo_envelope: Passo de alpha nos envelopes de região
        pesos_envelope: Número de pesos da escalarização
        pontos_varredura_raiz: Pontos da varredura que isola intervalos de raiz
        pontos_oraculo: Pontos por dimensão do oráculo
        refinamentos_oraculo: Passadas de zoom do oráculo
    """
    tol_potencia: float = 1e-9
    tol_kkt: float = 1e-6
    tol_raiz: float = 1e-10
    max_iter: int = 200
    tol_ativo: float = 1e-7
    tol_estrutura: float = 1e-6
    tol_polimento: float = 1e-6
    epsilon_fase: float = 1e-6
    passo_individual: float = 0.01
    passo_soma: float = 0.02
    passo_envelope: float = 0.05
    pesos_envelope: int = 50
    pontos_varredura_raiz: int = 200
    pontos_oraculo: int = 64
    refinamentos_oraculo: int = 6

    def __post_init__(self):
        """Validações após inicialização"""
        for campo in fields(self):
            valor = getattr(self, campo.name)
            if valor <= 0:
                raise InvalidParameterError(f"{campo.name} deve ser positivo, recebido {valor}")
        for nome in ('passo_individual', 'passo_soma', 'passo_envelope'):
            if getattr(self, nome) >= 1:
                raise InvalidParameterError(f"{nome} deve estar em (0, 1)")

    @classmethod
    def from_dict(cls, dados: Mapping[str, Any]) -> 'SolverConfig':
        """
        Cria configuração a partir de dicionário

        Chaves desconhecidas geram erro para não mascarar erros de digitação.
        """
        conhecidos = {campo.name for campo in fields(cls)}
        desconhecidos = set(dados) - conhecidos
        if desconhecidos:
            raise InvalidParameterError(
                f"Campos de configuração desconhecidos: {sorted(desconhecidos)}"
            )
        return replace(DEFAULT_CONFIG, **dict(dados))

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {campo.name: getattr(self, campo.name) for campo in fields(self)}


DEFAULT_CONFIG = SolverConfig()
