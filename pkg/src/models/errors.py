"""
Hierarquia de exceções do modelo de canal
"""
from typing import Any, Dict, Optional


class ChannelModelError(Exception):
    """Erro base de todo o pacote"""


class InvalidParameterError(ChannelModelError, ValueError):
    """Parâmetro fora do domínio ou pré-condição violada"""


class DegeneratePhaseError(InvalidParameterError):
    """Durações de fase incompatíveis com o caso de cooperação"""


class InfeasibleAllocationError(ChannelModelError, ValueError):
    """Alocação de potência negativa ou fora da restrição de potência"""


class SingularChannelError(ChannelModelError, ValueError):
    """Ganho nulo onde uma definição divide por ele"""


class SingularTopologyError(ChannelModelError, ValueError):
    """Nós coincidentes na geometria da rede"""


class NumericalFailureError(ChannelModelError, RuntimeError):
    """
    Falha numérica (raiz não encontrada, solver sem convergência)

    Atributos:
        diagnostico: Informações do ponto de falha (caso, intervalo, resíduos)
    """

    def __init__(self, mensagem: str, diagnostico: Optional[Dict[str, Any]] = None):
        super().__init__(mensagem)
        self.diagnostico = dict(diagnostico or {})
