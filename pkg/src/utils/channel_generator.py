"""
Gerador de canais aleatórios para testes, demonstrações e tabelas de consulta
"""
from typing import List, Optional, Tuple

import numpy as np

from src.models import ChannelGains, InvalidParameterError

FAMILIAS_VALIDAS = (None, 1, 2, 3, 4)


class MockChannelGenerator:
    """Classe para gerar canais aleatórios reprodutíveis"""

    def __init__(self, seed: int = 42):
        """
        Inicializa o gerador

        Args:
            seed: Semente para reprodutibilidade
        """
        self.rng = np.random.default_rng(seed)

    def _ganho(self, faixa: Tuple[float, float]) -> float:
        return float(self.rng.uniform(*faixa))

    def gerar_canal(
        self,
        familia: Optional[int] = None,
        faixa_destino: Tuple[float, float] = (0.5, 2.0),
        faixa_potencia: Tuple[float, float] = (0.5, 5.0),
        fator_cooperacao: Tuple[float, float] = (1.2, 6.0)
    ) -> ChannelGains:
        """
        Gera um canal, opcionalmente forçando a família de caso da taxa soma

        Família 1: g12 <= g10 e g21 <= g20; 2: ambos maiores; 3: só g12 > g10;
        4: só g21 > g20.

        Args:
            familia: Família desejada (None = sorteada)
            faixa_destino: Intervalo dos ganhos para o destino
            faixa_potencia: Intervalo dos orçamentos de potência
            fator_cooperacao: Intervalo da razão g12/g10 quando o enlace é forte

        Returns:
            ChannelGains gerado
        """
        if familia not in FAMILIAS_VALIDAS:
            raise InvalidParameterError(f"Família inválida: {familia}")
        if familia is None:
            familia = int(self.rng.integers(1, 5))

        g10 = self._ganho(faixa_destino)
        g20 = self._ganho(faixa_destino)
        forte1 = familia in (2, 3)
        forte2 = familia in (2, 4)

        # Enlaces fracos ficam em [0.1, 0.95] do ganho direto
        g12 = g10 * (self._ganho(fator_cooperacao) if forte1 else self._ganho((0.1, 0.95)))
        g21 = g20 * (self._ganho(fator_cooperacao) if forte2 else self._ganho((0.1, 0.95)))

        return ChannelGains(
            g12=g12, g21=g21, g10=g10, g20=g20,
            p1=self._ganho(faixa_potencia),
            p2=self._ganho(faixa_potencia)
        )

    def gerar_canais(self, quantidade: int = 20, familia: Optional[int] = None,
                     **kwargs) -> List[ChannelGains]:
        """
        Gera uma lista de canais

        Args:
            quantidade: Número de canais
            familia: Família de caso desejada (None = sorteada por canal)

        Returns:
            Lista de canais
        """
        return [self.gerar_canal(familia, **kwargs) for _ in range(quantidade)]

    def gerar_alpha(self, maximo: float = 0.9) -> float:
        """Sorteia uma duração de fase em [0.05, maximo]"""
        return float(self.rng.uniform(0.05, maximo))

    def gerar_par_alpha(self, maximo_soma: float = 0.8) -> Tuple[float, float]:
        """Sorteia (alpha1, alpha2) positivos com soma <= maximo_soma"""
        a1 = float(self.rng.uniform(0.05, maximo_soma - 0.05))
        a2 = float(self.rng.uniform(0.05, maximo_soma - a1))
        return a1, a2
