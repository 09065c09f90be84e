"""
Configuração de logging do pacote
"""
import logging
import sys
from typing import Union

FORMATO_PADRAO = "%(asctime)s %(levelname)-7s %(name)s: %(message)s"

_HANDLER_ATTR = '_handler_pacote'


def configurar_logging(
    nivel: Union[int, str] = logging.INFO,
    formato: str = FORMATO_PADRAO
) -> logging.Logger:
    """
    Instala um único handler em stderr no logger raiz do pacote

    Chamadas repetidas apenas atualizam nível e formato.

    Args:
        nivel: Nível de log (ex.: logging.DEBUG ou "DEBUG")
        formato: Formato das mensagens

    Returns:
        Logger do pacote
    """
    logger = logging.getLogger('src')
    handler = getattr(logger, _HANDLER_ATTR, None)
    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        logger.addHandler(handler)
        setattr(logger, _HANDLER_ATTR, handler)
    handler.setFormatter(logging.Formatter(formato))
    logger.setLevel(nivel)
    logger.propagate = False
    return logger
