"""
Execução paralela de varreduras independentes
"""
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


def resolver_workers(workers: Optional[int]) -> int:
    """Número efetivo de workers (None = núcleos disponíveis)"""
    if workers is None:
        return os.cpu_count() or 1
    return max(1, int(workers))


def mapear_paralelo(
    funcao: Callable[[T], R],
    itens: Iterable[T],
    workers: Optional[int] = 1
) -> List[R]:
    """
    Aplica funcao a cada item preservando a ordem de entrada

    Args:
        funcao: Função pura aplicada a cada item
        itens: Itens independentes (células de grade, canais, ...)
        workers: Número de threads; 1 executa em série, None usa todos os núcleos

    Returns:
        Lista de resultados na mesma ordem dos itens
    """
    itens = list(itens)
    n_workers = resolver_workers(workers)
    if n_workers <= 1 or len(itens) <= 1:
        return [funcao(item) for item in itens]

    logger.debug("Mapeando %d itens com %d threads", len(itens), n_workers)
    with ThreadPoolExecutor(max_workers=n_workers) as executor:
        return list(executor.map(funcao, itens))
