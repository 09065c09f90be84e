"""
Fixtures compartilhadas pelos testes
"""
import pytest

from src.analytics import OracleConfig, OracleObjective
from src.models import ChannelGains
from src.planning import Topology
from src.utils import MockChannelGenerator


@pytest.fixture
def canal_simetrico():
    """Enlace entre usuários cinco vezes mais forte que o direto"""
    return ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)


@pytest.fixture
def canal_caso1():
    """Enlaces entre usuários mais fracos que os diretos: sem cooperação"""
    return ChannelGains(g12=0.5, g21=0.5, g10=1.0, g20=1.0, p1=2.0, p2=2.0)


@pytest.fixture
def canal_assimetrico():
    return ChannelGains(g12=5.0, g21=3.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)


@pytest.fixture
def canal_caso3():
    """Só o usuário 1 tem enlace forte para o parceiro"""
    return ChannelGains(g12=4.0, g21=0.5, g10=1.0, g20=1.5, p1=2.0, p2=2.0)


@pytest.fixture
def gerador():
    return MockChannelGenerator(seed=7)


@pytest.fixture
def topologia():
    return Topology()


@pytest.fixture
def oraculo_individual():
    return OracleConfig(power_grid_points=32, objective=OracleObjective.INDIVIDUAL_R1, refinements=4)


@pytest.fixture
def oraculo_soma():
    return OracleConfig(power_grid_points=20, objective=OracleObjective.SUM_RATE, refinements=5)
