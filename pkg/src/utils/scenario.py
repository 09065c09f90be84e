"""
Cenários de execução (arquivos JSON da linha de comando)
"""
from pathlib import Path
from typing import Dict, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.models import ChannelGains
from src.planning import Topology, gains_from_topology

from .config import SolverConfig

Par = Tuple[float, float]


class GainsSpec(BaseModel):
    """Ganhos de amplitude do canal"""
    model_config = ConfigDict(extra='forbid')

    g12: float = Field(..., ge=0)
    g21: float = Field(..., ge=0)
    g10: float = Field(..., ge=0)
    g20: float = Field(..., ge=0)


class TopologySpec(BaseModel):
    """Posições dos nós e expoente de perda de percurso"""
    model_config = ConfigDict(extra='forbid')

    user1_pos: Par = (-0.5, 0.0)
    user2_pos: Par = (0.5, 0.0)
    dest_pos: Par = (0.0, 1.0)
    gamma: float = Field(2.4, gt=0)


class Scenario(BaseModel):
    """
    Cenário completo de uma execução

    Exatamente um entre gains e topology deve estar presente. O objeto solver
    sobrescreve campos de SolverConfig.
    """
    model_config = ConfigDict(extra='forbid')

    gains: Optional[GainsSpec] = None
    topology: Optional[TopologySpec] = None
    p1: float = Field(2.0, ge=0)
    p2: float = Field(2.0, ge=0)

    objective: Literal['individual', 'sum'] = 'sum'
    alpha1: Optional[float] = Field(None, ge=0, le=1)
    alpha2: Optional[float] = Field(None, ge=0, le=1)
    search: Literal['fixed', 'grid', 'interp', 'table'] = 'fixed'
    step: Optional[float] = Field(None, gt=0, lt=1)
    coarse_points: int = Field(8, ge=3)
    lookup_table: Optional[Path] = None

    alpha_grid_step: float = Field(0.05, gt=0, lt=1)
    power_grid_points: int = Field(4, ge=2)

    bounds: Tuple[float, float, float, float] = (-2.0, 2.0, -2.0, 2.0)
    resolution: int = Field(101, ge=2)
    otimizar_fases: bool = False
    line: Optional[Tuple[Par, Par]] = None
    samples: int = Field(41, ge=2)

    oracle_points: int = Field(64, ge=2)
    refinements: int = Field(6, ge=0)

    output_dir: Path = Path('output')
    solver: Dict[str, Union[int, float]] = Field(default_factory=dict)

    @field_validator('lookup_table')
    @classmethod
    def _tabela_existe(cls, valor: Optional[Path]) -> Optional[Path]:
        if valor is not None and not valor.is_file():
            raise ValueError(f"Arquivo de tabela não encontrado: {valor}")
        return valor

    @field_validator('solver')
    @classmethod
    def _solver_valido(cls, valor: Dict[str, Union[int, float]]) -> Dict[str, Union[int, float]]:
        SolverConfig.from_dict(valor)
        return valor

    @model_validator(mode='after')
    def _canal_unico(self) -> 'Scenario':
        if (self.gains is None) == (self.topology is None):
            raise ValueError("Informe exatamente um entre 'gains' e 'topology'")
        if self.alpha1 is not None and self.alpha2 is not None and self.alpha1 + self.alpha2 > 1:
            raise ValueError("alpha1 + alpha2 deve ser <= 1")
        if self.search == 'table' and self.lookup_table is None:
            raise ValueError("search = 'table' exige lookup_table")
        return self

    def topologia(self) -> Topology:
        """Topologia do cenário (a padrão se o cenário tiver ganhos)"""
        if self.topology is None:
            return Topology()
        return Topology(**self.topology.model_dump())

    def canal(self) -> ChannelGains:
        """Ganhos informados ou derivados da topologia"""
        if self.gains is not None:
            return ChannelGains(p1=self.p1, p2=self.p2, **self.gains.model_dump())
        return gains_from_topology(self.topologia(), self.p1, self.p2)

    def solver_config(self) -> SolverConfig:
        """SolverConfig com as sobrescritas do cenário"""
        return SolverConfig.from_dict(self.solver)

    @classmethod
    def carregar(cls, caminho: Union[str, Path]) -> 'Scenario':
        """
        Lê e valida um arquivo JSON

        Raises:
            FileNotFoundError: se o arquivo não existir
            pydantic.ValidationError: se o conteúdo for inválido
        """
        return cls.model_validate_json(Path(caminho).read_text(encoding='utf-8'))
