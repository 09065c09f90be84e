"""
Modelo do canal de múltiplo acesso gaussiano half-duplex com cooperação entre transmissores

Contém a descrição do canal (ganhos e orçamentos de potência), as variáveis de
alocação de recursos (durações de fase e potências por fase) e a avaliação de
todas as restrições de taxa do esquema de três fases.

Convenções:
- Ruído de variância unitária; todas as potências são relativas a ele.
- Capacidade em bits/s/Hz: C(x) = log2(1 + x).
- Apenas amplitudes g_ij entram nas fórmulas (fases do canal compensadas).
"""
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Mapping

import numpy as np

from .errors import InfeasibleAllocationError, InvalidParameterError

# Tolerância absoluta das igualdades de potência
TOLERANCIA_POTENCIA = 1e-9

# Ordem canônica das seis potências em vetores
ORDEM_POTENCIAS = ('rho11', 'rho22', 'rho10', 'rho20', 'rho13', 'rho23')


class SchemeCase(Enum):
    """Casos de esquema ótimo (taxa individual e taxa soma)"""
    # Taxa individual
    DIRECT = "Direct"
    PDF_REPETITION = "PdfRepetition"
    DECODE_FORWARD = "DecodeForward"
    PDF_NO_REPETITION = "PdfNoRepetition"
    TWO_HOP = "TwoHop"
    # Taxa soma
    CLASSICAL_MAC = "ClassicalMac"
    BOTH_PDF = "BothPdf"
    BOTH_DF = "BothDf"
    USER1_PDF_USER2_DIRECT = "User1PdfUser2Direct"
    USER1_DF_USER2_DIRECT = "User1DfUser2Direct"
    MIRROR = "Mirror"

    @property
    def codigo(self) -> str:
        """Código curto do caso ('1', '2a', ..., '4')"""
        return _CODIGOS_CASO[self]

    @property
    def familia(self) -> int:
        """Família do caso (1 a 4)"""
        return int(self.codigo[0])


_CODIGOS_CASO = {
    SchemeCase.DIRECT: "1",
    SchemeCase.PDF_REPETITION: "2a",
    SchemeCase.DECODE_FORWARD: "2b",
    SchemeCase.PDF_NO_REPETITION: "3a",
    SchemeCase.TWO_HOP: "3b",
    SchemeCase.CLASSICAL_MAC: "1",
    SchemeCase.BOTH_PDF: "2a",
    SchemeCase.BOTH_DF: "2b",
    SchemeCase.USER1_PDF_USER2_DIRECT: "3a",
    SchemeCase.USER1_DF_USER2_DIRECT: "3b",
    SchemeCase.MIRROR: "4",
}


def _exigir_finito_nao_negativo(nome: str, valor: float):
    if not isinstance(valor, (int, float, np.floating, np.integer)) or isinstance(valor, bool):
        raise InvalidParameterError(f"{nome} deve ser numérico, recebido {valor!r}")
    if not math.isfinite(valor) or valor < 0:
        raise InvalidParameterError(f"{nome} deve ser finito e >= 0, recebido {valor}")


@dataclass(frozen=True)
class ChannelGains:
    """
    Ganhos de amplitude do canal e orçamentos de potência

    Atributos:
        g12: Ganho do enlace usuário 1 → usuário 2
        g21: Ganho do enlace usuário 2 → usuário 1
        g10: Ganho do enlace usuário 1 → destino
        g20: Ganho do enlace usuário 2 → destino
        p1: Orçamento de potência do usuário 1 (normalizado pelo ruído)
        p2: Orçamento de potência do usuário 2
    """
    g12: float
    g21: float
    g10: float
    g20: float
    p1: float
    p2: float

    def __post_init__(self):
        """Validações após inicialização"""
        for nome in ('g12', 'g21', 'g10', 'g20', 'p1', 'p2'):
            valor = getattr(self, nome)
            _exigir_finito_nao_negativo(nome, valor)
            object.__setattr__(self, nome, float(valor))

    def trocar_usuarios(self) -> 'ChannelGains':
        """Retorna o canal com os índices dos usuários trocados"""
        return ChannelGains(
            g12=self.g21, g21=self.g12,
            g10=self.g20, g20=self.g10,
            p1=self.p2, p2=self.p1
        )

    def e_simetrico(self, tol: float = 1e-12) -> bool:
        """Verifica g10=g20, g12=g21 e P1=P2"""
        return (
            abs(self.g10 - self.g20) <= tol
            and abs(self.g12 - self.g21) <= tol
            and abs(self.p1 - self.p2) <= tol
        )

    def to_dict(self) -> dict:
        """Converte para dicionário (campos snake_case)"""
        return {
            'g12': self.g12, 'g21': self.g21,
            'g10': self.g10, 'g20': self.g20,
            'p1': self.p1, 'p2': self.p2
        }

    @classmethod
    def from_dict(cls, dados: Mapping[str, Any]) -> 'ChannelGains':
        """Reconstrói a partir de dicionário"""
        try:
            return cls(**{k: dados[k] for k in ('g12', 'g21', 'g10', 'g20', 'p1', 'p2')})
        except KeyError as erro:
            raise InvalidParameterError(f"Campo ausente em ChannelGains: {erro}") from erro


@dataclass(frozen=True)
class PhaseDurations:
    """
    Durações normalizadas das três fases do bloco de transmissão

    Atributos:
        alpha1: Fração da fase 1 (usuário 1 difunde)
        alpha2: Fração da fase 2 (usuário 2 difunde)
        alpha3: Fração da fase 3 (transmissão cooperativa), derivada
    """
    alpha1: float
    alpha2: float = 0.0
    alpha3: float = field(init=False)

    def __post_init__(self):
        """Validações após inicialização"""
        _exigir_finito_nao_negativo('alpha1', self.alpha1)
        _exigir_finito_nao_negativo('alpha2', self.alpha2)
        a1, a2 = float(self.alpha1), float(self.alpha2)
        if a1 + a2 > 1.0 + 1e-12:
            raise InvalidParameterError(
                f"alpha1 + alpha2 deve ser <= 1, recebido {a1} + {a2}"
            )
        object.__setattr__(self, 'alpha1', a1)
        object.__setattr__(self, 'alpha2', a2)
        object.__setattr__(self, 'alpha3', max(0.0, 1.0 - a1 - a2))

    def trocar_usuarios(self) -> 'PhaseDurations':
        """Troca as fases 1 e 2"""
        return PhaseDurations(self.alpha2, self.alpha1)

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {'alpha1': self.alpha1, 'alpha2': self.alpha2, 'alpha3': self.alpha3}

    @classmethod
    def from_dict(cls, dados: Mapping[str, Any]) -> 'PhaseDurations':
        """Reconstrói a partir de dicionário (alpha3 é recalculado)"""
        try:
            return cls(dados['alpha1'], dados.get('alpha2', 0.0))
        except KeyError as erro:
            raise InvalidParameterError(f"Campo ausente em PhaseDurations: {erro}") from erro


@dataclass(frozen=True)
class PowerAllocation:
    """
    Potências por fase dos dois usuários

    Atributos:
        rho11: Potência do usuário 1 na fase 1
        rho22: Potência do usuário 2 na fase 2
        rho10: Potência privada do usuário 1 na fase 3
        rho20: Potência privada do usuário 2 na fase 3
        rho13: Potência cooperativa do usuário 1 na fase 3
        rho23: Potência cooperativa do usuário 2 na fase 3
    """
    rho11: float = 0.0
    rho22: float = 0.0
    rho10: float = 0.0
    rho20: float = 0.0
    rho13: float = 0.0
    rho23: float = 0.0

    def __post_init__(self):
        """Validações após inicialização"""
        for nome in ORDEM_POTENCIAS:
            valor = getattr(self, nome)
            if not math.isfinite(valor) or valor < 0:
                raise InfeasibleAllocationError(
                    f"Potência {nome} deve ser finita e >= 0, recebido {valor}"
                )
            object.__setattr__(self, nome, float(valor))

    def residuos_potencia(self, ch: ChannelGains, pd: PhaseDurations) -> tuple:
        """
        Calcula os resíduos das duas restrições de potência

        Returns:
            Tupla (residuo_usuario1, residuo_usuario2) com sinal
        """
        r1 = pd.alpha1 * self.rho11 + pd.alpha3 * (self.rho10 + self.rho13) - ch.p1
        r2 = pd.alpha2 * self.rho22 + pd.alpha3 * (self.rho20 + self.rho23) - ch.p2
        return r1, r2

    def verificar(self, ch: ChannelGains, pd: PhaseDurations,
                  tol: float = TOLERANCIA_POTENCIA):
        """
        Verifica restrições de potência e potências em fases de duração nula

        Raises:
            InfeasibleAllocationError: se alguma restrição for violada além de tol
        """
        r1, r2 = self.residuos_potencia(ch, pd)
        if abs(r1) > tol or abs(r2) > tol:
            raise InfeasibleAllocationError(
                f"Restrição de potência violada: residuos ({r1:.3e}, {r2:.3e}) > {tol:.1e}"
            )
        nulas = []
        if pd.alpha1 == 0 and self.rho11 > 0:
            nulas.append('rho11')
        if pd.alpha2 == 0 and self.rho22 > 0:
            nulas.append('rho22')
        if pd.alpha3 == 0 and (self.rho10 + self.rho20 + self.rho13 + self.rho23) > 0:
            nulas.append('fase 3')
        if nulas:
            raise InfeasibleAllocationError(
                f"Potência positiva em fase de duração nula: {', '.join(nulas)}"
            )

    def trocar_usuarios(self) -> 'PowerAllocation':
        """Troca os papéis dos usuários"""
        return PowerAllocation(
            rho11=self.rho22, rho22=self.rho11,
            rho10=self.rho20, rho20=self.rho10,
            rho13=self.rho23, rho23=self.rho13
        )

    def to_array(self) -> np.ndarray:
        """Vetor na ordem (rho11, rho22, rho10, rho20, rho13, rho23)"""
        return np.array([getattr(self, nome) for nome in ORDEM_POTENCIAS])

    @classmethod
    def from_array(cls, valores) -> 'PowerAllocation':
        """Constrói a partir de vetor na ordem canônica"""
        return cls(**{nome: float(v) for nome, v in zip(ORDEM_POTENCIAS, valores)})

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {nome: getattr(self, nome) for nome in ORDEM_POTENCIAS}

    @classmethod
    def from_dict(cls, dados: Mapping[str, Any]) -> 'PowerAllocation':
        """Reconstrói a partir de dicionário"""
        return cls(**{nome: dados.get(nome, 0.0) for nome in ORDEM_POTENCIAS})


@dataclass(frozen=True)
class RateConstraints:
    """
    Valores de todas as restrições de taxa (bits/s/Hz)

    Atributos:
        i1..i8: Limites de informação mútua
        zeta: SNR efetiva da fase 3 com termo de beamforming
        j1, j2, s1..s4: Restrições da região de taxas
    """
    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: float
    i7: float
    i8: float
    zeta: float
    j1: float
    j2: float
    s1: float
    s2: float
    s3: float
    s4: float

    @property
    def smin(self) -> float:
        """Menor restrição de soma"""
        return min(self.s1, self.s2, self.s3, self.s4)

    def to_dict(self) -> dict:
        """Converte para dicionário"""
        return {
            nome: getattr(self, nome)
            for nome in ('i1', 'i2', 'i3', 'i4', 'i5', 'i6', 'i7', 'i8', 'zeta',
                         'j1', 'j2', 's1', 's2', 's3', 's4')
        }

    @classmethod
    def from_dict(cls, dados: Mapping[str, Any]) -> 'RateConstraints':
        """Reconstrói a partir de dicionário"""
        return cls(**{k: float(v) for k, v in dados.items() if k != 'smin'})


def capacity(x: float) -> float:
    """
    Capacidade gaussiana C(x) = log2(1 + x)

    Args:
        x: SNR não negativa

    Returns:
        Taxa em bits/s/Hz

    Raises:
        InvalidParameterError: se x < 0
    """
    if x < 0 or math.isnan(x):
        raise InvalidParameterError(f"SNR deve ser >= 0, recebido {x}")
    return math.log2(1.0 + x)


def _termo(alpha: float, snr: float) -> float:
    """alpha * C(snr), com 0 quando a fase tem duração nula"""
    if alpha == 0:
        return 0.0
    return alpha * capacity(snr)


def eval_zeta(ch: ChannelGains, pa: PowerAllocation) -> float:
    """
    Calcula a SNR da fase 3 com beamforming coerente

    zeta = g10²(rho10+rho13) + g20²(rho20+rho23) + 2 g10 g20 sqrt(rho13 rho23)
    """
    return (
        ch.g10 ** 2 * (pa.rho10 + pa.rho13)
        + ch.g20 ** 2 * (pa.rho20 + pa.rho23)
        + 2.0 * ch.g10 * ch.g20 * math.sqrt(pa.rho13 * pa.rho23)
    )


def eval_constraints(
    ch: ChannelGains,
    pd: PhaseDurations,
    pa: PowerAllocation,
    tol: float = TOLERANCIA_POTENCIA
) -> RateConstraints:
    """
    Avalia as oito restrições de informação mútua e as restrições da região

    Args:
        ch: Canal
        pd: Durações de fase
        pa: Alocação de potência
        tol: Tolerância absoluta das restrições de potência

    Returns:
        RateConstraints com I1..I8, zeta, J1, J2, S1..S4

    Raises:
        InfeasibleAllocationError: se a alocação violar as restrições de potência
    """
    pa.verificar(ch, pd, tol)

    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3
    zeta = eval_zeta(ch, pa)
    fase3 = _termo(a3, zeta)
    direto1 = _termo(a1, ch.g10 ** 2 * pa.rho11)
    direto2 = _termo(a2, ch.g20 ** 2 * pa.rho22)

    i1 = _termo(a1, ch.g12 ** 2 * pa.rho11)
    i2 = _termo(a2, ch.g21 ** 2 * pa.rho22)
    i3 = _termo(a3, ch.g10 ** 2 * pa.rho10)
    i4 = _termo(a3, ch.g20 ** 2 * pa.rho20)
    i5 = _termo(a3, ch.g10 ** 2 * pa.rho10 + ch.g20 ** 2 * pa.rho20)
    i6 = direto1 + fase3
    i7 = direto2 + fase3
    i8 = direto1 + direto2 + fase3

    return RateConstraints(
        i1=i1, i2=i2, i3=i3, i4=i4, i5=i5, i6=i6, i7=i7, i8=i8,
        zeta=zeta,
        j1=i1 + i3,
        j2=i2 + i4,
        s1=i1 + i2 + i5,
        s2=i2 + i6,
        s3=i1 + i7,
        s4=i8
    )


def eval_constraints_array(
    ch: ChannelGains,
    pd: PhaseDurations,
    rho: np.ndarray
) -> Dict[str, np.ndarray]:
    """
    Versão vetorizada de eval_constraints, sem verificação de potência

    Args:
        ch: Canal
        pd: Durações de fase
        rho: Array (..., 6) na ordem (rho11, rho22, rho10, rho20, rho13, rho23)

    Returns:
        Dicionário com arrays 'j1', 'j2', 's1', 's2', 's3', 's4' e 'zeta'
    """
    rho = np.asarray(rho, dtype=float)
    r11, r22, r10, r20, r13, r23 = (rho[..., k] for k in range(6))
    a1, a2, a3 = pd.alpha1, pd.alpha2, pd.alpha3

    zeta = (ch.g10 ** 2 * (r10 + r13) + ch.g20 ** 2 * (r20 + r23)
            + 2.0 * ch.g10 * ch.g20 * np.sqrt(r13 * r23))
    fase3 = a3 * np.log2(1.0 + zeta)
    direto1 = a1 * np.log2(1.0 + ch.g10 ** 2 * r11)
    direto2 = a2 * np.log2(1.0 + ch.g20 ** 2 * r22)
    i1 = a1 * np.log2(1.0 + ch.g12 ** 2 * r11)
    i2 = a2 * np.log2(1.0 + ch.g21 ** 2 * r22)
    i3 = a3 * np.log2(1.0 + ch.g10 ** 2 * r10)
    i4 = a3 * np.log2(1.0 + ch.g20 ** 2 * r20)
    i5 = a3 * np.log2(1.0 + ch.g10 ** 2 * r10 + ch.g20 ** 2 * r20)

    return {
        'zeta': zeta,
        'j1': i1 + i3,
        'j2': i2 + i4,
        's1': i1 + i2 + i5,
        's2': i2 + direto1 + fase3,
        's3': i1 + direto2 + fase3,
        's4': direto1 + direto2 + fase3,
    }


def classical_mac_allocation(ch: ChannelGains) -> tuple:
    """
    Alocação do MAC clássico (sem cooperação)

    Returns:
        Tupla (PhaseDurations(0, 0), PowerAllocation com rho10=P1, rho20=P2)
    """
    return PhaseDurations(0.0, 0.0), PowerAllocation(rho10=ch.p1, rho20=ch.p2)


def outer_bound_gains(ch: ChannelGains) -> ChannelGains:
    """
    Ganhos fortalecidos do limite externo

    g12² é substituído por g10² + g12² e g21² por g20² + g21².
    """
    return ChannelGains(
        g12=math.sqrt(ch.g10 ** 2 + ch.g12 ** 2),
        g21=math.sqrt(ch.g20 ** 2 + ch.g21 ** 2),
        g10=ch.g10, g20=ch.g20,
        p1=ch.p1, p2=ch.p2
    )


def ajustar_potencia(
    ch: ChannelGains,
    pd: PhaseDurations,
    valores: np.ndarray,
    fixos_usuario2: bool = False
) -> PowerAllocation:
    """
    Projeta um vetor de potências aproximado sobre as restrições de potência

    Zera negativos e potências de fases nulas, depois reescala as potências de
    cada usuário para que a igualdade seja exata. Um usuário com vetor nulo
    recebe todo o orçamento na parte privada da fase 3 (ou na difusão se
    alpha3 = 0). Usado após solvers numéricos.

    Args:
        ch: Canal
        pd: Durações de fase
        valores: Vetor na ordem canônica
        fixos_usuario2: Se True, mantém as potências do usuário 2 como recebidas

    Returns:
        PowerAllocation viável
    """
    v = np.clip(np.asarray(valores, dtype=float), 0.0, None)
    if pd.alpha1 == 0:
        v[0] = 0.0
    if pd.alpha2 == 0:
        v[1] = 0.0
    if pd.alpha3 == 0:
        v[2:] = 0.0

    _reescalar(v, (0, 2, 4), pd.alpha1, pd.alpha3, ch.p1)
    if not fixos_usuario2:
        _reescalar(v, (1, 3, 5), pd.alpha2, pd.alpha3, ch.p2)
    return PowerAllocation.from_array(v)


def _reescalar(v: np.ndarray, indices: tuple, alpha_difusao: float, alpha3: float, orcamento: float):
    """Reescala as potências de um usuário; vetor nulo vai todo para a parte privada da fase 3"""
    difusao, privada, cooperativa = indices
    usado = alpha_difusao * v[difusao] + alpha3 * (v[privada] + v[cooperativa])
    if usado > 0:
        v[[difusao, privada, cooperativa]] *= orcamento / usado
    elif orcamento > 0:
        if alpha3 > 0:
            v[privada] = orcamento / alpha3
        elif alpha_difusao > 0:
            v[difusao] = orcamento / alpha_difusao
