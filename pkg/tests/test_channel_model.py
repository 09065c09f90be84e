import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.models import (
    ChannelGains,
    InfeasibleAllocationError,
    InvalidParameterError,
    PhaseDurations,
    PowerAllocation,
    SchemeCase,
    ajustar_potencia,
    capacity,
    classical_mac_allocation,
    eval_constraints,
    eval_constraints_array,
    eval_zeta,
    outer_bound_gains,
)

ganhos = st.floats(min_value=0.05, max_value=10.0)
potencias = st.floats(min_value=0.1, max_value=10.0)


@st.composite
def cenarios(draw):
    """Canal, fases e alocação viável sorteados"""
    ch = ChannelGains(draw(ganhos), draw(ganhos), draw(ganhos), draw(ganhos), draw(potencias), draw(potencias))
    a1 = draw(st.floats(min_value=0.0, max_value=0.45))
    a2 = draw(st.floats(min_value=0.0, max_value=0.45))
    pd = PhaseDurations(a1, a2)
    bruto = np.array([draw(st.floats(min_value=0.01, max_value=1.0)) for _ in range(6)])
    return ch, pd, ajustar_potencia(ch, pd, bruto)


@pytest.mark.parametrize("snr, esperado", [(0.0, 0.0), (1.0, 1.0), (3.0, 2.0)])
def test_capacidade_valores_conhecidos(snr, esperado):
    assert capacity(snr) == pytest.approx(esperado)


def test_capacidade_rejeita_snr_negativa():
    with pytest.raises(InvalidParameterError):
        capacity(-0.1)


@pytest.mark.parametrize("g10, g20, alocacao, esperado", [
    (1.0, 1.0, PowerAllocation(rho10=2.0, rho20=2.0), 4.0),
    (1.0, 1.0, PowerAllocation(rho13=1.0, rho23=1.0), 4.0),
    (1.0, 2.0, PowerAllocation(rho10=0.5, rho20=0.25, rho13=1.0, rho23=0.25), 4.5),
])
def test_zeta_com_beamforming(g10, g20, alocacao, esperado):
    ch = ChannelGains(g12=1.0, g21=1.0, g10=g10, g20=g20, p1=1.0, p2=1.0)
    assert eval_zeta(ch, alocacao) == pytest.approx(esperado)


def test_mac_classico_reproduz_soma_maxima():
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    fases, alocacao = classical_mac_allocation(ch)
    rc = eval_constraints(ch, fases, alocacao)
    assert rc.s4 == pytest.approx(math.log2(5))
    assert rc.i1 == 0.0 and rc.i2 == 0.0
    assert rc.smin == pytest.approx(math.log2(5))


def test_fase_unica_de_difusao():
    ch = ChannelGains(g12=5.0, g21=1.0, g10=1.0, g20=1.0, p1=2.0, p2=0.0)
    rc = eval_constraints(ch, PhaseDurations(1.0), PowerAllocation(rho11=2.0))
    assert rc.i1 == pytest.approx(math.log2(51))
    assert rc.i3 == rc.i4 == rc.i5 == 0.0
    assert rc.zeta == 0.0


def test_vetor_de_restricoes_por_formula_independente():
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=1.6, p2=1.6)
    pd = PhaseDurations(0.2, 0.2)
    pa = PowerAllocation(rho11=2.0, rho22=2.0, rho10=1.0, rho20=1.0, rho13=1.0, rho23=1.0)
    rc = eval_constraints(ch, pd, pa)

    i1 = 0.2 * math.log2(1 + 25 * 2)
    i3 = 0.6 * math.log2(2)
    i5 = 0.6 * math.log2(3)
    fase3 = 0.6 * math.log2(1 + 6)
    direto = 0.2 * math.log2(3)
    assert rc.zeta == pytest.approx(6.0)
    assert rc.j1 == pytest.approx(i1 + i3)
    assert rc.j2 == pytest.approx(i1 + i3)
    assert rc.s1 == pytest.approx(2 * i1 + i5)
    assert rc.s2 == pytest.approx(i1 + direto + fase3)
    assert rc.s4 == pytest.approx(2 * direto + fase3)
    assert rc.smin == pytest.approx(min(rc.s1, rc.s2, rc.s3, rc.s4))


def test_alocacao_fora_do_orcamento():
    ch = ChannelGains(g12=1.0, g21=1.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    with pytest.raises(InfeasibleAllocationError):
        eval_constraints(ch, PhaseDurations(0.0), PowerAllocation(rho10=3.0, rho20=2.0))


def test_potencia_em_fase_nula():
    ch = ChannelGains(g12=1.0, g21=1.0, g10=1.0, g20=1.0, p1=2.0, p2=2.0)
    with pytest.raises(InfeasibleAllocationError):
        PowerAllocation(rho11=1.0, rho10=2.0, rho20=2.0).verificar(ch, PhaseDurations(0.0))


def test_potencia_negativa():
    with pytest.raises(InfeasibleAllocationError):
        PowerAllocation(rho10=-1.0)


@pytest.mark.parametrize("a1, a2", [(0.7, 0.4), (-0.1, 0.0), (math.nan, 0.0)])
def test_fases_invalidas(a1, a2):
    with pytest.raises(InvalidParameterError):
        PhaseDurations(a1, a2)


def test_ganho_negativo_rejeitado():
    with pytest.raises(InvalidParameterError):
        ChannelGains(g12=-1.0, g21=1.0, g10=1.0, g20=1.0, p1=1.0, p2=1.0)


def test_ganhos_do_limite_externo():
    forte = outer_bound_gains(ChannelGains(g12=0.0, g21=2.0, g10=1.0, g20=1.0, p1=1.0, p2=1.0))
    assert forte.g12 == pytest.approx(1.0)
    assert forte.g21 == pytest.approx(math.sqrt(5.0))
    assert (forte.g10, forte.g20) == (1.0, 1.0)


def test_codigos_e_familias_dos_casos():
    assert SchemeCase.TWO_HOP.codigo == "3b"
    assert SchemeCase.BOTH_PDF.familia == 2
    assert SchemeCase.MIRROR.familia == 4


@given(cenarios())
@settings(max_examples=60, deadline=None)
def test_ajuste_de_potencia_satisfaz_orcamento(cenario):
    ch, pd, pa = cenario
    r1, r2 = pa.residuos_potencia(ch, pd)
    assert abs(r1) <= 1e-9 * max(1.0, ch.p1)
    assert abs(r2) <= 1e-9 * max(1.0, ch.p2)


@given(cenarios())
@settings(max_examples=60, deadline=None)
def test_versao_vetorizada_coincide(cenario):
    ch, pd, pa = cenario
    rc = eval_constraints(ch, pd, pa, tol=1e-8 * max(1.0, ch.p1 + ch.p2))
    valores = eval_constraints_array(ch, pd, pa.to_array()[None, :])
    for nome in ('j1', 'j2', 's1', 's2', 's3', 's4', 'zeta'):
        assert valores[nome][0] == pytest.approx(getattr(rc, nome), rel=1e-9, abs=1e-12)


@given(cenarios())
@settings(max_examples=60, deadline=None)
def test_troca_de_usuarios_espelha_restricoes(cenario):
    ch, pd, pa = cenario
    tol = 1e-8 * max(1.0, ch.p1 + ch.p2)
    rc = eval_constraints(ch, pd, pa, tol=tol)
    espelho = eval_constraints(ch.trocar_usuarios(), pd.trocar_usuarios(), pa.trocar_usuarios(), tol=tol)
    assert espelho.j1 == pytest.approx(rc.j2)
    assert espelho.s2 == pytest.approx(rc.s3)
    assert espelho.s4 == pytest.approx(rc.s4)


def test_serializacao_do_canal():
    ch = ChannelGains(g12=2.0, g21=1.0, g10=0.5, g20=0.7, p1=3.0, p2=1.0)
    assert ChannelGains.from_dict(ch.to_dict()) == ch
    with pytest.raises(InvalidParameterError):
        ChannelGains.from_dict({'g12': 1.0})


@given(cenarios())
@settings(max_examples=60, deadline=None)
def test_soma_das_individuais_excede_s1(cenario):
    ch, pd, pa = cenario
    rc = eval_constraints(ch, pd, pa, tol=1e-8 * max(1.0, ch.p1 + ch.p2))
    a, b = ch.g10 ** 2 * pa.rho10, ch.g20 ** 2 * pa.rho20
    esperado = pd.alpha3 * math.log2(1.0 + a * b / (1.0 + a + b))
    assert rc.j1 + rc.j2 - rc.s1 == pytest.approx(esperado, rel=1e-9, abs=1e-12)
    assert rc.j1 + rc.j2 >= rc.s1 - 1e-12
    if a * b > 1e-9:
        assert rc.j1 + rc.j2 > rc.s1


@given(cenarios(), st.floats(min_value=0.01, max_value=5.0), st.sampled_from(['rho13', 'rho23']))
@settings(max_examples=60, deadline=None)
def test_zeta_cresce_com_a_parte_cooperativa(cenario, delta, chave):
    ch, _, pa = cenario
    valores = pa.to_dict()
    valores[chave] += delta
    assert eval_zeta(ch, PowerAllocation.from_dict(valores)) > eval_zeta(ch, pa)


@given(cenarios(), st.floats(min_value=0.2, max_value=5.0))
@settings(max_examples=60, deadline=None)
def test_restricoes_invariantes_a_escala_dos_ganhos(cenario, s):
    ch, pd, pa = cenario
    escalado = ChannelGains(ch.g12 * s, ch.g21 * s, ch.g10 * s, ch.g20 * s, ch.p1 / s ** 2, ch.p2 / s ** 2)
    tol = 1e-8 * max(1.0, ch.p1 + ch.p2, escalado.p1 + escalado.p2)
    rc = eval_constraints(ch, pd, pa, tol=tol)
    rc_escalado = eval_constraints(escalado, pd, PowerAllocation.from_array(pa.to_array() / s ** 2), tol=tol)
    for nome in ('j1', 'j2', 's1', 's2', 's3', 's4'):
        assert getattr(rc_escalado, nome) == pytest.approx(getattr(rc, nome), rel=1e-9, abs=1e-12)


def test_ajuste_de_alocacao_nula_usa_a_fase_cooperativa():
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=3.0)
    pd = PhaseDurations(0.2, 0.2)
    pa = ajustar_potencia(ch, pd, np.zeros(6))
    assert pa.rho10 == pytest.approx(2.0 / 0.6)
    assert pa.rho20 == pytest.approx(3.0 / 0.6)
    assert pa.rho11 == 0.0 and pa.rho13 == 0.0
    r1, r2 = pa.residuos_potencia(ch, pd)
    assert r1 == pytest.approx(0.0, abs=1e-12) and r2 == pytest.approx(0.0, abs=1e-12)


def test_ajuste_de_alocacao_nula_sem_fase_cooperativa():
    ch = ChannelGains(g12=5.0, g21=5.0, g10=1.0, g20=1.0, p1=2.0, p2=3.0)
    pa = ajustar_potencia(ch, PhaseDurations(0.5, 0.5), np.zeros(6))
    assert pa.rho11 == pytest.approx(4.0)
    assert pa.rho22 == pytest.approx(6.0)
