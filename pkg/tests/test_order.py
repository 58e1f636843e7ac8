import numpy as np
import pytest

from _families import TABLE1_DOMAINS, table1
from idemca.errors import DomainError, NotIdempotentError, UnsupportedCarrierError
from idemca.group import FreeAbelianGroup, GroupSubset, Z, cyclic
from idemca.idempotency import classify
from idemca.order import (
    antichain_family,
    chain_family,
    comparability_necessary_conditions,
    constant_below,
    fixes_constant,
    hasse,
    kernel_leq,
    natural_leq,
    order_char_crosscheck,
    strictness_check,
)
from idemca.pattern import Pattern
from idemca.rule import PatternCA, constant_rule, rules_equal

P = Pattern.from_string


def ca(text, domain, a=1):
    return PatternCA(P(text, domain), a)


EX_P, EX_Q = ca("00", (0, 1)), ca("000", (-1, 0, 1))


def idempotents(domains=TABLE1_DOMAINS[:5]):
    return [t for t in table1(domains) if classify(t).idempotent]


def test_natural_leq_examples():
    assert natural_leq(EX_P, EX_P).leq
    assert natural_leq(ca("00", (0, 1)), ca("000", (0, 1, 2))).leq
    assert not natural_leq(EX_P, EX_Q).leq


def test_non_idempotent_rejected():
    with pytest.raises(NotIdempotentError):
        natural_leq(ca("100", (-1, 0, 1)), EX_P)


def test_kernel_leq():
    assert kernel_leq(EX_P, EX_P)
    assert not kernel_leq(EX_P, EX_Q)
    fam = chain_family(1, 4)
    for a, b in zip(fam, fam[1:]):
        assert kernel_leq(a, b)


def test_constant_below():
    assert constant_below(1, ca("000", (-1, 0, 1)))
    assert not constant_below(0, ca("000", (-1, 0, 1)))
    assert constant_below(0, PatternCA.flip(P("010", (-1, 0, 1))))


def test_constant_below_matches_composition():
    for t in idempotents():
        for b in (0, 1):
            sigma = constant_rule(GroupSubset(Z, (0,)), b)
            from idemca.order import rule_leq

            assert constant_below(b, t) == fixes_constant(t, b) == rule_leq(sigma, t.rule)


def test_order_char_crosscheck_examples():
    v = order_char_crosscheck(EX_P, EX_Q)
    assert not v.leq
    assert (v.crosscheck.image_inclusion, v.crosscheck.kernel_inclusion) == (True, False)
    v = order_char_crosscheck(*chain_family(1, 2))
    assert v.leq and v.crosscheck.image_inclusion and v.crosscheck.kernel_inclusion
    v = order_char_crosscheck(EX_Q, EX_Q)
    assert v.leq and v.crosscheck.image_inclusion and v.crosscheck.kernel_inclusion


def test_crosscheck_needs_z():
    G = cyclic(5)
    t = PatternCA(Pattern(GroupSubset(G, (0, 1)), (0, 0)), 1)
    with pytest.raises(UnsupportedCarrierError):
        order_char_crosscheck(t, t)


def test_order_on_table1_idempotents():
    fam = idempotents()
    n = len(fam)
    L = np.array([[natural_leq(a, b).leq for b in fam] for a in fam])
    assert L.diagonal().all()
    for i, j in zip(*np.nonzero(L & L.T)):
        assert rules_equal(fam[i].rule, fam[j].rule)
    closure = (L.astype(int) @ L.astype(int)) > 0
    assert not (closure & ~L).any()
    for i in range(n):
        for j in range(n):
            v = order_char_crosscheck(fam[i], fam[j])
            assert v.leq == L[i, j]
            if fam[j].pattern.at_identity != fam[i].write:
                assert comparability_necessary_conditions(fam[i], fam[j])


def test_comparability_hypothesis_enforced():
    with pytest.raises(DomainError):
        comparability_necessary_conditions(ca("00", (0, 1)), PatternCA.flip(P("111", (0, 1, 2))))


def test_chain_family():
    fam = chain_family(1, 3)
    assert [t.domain.members for t in fam] == [(0, 1), (0, 1, 2), (0, 1, 2, 3)]
    for t in fam:
        assert classify(t).idempotent
    for i, a in enumerate(fam):
        for b in fam[i:]:
            assert natural_leq(a, b).leq
        for b in fam[:i]:
            assert not natural_leq(a, b).leq


def test_chain_in_z2():
    G = FreeAbelianGroup(2)
    fam = chain_family((1, 1), 3, G)
    assert fam[1].domain.members == ((0, 0), (1, 1), (2, 2))
    for a, b in zip(fam, fam[1:]):
        assert natural_leq(a, b).leq and not natural_leq(b, a).leq


def test_chain_strictness():
    a, b = chain_family(1, 2)
    assert strictness_check(a, b, 8)
    with pytest.raises(DomainError):
        strictness_check(a, a, 8)
    with pytest.raises(DomainError):
        strictness_check(EX_P, EX_Q, 8)


def test_antichain_family():
    fam = antichain_family([1, 2], 2)
    assert (fam[0].pattern.string, fam[0].domain.members) == ("101", (-1, 0, 1))
    assert (fam[1].pattern.string, fam[1].domain.members) == ("10001", (-2, -1, 0, 1, 2))
    assert not natural_leq(fam[0], fam[1]).leq and not natural_leq(fam[1], fam[0]).leq
    with pytest.raises(DomainError):
        antichain_family([1, -1], 2)
    with pytest.raises(DomainError):
        antichain_family([0, 1], 2)


def test_hasse_table_row_with_identity():
    fam = [t for t in table1([(-1, 0, 1)]) if classify(t).idempotent]
    poset = hasse(fam, include_identity=True)
    top = poset.labels.index("id")
    assert len(fam) == 4
    for i in range(len(fam)):
        assert (i, top) in poset.edges
    dot = poset.to_dot()
    assert dot.startswith("digraph") and '"id"' in dot


def test_hasse_singleton_and_chain():
    poset = hasse([EX_P])
    assert poset.labels == [str(EX_P)] and poset.edges == []
    poset = hasse(chain_family(1, 4))
    assert poset.edges == [(0, 1), (1, 2), (2, 3)]


def test_hasse_reports_cap_failures():
    poset = hasse(chain_family(1, 3), cap=2**5)
    assert poset.failures
    assert "failed" in poset.to_dot()
