import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemca.errors import DomainError
from idemca.group import GroupSubset, Z, interval
from idemca.pattern import (
    Pattern,
    enumerate_patterns,
    is_constant,
    is_symmetrical,
    pattern_leq,
    quasi_constant_term,
    quasi_constant_terms,
)
from idemca.shiftspace import count_words, sft_subset

E3 = interval(-1, 1)
P = Pattern.from_string


def test_is_constant():
    assert is_constant(P("000", E3))
    assert not is_constant(P("010", E3))
    assert is_constant(P("1", [0]))


def test_is_symmetrical():
    assert is_symmetrical(P("101", E3))
    assert not is_symmetrical(P("001", E3))
    for p in enumerate_patterns(interval(0, 2)):
        assert not is_symmetrical(p)


def test_quasi_constant_term():
    D = interval(-2, 2)
    assert quasi_constant_term(P("00010", D)) == 1
    assert quasi_constant_term(P("00001", D)) == 2
    assert quasi_constant_term(P("00000", D)) is None
    assert quasi_constant_term(P("00100", D)) == 0
    assert quasi_constant_term(P("01010", D)) is None


def test_two_element_domain_prefers_non_identity():
    p = P("01", [0, 1])
    assert quasi_constant_terms(p) == [0, 1]
    assert quasi_constant_term(p) == 1


def test_pattern_leq_examples():
    assert pattern_leq(P("00", [0, 1]), P("000", [0, 1, 2]))
    assert not pattern_leq(P("01", [0, 1]), P("000", [0, 1, 2]))
    q = P("0110", [-1, 0, 1, 2])
    assert pattern_leq(q, q)


def test_enumeration():
    pats = list(enumerate_patterns(E3))
    assert len(pats) == 8 and pats[0].string == "000"
    assert [p.string for p in pats] == sorted(p.string for p in pats)
    assert len(list(enumerate_patterns(interval(-3, 3)))) == 128
    assert len(list(enumerate_patterns(GroupSubset(Z, (0,)), 3))) == 3


def test_validation():
    with pytest.raises(DomainError):
        P("11", [1, 2])
    with pytest.raises(DomainError):
        Pattern(E3, (0, 2, 0), 2)
    with pytest.raises(DomainError):
        Pattern(E3, (0, 0, 0), 1)


def _family():
    out = []
    others = [-2, -1, 1, 2]
    for n in range(len(others) + 1):
        for extra in itertools.combinations(others, n):
            out.extend(enumerate_patterns(GroupSubset.canonical(Z, (0, *extra))))
    return out


def test_pattern_leq_is_partial_order():
    fam = _family()
    L = np.array([[pattern_leq(p, q) for q in fam] for p in fam])
    assert L.diagonal().all()
    both = L & L.T
    for i, j in zip(*np.nonzero(both)):
        assert fam[i] == fam[j]
    closure = (L.astype(int) @ L.astype(int)) > 0
    assert not (closure & ~L).any()


@given(st.lists(st.integers(0, 2), min_size=5, max_size=5), st.permutations([0, 1, 2]))
def test_symmetry_survives_relabeling(values, perm):
    p = Pattern(interval(-2, 2), values, 3)
    assert is_symmetrical(p) == is_symmetrical(p.relabel(perm))


def test_leq_implies_word_inclusion():
    fam = [p for p in _family() if len(p.domain) <= 4]
    pairs = [(p, q) for p in fam for q in fam if pattern_leq(p, q) and p != q]
    for p, q in pairs[::7]:
        assert sft_subset(p, q)
        assert all(count_words(p, n) <= count_words(q, n) for n in range(1, 9))
