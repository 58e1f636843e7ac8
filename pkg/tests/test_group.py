import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idemca.errors import DomainError, DomainMismatchError, OutOfWindowError
from idemca.group import (
    FiniteGroup,
    FreeAbelianGroup,
    GroupSubset,
    Z,
    bundled_groups,
    centered_restriction,
    cyclic,
    interval,
    parse_group,
    parse_subset,
    set_inverse,
    set_product,
    symmetric,
)

Z2 = FreeAbelianGroup(2)


def naive_product(T, S):
    out = []
    for t in T:
        for s in S:
            g = T.group.mul(t, s)
            if g not in out:
                out.append(g)
    return sorted(out)


def test_product_of_elementary_neighbourhood():
    S = interval(-1, 1)
    assert set_product(S, S).members == (-2, -1, 0, 1, 2)


def test_product_with_identity_is_identity():
    S = GroupSubset(Z, (3, -1, 0))
    assert set_product(GroupSubset(Z, (0,)), S).same_set(S)


def test_product_in_z2():
    S = GroupSubset(Z2, ((0, 0), (1, 0), (0, 1)))
    expected = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
    assert naive_product(S, S) == expected
    assert list(set_product(S, S).members) == expected
    assert len(set_product(S, S)) <= len(S) ** 2


def test_product_rejects_mixed_groups():
    with pytest.raises(DomainMismatchError):
        set_product(interval(0, 1), GroupSubset(Z2, ((0, 0),)))


def test_inverse():
    assert set_inverse(GroupSubset(Z, (0, 1, 2))).members == (-2, -1, 0)
    assert set_inverse(interval(-1, 1)).same_set(interval(-1, 1))
    z4 = cyclic(4)
    assert set_inverse(GroupSubset(z4, (0, 1))).members == (0, 3)


@given(st.sets(st.integers(-20, 20), min_size=1, max_size=8))
def test_inverse_is_involution(elems):
    S = GroupSubset.canonical(Z, elems)
    assert set_inverse(set_inverse(S)) == S


def test_centered_restriction():
    z = dict(zip(range(-2, 3), (0, 0, 0, 1, 0)))
    S = interval(-1, 1)
    assert centered_restriction(z, 0, S) == (0, 0, 1)
    assert centered_restriction(z, 1, S) == (0, 1, 0)
    assert centered_restriction(z, -1, S) == (0, 0, 0)
    with pytest.raises(OutOfWindowError):
        centered_restriction(z, 2, S)


@given(st.dictionaries(st.integers(-6, 6), st.integers(0, 2), min_size=13, max_size=13), st.integers(-3, 3))
def test_centered_restriction_at_identity(z, s):
    S = interval(-3, 3)
    assert centered_restriction(z, s, S)[S.index(0)] == z[s]


@pytest.mark.parametrize("name", ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z2xZ2", "S3"])
def test_bundled_groups_satisfy_axioms(name):
    G = bundled_groups()[name]
    G.check_axioms()
    assert parse_group(f"cayley:{name}") == G


def test_s3_is_nonabelian():
    G = symmetric(3)
    assert any(G.mul(a, b) != G.mul(b, a) for a in G.elements for b in G.elements)
    assert sorted(G.element_order(g) for g in G.elements) == [1, 2, 2, 2, 3, 3]


def test_bad_tables_rejected():
    with pytest.raises(DomainError):
        FiniteGroup.from_json({"order": 2, "identity": 0, "table": [[0, 1], [0, 1]]})
    with pytest.raises(DomainError):
        FiniteGroup.from_json({"order": 3, "identity": 0, "table": [[0, 1], [1, 0]]})


def test_cayley_file(tmp_path):
    path = tmp_path / "z3.json"
    path.write_text('{"order": 3, "identity": 0, "table": [[0,1,2],[1,2,0],[2,0,1]]}')
    assert parse_group(f"cayley:{path}").table == cyclic(3).table


def test_parse_subsets():
    assert parse_subset(Z, "-2,-1,0,1,2").members == (-2, -1, 0, 1, 2)
    assert parse_subset(Z, "1,0,-1").members == (1, 0, -1)
    assert parse_subset(Z, "1,0,-1", canonical=True).members == (-1, 0, 1)
    assert parse_subset(Z2, "(0,0);(1,0)").members == ((0, 0), (1, 0))
    assert parse_group("zd:2") == Z2
    with pytest.raises(DomainError):
        GroupSubset(Z, (0, 0))


points = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@given(st.sets(points, min_size=1, max_size=4), st.sets(points, min_size=1, max_size=4), st.sets(points, min_size=1, max_size=4))
def test_product_associative_z2(r, s, t):
    R, S, T = (GroupSubset.canonical(Z2, x) for x in (r, s, t))
    assert set_product(set_product(R, S), T) == set_product(R, set_product(S, T))


def test_product_associative_z5_exhaustive():
    G = cyclic(5)
    subsets = [GroupSubset(G, c) for n in range(1, 5) for c in itertools.combinations(range(5), n)]
    for R, S in itertools.product(subsets, repeat=2):
        RS = set_product(R, S)
        for T in subsets:
            assert set_product(RS, T) == set_product(R, set_product(S, T))
