import pytest
from hypothesis import given
import hypothesis.strategies as st

from ebn.bitset import bits, nonempty_proper_submasks, popcount, submasks, to_mask
from ebn.errors import InvalidStatement, UnknownVertex
from ebn.statements import Statement, check_universe, sorted_statements, statement


@given(st.integers(0, 2**12 - 1))
def test_submasks_are_all_subsets_in_order(m):
    subs = list(submasks(m))
    assert subs == sorted(subs)
    assert len(subs) == 2 ** popcount(m)
    assert all(s & ~m == 0 for s in subs)


@given(st.integers(1, 2**10 - 1))
def test_proper_submasks(m):
    subs = list(nonempty_proper_submasks(m))
    assert 0 not in subs and m not in subs
    assert len(subs) == 2 ** popcount(m) - 2


@given(st.sets(st.integers(0, 70)))
def test_bits_roundtrip(s):
    assert set(bits(to_mask(s))) == s and list(bits(to_mask(s))) == sorted(s)


def test_statement_properties():
    s = Statement(0b001, 0b100, 0b010)
    assert not s.is_marginal and s.is_simple and s.support == 0b111
    assert s.sym() == Statement(0b010, 0b100, 0b001)
    assert Statement(0b011, 0, 0b100).is_marginal and not Statement(0b011, 0, 0b100).is_simple


def test_statement_validation():
    with pytest.raises(InvalidStatement):
        statement(0, 0, 1)
    with pytest.raises(InvalidStatement):
        statement(1, 0, 1)
    with pytest.raises(InvalidStatement):
        statement(1, 2, 2)
    with pytest.raises(UnknownVertex):
        check_universe(Statement(1, 0, 8), 3)


def test_sort_order_by_sides():
    stmts = [Statement(2, 0, 1), Statement(1, 4, 2), Statement(1, 0, 2)]
    assert sorted_statements(stmts) == [Statement(1, 0, 2), Statement(1, 4, 2), Statement(2, 0, 1)]
