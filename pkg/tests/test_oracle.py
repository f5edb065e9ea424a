import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ebn.errors import EmptyKeepSet, RetriesExhausted, TableError, UniverseTooLarge, VariableMismatch
from ebn.graph import ETree
from ebn.oracle import (
    JointTable,
    QueryLog,
    SamplerConfig,
    ci_holds,
    ci_residual,
    is_strictly_positive,
    marginal,
    product_table,
    sample_from_etree,
    trek_pairs,
)
from ebn.separation import enumerate_model
from ebn.statements import Statement

from helpers import S, path_tree
from oracles import brute_ci_residual
from strategies import etrees, statements_over, tables


def parity(eps, delta):
    probs = np.zeros((2, 2, 2))
    for x1, x2, x3 in np.ndindex(2, 2, 2):
        probs[x1, x2, x3] = (1 + eps * (-1) ** (x1 + x2 + x3) + delta * (-1) ** (x2 + x3)) / 8
    return JointTable(("x1", "x2", "x3"), probs)


class TestTable:
    def test_rejects_bad_sum(self):
        with pytest.raises(TableError):
            JointTable(("a",), [0.5, 0.6])

    def test_rejects_negative(self):
        with pytest.raises(TableError):
            JointTable(("a",), [1.5, -0.5])

    def test_rejects_axis_mismatch(self):
        with pytest.raises(TableError):
            JointTable(("a", "b"), [0.5, 0.5])

    def test_immutable(self):
        p = JointTable(("a",), [0.5, 0.5])
        with pytest.raises(ValueError):
            p.probs[0] = 1.0

    def test_reorder_roundtrip(self, parity_table):
        q = parity_table.reorder(("x3", "x1", "x2"))
        assert q.probs[1, 0, 0] == parity_table.probs[0, 0, 1]
        assert q.reorder(parity_table.names) == parity_table

    def test_reorder_mismatch(self, xor_table):
        with pytest.raises(VariableMismatch):
            xor_table.reorder(("a", "b", "z"))


class TestCI:
    def test_uniform(self):
        p = product_table(("a", "b"), [[0.5, 0.5], [0.5, 0.5]])
        assert ci_holds(p, S(p, "I(a ; b)"))

    def test_fair_xor(self, xor_table):
        assert ci_holds(xor_table, S(xor_table, "I(a ; c)"))
        assert not ci_holds(xor_table, S(xor_table, "I(a ; c | b)"))
        assert ci_holds(xor_table, S(xor_table, "I(a ; b)"))

    def test_parity_family(self, parity_table):
        p = parity_table
        assert p == parity(0.4, 0.4)
        assert ci_holds(p, S(p, "I(x1 ; x2)"))
        assert not ci_holds(p, S(p, "I(x2 ; x3)"))
        assert not ci_holds(p, S(p, "I(x1 ; x2 | x3)"))
        # P(x2,x3) = (1 +- delta)/4 against uniform single marginals
        assert ci_residual(p, S(p, "I(x2 ; x3)")) == pytest.approx(0.4 / 4)
        assert ci_residual(p, S(p, "I(x1 ; x2 | x3)")) == pytest.approx(0.4 / 16)
        assert ci_residual(p, S(p, "I(x2 ; x3)")) == pytest.approx(brute_ci_residual(p, ["x2"], [], ["x3"]))

    def test_unknown_variable(self, xor_table):
        with pytest.raises(VariableMismatch):
            ci_residual(xor_table, Statement(1, 0, 8))

    @given(tables(), st.data())
    def test_residual_matches_brute_force(self, p, data):
        s = data.draw(statements_over(p.n))
        x, z, y = ([p.names[i] for i in range(p.n) if m >> i & 1] for m in s)
        assert ci_residual(p, s) == pytest.approx(brute_ci_residual(p, x, z, y), abs=1e-15)

    @given(tables(), st.data())
    def test_symmetric(self, p, data):
        s = data.draw(statements_over(p.n))
        assert ci_holds(p, s) == ci_holds(p, s.sym())
        assert ci_residual(p, s) == pytest.approx(ci_residual(p, s.sym()), abs=1e-15)

    def test_query_log_records(self, xor_table):
        log = QueryLog(xor_table, 1e-9)
        assert log.holds(Statement(1, 0, 4))
        assert not log.holds(Statement(1, 2, 4))
        assert [q.holds for q in log.queries] == [True, False]
        assert log.queries[1].residual > 0.01


class TestMarginal:
    def test_uniform(self):
        p = product_table(("x1", "x2", "x3"), [[0.5, 0.5]] * 3)
        m = marginal(p, 1)
        assert m.names == ("x1",) and np.allclose(m.probs, [0.5, 0.5])

    def test_parity_pair(self, parity_table):
        m = marginal(parity_table, parity_table.mask(["x2", "x3"]))
        expected = [[(1 + 0.4 * (-1) ** (a + b)) / 4 for b in range(2)] for a in range(2)]
        assert np.allclose(m.probs, expected, atol=1e-15)

    def test_keep_all(self, parity_table):
        assert marginal(parity_table, parity_table.full) == parity_table

    def test_errors(self, parity_table):
        with pytest.raises(EmptyKeepSet):
            marginal(parity_table, 0)
        with pytest.raises(VariableMismatch):
            marginal(parity_table, 8)

    @given(tables(n_min=3), st.data())
    def test_commutes(self, p, data):
        ab = data.draw(st.integers(1, p.full))
        a = data.draw(st.integers(0, p.full)) & ab or ab
        twice = marginal(marginal(p, ab), _relative(a, ab))
        once = marginal(p, a)
        assert twice.names == once.names
        assert np.allclose(twice.probs, once.probs, atol=1e-12, rtol=0)


def _relative(sub, sup):
    """Re-index mask ``sub`` against the set bits of ``sup``."""
    out, j = 0, 0
    for i in range(sup.bit_length()):
        if sup >> i & 1:
            if sub >> i & 1:
                out |= 1 << j
            j += 1
    return out


class TestPositivity:
    def test_uniform(self):
        assert is_strictly_positive(product_table(("a", "b"), [[0.5, 0.5], [0.5, 0.5]]))

    def test_xor(self, xor_table):
        assert not is_strictly_positive(xor_table)

    def test_parity(self, parity_table):
        assert is_strictly_positive(parity_table)
        assert parity_table.probs.min() == pytest.approx((1 - 0.8) / 8)


class TestSampler:
    def test_edge(self):
        t = path_tree("a->b")
        for seed in range(5):
            p = sample_from_etree(t, SamplerConfig(seed=seed))
            assert p.cards == (2, 2) and is_strictly_positive(p)
            assert ci_residual(p, S(p, "I(a ; b)")) > 1e-3

    def test_bidirected_edge(self):
        p = sample_from_etree(path_tree("a<->b"), SamplerConfig(seed=3))
        assert is_strictly_positive(p) and not ci_holds(p, S(p, "I(a ; b)"), 1e-3)

    def test_single_vertex(self):
        p = sample_from_etree(ETree(("a",)), SamplerConfig(seed=1))
        assert p.names == ("a",) and is_strictly_positive(p)

    def test_deterministic(self):
        t = path_tree("a->b<->c<-d")
        cfg = SamplerConfig(seed=42)
        assert sample_from_etree(t, cfg) == sample_from_etree(t, cfg)
        assert sample_from_etree(t, cfg) != sample_from_etree(t, SamplerConfig(seed=43))

    def test_domains(self):
        p = sample_from_etree(path_tree("a<->b->c"), SamplerConfig(seed=0, domain=3, latent_domain=4))
        assert p.cards == (3, 3, 3)

    def test_retries_exhausted(self):
        # an impossible margin forces every attempt to be rejected
        with pytest.raises(RetriesExhausted) as e:
            sample_from_etree(path_tree("a->b"), SamplerConfig(seed=0, wellrep_margin=0.9, max_retries=3))
        assert e.value.retries == 3 and e.value.pair == ("a", "b")

    def test_universe_cap(self):
        names = [f"v{i}" for i in range(13)]
        t = ETree(tuple(names), frozenset((i, i + 1) for i in range(12)))
        with pytest.raises(UniverseTooLarge):
            sample_from_etree(t)

    def test_config_validation(self):
        for bad in ({"domain": 1}, {"cpt_floor": 0.6}, {"wellrep_margin": 0}, {"max_retries": 0}):
            with pytest.raises(ValueError):
                SamplerConfig(**bad)

    def test_trek_pairs(self):
        t = path_tree("a->b<-c<->d")
        assert trek_pairs(t) == [(0, 1), (1, 2), (1, 3), (2, 3)]
        assert trek_pairs(path_tree("a<-b->c")) == [(0, 1), (0, 2), (1, 2)]

    @settings(max_examples=30)
    @given(etrees(max_n=5), st.integers(0, 2**32 - 1))
    def test_tree_is_imap_of_sample(self, t, seed):
        p = sample_from_etree(t, SamplerConfig(seed=seed))
        assert is_strictly_positive(p)
        for s in enumerate_model(t):
            assert ci_holds(p, s, 1e-7)
        for a, b in trek_pairs(t):
            assert ci_residual(p, Statement(1 << a, 0, 1 << b)) > 1e-3
