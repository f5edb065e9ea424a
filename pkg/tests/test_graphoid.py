import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from ebn.errors import BudgetExceeded
from ebn.generate import random_edag
from ebn.graph import validate_edag
from ebn.graphoid import (
    AXIOM_SETS,
    CONTRACTION,
    INTERSECTION,
    MARGINAL,
    POSITIVE,
    SDW,
    SEMI_GRAPHOID,
    _binary,
    _Index,
    _unary,
    closure,
    derivation,
    derives,
    is_closed,
    saturate,
    simple_fragment,
    violations,
)
from ebn.oracle import JointTable, SamplerConfig, ci_holds, product_table, sample_from_etree
from ebn.separation import all_statements, enumerate_model
from ebn.statements import Statement, statement

from helpers import S
from oracles import naive_closure, to_sets
from strategies import edags, etrees, statements_over, tables

ABC = ("a", "b", "c")


def names_graph(names):
    return validate_edag(list(names))


@st.composite
def statement_sets(draw, n_max=4, size_max=3, marginal=False):
    n = draw(st.integers(2, n_max))
    stmts = draw(st.lists(statements_over(n), min_size=0, max_size=size_max))
    if marginal:
        stmts = [Statement(s.x, 0, s.y) for s in stmts]
    return n, frozenset(stmts)


class TestExamples:
    def test_figure1_derivation(self, fig1):
        premises = {S(fig1, "I(E ; B)"), S(fig1, "I(R ; B,A | E)")}
        assert S(fig1, "I(B ; R)") in closure(premises, SEMI_GRAPHOID)
        assert derives(premises, S(fig1, "I(B ; R)"), SEMI_GRAPHOID)

    def test_mixing(self):
        g = names_graph(ABC)
        c = closure({S(g, "I(a ; b)"), S(g, "I(a,b ; c)")}, MARGINAL)
        assert S(g, "I(a ; b,c)") in c

    def test_m_symmetry(self):
        g = names_graph(ABC)
        assert derives({S(g, "I(a ; b)")}, S(g, "I(b ; a)"), MARGINAL)

    def test_marginal_rules_ignore_conditional(self):
        g = names_graph(ABC)
        assert closure({S(g, "I(a ; b | c)")}, MARGINAL) == {S(g, "I(a ; b | c)")}

    @pytest.mark.parametrize("ax", sorted(AXIOM_SETS))
    def test_empty(self, ax):
        assert closure(set(), AXIOM_SETS[ax]) == frozenset()
        assert not derives(set(), Statement(1, 0, 2), AXIOM_SETS[ax])

    def test_intersection_needs_rule(self):
        g = names_graph(ABC + ("d",))
        premises = {S(g, "I(a ; b | c,d)"), S(g, "I(a ; c | b,d)")}
        target = S(g, "I(a ; b,c | d)")
        assert not derives(premises, target, SEMI_GRAPHOID)
        assert derives(premises, target, POSITIVE)

    def test_contraction(self):
        g = names_graph(ABC + ("d",))
        premises = {S(g, "I(a ; b | d)"), S(g, "I(a ; c | b,d)")}
        assert derives(premises, S(g, "I(a ; b,c | d)"), SEMI_GRAPHOID)
        assert not derives(premises, S(g, "I(a ; b,c | d)"), SDW)


class TestSimpleFragment:
    def test_already_simple(self):
        g = names_graph(("a", "z", "b"))
        s = S(g, "I(a ; b | z)")
        assert simple_fragment(s) == {s, s.sym()}

    def test_split_y(self):
        g = names_graph(ABC)
        frag = simple_fragment(S(g, "I(a ; b,c)"))
        expected = {S(g, t) for t in ("I(a ; b)", "I(a ; c)", "I(a ; c | b)", "I(a ; b | c)")}
        assert frag == expected | {s.sym() for s in expected}

    def test_split_x(self):
        g = names_graph(("a", "b", "z", "c"))
        frag = simple_fragment(S(g, "I(a,b ; c | z)"))
        assert S(g, "I(a ; c | z,b)") in frag
        assert S(g, "I(b ; c | z,a)") in frag

    @given(st.integers(2, 5).flatmap(statements_over))
    def test_matches_naive(self, s):
        n = s.support.bit_length()
        naive = naive_closure([to_sets(s, n)], {"symmetry", "decomposition", "weak_union"}, n)
        naive_simple = {t for t in naive if len(t[0]) == 1 and len(t[2]) == 1}
        assert {to_sets(t, n) for t in simple_fragment(s)} == naive_simple


class TestClosureProperties:
    @given(statement_sets(), st.sampled_from(sorted(AXIOM_SETS)))
    def test_matches_naive_fixpoint(self, ns, ax):
        n, stmts = ns
        got = {to_sets(s, n) for s in closure(stmts, AXIOM_SETS[ax])}
        assert got == naive_closure([to_sets(s, n) for s in stmts], AXIOM_SETS[ax], n)

    @given(statement_sets(), st.sampled_from(sorted(AXIOM_SETS)))
    def test_idempotent_extensive(self, ns, ax):
        _, stmts = ns
        ax = AXIOM_SETS[ax]
        c = closure(stmts, ax)
        assert stmts <= c
        assert closure(c, ax) == c
        assert is_closed(c, ax)

    @given(statement_sets(size_max=4), st.data())
    def test_monotone(self, ns, data):
        _, stmts = ns
        sub = frozenset(data.draw(st.sets(st.sampled_from(sorted(stmts)))) if stmts else ())
        assert closure(sub, SEMI_GRAPHOID) <= closure(stmts, SEMI_GRAPHOID)

    @settings(max_examples=100)
    @given(statement_sets(n_max=6, size_max=4, marginal=True))
    def test_marginal_subsumed_by_semi_graphoid(self, ns):
        _, stmts = ns
        m = closure(stmts, MARGINAL)
        sg = {s for s in closure(stmts, SEMI_GRAPHOID) if s.z == 0}
        assert m <= sg


class TestDerivationTrace:
    def test_figure1_trace_replays(self, fig1):
        premises = {S(fig1, "I(E ; B)"), S(fig1, "I(R ; B,A | E)")}
        target = S(fig1, "I(B ; R)")
        steps = derivation(premises, target, SEMI_GRAPHOID)
        assert steps and steps[-1][2] == target
        _replay(premises, steps, SEMI_GRAPHOID)

    def test_premise_target_has_empty_trace(self):
        s = Statement(1, 0, 2)
        assert derivation({s}, s, SEMI_GRAPHOID) == []

    def test_not_derivable(self):
        assert derivation({Statement(1, 0, 2)}, Statement(1, 0, 4), SEMI_GRAPHOID) is None

    @given(statement_sets(), st.data())
    def test_random_traces_replay(self, ns, data):
        _, stmts = ns
        c = closure(stmts, POSITIVE)
        if not c:
            return
        target = data.draw(st.sampled_from(sorted(c)))
        steps = derivation(stmts, target, POSITIVE)
        _replay(stmts, steps, POSITIVE)
        if target not in stmts:
            assert steps[-1][2] == target


def _replay(premises, steps, ax):
    """Check every step's conclusion follows from its premises by the named rule."""
    known = set(premises)
    for rule, prem, concl in steps:
        assert all(p in known for p in prem)
        if len(prem) == 1:
            produced = {(r, t) for r, t in _unary(prem[0], ax)}
        else:
            index = _Index()
            index.add(prem[0])
            index.add(prem[1])
            produced = {(r, t) for p in prem for r, _, t in _binary(p, index, ax)}
        assert (rule, concl) in produced
        known.add(concl)


class TestBudget:
    def test_raises_with_count(self):
        names = [f"v{i}" for i in range(6)]
        g = names_graph(names)
        s = S(g, "I(v0 ; v1,v2,v3,v4,v5)")
        with pytest.raises(BudgetExceeded) as e:
            saturate({s}, SEMI_GRAPHOID, budget=10)
        assert e.value.count > 10 and e.value.budget == 10

    def test_under_budget_ok(self):
        assert len(closure({Statement(1, 0, 2)}, SEMI_GRAPHOID, budget=10)) == 2


class TestViolations:
    def test_reports_missing_symmetric(self):
        out = violations({Statement(1, 0, 2)}, SEMI_GRAPHOID)
        assert out == [("symmetry", (Statement(1, 0, 2),), Statement(2, 0, 1))]

    def test_contraction_pair(self):
        a, b, c = 1, 2, 4
        stmts = {Statement(a, 0, b), Statement(a, b, c)}
        rules = {r for r, _, _ in violations(stmts, {CONTRACTION})}
        assert rules == {CONTRACTION}


class TestModelsAreGraphoids:
    @settings(max_examples=30)
    @given(edags(max_n=5))
    def test_closed(self, g):
        assert is_closed(enumerate_model(g), SEMI_GRAPHOID)

    def test_random_six_vertex(self):
        rng = random.Random(5)
        for _ in range(5):
            g = random_edag(6, rng)
            assert violations(enumerate_model(g), SEMI_GRAPHOID) == []

    def test_collider_model_closed_under_both(self):
        # a->b<-c: intersection adds nothing beyond the semi-graphoid rules here
        g = validate_edag("a b c".split(), [("a", "b"), ("c", "b")])
        model = enumerate_model(g)
        assert is_closed(model, SEMI_GRAPHOID)
        assert is_closed(model, POSITIVE)


class TestSoundnessOnTables:
    @settings(max_examples=40)
    @given(etrees(min_n=3, max_n=4), st.integers(0, 2**32 - 1), st.booleans())
    def test_semi_graphoid_rules_preserve_ci(self, t, seed, zero_out):
        p = sample_from_etree(t, SamplerConfig(seed=seed))
        if zero_out:
            # knock out one row so positivity is lost; the semi-graphoid rules must still be sound
            probs = np.array(p.probs)
            probs.flat[seed % probs.size] = 0.0
            p = JointTable(p.names, probs / probs.sum())
        held = [s for s in all_of(p.n) if ci_holds(p, s)]
        _check_rules(p, held, SEMI_GRAPHOID)

    @settings(max_examples=40)
    @given(etrees(min_n=3, max_n=4), st.integers(0, 2**32 - 1))
    def test_intersection_on_positive(self, t, seed):
        p = sample_from_etree(t, SamplerConfig(seed=seed))
        held = [s for s in all_of(p.n) if ci_holds(p, s)]
        _check_rules(p, held, POSITIVE)

    @settings(max_examples=30)
    @given(tables(n_min=3, n_max=4))
    def test_generic_tables(self, p):
        held = [s for s in all_of(p.n) if ci_holds(p, s)]
        _check_rules(p, held, SEMI_GRAPHOID)

    def test_rules_on_independent_product(self):
        # every statement holds in a product table, so every rule output must too
        p = product_table(("a", "b", "c", "d"), [[0.3, 0.7], [0.5, 0.5], [0.1, 0.9], [0.6, 0.4]])
        held = all_of(p.n)
        assert all(ci_holds(p, s) for s in held)
        _check_rules(p, held, POSITIVE)

    def test_intersection_fails_without_positivity(self):
        # a fair coin copied twice: I(a;b|c) and I(a;c|b) hold, I(a;b,c) does not
        probs = np.zeros((2, 2, 2))
        probs[0, 0, 0] = probs[1, 1, 1] = 0.5
        p = JointTable(("a", "b", "c"), probs)
        s1, s2 = Statement(1, 4, 2), Statement(1, 2, 4)
        assert ci_holds(p, s1) and ci_holds(p, s2)
        index = _Index()
        index.add(s1)
        out = [t for _, _, t in _binary(s2, index, {INTERSECTION})]
        assert Statement(1, 0, 6) in out
        assert not ci_holds(p, Statement(1, 0, 6))


def all_of(n):
    return list(all_statements(n))


def _check_rules(p, held, ax):
    held = set(held)
    index = _Index()
    for s in held:
        index.add(s)
    for s in held:
        for _, t in _unary(s, ax):
            assert ci_holds(p, t, 1e-9)
        for _, _, t in _binary(s, index, ax):
            assert ci_holds(p, t, 1e-9)


def test_statement_validation():
    with pytest.raises(Exception):
        statement(1, 1, 2)
    assert statement(1, 0, 2) == Statement(1, 0, 2)


def test_closure_over_exhaustive_three():
    # every single-premise closure over three variables agrees with the naive fixpoint
    for s in all_of(3):
        for ax in AXIOM_SETS.values():
            assert {to_sets(t, 3) for t in closure({s}, ax)} == naive_closure([to_sets(s, 3)], ax, 3)


def test_pairs_over_three_variables():
    stmts = all_of(3)
    for s, t in itertools.combinations(stmts, 2):
        got = {to_sets(u, 3) for u in closure({s, t}, POSITIVE)}
        assert got == naive_closure([to_sets(s, 3), to_sets(t, 3)], POSITIVE, 3)
