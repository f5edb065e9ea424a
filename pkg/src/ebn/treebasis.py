"""Polynomial-size bases for E-trees and I-map verification against a table.

For a vertex ``x`` of an E-tree, its *children* are the neighbours reached
by a directed edge leaving ``x``; every other neighbour is a *q-neighbour*.
Removing ``x`` splits the tree into one branch per neighbour.

* sigma(x, s): I(branch(s), {x}, rest) for each child s;
* gamma(x, q): I(branch(q), {}, everything outside desc(x) and branch(q));
* marginal(x, q): I(branch(q), {}, union of the other q-branches).

B_T is all sigma and gamma statements; B_s is all sigma and marginal ones.
Statements with an empty side are dropped.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bitset import bits
from .graph import as_etree
from .oracle import DEFAULT_TOL, QueryLog
from .statements import Statement, format_statement, sorted_statements

SIGMA = "sigma"
GAMMA = "gamma"
MARGINAL = "marginal"


@dataclass
class TreeBasis:
    """Basis statements with (vertex, neighbour, kind) provenance."""

    entries: list = field(default_factory=list)

    def add(self, s, x, nb, kind):
        if s.x and s.y and s not in self.provenance:
            self.entries.append((s, x, nb, kind))

    @property
    def provenance(self):
        return {s: (x, nb, kind) for s, x, nb, kind in self.entries}

    @property
    def statements(self):
        return frozenset(s for s, *_ in self.entries)

    @property
    def membership_test_count(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted_statements(self.statements))


def _branches(t, x):
    """Map neighbour -> mask of vertices whose trail to ``x`` passes through it."""
    out = {}
    for nb in bits(t.neighbors[x]):
        seen = 1 << nb
        frontier = seen
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= t.neighbors[v]
            nxt &= ~(1 << x)
            frontier = nxt & ~seen
            seen |= nxt
        out[nb] = seen
    return out


def build_bt(t):
    t = as_etree(t)
    basis = TreeBasis()
    for x in range(t.n):
        xbit = 1 << x
        desc = t._descendants[x]
        for nb, branch in _branches(t, x).items():
            if t.children[x] >> nb & 1:
                basis.add(Statement(branch, xbit, t.full & ~branch & ~xbit), x, nb, SIGMA)
            else:
                basis.add(Statement(branch, 0, t.full & ~desc & ~branch), x, nb, GAMMA)
    return basis


def build_bs(t):
    t = as_etree(t)
    basis = TreeBasis()
    for x in range(t.n):
        xbit = 1 << x
        branches = _branches(t, x)
        qs = {nb: br for nb, br in branches.items() if not t.children[x] >> nb & 1}
        for nb, branch in branches.items():
            if nb not in qs:
                basis.add(Statement(branch, xbit, t.full & ~branch & ~xbit), x, nb, SIGMA)
        for nb, branch in qs.items():
            others = 0
            for other, br in qs.items():
                if other != nb:
                    others |= br
            basis.add(Statement(branch, 0, others), x, nb, MARGINAL)
    return basis


@dataclass
class Verdict:
    imap: bool
    failures: list  # (statement, residual) in canonical statement order
    tests: int

    @property
    def witness(self):
        return self.failures[0] if self.failures else None

    def describe(self, names):
        if self.imap:
            return f"IMAP ({self.tests} membership tests)"
        s, r = self.witness
        return f"NOT_IMAP witness={format_statement(s, names)} residual={r:.3g}"


def verify_etree_imap(t, p, tol=DEFAULT_TOL, collect_all=False, log=None):
    """Test every B_T statement against ``p``; at most n^2 membership tests.

    ``p`` may list the same variables in a different order. Queries go
    through ``log`` when one is given.
    """
    t = as_etree(t)
    if p.names != t.names:
        p = p.reorder(t.names)
        log = None
    log = log if log is not None else QueryLog(p, tol)
    failures = []
    tests = 0
    for s in sorted_statements(build_bt(t).statements):
        tests += 1
        r = log.residual(s)
        if r > tol:
            failures.append((s, r))
            if not collect_all:
                break
    return Verdict(not failures, failures, tests)
