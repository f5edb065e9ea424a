"""Learn an E-tree that represents a strictly positive table well.

Pipeline: positivity check, skeleton by removing conditionally and
marginally independent pairs, tree check, sink constraints from marginal
independence of chain endpoints, orientation, then verification of
I-mapness and well-representation.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import OrientationConflict, VariableMismatch
from .graph import ETree, as_etree, is_sink_at, is_trek, unique_trail
from .oracle import DEFAULT_TOL, QueryLog, is_strictly_positive
from .statements import Statement, format_statement
from .treebasis import verify_etree_imap

NOT_POSITIVE = "NOT_POSITIVE"
NOT_TREE = "NOT_TREE"
ORIENTATION_CONFLICT = "ORIENTATION_CONFLICT"
NOT_WELL_REPRESENTED = "NOT_WELL_REPRESENTED"
NOT_IMAP = "NOT_IMAP"

AWAY = True
NOT_AWAY = False


@dataclass(frozen=True)
class SinkConstraint:
    """Tree skeleton over ``n`` vertices plus triples (a, b, c), a < c, where b must be a sink."""

    n: int
    edges: frozenset
    required: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset((min(e), max(e)) for e in self.edges))
        object.__setattr__(
            self, "required", frozenset((min(a, c), b, max(a, c)) for a, b, c in self.required)
        )
        adj = _adjacency(self.n, self.edges)
        for a, b, c in self.required:
            if not (a in adj[b] and c in adj[b] and a != c):
                raise ValueError(f"({a}, {b}, {c}) is not a chain of the skeleton")


def _adjacency(n, edges):
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


def build_skeleton(p, tol=DEFAULT_TOL, log=None):
    """Complete graph minus pairs independent given the rest or marginally."""
    log = log if log is not None else QueryLog(p, tol)
    edges = set()
    for a, b in combinations(range(p.n), 2):
        rest = p.full & ~(1 << a | 1 << b)
        cond = log.holds(Statement(1 << a, rest, 1 << b))
        marg = log.holds(Statement(1 << a, 0, 1 << b)) if rest else cond
        if not (cond or marg):
            edges.add((a, b))
    return frozenset(edges)


def _tree_problem(n, edges):
    """None if ``edges`` form a spanning tree on n vertices, else a witness."""
    adj = _adjacency(n, edges)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    if len(seen) < n:
        missing = min(set(range(n)) - seen)
        return ("disconnected", 0, missing)
    if len(edges) != n - 1:
        return ("cycle", len(edges))
    return None


def sink_constraints(edges, n, log):
    """For each chain a - b - c, b must be a sink iff I(a, {}, c) holds."""
    adj = _adjacency(n, edges)
    required = set()
    for b in range(n):
        for a, c in combinations(sorted(adj[b]), 2):
            if log.holds(Statement(1 << a, 0, 1 << c)):
                required.add((a, b, c))
    return SinkConstraint(n, frozenset(edges), frozenset(required))


def orient(c, names=None):
    """Label every edge end AWAY / NOT_AWAY and decode to an E-tree.

    Rules: an edge is never AWAY at both ends; both ends at b of a required
    triple are NOT_AWAY; every other chain a - b - c has an AWAY end at b.
    So a vertex with required triples has exactly the ends in those triples
    NOT_AWAY, and any other vertex has at most one NOT_AWAY end. Forced
    labels are propagated first; leftover free edges point away from the
    lowest-indexed vertex of their component.
    """
    n = c.n
    names = tuple(names) if names is not None else tuple(f"v{i}" for i in range(n))
    adj = _adjacency(n, c.edges)
    req = [set() for _ in range(n)]
    for a, b, cc in c.required:
        req[b].update((a, cc))
    req_pairs = {(b, min(a, cc), max(a, cc)) for a, b, cc in c.required}

    label = {}  # (u, v) -> label of the end at u of edge u - v
    queue = deque()

    def conflict(witness, reason):
        raise OrientationConflict(tuple(names[v] for v in witness), reason)

    def set_end(u, v, lab):
        cur = label.get((u, v))
        if cur is None:
            label[(u, v)] = lab
            queue.append((u, v))
        elif cur != lab:
            conflict((u, v), "end forced both ways")

    for b in range(n):
        if not req[b]:
            continue
        for a, cc in combinations(sorted(req[b]), 2):
            if (b, a, cc) not in req_pairs:
                conflict((a, b, cc), "sink needed on both sides but forbidden here")
        for v in sorted(adj[b]):
            set_end(b, v, NOT_AWAY if v in req[b] else AWAY)

    def propagate():
        while queue:
            u, v = queue.popleft()
            lab = label[(u, v)]
            if lab is AWAY:
                # the other end cannot also point away
                if label.get((v, u)) is AWAY:
                    conflict((u, v), "edge directed away at both ends")
                set_end(v, u, NOT_AWAY)
            elif not req[u]:
                # at most one NOT_AWAY end at an unconstrained vertex
                others = [w for w in sorted(adj[u]) if w != v and label.get((u, w)) is NOT_AWAY]
                if others:
                    a, cc = sorted((v, others[0]))
                    conflict((a, u, cc), "unrequired sink")
                for w in sorted(adj[u]):
                    if w != v:
                        set_end(u, w, AWAY)

    propagate()
    # an end facing a NOT_AWAY end can always point away at no cost
    for (u, v), lab in sorted(label.items()):
        if lab is NOT_AWAY and (v, u) not in label:
            set_end(v, u, AWAY)
    propagate()

    done = set()
    for root in range(n):
        if root in done:
            continue
        stack = [root]
        done.add(root)
        while stack:
            u = stack.pop()
            for v in sorted(adj[u]):
                if (u, v) in label or v in done:
                    continue
                done.add(v)
                set_end(u, v, AWAY)
                propagate()
                stack.append(v)

    directed, bidirected = set(), set()
    for a, b in c.edges:
        la, lb = label[(a, b)], label[(b, a)]
        if la is AWAY and lb is NOT_AWAY:
            directed.add((a, b))
        elif lb is AWAY and la is NOT_AWAY:
            directed.add((b, a))
        elif la is NOT_AWAY and lb is NOT_AWAY:
            bidirected.add((min(a, b), max(a, b)))
        else:
            conflict((a, b), "edge directed away at both ends")
    return ETree(names, frozenset(directed), frozenset(bidirected))


def check_orientation(t, c):
    """Chains of ``t`` whose sink status disagrees with ``c``; empty if consistent."""
    bad = []
    adj = _adjacency(c.n, c.edges)
    for b in range(c.n):
        for a, cc in combinations(sorted(adj[b]), 2):
            if is_sink_at(t, a, b, cc) != ((a, b, cc) in c.required):
                bad.append((a, b, cc))
    return bad


def well_represented(t, p, tol=DEFAULT_TOL, log=None):
    """Every trek-connected pair of ``t`` is marginally dependent in ``p``."""
    return _wellrep_witness(t, p, tol, log) is None


def _wellrep_witness(t, p, tol, log=None):
    t = as_etree(t)
    if p.names != t.names:
        if sorted(p.names) != sorted(t.names):
            raise VariableMismatch(f"{t.names} vs {p.names}")
        p = p.reorder(t.names)
        log = None
    log = log if log is not None else QueryLog(p, tol)
    for a, b in combinations(range(t.n), 2):
        if is_trek(t, unique_trail(t, a, b)):
            if log.holds(Statement(1 << a, 0, 1 << b)):
                return (a, b)
    return None


@dataclass
class RecoveryOutcome:
    tree: ETree | None = None
    stage: str | None = None
    witness: tuple | None = None
    reason: str = ""
    queries: list = field(default_factory=list)
    skeleton: frozenset | None = None

    @property
    def ok(self):
        return self.tree is not None

    def describe(self):
        if self.ok:
            return "SUCCESS"
        w = " ".join(map(str, self.witness)) if self.witness else ""
        return f"FAIL stage={self.stage} witness=({w}) {self.reason}".rstrip()


def recover(p, tol=DEFAULT_TOL):
    """Run the full recovery pipeline on table ``p``."""
    names = p.names
    log = QueryLog(p, tol)

    def fail(stage, witness, reason, skel=None):
        return RecoveryOutcome(None, stage, witness, reason, log.queries, skel)

    if not is_strictly_positive(p):
        row = np.unravel_index(int(np.argmin(p.probs)), p.probs.shape)
        return fail(NOT_POSITIVE, tuple(int(i) for i in row), "table has a zero entry")

    edges = build_skeleton(p, tol, log)
    problem = _tree_problem(p.n, edges)
    if problem is not None:
        if problem[0] == "disconnected":
            return fail(NOT_TREE, (names[problem[1]], names[problem[2]]), "skeleton is disconnected", edges)
        return fail(NOT_TREE, (len(edges),), "skeleton has a cycle", edges)

    constraints = sink_constraints(edges, p.n, log)
    try:
        tree = orient(constraints, names)
    except OrientationConflict as e:
        return fail(ORIENTATION_CONFLICT, e.witness, e.reason, edges)

    verdict = verify_etree_imap(tree, p, tol, log=log)
    if not verdict.imap:
        s, _ = verdict.witness
        return fail(NOT_IMAP, (format_statement(s, names),), "basis statement fails", edges)
    pair = _wellrep_witness(tree, p, tol, log)
    if pair is not None:
        return fail(NOT_WELL_REPRESENTED, (names[pair[0]], names[pair[1]]), "trek-connected pair is independent", edges)
    return RecoveryOutcome(tree, None, None, "", log.queries, edges)
