"""Closure and derivability of statement sets under independence axioms.

Rules
-----
symmetry        I(X,Z,Y)                       => I(Y,Z,X)
decomposition   I(X,Z,Y u W)                   => I(X,Z,Y)
weak_union      I(X,Z,Y u W)                   => I(X,Z u W,Y)
contraction     I(X,Z,Y) & I(X,Z u Y,W)        => I(X,Z,Y u W)
intersection    I(X,Z u W,Y) & I(X,Z u Y,W)    => I(X,Z,Y u W)
m_symmetry      I(X,0,Y)                       => I(Y,0,X)
m_decomposition I(X,0,Y u W)                   => I(X,0,Y)
m_mixing        I(X,0,Y) & I(X u Y,0,W)        => I(X,0,Y u W)

The marginal rules only fire on, and only produce, statements with Z empty.
"""
from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass

from .bitset import nonempty_proper_submasks, submasks
from .errors import BudgetExceeded
from .statements import Statement

SYMMETRY = "symmetry"
DECOMPOSITION = "decomposition"
WEAK_UNION = "weak_union"
CONTRACTION = "contraction"
INTERSECTION = "intersection"
M_SYMMETRY = "m_symmetry"
M_DECOMPOSITION = "m_decomposition"
M_MIXING = "m_mixing"

SEMI_GRAPHOID = frozenset({SYMMETRY, DECOMPOSITION, CONTRACTION, WEAK_UNION})
POSITIVE = SEMI_GRAPHOID | {INTERSECTION}
MARGINAL = frozenset({M_SYMMETRY, M_DECOMPOSITION, M_MIXING})
SDW = frozenset({SYMMETRY, DECOMPOSITION, WEAK_UNION})

AXIOM_SETS = {
    "semi-graphoid": SEMI_GRAPHOID,
    "positive": POSITIVE,
    "marginal": MARGINAL,
    "sdw": SDW,
}

DEFAULT_BUDGET = 2_000_000


class _Index:
    """Statements grouped by (X, Z) for pairing rules."""

    def __init__(self):
        self.by_xz = defaultdict(set)

    def add(self, s):
        self.by_xz[(s.x, s.z)].add(s.y)

    def ys(self, x, z):
        return self.by_xz.get((x, z), ())

    def has(self, x, z, y):
        return y in self.by_xz.get((x, z), ())


def _unary(s, ax):
    x, z, y = s
    if SYMMETRY in ax or (M_SYMMETRY in ax and z == 0):
        yield (SYMMETRY if SYMMETRY in ax else M_SYMMETRY), Statement(y, z, x)
    dec = DECOMPOSITION in ax or (M_DECOMPOSITION in ax and z == 0)
    wu = WEAK_UNION in ax
    if dec or wu:
        for sub in nonempty_proper_submasks(y):
            if dec:
                yield (DECOMPOSITION if DECOMPOSITION in ax else M_DECOMPOSITION), Statement(x, z, sub)
            if wu:
                yield WEAK_UNION, Statement(x, z | (y & ~sub), sub)


def _binary(s, index, ax):
    """Consequences pairing ``s`` with statements already in ``index``.

    Yields (rule, partner, conclusion); ``partner`` may come first or second.
    """
    x, z, y = s
    if CONTRACTION in ax:
        # s as I(X,Z,Y); partner I(X,Z u Y,W)
        for w in index.ys(x, z | y):
            yield CONTRACTION, Statement(x, z | y, w), Statement(x, z, y | w)
        # s as I(X,Z u Y,W) with partner I(X,Z,Y); here s.z = Z u Y, s.y = W
        for yy in submasks(z):
            if not yy:
                continue
            zz = z & ~yy
            if index.has(x, zz, yy):
                yield CONTRACTION, Statement(x, zz, yy), Statement(x, zz, yy | y)
    if INTERSECTION in ax:
        # s as I(X,Z u W,Y); partner I(X,Z u Y,W). The rule is symmetric in
        # its premises, so one role suffices once both are indexed.
        for w in submasks(z):
            if not w:
                continue
            zz = z & ~w
            if index.has(x, zz | y, w):
                yield INTERSECTION, Statement(x, zz | y, w), Statement(x, zz, y | w)
    if M_MIXING in ax and z == 0:
        # s as I(X,0,Y); partner I(X u Y,0,W)
        for w in index.ys(x | y, 0):
            yield M_MIXING, Statement(x | y, 0, w), Statement(x, 0, y | w)
        # s as I(X u Y,0,W) with partner I(X,0,Y); here s.x = X u Y
        for yy in nonempty_proper_submasks(x):
            xx = x & ~yy
            if index.has(xx, 0, yy):
                yield M_MIXING, Statement(xx, 0, yy), Statement(xx, 0, yy | y)


@dataclass
class Derivation:
    """Saturated statement set with one recorded justification per member.

    ``origin[s]`` is ``None`` for premises, else ``(rule, premises)``.
    """

    origin: dict

    @property
    def statements(self):
        return frozenset(self.origin)

    def trace(self, target):
        """Rule applications deriving ``target``, premises first."""
        if target not in self.origin:
            raise KeyError(target)
        steps = []
        done = set()
        stack = [(target, False)]
        while stack:
            s, expanded = stack.pop()
            if s in done:
                continue
            why = self.origin[s]
            if why is None:
                done.add(s)
                continue
            if expanded:
                done.add(s)
                steps.append((why[0], why[1], s))
                continue
            stack.append((s, True))
            for p in why[1]:
                if p not in done:
                    stack.append((p, False))
        return steps


def saturate(stmts, ax, budget=DEFAULT_BUDGET, stop_at=None):
    """Worklist fixpoint of ``stmts`` under the rules in ``ax``.

    With ``stop_at`` given, returns as soon as that statement is derived.
    """
    ax = frozenset(ax)
    origin = {}
    queue = deque()
    for s in stmts:
        s = Statement(*s)
        if s not in origin:
            origin[s] = None
            queue.append(s)
    if stop_at is not None and stop_at in origin:
        return Derivation(origin)
    index = _Index()

    def found(s, rule, premises):
        if s in origin:
            return False
        origin[s] = (rule, premises)
        queue.append(s)
        if len(origin) > budget:
            raise BudgetExceeded(len(origin), budget)
        return stop_at is not None and s == stop_at

    while queue:
        s = queue.popleft()
        index.add(s)
        for rule, t in _unary(s, ax):
            if found(t, rule, (s,)):
                return Derivation(origin)
        for rule, partner, t in _binary(s, index, ax):
            if found(t, rule, (s, partner)):
                return Derivation(origin)
    return Derivation(origin)


def closure(stmts, ax, budget=DEFAULT_BUDGET):
    return saturate(stmts, ax, budget).statements


def derives(stmts, target, ax, budget=DEFAULT_BUDGET):
    return Statement(*target) in saturate(stmts, ax, budget, stop_at=Statement(*target)).origin


def derivation(stmts, target, ax, budget=DEFAULT_BUDGET):
    """Derivation trace for ``target``, or ``None`` if not derivable."""
    target = Statement(*target)
    d = saturate(stmts, ax, budget, stop_at=target)
    if target not in d.origin:
        return None
    return d.trace(target)


def violations(stmts, ax):
    """One-step consequences of ``stmts`` under ``ax`` that fall outside it.

    Empty iff ``stmts`` is closed under ``ax``.
    """
    stmts = frozenset(stmts)
    index = _Index()
    for s in stmts:
        index.add(s)
    out = []
    for s in stmts:
        for rule, t in _unary(s, ax):
            if t not in stmts:
                out.append((rule, (s,), t))
        for rule, partner, t in _binary(s, index, ax):
            if t not in stmts:
                out.append((rule, (s, partner), t))
    return out


def is_closed(stmts, ax):
    return not violations(stmts, ax)


def simple_fragment(sigma):
    """Simple members of the closure of {sigma} under symmetry, decomposition, weak union."""
    return frozenset(s for s in closure([sigma], SDW) if s.is_simple)
