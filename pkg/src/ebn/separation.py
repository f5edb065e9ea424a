"""m-separation on E-dags, model enumeration, and recursive bases."""
from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import product

from .bitset import bits, submasks
from .errors import HasBidirectedEdge, UniverseTooLarge
from .graph import BACK, FWD, latent_transform
from .statements import Statement, check_universe

DEFAULT_LIMIT = 7


@lru_cache(maxsize=256)
def _expanded(g):
    return latent_transform(g)


def m_separated(g, s):
    """Whether statement ``s`` is in M(g).

    Runs an active-trail reachability search over the latent transform of
    ``g``; latent vertices are never conditioned on.
    """
    check_universe(s, g.n)
    d = _expanded(g)
    x, z, y = s
    anc_z = d.ancestors_of(z)
    # states: (vertex, came_from_child). From a child we may go up or down;
    # from a parent only down, unless the vertex is an activated collider.
    visited = set()
    queue = deque((v, True) for v in bits(x))
    while queue:
        v, up = queue.popleft()
        if (v, up) in visited:
            continue
        visited.add((v, up))
        in_z = z >> v & 1
        if not in_z and y >> v & 1:
            return False
        if up:
            if in_z:
                continue
            for p in bits(d.parents[v]):
                queue.append((p, True))
            for c in bits(d.children[v]):
                queue.append((c, False))
        else:
            if not in_z:
                for c in bits(d.children[v]):
                    queue.append((c, False))
            if anc_z >> v & 1:
                for p in bits(d.parents[v]):
                    queue.append((p, True))
    return True


class TrailOracle:
    """Naive m-separation by enumerating every trail of the E-dag itself.

    Works on the mixed graph directly (no latent transform), so it checks
    the reachability search independently. Each trail is reduced once to
    the mask of its interior sinks and interior non-sinks.
    """

    def __init__(self, g):
        self.g = g
        self.trails = {}  # (a, b) with a < b -> list of (sinks, nonsinks)
        for a in range(g.n):
            self._walk(a)

    def _walk(self, start):
        g = self.g
        stack = [(start, (start,), ())]
        while stack:
            v, path, kinds = stack.pop()
            if len(path) > 1 and start < v:
                sinks = nonsinks = 0
                for i in range(1, len(path) - 1):
                    away = kinds[i - 1] == BACK or kinds[i] == FWD
                    if away:
                        nonsinks |= 1 << path[i]
                    else:
                        sinks |= 1 << path[i]
                self.trails.setdefault((start, v), []).append((sinks, nonsinks))
            for w in bits(g.neighbors[v]):
                if w not in path:
                    stack.append((w, path + (w,), kinds + (g.edge_kind(v, w),)))

    def separated(self, s):
        check_universe(s, self.g.n)
        x, z, y = s
        # a vertex has a descendant in Z iff it is an ancestor of Z
        anc_z = self.g.ancestors_of(z)
        for a in bits(x):
            for b in bits(y):
                key = (a, b) if a < b else (b, a)
                for sinks, nonsinks in self.trails.get(key, ()):
                    if nonsinks & z == 0 and sinks & ~anc_z == 0:
                        return False
        return True


def m_separated_by_trails(g, s):
    return TrailOracle(g).separated(s)


def _guard(g, limit):
    if g.n > limit:
        raise UniverseTooLarge(g.n, limit)


def all_statements(n):
    """Every valid statement over ``n`` variables (4^n role assignments)."""
    for roles in product(range(4), repeat=n):
        x = z = y = 0
        for i, r in enumerate(roles):
            if r == 1:
                x |= 1 << i
            elif r == 2:
                z |= 1 << i
            elif r == 3:
                y |= 1 << i
        if x and y:
            yield Statement(x, z, y)


def enumerate_model(g, limit=DEFAULT_LIMIT):
    """M(g) as a frozenset, by brute force over all statements."""
    _guard(g, limit)
    return frozenset(s for s in all_statements(g.n) if m_separated(g, s))


def simple_statements(g, limit=DEFAULT_LIMIT):
    """Members of M(g) whose X and Y are singletons."""
    _guard(g, limit)
    out = set()
    for a in range(g.n):
        for b in range(g.n):
            if a == b:
                continue
            rest = g.full & ~(1 << a | 1 << b)
            for z in submasks(rest):
                s = Statement(1 << a, z, 1 << b)
                if m_separated(g, s):
                    out.add(s)
    return frozenset(out)


def recursive_basis(d):
    """One statement per vertex: I({v}, Pa(v), Nd(v) minus Pa(v))."""
    if d.bidirected:
        raise HasBidirectedEdge("recursive bases are defined for pure dags only")
    out = set()
    for v in range(d.n):
        nondesc = d.full & ~d._descendants[v]
        rest = nondesc & ~d.parents[v]
        if rest:
            out.add(Statement(1 << v, d.parents[v], rest))
    return frozenset(out)
