"""Mixed graphs with directed and bidirected edges (E-dags and E-trees).

Vertices are referred to by dense index internally; the order of ``names``
fixes the index of each vertex. Vertex sets are int bitmasks (see
:mod:`ebn.bitset`). Public functions accept either a name or an index
wherever a single vertex is expected.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations

from .bitset import bits
from .errors import (
    DirectedCycle,
    GraphError,
    InvalidTrail,
    NotATree,
    ParallelEdge,
    SelfLoop,
    UniverseMismatch,
    UnknownVertex,
)

NAME_RE = re.compile(r"^[A-Za-z0-9_.]+$")

# Edge kinds as seen while walking a trail from vertices[i] to vertices[i+1].
FWD = "->"
BACK = "<-"
BI = "<->"


@dataclass(frozen=True)
class EDag:
    """An acyclic mixed graph without parallel edges.

    ``directed`` holds (tail, head) index pairs, ``bidirected`` holds
    (low, high) index pairs.
    """

    names: tuple
    directed: frozenset = frozenset()
    bidirected: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "directed", frozenset(self.directed))
        object.__setattr__(
            self, "bidirected", frozenset((min(e), max(e)) for e in self.bidirected)
        )
        n = len(self.names)
        if len(set(self.names)) != n:
            raise GraphError("vertex names must be unique")
        for name in self.names:
            if not isinstance(name, str) or not NAME_RE.match(name):
                raise GraphError(f"bad vertex name {name!r}")
        seen = {}
        for kind, edges in ((FWD, self.directed), (BI, self.bidirected)):
            for a, b in edges:
                if not (0 <= a < n and 0 <= b < n):
                    raise UnknownVertex((a, b))
                if a == b:
                    raise SelfLoop(self.names[a])
                key = (min(a, b), max(a, b))
                if key in seen and (kind == BI or seen[key] == BI):
                    raise ParallelEdge(self.names[key[0]], self.names[key[1]])
                seen[key] = kind
        cycle = _find_cycle(n, self.directed)
        if cycle is not None:
            # a->b together with b->a lands here as a 2-cycle
            raise DirectedCycle([self.names[v] for v in cycle])

    @property
    def n(self):
        return len(self.names)

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.names)}

    def vid(self, v):
        """Index of vertex ``v`` given by name or index."""
        if isinstance(v, str):
            try:
                return self._index[v]
            except KeyError:
                raise UnknownVertex(v) from None
        if isinstance(v, int) and 0 <= v < self.n:
            return v
        raise UnknownVertex(v)

    def mask(self, vs):
        m = 0
        for v in vs:
            m |= 1 << self.vid(v)
        return m

    def names_of(self, mask):
        return tuple(self.names[i] for i in bits(mask))

    @property
    def full(self):
        return (1 << self.n) - 1

    @cached_property
    def parents(self):
        out = [0] * self.n
        for a, b in self.directed:
            out[b] |= 1 << a
        return tuple(out)

    @cached_property
    def children(self):
        out = [0] * self.n
        for a, b in self.directed:
            out[a] |= 1 << b
        return tuple(out)

    @cached_property
    def spouses(self):
        out = [0] * self.n
        for a, b in self.bidirected:
            out[a] |= 1 << b
            out[b] |= 1 << a
        return tuple(out)

    @cached_property
    def neighbors(self):
        return tuple(p | c | s for p, c, s in zip(self.parents, self.children, self.spouses))

    @cached_property
    def _descendants(self):
        out = [0] * self.n
        for v in reversed(self.topological_order):
            m = 1 << v
            for c in bits(self.children[v]):
                m |= out[c]
            out[v] = m
        return tuple(out)

    @cached_property
    def topological_order(self):
        indeg = [0] * self.n
        for _, b in self.directed:
            indeg[b] += 1
        queue = deque(i for i in range(self.n) if indeg[i] == 0)
        order = []
        while queue:
            v = queue.popleft()
            order.append(v)
            for c in bits(self.children[v]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        return tuple(order)

    def ancestors_of(self, mask):
        """Vertices with a directed path into ``mask`` (members of ``mask`` included)."""
        out = mask
        frontier = mask
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.parents[v]
            frontier = nxt & ~out
            out |= nxt
        return out

    def edge_kind(self, a, b):
        """Kind of the edge between indices a and b as seen walking a -> b, or None."""
        if (a, b) in self.directed:
            return FWD
        if (b, a) in self.directed:
            return BACK
        if (min(a, b), max(a, b)) in self.bidirected:
            return BI
        return None

    @property
    def is_pure_dag(self):
        return not self.bidirected

    def edge_count(self):
        return len(self.directed) + len(self.bidirected)

    def __str__(self):
        parts = [f"{self.names[a]}->{self.names[b]}" for a, b in sorted(self.directed)]
        parts += [f"{self.names[a]}<->{self.names[b]}" for a, b in sorted(self.bidirected)]
        return "EDag(" + ", ".join(self.names) + "; " + ", ".join(parts) + ")"


def _find_cycle(n, directed):
    children = [[] for _ in range(n)]
    for a, b in sorted(directed):
        children[a].append(b)
    color = [0] * n  # 0 new, 1 on stack, 2 done
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, iter(children[root]))]
        path = [root]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                path.pop()
            elif color[nxt] == 1:
                return path[path.index(nxt):] + [nxt]
            elif color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(children[nxt])))
                path.append(nxt)
    return None


@dataclass(frozen=True)
class ETree(EDag):
    """An E-dag whose skeleton is a tree (connected, n - 1 edges)."""

    def __post_init__(self):
        super().__post_init__()
        if self.n == 0:
            raise NotATree("empty graph")
        if self.edge_count() != self.n - 1:
            raise NotATree(f"{self.edge_count()} edges on {self.n} vertices")
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.neighbors[v]
            frontier = nxt & ~seen
            seen |= nxt
        if seen != self.full:
            raise NotATree("skeleton is not connected")


def validate_edag(names, directed=(), bidirected=()):
    """Build an :class:`EDag` from vertex names and name-pair edge lists."""
    names = tuple(names)
    if len(set(names)) != len(names):
        raise GraphError("vertex names must be unique")
    index = {name: i for i, name in enumerate(names)}

    def idx(v):
        try:
            return index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    d = [(idx(a), idx(b)) for a, b in directed]
    bi = [(idx(a), idx(b)) for a, b in bidirected]
    for a, b in d + bi:
        if a == b:
            raise SelfLoop(names[a])
    # repeated identical edges in raw input are parallel edges too
    keys = [(min(e), max(e)) for e in bi]
    if len(set(keys)) != len(keys):
        dup = next(k for k in keys if keys.count(k) > 1)
        raise ParallelEdge(names[dup[0]], names[dup[1]])
    if len(set(d)) != len(d):
        dup = next(e for e in d if d.count(e) > 1)
        raise ParallelEdge(names[dup[0]], names[dup[1]])
    return EDag(names, frozenset(d), frozenset(bi))


def as_etree(g):
    """Re-validate ``g`` as an :class:`ETree`."""
    if isinstance(g, ETree):
        return g
    return ETree(g.names, g.directed, g.bidirected)


def descendants(g, x):
    """Mask of vertices reachable from ``x`` by directed edges, ``x`` included."""
    return g._descendants[g.vid(x)]


@dataclass(frozen=True)
class Trail:
    """A simple path with the kind of each traversed edge.

    ``kinds[i]`` describes the edge between ``vertices[i]`` and
    ``vertices[i + 1]`` in the direction of travel.
    """

    vertices: tuple
    kinds: tuple

    def __len__(self):
        return len(self.kinds)


def make_trail(g, vertices):
    vs = tuple(g.vid(v) for v in vertices)
    if len(vs) < 2:
        raise InvalidTrail("a trail needs at least two vertices")
    if len(set(vs)) != len(vs):
        raise InvalidTrail("vertex repeated on trail")
    kinds = []
    for a, b in zip(vs, vs[1:]):
        k = g.edge_kind(a, b)
        if k is None:
            raise InvalidTrail(f"no edge between {g.names[a]} and {g.names[b]}")
        kinds.append(k)
    return Trail(vs, tuple(kinds))


def _check_trail(g, t):
    if len(t.vertices) != len(t.kinds) + 1 or len(t.vertices) < 2:
        raise InvalidTrail("malformed trail")
    if len(set(t.vertices)) != len(t.vertices):
        raise InvalidTrail("vertex repeated on trail")
    for a, b, k in zip(t.vertices, t.vertices[1:], t.kinds):
        if not (0 <= a < g.n and 0 <= b < g.n) or g.edge_kind(a, b) != k:
            raise InvalidTrail(f"step {a}-{b} ({k}) is not an edge of the graph")


def _points_away_left(kind):
    # edge (prev, b) walked prev -> b points away from b iff it is prev <- b
    return kind == BACK


def _points_away_right(kind):
    return kind == FWD


def sinks_on_trail(g, t):
    """Mask of interior trail vertices that are sinks. Endpoints never are."""
    _check_trail(g, t)
    out = 0
    for i in range(1, len(t.vertices) - 1):
        if not _points_away_left(t.kinds[i - 1]) and not _points_away_right(t.kinds[i]):
            out |= 1 << t.vertices[i]
    return out


def is_trek(g, t):
    return sinks_on_trail(g, t) == 0


def is_sink_at(g, a, b, c):
    """Whether ``b`` is a sink on the length-2 trail a - b - c."""
    a, b, c = g.vid(a), g.vid(b), g.vid(c)
    left, right = g.edge_kind(a, b), g.edge_kind(b, c)
    if left is None or right is None:
        raise InvalidTrail(f"{g.names[a]}-{g.names[b]}-{g.names[c]} is not a trail")
    return not _points_away_left(left) and not _points_away_right(right)


def latent_transform(g):
    """Replace every bidirected edge x <-> y by a fresh latent parent of x and y.

    Latents are named ``_L0``, ``_L1``, ... following the sorted order of the
    bidirected edges; a name already taken by an observable is skipped.
    """
    names = list(g.names)
    taken = set(names)
    directed = set(g.directed)
    counter = 0
    for a, b in sorted(g.bidirected):
        while f"_L{counter}" in taken:
            counter += 1
        name = f"_L{counter}"
        counter += 1
        taken.add(name)
        names.append(name)
        alpha = len(names) - 1
        directed.add((alpha, a))
        directed.add((alpha, b))
    return EDag(tuple(names), frozenset(directed), frozenset())


def skeleton(g):
    """Undirected edge set as sorted index pairs."""
    return frozenset({(min(a, b), max(a, b)) for a, b in g.directed} | set(g.bidirected))


def unique_trail(t, a, b):
    """The single skeleton path between ``a`` and ``b`` in an E-tree."""
    t = as_etree(t)
    a, b = t.vid(a), t.vid(b)
    if a == b:
        raise InvalidTrail("endpoints must differ")
    prev = {a: None}
    queue = deque([a])
    while queue:
        v = queue.popleft()
        if v == b:
            break
        for w in bits(t.neighbors[v]):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    path = [b]
    while path[-1] != a:
        path.append(prev[path[-1]])
    return make_trail(t, reversed(path))


def etree_isomorphic(t1, t2):
    """Same skeleton and the same sink status on every length-2 chain."""
    t1, t2 = as_etree(t1), as_etree(t2)
    if t1.names != t2.names:
        raise UniverseMismatch(f"{t1.names} vs {t2.names}")
    if skeleton(t1) != skeleton(t2):
        return False
    for b in range(t1.n):
        for a, c in combinations(bits(t1.neighbors[b]), 2):
            if is_sink_at(t1, a, b, c) != is_sink_at(t2, a, b, c):
                return False
    return True
