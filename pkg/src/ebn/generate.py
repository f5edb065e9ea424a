"""Random and exhaustive E-dag / E-tree generators used by tests and scripts."""
from __future__ import annotations

import random
from itertools import product

import networkx as nx

from .graph import EDag, ETree

ORIENTATIONS = ("fwd", "back", "bi")


def default_names(n):
    return tuple(f"v{i}" for i in range(n))


def random_edag(n, rng=None, edge_prob=0.5, bi_prob=1 / 3, names=None):
    """Random E-dag: a hidden topological order keeps directed edges acyclic."""
    rng = rng if rng is not None else random.Random()
    names = tuple(names) if names is not None else default_names(n)
    order = list(range(n))
    rng.shuffle(order)
    directed, bidirected = set(), set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() >= edge_prob:
                continue
            a, b = order[i], order[j]
            if rng.random() < bi_prob:
                bidirected.add((min(a, b), max(a, b)))
            else:
                directed.add((a, b))
    return EDag(names, frozenset(directed), frozenset(bidirected))


def _orient(names, edges, kinds):
    directed, bidirected = set(), set()
    for (a, b), k in zip(edges, kinds):
        if k == "fwd":
            directed.add((a, b))
        elif k == "back":
            directed.add((b, a))
        else:
            bidirected.add((min(a, b), max(a, b)))
    return ETree(names, frozenset(directed), frozenset(bidirected))


def random_etree(n, rng=None, names=None):
    """Uniform random labelled tree skeleton with independent uniform edge kinds."""
    rng = rng if rng is not None else random.Random()
    names = tuple(names) if names is not None else default_names(n)
    if n == 1:
        return ETree(names)
    if n == 2:
        edges = [(0, 1)]
    else:
        prufer = [rng.randrange(n) for _ in range(n - 2)]
        edges = sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(prufer).edges())
    return _orient(names, edges, [rng.choice(ORIENTATIONS) for _ in edges])


def all_etrees(n, names=None, labelled=False):
    """Every E-tree on ``n`` vertices.

    With ``labelled=False`` one skeleton per isomorphism class of unlabelled
    trees is used, which still yields every E-tree up to renaming vertices.
    """
    names = tuple(names) if names is not None else default_names(n)
    if n == 1:
        yield ETree(names)
        return
    if labelled:
        if n == 2:
            skeletons = [[(0, 1)]]
        else:
            skeletons = (
                sorted(tuple(sorted(e)) for e in nx.from_prufer_sequence(list(seq)).edges())
                for seq in product(range(n), repeat=n - 2)
            )
    else:
        skeletons = (sorted(tuple(sorted(e)) for e in t.edges()) for t in nx.nonisomorphic_trees(n))
    for edges in skeletons:
        for kinds in product(ORIENTATIONS, repeat=n - 1):
            yield _orient(names, edges, kinds)
