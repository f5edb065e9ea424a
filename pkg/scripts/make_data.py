"""Regenerate the canonical example files under data/."""
import itertools
import pathlib
import random

import numpy as np

from ebn import formats
from ebn.generate import random_etree
from ebn.graph import validate_edag
from ebn.hardness import build_gk
from ebn.oracle import JointTable, SamplerConfig, sample_from_etree
from ebn.statements import parse_statement

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def table(names, fn):
    probs = np.zeros([2] * len(names))
    for row in itertools.product((0, 1), repeat=len(names)):
        probs[row] = fn(*row)
    return JointTable(names, probs)


def bern(p, v):
    return p if v else 1 - p


def main():
    DATA.mkdir(exist_ok=True)
    graphs = {
        "fig1": validate_edag("B E A R".split(), [("B", "A"), ("E", "A"), ("E", "R")]),
        "chain": validate_edag("a b c".split(), [("a", "b"), ("b", "c")]),
        "collider": validate_edag("a b c".split(), [("a", "b"), ("c", "b")]),
        "bichain": validate_edag("a b c".split(), bidirected=[("a", "b"), ("b", "c")]),
        "mixed4": validate_edag("a b c d".split(), [("a", "b"), ("c", "d")], [("b", "c")]),
        "fork_bi": validate_edag("a b c".split(), [("b", "c")], [("a", "b")]),
        "fork": validate_edag("a b c".split(), [("b", "a"), ("b", "c")]),
        "star": validate_edag("b a c d e".split(), [("a", "b"), ("c", "b"), ("b", "d"), ("b", "e")]),
        "g1": build_gk(1).graph,
        "g3": build_gk(3).graph,
    }
    rng = random.Random(2024)
    for i in range(3):
        graphs[f"tree{i}"] = random_etree(5 + i, rng)
    for name, g in graphs.items():
        formats.write_text(DATA / f"{name}.edg", formats.format_edg(g))

    eps = delta = 0.4
    tables = {
        "xor": table(("a", "b", "c"), lambda a, b, c: 0.25 if b == a ^ c else 0.0),
        "parity": table(
            ("x1", "x2", "x3"),
            lambda x1, x2, x3: (1 + eps * (-1) ** (x1 + x2 + x3) + delta * (-1) ** (x2 + x3)) / 8,
        ),
        "collider": table(
            ("a", "b", "c"),
            lambda a, b, c: bern(0.3, a) * bern(0.6, c) * bern([[0.2, 0.7], [0.6, 0.9]][a][c], b),
        ),
        "chain": table(
            ("a", "b", "c"),
            lambda a, b, c: bern(0.4, a) * bern([0.2, 0.7][a], b) * bern([0.3, 0.8][b], c),
        ),
        "uniform3": table(("x", "y", "z"), lambda *_: 0.125),
        "tree0": sample_from_etree(graphs["tree0"], SamplerConfig(seed=11)),
    }
    for name, p in tables.items():
        formats.write_text(DATA / f"{name}.jpt", formats.format_jpt(p))

    stm = {
        "fig1_basis": ("B E A R".split(), ["I(B ; E)", "I(R ; A,B | E)"]),
        "mixing": ("a b c".split(), ["I(a ; b)", "I(a,b ; c)"]),
        "single": ("a b c".split(), ["I(a ; b,c)"]),
        "empty": ("a b".split(), []),
    }
    for name, (names, lines) in stm.items():
        stmts = [parse_statement(s, names) for s in lines]
        formats.write_text(DATA / f"{name}.stm", formats.format_stm(names, stmts))


if __name__ == "__main__":
    main()
