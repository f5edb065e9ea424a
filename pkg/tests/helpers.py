import re

from ebn.graph import ETree, validate_edag
from ebn.statements import parse_statement


def path_tree(spec):
    """E-tree from a path written like 'a->b<->c<-d'."""
    parts = re.split(r"(<->|->|<-)", spec.replace(" ", ""))
    names, kinds = parts[0::2], parts[1::2]
    directed, bidirected = [], []
    for (a, b), kind in zip(zip(names, names[1:]), kinds):
        if kind == "->":
            directed.append((a, b))
        elif kind == "<-":
            directed.append((b, a))
        else:
            bidirected.append((a, b))
    g = validate_edag(names, directed, bidirected)
    return ETree(g.names, g.directed, g.bidirected)


def S(g, text):
    """Parse a statement against the names of ``g``."""
    return parse_statement(text, g.names)
