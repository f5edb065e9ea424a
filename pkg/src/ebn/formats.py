"""Text formats: graphs (.edg), joint tables (.jpt), statement lists (.stm).

All three start with a ``vars`` header line; ``#`` starts a comment and
blank lines are ignored. Formatting is canonical, so ``format(parse(text))``
is a fixed point and equals ``text`` for already-canonical files:

* .edg: ``vars`` line, directed edges sorted by (tail, head) index, then
  bidirected edges sorted by (low, high) index.
* .jpt: ``vars name:card ...``; one line per nonzero row in row-major
  order, probability written with ``repr``.
* .stm: ``vars`` line, then statements in canonical order.
"""
from __future__ import annotations

import numpy as np

from .errors import EBNError, FormatError
from .graph import NAME_RE, validate_edag
from .oracle import TOL_SUM, JointTable
from .statements import format_statement, parse_statement, sorted_statements


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines):
    try:
        no, line = next(lines)
    except StopIteration:
        raise FormatError("missing 'vars' header") from None
    toks = line.split()
    if toks[0] != "vars":
        raise FormatError("first line must start with 'vars'", no)
    return no, toks[1:]


def parse_edg(text):
    lines = _lines(text)
    _, names = _header(lines)
    directed, bidirected = [], []
    for no, line in lines:
        toks = line.split()
        if len(toks) != 3 or toks[1] not in ("->", "<->"):
            raise FormatError(f"expected '<a> -> <b>' or '<a> <-> <b>', got {line!r}", no)
        (directed if toks[1] == "->" else bidirected).append((toks[0], toks[2]))
    try:
        return validate_edag(names, directed, bidirected)
    except EBNError as e:
        raise FormatError(str(e)) from None


def format_edg(g):
    out = ["vars " + " ".join(g.names)]
    for a, b in sorted(g.directed):
        out.append(f"{g.names[a]} -> {g.names[b]}")
    for a, b in sorted(g.bidirected):
        out.append(f"{g.names[a]} <-> {g.names[b]}")
    return "\n".join(out) + "\n"


def parse_jpt(text):
    lines = _lines(text)
    no, decls = _header(lines)
    names, cards = [], []
    for d in decls:
        name, sep, card = d.partition(":")
        if not sep or not NAME_RE.match(name) or not card.isdigit() or int(card) < 2:
            raise FormatError(f"bad variable declaration {d!r}", no)
        names.append(name)
        cards.append(int(card))
    if len(set(names)) != len(names):
        raise FormatError("duplicate variable names", no)
    probs = np.zeros(cards)
    seen = set()
    for no, line in lines:
        toks = line.split()
        if len(toks) != len(cards) + 1:
            raise FormatError(f"expected {len(cards)} values and a probability", no)
        try:
            row = tuple(int(t) for t in toks[:-1])
            value = float(toks[-1])
        except ValueError:
            raise FormatError(f"cannot parse row {line!r}", no) from None
        if any(not 0 <= v < k for v, k in zip(row, cards)):
            raise FormatError(f"value out of range in {line!r}", no)
        if row in seen:
            raise FormatError(f"duplicate row {row}", no)
        if not np.isfinite(value) or value < 0:
            raise FormatError(f"bad probability {toks[-1]!r}", no)
        seen.add(row)
        probs[row] = value
    if abs(probs.sum() - 1.0) > TOL_SUM:
        raise FormatError(f"probabilities sum to {probs.sum()!r}, not 1")
    try:
        return JointTable(tuple(names), probs)
    except EBNError as e:
        raise FormatError(str(e)) from None


def format_jpt(p):
    out = ["vars " + " ".join(f"{n}:{k}" for n, k in zip(p.names, p.cards))]
    for row in np.ndindex(*p.cards):
        v = float(p.probs[row])
        if v != 0.0:
            out.append(" ".join(map(str, row)) + " " + repr(v))
    return "\n".join(out) + "\n"


def parse_stm(text):
    """Return ``(names, statements)`` from a statement-list file."""
    lines = _lines(text)
    _, names = _header(lines)
    if len(set(names)) != len(names):
        raise FormatError("duplicate variable names")
    stmts = set()
    for no, line in lines:
        try:
            stmts.add(parse_statement(line, names))
        except FormatError as e:
            raise FormatError(str(e), no) from None
    return tuple(names), frozenset(stmts)


def format_stm(names, stmts):
    out = ["vars " + " ".join(names)]
    out += [format_statement(s, names) for s in sorted_statements(stmts)]
    return "\n".join(out) + "\n"


def read_edg(path):
    with open(path, encoding="utf-8") as f:
        return parse_edg(f.read())


def read_jpt(path):
    with open(path, encoding="utf-8") as f:
        return parse_jpt(f.read())


def read_stm(path):
    with open(path, encoding="utf-8") as f:
        return parse_stm(f.read())


def write_text(path, text):
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)
