"""Independence statements I(X, Z, Y) over bitmask variable sets.

Text syntax is ``I(X ; Y)`` or ``I(X ; Y | Z)`` with comma-separated names,
so ``I(R ; A,B | E)`` is I({R}, {E}, {A, B}).
"""
from __future__ import annotations

import re
from typing import NamedTuple

from .bitset import bits, popcount
from .errors import FormatError, InvalidStatement, UnknownVertex


class Statement(NamedTuple):
    x: int
    z: int
    y: int

    @property
    def is_marginal(self):
        return self.z == 0

    @property
    def is_simple(self):
        return popcount(self.x) == 1 and popcount(self.y) == 1

    @property
    def support(self):
        return self.x | self.y | self.z

    def sym(self):
        return Statement(self.y, self.z, self.x)

    def sort_key(self):
        return (tuple(bits(self.x)), tuple(bits(self.z)), tuple(bits(self.y)))


def statement(x, z, y):
    """Validated :class:`Statement` from three masks."""
    if x == 0 or y == 0:
        raise InvalidStatement("X and Y must be nonempty")
    if x & y or x & z or y & z:
        raise InvalidStatement("X, Z, Y must be pairwise disjoint")
    if x < 0 or y < 0 or z < 0:
        raise InvalidStatement("negative mask")
    return Statement(x, z, y)


def check_universe(s, n):
    """Raise unless ``s`` is a valid statement over ``n`` variables."""
    s = statement(*s)
    if s.support >> n:
        raise UnknownVertex(f"index >= {n} in statement")
    return s


def stmt(g, x, y, z=()):
    """Convenience: statement from name/index iterables against graph or table ``g``."""
    return statement(g.mask(x), g.mask(z), g.mask(y))


def sorted_statements(stmts):
    return sorted(stmts, key=Statement.sort_key)


def format_statement(s, names):
    def side(m):
        return ",".join(names[i] for i in bits(m))

    text = f"I({side(s.x)} ; {side(s.y)}"
    if s.z:
        text += f" | {side(s.z)}"
    return text + ")"


_STMT_RE = re.compile(r"^\s*I\s*\((?P<x>[^;|()]*);(?P<y>[^;|()]*)(?:\|(?P<z>[^;|()]*))?\)\s*$")


def parse_statement(text, names):
    """Parse ``I(X ; Y | Z)`` against the ordered universe ``names``."""
    m = _STMT_RE.match(text)
    if not m:
        raise FormatError(f"cannot parse statement {text!r}")
    index = {name: i for i, name in enumerate(names)}

    def side(part, allow_empty):
        part = (part or "").strip()
        if not part:
            if allow_empty:
                return 0
            raise FormatError(f"empty side in {text!r}")
        mask = 0
        for tok in part.split(","):
            tok = tok.strip()
            if tok not in index:
                raise FormatError(f"unknown variable {tok!r} in {text!r}")
            bit = 1 << index[tok]
            if mask & bit:
                raise FormatError(f"variable {tok!r} repeated in {text!r}")
            mask |= bit
        return mask

    x = side(m.group("x"), False)
    y = side(m.group("y"), False)
    z = side(m.group("z"), True)
    try:
        return statement(x, z, y)
    except InvalidStatement as e:
        raise FormatError(str(e)) from None
