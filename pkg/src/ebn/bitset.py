"""Small helpers for variable sets stored as int bitmasks.

Bit ``i`` set means VarId ``i`` is a member. Python ints are unbounded, so
universes of any size work.
"""


def bits(mask):
    """Yield member indices of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def popcount(mask):
    return bin(mask).count("1")


def submasks(mask):
    """Yield every submask of ``mask`` (including 0 and ``mask``), increasing."""
    # enumerate in increasing numeric order so callers get a canonical order
    members = list(bits(mask))
    for k in range(1 << len(members)):
        m = 0
        for j, b in enumerate(members):
            if k >> j & 1:
                m |= 1 << b
        yield m


def nonempty_proper_submasks(mask):
    for m in submasks(mask):
        if m and m != mask:
            yield m
