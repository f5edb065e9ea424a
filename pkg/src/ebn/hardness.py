"""The two-clique family G_k and checks of its exponential-basis mechanism.

G_k has vertices c0..ck, d0..dk. Each of C and D is a bidirected clique,
and c_i <-> d_i for i = 1..k (no rung at i = 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .bitset import submasks
from .errors import InvalidK, StatementNotInModel
from .graph import EDag
from .graphoid import MARGINAL, derives
from .separation import enumerate_model, m_separated
from .statements import Statement, check_universe

PARTITION_K_MAX = 2
IRREDUNDANCY_K_MAX = 3


@dataclass(frozen=True)
class GkInstance:
    k: int
    graph: EDag

    def c(self, i):
        return i

    def d(self, i):
        return self.k + 1 + i


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise InvalidK(f"k must be an integer >= 1, got {k!r}")


def build_gk(k):
    _check_k(k)
    names = tuple(f"c{i}" for i in range(k + 1)) + tuple(f"d{i}" for i in range(k + 1))
    c = list(range(k + 1))
    d = [k + 1 + i for i in range(k + 1)]
    edges = set(combinations(c, 2)) | set(combinations(d, 2))
    edges |= {(c[i], d[i]) for i in range(1, k + 1)}
    return GkInstance(k, EDag(names, frozenset(), frozenset(edges)))


def t_set(k):
    """The 2^k marginal statements I({c0} u C', {}, {d0} u D').

    For each i in 1..k exactly one of c_i (into C') or d_i (into D') is used.
    """
    _check_k(k)
    out = set()
    for choice in product((True, False), repeat=k):
        x, y = 1, 1 << (k + 1)
        for i, to_c in enumerate(choice, start=1):
            if to_c:
                x |= 1 << i
            else:
                y |= 1 << (k + 1 + i)
        out.add(Statement(x, 0, y))
    return frozenset(out)


def marginal_partition(g, s):
    """First split (Z', Z'') of Z with I(X u Z', {}, Y u Z'') in M(g), or None.

    Splits are tried with Z' running over the submasks of Z in increasing
    order. ``s`` itself must be in M(g).
    """
    s = check_universe(s, g.n)
    if not m_separated(g, s):
        raise StatementNotInModel("statement is not in the model of the graph")
    for z1 in submasks(s.z):
        z2 = s.z & ~z1
        if m_separated(g, Statement(s.x | z1, 0, s.y | z2)):
            return z1, z2
    return None


@dataclass
class Check:
    name: str
    passed: bool | None  # None when skipped
    detail: str = ""


@dataclass
class HardnessReport:
    k: int
    checks: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.passed is not False for c in self.checks)

    def lines(self):
        for c in self.checks:
            status = {True: "PASS", False: "FAIL", None: "SKIP"}[c.passed]
            yield f"{status} {c.name}: {c.detail}"


def verify_hardness(k):
    """Run the four named sub-checks on G_k; see :class:`HardnessReport`."""
    _check_k(k)
    g = build_gk(k).graph
    report = HardnessReport(k)
    tset = t_set(k)

    report.checks.append(
        Check("a_cardinality", len(tset) == 2**k, f"|T| = {len(tset)}, 2^k = {2**k}")
    )

    missing = [s for s in sorted(tset) if not m_separated(g, s)]
    report.checks.append(
        Check("b_membership", not missing, f"{len(tset) - len(missing)}/{len(tset)} statements in M(G_k)")
    )

    if k <= PARTITION_K_MAX:
        model = enumerate_model(g, limit=2 * PARTITION_K_MAX + 2)
        bad = [s for s in model if marginal_partition(g, s) is None]
        report.checks.append(
            Check("c_partition", not bad, f"partition found for {len(model) - len(bad)}/{len(model)} members")
        )
    else:
        report.checks.append(Check("c_partition", None, f"skipped for k > {PARTITION_K_MAX}"))

    if k <= IRREDUNDANCY_K_MAX:
        pool = tset | {s.sym() for s in tset}
        redundant = []
        for s in sorted(tset):
            rest = pool - {s, s.sym()}
            if derives(rest, s, MARGINAL):
                redundant.append(s)
        report.checks.append(
            Check(
                "d_irredundancy",
                not redundant,
                f"{len(tset) - len(redundant)}/{len(tset)} statements not derivable from the others",
            )
        )
    else:
        report.checks.append(Check("d_irredundancy", None, f"skipped for k > {IRREDUNDANCY_K_MAX}"))
    return report
