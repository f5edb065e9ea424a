"""Exact tabular probability models and conditional-independence tests."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bitset import bits
from .errors import (
    EmptyKeepSet,
    RetriesExhausted,
    TableError,
    UniverseTooLarge,
    UnknownVertex,
    VariableMismatch,
)
from .graph import as_etree, is_trek, latent_transform, unique_trail
from .statements import Statement, check_universe

TOL_SUM = 1e-9
DEFAULT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class JointTable:
    """Dense joint distribution; ``probs`` has one axis per variable."""

    names: tuple
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        probs = np.array(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        if len(set(self.names)) != len(self.names):
            raise TableError("variable names must be unique")
        if probs.ndim != len(self.names):
            raise TableError(f"{probs.ndim} axes for {len(self.names)} variables")
        if any(k < 2 for k in probs.shape):
            raise TableError("every domain needs at least two values")
        if (probs < 0).any():
            raise TableError("negative probability")
        if abs(probs.sum() - 1.0) > TOL_SUM:
            raise TableError(f"probabilities sum to {probs.sum()!r}")

    @property
    def n(self):
        return len(self.names)

    @property
    def cards(self):
        return self.probs.shape

    def vid(self, v):
        if isinstance(v, str):
            try:
                return self.names.index(v)
            except ValueError:
                raise UnknownVertex(v) from None
        if isinstance(v, int) and 0 <= v < self.n:
            return v
        raise UnknownVertex(v)

    def mask(self, vs):
        m = 0
        for v in vs:
            m |= 1 << self.vid(v)
        return m

    @property
    def full(self):
        return (1 << self.n) - 1

    def reorder(self, names):
        """Same distribution with axes permuted into ``names`` order."""
        names = tuple(names)
        if sorted(names) != sorted(self.names):
            raise VariableMismatch(f"{names} vs {self.names}")
        perm = [self.names.index(v) for v in names]
        return JointTable(names, np.transpose(self.probs, perm))

    def __eq__(self, other):
        if not isinstance(other, JointTable):
            return NotImplemented
        return self.names == other.names and np.array_equal(self.probs, other.probs)

    __hash__ = None


def _sum_out(probs, keep):
    drop = tuple(i for i in range(probs.ndim) if not keep >> i & 1)
    return probs.sum(axis=drop, keepdims=True)


def ci_residual(p, s):
    """Largest |P(x,y,z) P(z) - P(x,z) P(y,z)| over all value combinations."""
    try:
        x, z, y = check_universe(s, p.n)
    except UnknownVertex as e:
        raise VariableMismatch(str(e)) from None
    pxyz = _sum_out(p.probs, x | y | z)
    pxz = _sum_out(pxyz, x | z)
    pyz = _sum_out(pxyz, y | z)
    pz = _sum_out(pxz, z)
    return float(np.max(np.abs(pxyz * pz - pxz * pyz)))


def ci_holds(p, s, tol=DEFAULT_TOL):
    return ci_residual(p, s) <= tol


@dataclass(frozen=True)
class Query:
    statement: Statement
    holds: bool
    residual: float


class QueryLog:
    """Runs CI tests against one table and records every query."""

    def __init__(self, p, tol=DEFAULT_TOL):
        self.p = p
        self.tol = tol
        self.queries = []

    def holds(self, s):
        r = ci_residual(self.p, s)
        q = Query(Statement(*s), r <= self.tol, r)
        self.queries.append(q)
        return q.holds

    def residual(self, s):
        self.holds(s)
        return self.queries[-1].residual


def marginal(p, keep):
    """Table over the variables in mask ``keep``, original order preserved."""
    if keep == 0:
        raise EmptyKeepSet("keep set is empty")
    if keep >> p.n:
        raise VariableMismatch("keep set mentions unknown variables")
    drop = tuple(i for i in range(p.n) if not keep >> i & 1)
    return JointTable(tuple(p.names[i] for i in bits(keep)), p.probs.sum(axis=drop))


def is_strictly_positive(p):
    return bool(p.probs.min() > 0)


def product_table(names, marginals):
    """Independent variables with the given 1-d marginals."""
    probs = np.ones(())
    for m in marginals:
        probs = np.multiply.outer(probs, np.asarray(m, dtype=float))
    return JointTable(names, probs)


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 0
    domain: int = 2
    latent_domain: int = 2
    cpt_floor: float = 0.05
    wellrep_margin: float = 1e-3
    max_retries: int = 100
    max_observables: int = 12

    def __post_init__(self):
        if self.domain < 2 or self.latent_domain < 2:
            raise ValueError("domains need at least two values")
        if not 0 < self.cpt_floor < 1 / max(self.domain, self.latent_domain):
            raise ValueError("cpt_floor must lie in (0, 1/domain)")
        if self.wellrep_margin <= 0:
            raise ValueError("wellrep_margin must be positive")
        if self.max_retries < 1:
            raise ValueError("max_retries must be at least 1")


def trek_pairs(t):
    """Unordered index pairs of an E-tree joined by a trail without sinks."""
    t = as_etree(t)
    return [(a, b) for a, b in combinations(range(t.n), 2) if is_trek(t, unique_trail(t, a, b))]


def _random_joint(t, cfg, rng):
    d = latent_transform(t)
    if d.n > 52:  # einsum label limit
        raise UniverseTooLarge(d.n, 52)
    cards = [cfg.domain] * t.n + [cfg.latent_domain] * (d.n - t.n)
    operands = []
    for v in range(d.n):
        pa = list(bits(d.parents[v]))
        shape = [cards[u] for u in pa] + [cards[v]]
        cpt = rng.uniform(size=shape)
        cpt = np.maximum(cpt, cfg.cpt_floor)
        cpt /= cpt.sum(axis=-1, keepdims=True)
        operands += [cpt, pa + [v]]
    probs = np.einsum(*operands, list(range(t.n)), optimize=True)
    return JointTable(t.names, probs / probs.sum())


def sample_from_etree(t, cfg=SamplerConfig()):
    """Random strictly positive table that ``t`` represents well.

    Every vertex of the latent transform gets a random conditional table
    (entries uniform, floored at ``cfg.cpt_floor``, renormalised); latents
    are summed out. Draws are rejected until the table is strictly positive
    and every trek-connected pair is marginally dependent by more than
    ``cfg.wellrep_margin``. Attempt ``i`` uses the stream seeded by
    ``(cfg.seed, i)``.
    """
    t = as_etree(t)
    if t.n > cfg.max_observables:
        raise UniverseTooLarge(t.n, cfg.max_observables)
    pairs = trek_pairs(t)
    last = None
    for attempt in range(cfg.max_retries):
        rng = np.random.default_rng([cfg.seed & (2**64 - 1), attempt])
        p = _random_joint(t, cfg, rng)
        if not is_strictly_positive(p):
            last = ("not strictly positive",)
            continue
        for a, b in pairs:
            if ci_residual(p, (1 << a, 0, 1 << b)) <= cfg.wellrep_margin:
                last = (t.names[a], t.names[b])
                break
        else:
            return p
    raise RetriesExhausted(cfg.max_retries, last)
