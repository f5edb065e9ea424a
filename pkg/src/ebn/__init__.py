"""Validation and learning of embedded Bayesian networks against exact tables."""

from .graph import (
    EDag,
    ETree,
    Trail,
    as_etree,
    descendants,
    etree_isomorphic,
    is_trek,
    latent_transform,
    make_trail,
    sinks_on_trail,
    unique_trail,
    validate_edag,
)
from .graphoid import MARGINAL, POSITIVE, SDW, SEMI_GRAPHOID, closure, derives, simple_fragment
from .hardness import build_gk, marginal_partition, t_set, verify_hardness
from .oracle import (
    JointTable,
    SamplerConfig,
    ci_holds,
    ci_residual,
    is_strictly_positive,
    marginal,
    sample_from_etree,
)
from .recovery import build_skeleton, orient, recover, well_represented
from .separation import enumerate_model, m_separated, recursive_basis, simple_statements
from .statements import Statement, format_statement, parse_statement, statement
from .treebasis import build_bs, build_bt, verify_etree_imap

__version__ = "0.1.0"
