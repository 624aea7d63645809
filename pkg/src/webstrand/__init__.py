"""Exact invariant-vector calculus for edge-weighted plane webs.

Web graphs carry strandings (binary edge labelings); summing
(-q)^(flow exponent) over all strandings gives a quantum-group invariant
vector, cross-checked against an independent composition-of-maps oracle,
verified against the full relation set, and used to build basis webs from
standard Young tableaux.
"""

from .qlaurent import LaurentPoly, qbinom, qint, rank_over_q, subst_neg_q
from .tensorspace import (TensorFactor, WebVector, inversion_ell,
                          wedge_sort_scalar)
from .webgraph import (Edge, WebGraph, boundary_weight_vector, dual_distance,
                       faces, flip_edges, validate, vertex_type)
from .stranding import (Stranding, base_stranding, binary_to_strands,
                        enumerate_strandings, flow_exponent, flows,
                        sl3_depth_stranding, validate_stranding)
from .invariantvec import (boundary_monomial, lex_leading_term,
                           nonvanishing_check, web_vector)
from .uqaction import act_E, act_F, act_K, check_invariant

__all__ = [
    "LaurentPoly", "qint", "qbinom", "subst_neg_q", "rank_over_q",
    "TensorFactor", "WebVector", "inversion_ell", "wedge_sort_scalar",
    "Edge", "WebGraph", "validate", "boundary_weight_vector", "flip_edges",
    "vertex_type", "faces", "dual_distance",
    "Stranding", "binary_to_strands", "validate_stranding",
    "enumerate_strandings", "flows", "flow_exponent", "base_stranding",
    "sl3_depth_stranding",
    "boundary_monomial", "web_vector", "nonvanishing_check",
    "lex_leading_term",
    "act_E", "act_F", "act_K", "check_invariant",
]
