"""The state-sum web vector: one term per valid stranding, coefficient
(-q)^(flow exponent), monomial read off the boundary edges."""

from __future__ import annotations

from .qlaurent import LaurentPoly
from .stranding import Stranding, enumerate_strandings, flow_exponent
from .tensorspace import (TensorFactor, TensorMonomial, WebVector, complement,
                          monomial_lex_key)
from .webgraph import WebGraph


def boundary_monomial(G: WebGraph, S: Stranding) -> TensorMonomial:
    """Factor j is the label of boundary edge j if it points into the
    boundary, else its complement."""
    factors = []
    for eid, sigma in G.boundary_edges():
        word = S.labels[eid]
        factors.append(TensorFactor(word if sigma == 1 else complement(word)))
    return tuple(factors)


def web_vector(G: WebGraph) -> WebVector:
    """f(G) = sum over valid strandings of (-q)^(x(S)-y(S)) x_S.

    A boundaryless web yields a scalar on the empty monomial."""
    acc: dict[TensorMonomial, LaurentPoly] = {}
    for S in enumerate_strandings(G):
        mono = boundary_monomial(G, S)
        coeff = LaurentPoly.minus_q_power(flow_exponent(G, S))
        prev = acc.get(mono)
        s = coeff if prev is None else prev + coeff
        if s.is_zero():
            acc.pop(mono, None)
        else:
            acc[mono] = s
    return WebVector(acc)


def nonvanishing_check(G: WebGraph) -> bool:
    """Every stranding's boundary monomial keeps a nonzero coefficient in
    f(G); a False return signals an implementation bug."""
    v = web_vector(G)
    for S in enumerate_strandings(G):
        if v.coefficient(boundary_monomial(G, S)).is_zero():
            return False
    return True


def lex_leading_term(v: WebVector) -> tuple[TensorMonomial, LaurentPoly]:
    """The lex-smallest monomial with its coefficient."""
    if v.is_zero():
        raise ValueError("zero vector has no leading term")
    m = min(v.monomials(), key=monomial_lex_key)
    return m, v.coefficient(m)
