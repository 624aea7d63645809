"""Diagrammatic relations realized as concrete bounded webs and verified
exactly at the level of web vectors.

Each relation instance holds two formal LaurentPoly-linear combinations of
webs over one boundary signature.  Relation fragments are drawn in a box
below the axis; bottom legs curl around the left side to the boundary
(reversing their order), top legs rise straight up.  Quantum integers in
the coefficients are evaluated at -q.  Edges assigned weight 0 or n are
erased with their endpoints smoothed; a term with any weight outside
[0, n] is dropped."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .invariantvec import web_vector
from .qlaurent import LaurentPoly, ONE, qbinom, qint, subst_neg_q
from .tensorspace import WebVector
from .webgraph import Edge, WebGraph, boundary_weight_vector, flip_edges
from .corpus import loop_web

Term = tuple[LaurentPoly, WebGraph]


@dataclass
class RelationInstance:
    name: str
    n: int
    params: dict
    lhs: list[Term]
    rhs: list[Term]


# -- building fragments ------------------------------------------------------

BOX_TOP = -2.5
STAPLE_Y = -5.0
STEP = 0.4


def _fragment_web(n: int,
                  interior: dict[str, tuple[float, float]],
                  inner_edges: Sequence[tuple[str, str, int, tuple]],
                  bottom: Sequence[tuple],
                  top: Sequence[tuple]) -> WebGraph | None:
    """Assemble a web from a fragment drawn in a box.

    bottom entries: ('leg', vertex, weight, stub_x) directed into the
    fragment, or ('through', weight, stub_x, top_x) running straight from
    the bottom boundary group to a top boundary vertex.  top entries:
    (vertex, weight, top_x) directed out of the fragment.  Bottom
    connectors are sorted by stub_x and reversed onto axis positions
    1..B; returns None when a weight falls outside [0, n] (dropped term).
    """
    weights = [w for _, _, w, _ in inner_edges]
    weights += [b[2] if b[0] == "leg" else b[1] for b in bottom]
    weights += [w for _, w, _ in top]
    if any(w < 0 or w > n for w in weights):
        return None

    bottom = sorted(bottom, key=lambda b: b[3] if b[0] == "leg" else b[2])
    B = len(bottom)
    edges: dict[str, Edge] = {}
    counter = [0]

    def add(tail, head, weight, via):
        counter[0] += 1
        eid = f"e{counter[0]}"
        edges[eid] = Edge(eid, tail, head, weight, tuple(via))

    boundary: list[tuple[str, float]] = []
    for j, item in enumerate(bottom):
        bid = f"bb{j}"
        x_axis = float(B - j)
        boundary.append((bid, x_axis))
        depth = STAPLE_Y - (j + 1) * STEP
        if item[0] == "leg":
            _, vid, w, stub_x = item
            via = ((x_axis, depth), (stub_x, depth))
            add(bid, vid, w, via)
        else:
            _, w, stub_x, top_x = item
            tid = f"bt_{int(top_x * 10)}"
            boundary.append((tid, float(top_x)))
            via = ((x_axis, depth), (stub_x, depth), (stub_x, BOX_TOP - 0.6))
            add(bid, tid, w, via)
    for vid, w, top_x in top:
        tid = f"bt_{int(top_x * 10)}"
        boundary.append((tid, float(top_x)))
        add(vid, tid, w, ())
    for tail, head, w, via in inner_edges:
        add(tail, head, w, via)
    boundary.sort(key=lambda b: b[1])
    G = WebGraph(n, tuple(boundary), dict(interior), edges)
    return smooth_web(G)


def smooth_web(G: WebGraph) -> WebGraph:
    """Erase weight-0 and weight-n edges; at each affected interior vertex
    the two remaining edges join into one (after flipping one to match),
    and boundary endpoints of erased edges disappear."""
    n = G.n
    boundary = list(G.boundary)
    interior = dict(G.interior)
    edges = {eid: [e.tail, e.head, e.weight, _pts(G, eid)]
             for eid, e in G.edges.items()}

    def incident(v):
        out = []
        for eid, (t, h, _, _) in edges.items():
            if t == v:
                out.append((eid, "tail"))
            if h == v:
                out.append((eid, "head"))
        return out

    def flip(eid):
        t, h, w, pts = edges[eid]
        edges[eid] = [h, t, n - w, list(reversed(pts))]

    while True:
        victim = next((eid for eid, (t, h, w, _) in edges.items()
                       if w == 0 or w == n), None)
        if victim is None:
            break
        tail, head, _, _ = edges.pop(victim)
        ends = [tail, head] if tail != head else [tail]
        for v in ends:
            if v is None:
                continue
            if any(bid == v for bid, _ in boundary):
                boundary = [(bid, x) for bid, x in boundary if bid != v]
                continue
            rem = incident(v)
            if len(rem) != 2:
                raise ValueError(
                    f"cannot smooth at vertex {v}: degree {len(rem)}")
            (e1, end1), (e2, end2) = rem
            if e1 == e2:
                # Both remaining ends belong to one edge: a closed loop.
                t, h, w, pts = edges.pop(e1)
                cycle = pts[:-1]
                edges[e1] = [None, None, w, cycle]
                interior.pop(v)
                continue
            if end1 == "tail":        # want e1 directed into v
                flip(e1)
            if end2 == "head":        # want e2 directed out of v
                flip(e2)
            t1, h1, w1, p1 = edges.pop(e1)
            t2, h2, w2, p2 = edges.pop(e2)
            if w1 != w2:
                raise ValueError("smoothing would join unequal weights")
            edges[e1] = [t1, h2, w1, p1 + p2[1:]]
            interior.pop(v)

    final = {}
    for eid, (t, h, w, pts) in edges.items():
        if t is None:
            final[eid] = Edge(eid, None, None, w, tuple(pts))
        else:
            final[eid] = Edge(eid, t, h, w, tuple(pts[1:-1]))
    return WebGraph(n, tuple(boundary), interior, final)


def _pts(G: WebGraph, eid: str) -> list:
    e = G.edges[eid]
    if e.is_loop:
        return list(e.via)
    return G.polyline(eid)


def _scalar_web(n: int) -> WebGraph:
    return WebGraph(n, (), {}, {})


# -- relation builders --------------------------------------------------------


def make_bigon(n: int, k: int, l: int) -> RelationInstance:
    """Two parallel edges weighted k and l between merge vertices equal
    the single edge weighted k+l scaled by the quantum binomial at -q."""
    interior = {"A": (11.5, -4.0), "B": (11.5, -2.8)}
    lhs = _fragment_web(
        n, interior,
        [("A", "B", k, ((11.0, -3.4),)), ("A", "B", l, ((12.0, -3.4),))],
        [("leg", "A", k + l, 11.5)],
        [("B", k + l, 11.5)])
    rhs = _fragment_web(n, {}, [], [("through", k + l, 11.5, 11.5)], [])
    coeff = subst_neg_q(qbinom(k + l, l))
    return RelationInstance(
        "bigon", n, {"k": k, "l": l},
        [(ONE, lhs)] if lhs is not None else [],
        [(coeff, rhs)] if rhs is not None else [])


def make_ih(n: int, k: int, l: int, m: int) -> RelationInstance:
    """Associativity of merging: (k, l) then m equals k then (l, m)."""
    lhs = _fragment_web(
        n, {"A": (11.0, -4.0), "B": (11.8, -3.0)},
        [("A", "B", k + l, ((11.4, -3.6),))],
        [("leg", "A", k, 10.7), ("leg", "A", l, 11.3),
         ("leg", "B", m, 12.5)],
        [("B", k + l + m, 11.8)])
    rhs = _fragment_web(
        n, {"A": (12.0, -4.0), "B": (11.2, -3.0)},
        [("A", "B", l + m, ((11.6, -3.6),))],
        [("leg", "B", k, 10.5), ("leg", "A", l, 11.7),
         ("leg", "A", m, 12.3)],
        [("B", k + l + m, 11.2)])
    return RelationInstance(
        "I=H", n, {"k": k, "l": l, "m": m},
        [(ONE, lhs)] if lhs is not None else [],
        [(ONE, rhs)] if rhs is not None else [])


def _square(n: int, legs: tuple[int, int, int, int],
            left: int, right: int,
            bottom_rung: tuple[int, str], top_rung: tuple[int, str]) \
        -> WebGraph | None:
    """Square fragment: legs (bottom-left, bottom-right, top-left,
    top-right); side edges directed upward; rung direction 'lr' or 'rl'."""
    bk, bl, tk, tl = legs
    interior = {"BL": (11.0, -4.0), "BR": (12.5, -4.0),
                "TL": (11.0, -3.0), "TR": (12.5, -3.0)}
    inner = [("BL", "TL", left, ()), ("BR", "TR", right, ())]
    w, d = bottom_rung
    inner.append((("BL", "BR", w, ((11.75, -4.2),)) if d == "lr"
                  else ("BR", "BL", w, ((11.75, -4.2),))))
    w, d = top_rung
    inner.append((("TL", "TR", w, ((11.75, -2.8),)) if d == "lr"
                  else ("TR", "TL", w, ((11.75, -2.8),))))
    return _fragment_web(
        n, interior, inner,
        [("leg", "BL", bk, 11.0), ("leg", "BR", bl, 12.5)],
        [("TL", tk, 11.0), ("TR", tl, 12.5)])


def make_square_removal(n: int, k: int, l: int, r: int, s: int) \
        -> RelationInstance:
    lhs = _square(n, (k, l, k - r - s, l + r + s), k - s, l + s,
                  (s, "lr"), (r, "lr"))
    rhs = _fragment_web(
        n, {"L": (11.0, -3.5), "R": (12.5, -3.5)},
        [("L", "R", r + s, ())],
        [("leg", "L", k, 11.0), ("leg", "R", l, 12.5)],
        [("L", k - r - s, 11.0), ("R", l + r + s, 12.5)])
    coeff = subst_neg_q(qbinom(r + s, r))
    return RelationInstance(
        "square-removal", n, {"k": k, "l": l, "r": r, "s": s},
        [(ONE, lhs)] if lhs is not None else [],
        [(coeff, rhs)] if rhs is not None else [])


def make_square_switch_unit(n: int, k: int, l: int) -> RelationInstance:
    lhs = _square(n, (k, l, k, l), k - 1, l + 1, (1, "lr"), (1, "rl"))
    first = _square(n, (k, l, k, l), k + 1, l - 1, (1, "rl"), (1, "lr"))
    lines = _fragment_web(
        n, {}, [],
        [("through", k, 11.0, 11.0), ("through", l, 12.5, 12.5)],
        [])
    rhs = []
    if first is not None:
        rhs.append((ONE, first))
    if lines is not None:
        rhs.append((subst_neg_q(qint(k - l)), lines))
    return RelationInstance(
        "square-switch", n, {"k": k, "l": l},
        [(ONE, lhs)] if lhs is not None else [],
        rhs)


def make_square_switch_general(n: int, k: int, l: int, r: int, s: int) \
        -> RelationInstance:
    """Sum form: the top/bottom rungs switch to (s-t, r-t) with coefficient
    the quantum binomial of k-l+r-s over t at -q (which carries the sign
    (-1)^((k-l+r-s-1)t))."""
    lhs = _square(n, (k, l, k + r - s, l - r + s), k - s, l + s,
                  (s, "lr"), (r, "rl"))
    rhs = []
    for t in range(0, min(r, s) + 1):
        G = _square(n, (k, l, k + r - s, l - r + s), k + r - t, l - r + t,
                    (r - t, "rl"), (s - t, "lr"))
        if G is None:
            continue
        coeff = subst_neg_q(qbinom(k - l + r - s, t))
        if not coeff.is_zero():
            rhs.append((coeff, G))
    return RelationInstance(
        "square-switch-general", n, {"k": k, "l": l, "r": r, "s": s},
        [(ONE, lhs)] if lhs is not None else [],
        rhs)


def make_loop(n: int, k: int) -> RelationInstance:
    """Closed loop equals the quantum binomial [n k] evaluated at -q."""
    return RelationInstance(
        "loop", n, {"k": k},
        [(ONE, loop_web(n, k))],
        [(subst_neg_q(qbinom(n, k)), _scalar_web(n))])


def make_circle(n: int, k: int) -> RelationInstance:
    """Circle removal: the same scalar written as (-1)^(k(n-k)) [n k]_q."""
    sign = -1 if (k * (n - k)) % 2 else 1
    return RelationInstance(
        "circle", n, {"k": k},
        [(ONE, loop_web(n, k))],
        [(qbinom(n, k).scale(sign), _scalar_web(n))])


BUILDERS = {
    "bigon": make_bigon,
    "ih": make_ih,
    "square-removal": make_square_removal,
    "square-switch": make_square_switch_unit,
    "square-switch-general": make_square_switch_general,
    "loop": make_loop,
    "circle": make_circle,
}


# -- verification -------------------------------------------------------------


def _side_vector(terms: list[Term]) -> WebVector:
    acc = WebVector.zero()
    for coeff, G in terms:
        acc = acc + web_vector(G).scale(coeff)
    return acc


def residual(inst: RelationInstance) -> WebVector:
    sigs = {boundary_weight_vector(G) for _, G in inst.lhs + inst.rhs}
    if len(sigs) > 1:
        raise ValueError(
            f"{inst.name}: boundary signatures differ across terms: {sigs}")
    return _side_vector(inst.lhs) - _side_vector(inst.rhs)


def verify(inst: RelationInstance) -> bool:
    return residual(inst).is_zero()


def verify_edge_flip(G: WebGraph, eids) -> bool:
    return web_vector(G) == web_vector(flip_edges(G, eids))


def admissible_grid(max_n: int, max_rs: int = 3):
    """Every built-in relation instance over n <= max_n whose legs are
    honest boundary weights, with r + s <= max_rs for the squares."""
    out = []
    for n in range(2, max_n + 1):
        for k in range(1, n):
            out.append(make_loop(n, k))
            out.append(make_circle(n, k))
        for k in range(0, n + 1):
            for l in range(0, n + 1):
                if 1 <= k + l <= n:
                    out.append(make_bigon(n, k, l))
        for k in range(1, n):
            for l in range(1, n):
                for m in range(1, n):
                    if k + l + m <= n:
                        out.append(make_ih(n, k, l, m))
        for k in range(1, n):
            for l in range(1, n):
                if k >= 1 and l + 1 <= n - 1 and k - 1 >= 0:
                    out.append(make_square_switch_unit(n, k, l))
        for k in range(1, n):
            for l in range(1, n):
                for r in range(0, max_rs + 1):
                    for s in range(0, max_rs - r + 1):
                        if r + s == 0:
                            continue
                        if (1 <= k + r - s <= n - 1
                                and 1 <= l - r + s <= n - 1
                                and k - s >= 0 and l + s <= n):
                            out.append(
                                make_square_switch_general(n, k, l, r, s))
                        if (k - r - s >= 1 and l + r + s <= n - 1
                                and k - s >= 0 and l + s <= n):
                            out.append(make_square_removal(n, k, l, r, s))
    return out
