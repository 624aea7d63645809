"""Fontaine web graphs: plane graphs with boundary axis and explicit geometry.

A WebGraph has univalent boundary vertices on the horizontal axis (y = 0),
trivalent interior vertices strictly below it, and directed edges weighted
in [1, n-1] satisfying conservation of flow mod n at interior vertices.
Edges carry explicit polylines; closed vertexless loops are stored as a
single edge with tail = head = None and a closed via list.

Faces are traced on the augmented plane graph (virtual axis segments
between consecutive boundary vertices plus a virtual closing arc), and the
dual mod-n distance from the unbounded face is computed by breadth-first
propagation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

Point = tuple[float, float]

GEOM_TOL = 1e-9


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str | None
    head: str | None
    weight: int
    via: tuple[Point, ...] = ()

    @property
    def is_loop(self) -> bool:
        return self.tail is None and self.head is None


@dataclass(frozen=True)
class WebGraph:
    n: int
    boundary: tuple[tuple[str, float], ...]          # (id, x), increasing x
    interior: Mapping[str, Point]                    # id -> (x, y), y < 0
    edges: Mapping[str, Edge]

    def __post_init__(self):
        object.__setattr__(self, "interior", dict(self.interior))
        object.__setattr__(self, "edges", dict(self.edges))

    # -- basic accessors -----------------------------------------------

    def boundary_ids(self) -> list[str]:
        return [bid for bid, _ in self.boundary]

    def vertex_pos(self, vid: str) -> Point:
        for bid, x in self.boundary:
            if bid == vid:
                return (x, 0.0)
        return self.interior[vid]

    def is_boundary(self, vid: str) -> bool:
        return any(bid == vid for bid, _ in self.boundary)

    def polyline(self, eid: str) -> list[Point]:
        e = self.edges[eid]
        if e.is_loop:
            pts = list(e.via)
            return pts + [pts[0]]
        return [self.vertex_pos(e.tail)] + list(e.via) + [self.vertex_pos(e.head)]

    def incident(self, vid: str) -> list[tuple[str, int]]:
        """Edge ends at vid as (edge_id, sigma) with sigma = +1 if the edge
        is directed into vid, -1 if out."""
        out = []
        for eid, e in self.edges.items():
            if e.is_loop:
                continue
            if e.head == vid:
                out.append((eid, 1))
            if e.tail == vid:
                out.append((eid, -1))
        return out

    def boundary_edges(self) -> list[tuple[str, int]]:
        """Boundary edges in axis order, as (edge_id, sigma at the boundary
        vertex)."""
        out = []
        for bid, _ in self.boundary:
            inc = self.incident(bid)
            if len(inc) != 1:
                raise ValueError(f"boundary vertex {bid} has degree {len(inc)}")
            out.append(inc[0])
        return out


# -- validation --------------------------------------------------------


def _seg_intersection_kind(a: Point, b: Point, c: Point, d: Point) -> str:
    """Classify intersection of segments ab and cd: 'none', 'touch'
    (a single shared point that is an endpoint of at least one segment),
    or 'cross'."""
    ax, ay = a
    bx, by = b
    cx, cy = c
    dx, dy = d
    r = (bx - ax, by - ay)
    s = (dx - cx, dy - cy)
    denom = r[0] * s[1] - r[1] * s[0]
    qp = (cx - ax, cy - ay)
    qpxr = qp[0] * r[1] - qp[1] * r[0]
    if abs(denom) < GEOM_TOL:
        if abs(qpxr) > GEOM_TOL:
            return "none"
        # Collinear: check overlap extent along r.
        rr = r[0] * r[0] + r[1] * r[1]
        if rr < GEOM_TOL ** 2:
            return "none"
        t0 = (qp[0] * r[0] + qp[1] * r[1]) / rr
        t1 = t0 + (s[0] * r[0] + s[1] * r[1]) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < -GEOM_TOL or lo > 1 + GEOM_TOL:
            return "none"
        if hi - max(lo, 0) < GEOM_TOL and abs(min(hi, 1) - lo) < GEOM_TOL:
            return "touch"
        if min(hi, 1) - max(lo, 0) > GEOM_TOL:
            return "cross"
        return "touch"
    t = (qp[0] * s[1] - qp[1] * s[0]) / denom
    u = qpxr / denom
    eps = GEOM_TOL
    if t < -eps or t > 1 + eps or u < -eps or u > 1 + eps:
        return "none"
    t_interior = eps < t < 1 - eps
    u_interior = eps < u < 1 - eps
    if t_interior and u_interior:
        return "cross"
    return "touch"


def _points_close(p: Point, q: Point) -> bool:
    return abs(p[0] - q[0]) < 1e-7 and abs(p[1] - q[1]) < 1e-7


def validate(G: WebGraph) -> list[str]:
    """Full invariant check; returns a list of violations (empty = valid)."""
    problems: list[str] = []
    if G.n < 2:
        problems.append(f"n must be >= 2, got {G.n}")
    xs = [x for _, x in G.boundary]
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        problems.append("boundary vertices not strictly increasing in x")
    for vid, (x, y) in G.interior.items():
        if y >= 0:
            problems.append(f"interior vertex {vid} not strictly below axis")

    loops = [e for e in G.edges.values() if e.is_loop]
    for e in loops:
        if len(e.via) < 3:
            problems.append(f"loop edge {e.id} needs at least 3 via points")
    if loops and (len(G.edges) > len(loops) or G.boundary or G.interior):
        problems.append("closed loop edges must form the entire web")

    for e in G.edges.values():
        if not (1 <= e.weight <= G.n - 1):
            problems.append(f"edge {e.id} weight {e.weight} outside [1, n-1]")
        if not e.is_loop:
            for end in (e.tail, e.head):
                if end is None:
                    problems.append(f"edge {e.id} mixes loop and vertex ends")
                elif not G.is_boundary(end) and end not in G.interior:
                    problems.append(f"edge {e.id} references unknown vertex {end}")

    # Degree conditions.
    for bid, _ in G.boundary:
        deg = len(G.incident(bid))
        if deg != 1:
            problems.append(f"boundary vertex {bid} has degree {deg}, want 1")
    for vid in G.interior:
        deg = len(G.incident(vid))
        if deg != 3:
            problems.append(f"interior vertex {vid} has degree {deg}, want 3")

    # Conservation of flow mod n.
    for vid in G.interior:
        total = sum(sigma * G.edges[eid].weight for eid, sigma in G.incident(vid))
        if total % G.n != 0:
            problems.append(
                f"vertex {vid}: signed weight sum {total} not 0 mod {G.n}")

    # Geometry: strictly below the axis except at boundary endpoints.
    for eid in G.edges:
        e = G.edges[eid]
        pts = G.polyline(eid)
        inner = pts[1:-1] if not e.is_loop else pts
        for (x, y) in inner:
            if y >= 0:
                problems.append(f"edge {eid} polyline touches or crosses the axis")
                break

    problems.extend(_crossing_violations(G))
    return problems


def _crossing_violations(G: WebGraph) -> list[str]:
    problems = []
    segs: list[tuple[str, int, Point, Point]] = []
    for eid in sorted(G.edges):
        pts = G.polyline(eid)
        for i, (p, q) in enumerate(zip(pts, pts[1:])):
            segs.append((eid, i, p, q))
    vertex_points = [G.vertex_pos(v) for v in
                     list(G.interior) + G.boundary_ids()]
    for i in range(len(segs)):
        e1, i1, a, b = segs[i]
        for j in range(i + 1, len(segs)):
            e2, i2, c, d = segs[j]
            if e1 == e2 and abs(i1 - i2) <= 1:
                continue
            if e1 == e2 and G.edges[e1].is_loop:
                npts = len(G.polyline(e1)) - 1
                if {i1 % npts, i2 % npts} == {0, npts - 1}:
                    continue
            kind = _seg_intersection_kind(a, b, c, d)
            if kind == "none":
                continue
            if kind == "touch" and e1 != e2:
                # Touching is fine only at a shared vertex of both edges.
                shared = [p for p in (a, b) if any(
                    _points_close(p, q) for q in (c, d))]
                if shared and all(any(_points_close(s, vp)
                                      for vp in vertex_points) for s in shared):
                    continue
            problems.append(f"edges {e1} and {e2} intersect in the drawing")
    return problems


# -- boundary weights, flips, vertex types ---------------------------------


def boundary_weight_vector(G: WebGraph) -> tuple[int, ...]:
    out = []
    for eid, sigma in G.boundary_edges():
        w = G.edges[eid].weight
        out.append(w if sigma == 1 else G.n - w)
    return tuple(out)


def flip_edges(G: WebGraph, eids: Iterable[str]) -> WebGraph:
    eids = set(eids)
    unknown = eids - set(G.edges)
    if unknown:
        raise KeyError(f"unknown edge ids: {sorted(unknown)}")
    new_edges = {}
    for eid, e in G.edges.items():
        if eid not in eids:
            new_edges[eid] = e
            continue
        if e.is_loop:
            via = (e.via[0],) + tuple(reversed(e.via[1:]))
            new_edges[eid] = Edge(eid, None, None, G.n - e.weight, via)
        else:
            new_edges[eid] = Edge(eid, e.head, e.tail, G.n - e.weight,
                                  tuple(reversed(e.via)))
    return WebGraph(G.n, G.boundary, G.interior, new_edges)


def vertex_type(G: WebGraph, vid: str) -> str:
    """'I' or 'II': after flipping so vid is a source, weights sum to n or 2n."""
    if vid not in G.interior:
        raise KeyError(f"{vid} is not an interior vertex")
    total = 0
    for eid, sigma in G.incident(vid):
        w = G.edges[eid].weight
        total += w if sigma == -1 else G.n - w
    if total == G.n:
        return "I"
    if total == 2 * G.n:
        return "II"
    raise ValueError(f"vertex {vid}: source-form weight sum {total}")


# -- faces and dual distance -----------------------------------------------

Dart = tuple[str, int]  # (edge id, +1 forward tail->head / -1 reverse)


@dataclass
class FaceSet:
    faces: dict[str, tuple[Dart, ...]]
    outer: str
    edge_sides: dict[str, tuple[str, str]]   # edge id -> (left, right) face
    total_faces: int                          # including virtual-only faces
    euler_ok: bool = True


def _departure_angle(points: list[Point]) -> float:
    (x0, y0), (x1, y1) = points[0], points[1]
    return math.atan2(y1 - y0, x1 - x0)


def faces(G: WebGraph) -> FaceSet:
    loops = [e for e in G.edges.values() if e.is_loop]
    if loops:
        if len(G.edges) != 1 or G.boundary or G.interior:
            raise ValueError("face tracing supports a closed loop only as the "
                             "entire web")
        return _loop_faces(G, loops[0])

    if not G.boundary:
        raise ValueError("face tracing needs boundary vertices or a single loop")

    # Augmented edge set: web edges + virtual axis segments + closing arc.
    polylines: dict[str, list[Point]] = {eid: G.polyline(eid) for eid in G.edges}
    virtuals: list[str] = []
    bids = G.boundary_ids()
    for i in range(len(bids) - 1):
        vid = f"__axis{i}"
        polylines[vid] = [G.vertex_pos(bids[i]), G.vertex_pos(bids[i + 1])]
        virtuals.append(vid)
    xs = [x for _, x in G.boundary]
    all_pts = [p for pts in polylines.values() for p in pts]
    height = 2.0 + max(abs(p[1]) for p in all_pts)
    span = max(xs) - min(xs) + 2.0
    close_id = "__close"
    polylines[close_id] = [G.vertex_pos(bids[0]),
                           (min(xs) - span, height),
                           (max(xs) + span, height),
                           G.vertex_pos(bids[-1])]
    virtuals.append(close_id)
    endpoints: dict[str, tuple[str, str]] = {}
    for eid, e in G.edges.items():
        endpoints[eid] = (e.tail, e.head)
    for i in range(len(bids) - 1):
        endpoints[f"__axis{i}"] = (bids[i], bids[i + 1])
    endpoints[close_id] = (bids[0], bids[-1])

    # Rotation system: counterclockwise order of leaving darts per vertex.
    leaving: dict[str, list[tuple[float, Dart]]] = {}
    for eid, (tail, head) in endpoints.items():
        pts = polylines[eid]
        for vid, dart, path in ((tail, (eid, 1), pts),
                                (head, (eid, -1), list(reversed(pts)))):
            ang = _departure_angle(path)
            leaving.setdefault(vid, []).append((ang, dart))
    rotation: dict[str, list[Dart]] = {}
    for vid, items in leaving.items():
        items.sort(key=lambda t: t[0])
        for (a1, d1), (a2, d2) in zip(items, items[1:]):
            if abs(a1 - a2) < 1e-9:
                raise ValueError(
                    f"coincident departure angles at vertex {vid}: {d1}, {d2}")
        rotation[vid] = [d for _, d in items]

    def dart_head(d: Dart) -> str:
        eid, direction = d
        tail, head = endpoints[eid]
        return head if direction == 1 else tail

    def next_dart(d: Dart) -> Dart:
        # Faces lie to the left of their darts: successor is the dart
        # clockwise from the reversed dart at the head vertex.
        v = dart_head(d)
        rev = (d[0], -d[1])
        order = rotation[v]
        i = order.index(rev)
        return order[(i - 1) % len(order)]

    darts = [(eid, s) for eid in endpoints for s in (1, -1)]
    face_of: dict[Dart, int] = {}
    walks: list[tuple[Dart, ...]] = []
    for d in darts:
        if d in face_of:
            continue
        walk = []
        cur = d
        while cur not in face_of:
            face_of[cur] = len(walks)
            walk.append(cur)
            cur = next_dart(cur)
        walks.append(tuple(walk))

    total = len(walks)
    # Unbounded face: to the left of the forward closing-arc dart, which runs
    # from the leftmost boundary vertex up over the web and back down.
    outer_idx = face_of[(close_id, 1)]

    # Name faces deterministically, keeping only those adjacent to web edges.
    labels: dict[int, str] = {}
    order = sorted(range(total), key=lambda i: min(walks[i]))
    counter = 0
    for idx in order:
        touches_web = any(eid in G.edges for eid, _ in walks[idx])
        if idx == outer_idx:
            labels[idx] = "U"
        elif touches_web:
            labels[idx] = f"f{counter}"
            counter += 1
    face_walks = {labels[i]: walks[i] for i in labels}

    edge_sides = {}
    for eid in G.edges:
        left = face_of[(eid, 1)]
        right = face_of[(eid, -1)]
        edge_sides[eid] = (labels[left], labels[right])

    n_vertices = len(bids) + len(G.interior)
    n_edges = len(endpoints)
    euler_ok = (n_vertices - n_edges + total) == 2
    return FaceSet(face_walks, "U", edge_sides, total, euler_ok)


def _loop_faces(G: WebGraph, loop: Edge) -> FaceSet:
    pts = G.polyline(loop.id)
    area = 0.0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        area += x1 * y2 - x2 * y1
    inside_left = area > 0  # counterclockwise: interior on the left
    sides = ("f0", "U") if inside_left else ("U", "f0")
    walks = {"U": ((loop.id, -1 if inside_left else 1),),
             "f0": ((loop.id, 1 if inside_left else -1),)}
    return FaceSet(walks, "U", {loop.id: sides}, total_faces=2,
                   euler_ok=True)


def dual_distance(G: WebGraph) -> dict[str, int]:
    """Mod-n distance from the unbounded face to every face of G.

    Crossing an edge from its left face to its right face adds the edge
    weight (the dual edge follows the right-hand rule).  Path independence
    is asserted on every edge.
    """
    fs = faces(G)
    dist: dict[str, int] = {fs.outer: 0}
    frontier = [fs.outer]
    adj: dict[str, list[tuple[str, int]]] = {}
    for eid, (left, right) in fs.edge_sides.items():
        w = G.edges[eid].weight
        adj.setdefault(left, []).append((right, w))
        adj.setdefault(right, []).append((left, -w))
    while frontier:
        nxt = []
        for f in frontier:
            for g, w in adj.get(f, ()):
                d = (dist[f] + w) % G.n
                if g not in dist:
                    dist[g] = d
                    nxt.append(g)
                elif dist[g] != d:
                    raise AssertionError(
                        f"dual distance inconsistent at face {g}")
        frontier = nxt
    missing = set(fs.faces) - set(dist)
    if missing:
        raise AssertionError(f"faces unreachable in the dual graph: {missing}")
    return dist


# -- JSON form ---------------------------------------------------------


def to_json_obj(G: WebGraph) -> dict:
    return {
        "n": G.n,
        "boundary": [{"id": bid, "x": x} for bid, x in G.boundary],
        "interior": [{"id": vid, "x": G.interior[vid][0], "y": G.interior[vid][1]}
                     for vid in sorted(G.interior)],
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "weight": e.weight,
             "via": [[x, y] for x, y in e.via]}
            for e in (G.edges[eid] for eid in sorted(G.edges))
        ],
    }


def serialize(G: WebGraph) -> str:
    return json.dumps(to_json_obj(G), indent=2) + "\n"


def from_json_obj(obj: dict) -> WebGraph:
    n = obj["n"]
    boundary = tuple((b["id"], float(b["x"])) for b in obj["boundary"])
    xs = [x for _, x in boundary]
    if any(x2 <= x1 for x1, x2 in zip(xs, xs[1:])):
        raise ValueError("boundary list must be sorted by strictly increasing x")
    interior = {v["id"]: (float(v["x"]), float(v["y"])) for v in obj["interior"]}
    edges = {}
    for e in obj["edges"]:
        via = tuple((float(x), float(y)) for x, y in e.get("via", []))
        edges[e["id"]] = Edge(e["id"], e.get("tail"), e.get("head"),
                              int(e["weight"]), via)
    return WebGraph(n, boundary, interior, edges)


def parse(text: str) -> WebGraph:
    return from_json_obj(json.loads(text))
