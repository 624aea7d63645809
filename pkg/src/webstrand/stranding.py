"""Strandings of web graphs as binary labelings, flows, and base strandings.

A stranding assigns each edge an n-bit word whose weight matches the edge
weight, conserving labels at interior vertices (the signed label sum is a
multiple of the all-ones vector).  Equivalently it is a family of colored
directed strands; the translation runs through the coroot values
b_c - b_{c+1} per color c.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterator, Mapping

from .tensorspace import all_words, complement, lambda_word, weight
from .webgraph import WebGraph, dual_distance, faces, flip_edges

GEOM_TOL = 1e-9


@dataclass(frozen=True)
class Stranding:
    labels: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "labels", dict(self.labels))

    def label(self, eid: str) -> str:
        return self.labels[eid]

    def key(self) -> tuple[tuple[str, str], ...]:
        return tuple(sorted(self.labels.items()))

    def __eq__(self, other):
        return isinstance(other, Stranding) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def to_json_obj(self) -> dict:
        return {"labels": {eid: self.labels[eid] for eid in sorted(self.labels)}}

    @staticmethod
    def from_json_obj(obj: dict) -> "Stranding":
        return Stranding(dict(obj["labels"]))


def stranding_to_json(s: Stranding) -> str:
    return json.dumps(s.to_json_obj(), indent=2) + "\n"


def parse_stranding(text: str) -> Stranding:
    return Stranding.from_json_obj(json.loads(text))


# -- stranding <-> binary labeling -----------------------------------------


def coroot(word: str, c: int) -> int:
    """b_c - b_{c+1} (1-indexed color c in [1, n-1])."""
    return int(word[c - 1]) - int(word[c])


def binary_to_strands(word: str) -> dict[int, str]:
    """Colors present on an edge labeled by word: color -> 'with'|'against'."""
    out = {}
    for c in range(1, len(word)):
        a = coroot(word, c)
        if a == 1:
            out[c] = "with"
        elif a == -1:
            out[c] = "against"
    return out


def strands_to_binary(strands: Mapping[int, str], n: int, last_bit: int) -> str:
    """Rebuild the word from its strand colors and the final bit."""
    bits = [0] * n
    bits[n - 1] = last_bit
    for c in range(n - 1, 0, -1):
        a = strands.get(c)
        delta = 1 if a == "with" else -1 if a == "against" else 0
        bits[c - 1] = bits[c] + delta
    if any(b not in (0, 1) for b in bits):
        raise ValueError("strand data does not define a binary word")
    return "".join(map(str, bits))


# -- validity ---------------------------------------------------------------


def validate_stranding(G: WebGraph, S: Stranding) -> bool:
    if set(S.labels) != set(G.edges):
        raise ValueError("stranding labels must cover exactly the edges of G")
    for eid, e in G.edges.items():
        word = S.labels[eid]
        if len(word) != G.n or weight(word) != e.weight:
            return False
    for vid in G.interior:
        inc = G.incident(vid)
        for c in range(1, G.n):
            if sum(sigma * coroot(S.labels[eid], c) for eid, sigma in inc) != 0:
                return False
    return True


def _vertex_ok(G: WebGraph, vid: str, labels: dict[str, str]) -> bool:
    inc = G.incident(vid)
    sums = [sum(sigma * int(labels[eid][i]) for eid, sigma in inc)
            for i in range(G.n)]
    return len(set(sums)) == 1


# -- enumeration ------------------------------------------------------------


def enumerate_strandings(G: WebGraph) -> list[Stranding]:
    """All valid strandings, deterministically ordered by concatenated
    labels over sorted edge ids.

    Backtracking over edges: when a vertex has two incident labels fixed,
    the third is the unique binary completion of the conservation identity
    (or the branch is pruned)."""
    eids = sorted(G.edges)
    if not eids:
        return [Stranding({})]
    incidence: dict[str, list[tuple[str, int]]] = {v: G.incident(v)
                                                   for v in G.interior}
    edge_vertices: dict[str, list[str]] = {eid: [] for eid in eids}
    for vid, inc in incidence.items():
        for eid, _ in inc:
            edge_vertices[eid].append(vid)

    results: list[Stranding] = []
    labels: dict[str, str] = {}

    def forced_label(eid: str) -> tuple[bool, str | None]:
        """(is_forced, word or None).  Forced means some incident vertex has
        its other two edges labeled; None means contradiction."""
        for vid in edge_vertices[eid]:
            inc = incidence[vid]
            others = [(e2, s2) for e2, s2 in inc if e2 != eid]
            if len(others) != 2 or any(e2 not in labels for e2, _ in others):
                continue
            sigma = next(s for e2, s in inc if e2 == eid)
            partial = [sum(s2 * int(labels[e2][i]) for e2, s2 in others)
                       for i in range(G.n)]
            lo, hi = min(partial), max(partial)
            if hi - lo != 1:
                return True, None
            if sigma == 1:
                bits = [hi - p for p in partial]       # b = c*1 - partial
            else:
                bits = [p - lo for p in partial]       # b = partial - c*1
            word = "".join(map(str, bits))
            if weight(word) != G.edges[eid].weight:
                return True, None
            return True, word
        return False, None

    def candidates(eid: str) -> list[str]:
        forced, word = forced_label(eid)
        if forced:
            return [] if word is None else [word]
        return all_words(G.n, G.edges[eid].weight)

    def pick_next(remaining: set[str]) -> str:
        for eid in sorted(remaining):
            if forced_label(eid)[0]:
                return eid
        touched = {v for eid in labels for v in edge_vertices[eid]}
        for eid in sorted(remaining):
            if any(v in touched for v in edge_vertices[eid]):
                return eid
        return min(remaining)

    def consistent_after(eid: str) -> bool:
        for vid in edge_vertices[eid]:
            if all(e2 in labels for e2, _ in incidence[vid]):
                if not _vertex_ok(G, vid, labels):
                    return False
        return True

    def search(remaining: set[str]):
        if not remaining:
            results.append(Stranding(dict(labels)))
            return
        eid = pick_next(remaining)
        remaining.remove(eid)
        for word in candidates(eid):
            labels[eid] = word
            if consistent_after(eid):
                search(remaining)
            del labels[eid]
        remaining.add(eid)

    search(set(eids))
    results.sort(key=lambda s: "".join(s.labels[eid] for eid in eids))
    return results


def naive_strandings(G: WebGraph) -> list[Stranding]:
    """Brute-force product-space filter; oracle for enumerate_strandings."""
    eids = sorted(G.edges)
    pools = [all_words(G.n, G.edges[eid].weight) for eid in eids]
    out = []
    for combo in itertools.product(*pools):
        labels = dict(zip(eids, combo))
        if all(_vertex_ok(G, vid, labels) for vid in G.interior):
            out.append(Stranding(labels))
    out.sort(key=lambda s: "".join(s.labels[eid] for eid in eids))
    return out


# -- flows -------------------------------------------------------------------


@dataclass(frozen=True)
class FlowComponent:
    pair: tuple[int, int]
    traversals: tuple[tuple[str, bool], ...]   # (edge id, runs with edge)
    closed: bool
    orientation: str                           # 'CW' | 'CCW'


def flows(G: WebGraph, S: Stranding) -> list[FlowComponent]:
    out: list[FlowComponent] = []
    for i in range(1, G.n + 1):
        for j in range(i + 1, G.n + 1):
            out.extend(_flow_components(G, S, i, j))
    return out


def _flow_components(G: WebGraph, S: Stranding, i: int, j: int) \
        -> list[FlowComponent]:
    carrying: dict[str, bool] = {}
    for eid, e in G.edges.items():
        word = S.labels[eid]
        diff = int(word[i - 1]) - int(word[j - 1])
        if diff != 0:
            carrying[eid] = diff == 1      # True: flow runs with the edge
    comps: list[FlowComponent] = []
    # Vertexless closed loops are their own components.
    plain: dict[str, bool] = {}
    for eid, with_edge in carrying.items():
        if G.edges[eid].is_loop:
            trav = ((eid, with_edge),)
            comps.append(FlowComponent((i, j), trav, True,
                                       _orient(G, trav, True)))
        else:
            plain[eid] = with_edge

    out_at: dict[str, list[str]] = {}
    in_at: dict[str, list[str]] = {}
    for eid, with_edge in plain.items():
        e = G.edges[eid]
        src, dst = (e.tail, e.head) if with_edge else (e.head, e.tail)
        out_at.setdefault(src, []).append(eid)
        in_at.setdefault(dst, []).append(eid)

    used: set[str] = set()

    def trace(start_eid: str) -> tuple[tuple[tuple[str, bool], ...], bool]:
        trav = []
        eid = start_eid
        while True:
            used.add(eid)
            with_edge = plain[eid]
            trav.append((eid, with_edge))
            e = G.edges[eid]
            dst = e.head if with_edge else e.tail
            if G.is_boundary(dst):
                return tuple(trav), False
            nxt = [e2 for e2 in out_at.get(dst, ()) if e2 not in used]
            if not nxt:
                # Either back at the start (closed) or finished.
                start_e = G.edges[start_eid]
                start_v = start_e.tail if plain[start_eid] else start_e.head
                return tuple(trav), dst == start_v
            eid = nxt[0]

    # Open components start at boundary vertices.
    for eid in sorted(plain):
        e = G.edges[eid]
        src = e.tail if plain[eid] else e.head
        if eid not in used and G.is_boundary(src):
            trav, closed = trace(eid)
            comps.append(FlowComponent((i, j), trav, closed,
                                       _orient(G, trav, closed)))
    # Remaining are closed cycles.
    for eid in sorted(plain):
        if eid not in used:
            trav, closed = trace(eid)
            if not closed:
                raise AssertionError("flow component is not a simple cycle")
            comps.append(FlowComponent((i, j), trav, True,
                                       _orient(G, trav, True)))
    return comps


def _orient(G: WebGraph, traversals: tuple[tuple[str, bool], ...],
            closed: bool) -> str:
    pts: list[tuple[float, float]] = []
    for eid, with_edge in traversals:
        poly = G.polyline(eid)
        if not with_edge:
            poly = list(reversed(poly))
        if pts:
            poly = poly[1:]
        pts.extend(poly)
    if not closed:
        pts.append(pts[0])   # straight return segment along the axis
    area = 0.0
    for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
        area += x1 * y2 - x2 * y1
    if abs(area) < GEOM_TOL:
        raise ValueError("degenerate flow curve with zero signed area")
    return "CCW" if area > 0 else "CW"


def orientation(G: WebGraph, comp: FlowComponent) -> str:
    return _orient(G, comp.traversals, comp.closed)


def flow_exponent(G: WebGraph, S: Stranding) -> int:
    """x(S) - y(S): closed clockwise components minus all counterclockwise
    components, over all flows."""
    x = 0
    y = 0
    for comp in flows(G, S):
        if comp.orientation == "CW":
            if comp.closed:
                x += 1
        else:
            y += 1
    return x - y


# -- base stranding and sl3 depth stranding ---------------------------------


def base_stranding(G: WebGraph) -> Stranding:
    """Stranding induced by clockwise face strands colored by the mod-n
    dual distance from the unbounded face.

    Each edge gets ones exactly in the cyclic position interval (a, b],
    where a, b are the distances of its left and right faces (residue 0
    is written as position n)."""
    dist = dual_distance(G)
    fs = faces(G)
    labels = {}
    for eid, e in G.edges.items():
        left, right = fs.edge_sides[eid]
        a = dist[left]
        b = (a + e.weight) % G.n
        if dist[right] != b:
            raise AssertionError("dual distance does not step by the weight")
        bits = ["0"] * G.n
        for i in range(1, e.weight + 1):
            pos = (a + i) % G.n
            bits[(pos if pos else G.n) - 1] = "1"
        labels[eid] = "".join(bits)
    return Stranding(labels)


def unweighted_depths(G: WebGraph) -> dict[str, int]:
    """Plain dual-graph distance d(U, A), each edge counting 1."""
    fs = faces(G)
    dist = {fs.outer: 0}
    frontier = [fs.outer]
    adj: dict[str, set[str]] = {}
    for left, right in fs.edge_sides.values():
        adj.setdefault(left, set()).add(right)
        adj.setdefault(right, set()).add(left)
    while frontier:
        nxt = []
        for f in frontier:
            for g in sorted(adj.get(f, ())):
                if g not in dist:
                    dist[g] = dist[f] + 1
                    nxt.append(g)
        frontier = nxt
    return dist


def sl3_depth_stranding(G: WebGraph) -> Stranding:
    """Leading-term stranding for sl3 webs by unweighted face depth.

    Requires n = 3 and, after flipping weight-2 edges down to weight 1,
    two distinct depths among the faces at each trivalent vertex."""
    if G.n != 3:
        raise ValueError("depth stranding is defined for n = 3")
    flipped_ids = [eid for eid, e in G.edges.items() if e.weight != 1]
    H = flip_edges(G, flipped_ids)
    depth = unweighted_depths(H)
    fs = faces(H)
    for vid in H.interior:
        ds = set()
        for eid, _ in H.incident(vid):
            left, right = fs.edge_sides[eid]
            ds.update((depth[left], depth[right]))
        if len(ds) < 2:
            raise ValueError(f"all faces at vertex {vid} share one depth")
    labels = {}
    for eid in H.edges:
        left, right = fs.edge_sides[eid]
        if depth[left] < depth[right]:
            word = "100"
        elif depth[left] == depth[right]:
            word = "010"
        else:
            word = "001"
        labels[eid] = word
    for eid in flipped_ids:
        labels[eid] = complement(labels[eid])
    return Stranding(labels)
