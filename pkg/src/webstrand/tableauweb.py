"""Basis webs from standard Young tableaux on rectangles.

Entries of the tableau mark boundary positions with their row; per color c
the positions marked c (openers) and c+1 (closers) are stack-matched into
noncrossing arcs.  Arcs are drawn as V-shaped polylines with per-color
slopes, directed from closer to opener, and the resulting multicolored
matching resolves into a stranded web graph: double boundary positions
grow a weight-1 edge into the boundary, and each two-color crossing
becomes a short edge carrying the difference of the colors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .qlaurent import rank_over_q
from .stranding import Stranding
from .tensorspace import lambda_word, unit_word
from .webgraph import Edge, WebGraph


@dataclass(frozen=True)
class StandardTableau:
    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_word(word: Iterable[int]) -> "StandardTableau":
        """word[i-1] is the row of entry i."""
        word = list(word)
        nrows = max(word)
        rows = [[] for _ in range(nrows)]
        for entry, r in enumerate(word, start=1):
            rows[r - 1].append(entry)
        return StandardTableau(tuple(tuple(r) for r in rows))

    def word(self) -> tuple[int, ...]:
        out = {}
        for r, row in enumerate(self.rows, start=1):
            for entry in row:
                out[entry] = r
        return tuple(out[i] for i in sorted(out))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0


def validate_tableau(T: StandardTableau) -> bool:
    """Rectangular shape, entries 1..nc, rows and columns strictly increasing."""
    rows = T.rows
    if not rows:
        return False
    c = len(rows[0])
    if any(len(r) != c for r in rows):
        return False
    entries = [x for r in rows for x in r]
    if sorted(entries) != list(range(1, len(entries) + 1)):
        return False
    for r in rows:
        if any(a >= b for a, b in zip(r, r[1:])):
            return False
    for col in zip(*rows):
        if any(a >= b for a, b in zip(col, col[1:])):
            return False
    return True


def all_syt(n: int, c: int) -> list[StandardTableau]:
    """All standard Young tableaux on the n x c rectangle, by backtracking
    over the row word."""
    out: list[StandardTableau] = []
    counts = [0] * n

    def build(word: list[int]):
        if len(word) == n * c:
            out.append(StandardTableau.from_word(word))
            return
        for r in range(n):
            if counts[r] < c and (r == 0 or counts[r] < counts[r - 1]):
                counts[r] += 1
                word.append(r + 1)
                build(word)
                word.pop()
                counts[r] -= 1

    build([])
    return out


def hook_length_count(n: int, c: int) -> int:
    total = math.factorial(n * c)
    for i in range(n):
        for j in range(c):
            total //= (n - i) + (c - j) - 1
    return total


def count_syt(n: int, c: int) -> int:
    count = len(all_syt(n, c))
    if count != hook_length_count(n, c):
        raise AssertionError("tableau enumeration disagrees with hook lengths")
    return count


def count_row_strict(n: int, k: tuple[int, ...]) -> int:
    """Row-strict fillings of the n x (sum k)/n rectangle with content
    {1^k_1, ..., m^k_m}: rows strictly increase, columns weakly increase."""
    total = sum(k)
    if total % n != 0:
        return 0
    c = total // n
    m = len(k)
    remaining = list(k)
    grid = [[0] * c for _ in range(n)]
    count = 0

    def fill(pos: int):
        nonlocal count
        if pos == n * c:
            count += 1
            return
        r, j = divmod(pos, c)
        lo = grid[r][j - 1] + 1 if j > 0 else 1
        lo = max(lo, grid[r - 1][j] if r > 0 else 1)
        for v in range(lo, m + 1):
            if remaining[v - 1] == 0:
                continue
            remaining[v - 1] -= 1
            grid[r][j] = v
            fill(pos + 1)
            grid[r][j] = 0
            remaining[v - 1] += 1

    fill(0)
    return count


# -- multicolored noncrossing matchings -------------------------------------


class Arc(NamedTuple):
    color: int
    opener: int
    closer: int


class MulticolorMatching(NamedTuple):
    positions: int
    arcs: tuple[Arc, ...]


def matching_from_tableau(T: StandardTableau) -> MulticolorMatching:
    if not validate_tableau(T):
        raise ValueError("not a standard rectangular tableau")
    word = T.word()
    arcs = []
    for color in range(1, T.nrows):
        stack: list[int] = []
        for pos, mark in enumerate(word, start=1):
            if mark == color:
                stack.append(pos)
            elif mark == color + 1:
                if not stack:
                    raise AssertionError("unmatched closer in standard tableau")
                arcs.append(Arc(color, stack.pop(), pos))
    return MulticolorMatching(len(word), tuple(arcs))


# -- resolving a matching into a stranded web --------------------------------


def _arc_polyline(arc: Arc, eps: float) -> list[tuple[float, float]]:
    """From closer to opener: right leg down, apex, left leg up."""
    slope = 1.0 + arc.color * eps
    i, j = arc.opener, arc.closer
    apex = ((i + j) / 2.0, -slope * (j - i) / 2.0)
    return [(float(j), 0.0), apex, (float(i), 0.0)]


def _polyline_point(pts, t):
    """Point at arclength t along the polyline."""
    left = t
    for p, q in zip(pts, pts[1:]):
        seg = math.dist(p, q)
        if left <= seg:
            f = left / seg
            return (p[0] + (q[0] - p[0]) * f, p[1] + (q[1] - p[1]) * f)
        left -= seg
    return pts[-1]


def _polyline_slice(pts, t0, t1):
    """Polyline from arclength t0 to t1 (0 <= t0 < t1 <= length)."""
    out = [_polyline_point(pts, t0)]
    acc = 0.0
    for p, q in zip(pts, pts[1:]):
        seg = math.dist(p, q)
        if t0 < acc + seg < t1 and acc + seg - t0 > 1e-12:
            out.append(q)
        acc += seg
    out.append(_polyline_point(pts, t1))
    return out


def _direction_at(pts, t):
    acc = 0.0
    for p, q in zip(pts, pts[1:]):
        seg = math.dist(p, q)
        if t <= acc + seg:
            return ((q[0] - p[0]) / seg, (q[1] - p[1]) / seg)
        acc += seg
    p, q = pts[-2], pts[-1]
    seg = math.dist(p, q)
    return ((q[0] - p[0]) / seg, (q[1] - p[1]) / seg)


def _seg_cross(a, b, c, d):
    r = (b[0] - a[0], b[1] - a[1])
    s = (d[0] - c[0], d[1] - c[1])
    denom = r[0] * s[1] - r[1] * s[0]
    if abs(denom) < 1e-12:
        return None
    t = ((c[0] - a[0]) * s[1] - (c[1] - a[1]) * s[0]) / denom
    u = ((c[0] - a[0]) * r[1] - (c[1] - a[1]) * r[0]) / denom
    if 1e-9 < t < 1 - 1e-9 and 1e-9 < u < 1 - 1e-9:
        return (a[0] + t * r[0], a[1] + t * r[1])
    return None


def _arclength_of(pts, point):
    acc = 0.0
    best = None
    best_d = None
    t = 0.0
    for p, q in zip(pts, pts[1:]):
        seg = math.dist(p, q)
        # Project point onto the segment.
        vx, vy = q[0] - p[0], q[1] - p[1]
        wx, wy = point[0] - p[0], point[1] - p[1]
        f = max(0.0, min(1.0, (vx * wx + vy * wy) / (seg * seg)))
        px, py = p[0] + f * vx, p[1] + f * vy
        d = math.dist((px, py), point)
        if best_d is None or d < best_d:
            best_d = d
            best = acc + f * seg
        acc += seg
    return best


class _Crossing(NamedTuple):
    point: tuple[float, float]
    low_arc: int    # index of the smaller-color arc
    high_arc: int
    t_low: float    # arclength along each arc
    t_high: float


def _find_crossings(polys, arcs):
    crossings = []
    for a in range(len(arcs)):
        for b in range(a + 1, len(arcs)):
            if arcs[a].color == arcs[b].color:
                continue
            pts = []
            for p, q in zip(polys[a], polys[a][1:]):
                for c, d in zip(polys[b], polys[b][1:]):
                    hit = _seg_cross(p, q, c, d)
                    if hit is not None:
                        pts.append(hit)
            if not pts:
                continue
            if len(pts) > 1:
                raise _Degenerate("arcs intersect more than once")
            (low, high) = (a, b) if arcs[a].color < arcs[b].color else (b, a)
            point = pts[0]
            crossings.append(_Crossing(
                point, low, high,
                _arclength_of(polys[low], point),
                _arclength_of(polys[high], point)))
    for i in range(len(crossings)):
        for j in range(i + 1, len(crossings)):
            if math.dist(crossings[i].point, crossings[j].point) < 1e-4:
                raise _Degenerate("coincident crossing points")
    return crossings


class _Degenerate(Exception):
    pass


def web_from_tableau(T: StandardTableau) -> tuple[WebGraph, Stranding]:
    """Resolve the tableau's matching into a web with its induced stranding.

    The boundary weight vector is all ones, every boundary edge points into
    the boundary, and factor j of the stranding's boundary monomial is
    x_{row of entry j}."""
    eps = 1e-3
    last = None
    for _ in range(5):
        try:
            return _build_web(T, eps)
        except _Degenerate as exc:
            last = exc
            eps *= 1.7
    raise ValueError(f"could not resolve matching: {last}")


def _build_web(T: StandardTableau, eps: float) -> tuple[WebGraph, Stranding]:
    n = T.nrows
    matching = matching_from_tableau(T)
    arcs = matching.arcs
    m = matching.positions
    word = T.word()
    polys = [_arc_polyline(arc, eps) for arc in arcs]
    lengths = [sum(math.dist(p, q) for p, q in zip(pl, pl[1:]))
               for pl in polys]
    crossings = _find_crossings(polys, arcs)

    # Events per arc: (arclength, crossing index); endpoints are features too.
    events: list[list[tuple[float, int]]] = [[] for _ in arcs]
    for ci, cr in enumerate(crossings):
        events[cr.low_arc].append((cr.t_low, ci))
        events[cr.high_arc].append((cr.t_high, ci))
    for ev in events:
        ev.sort()

    # A safe clearance: smaller than any gap between events, apexes, and
    # the arc endpoints.
    gaps = [0.4]
    for ai, ev in enumerate(events):
        apex_t = _arclength_of(polys[ai], polys[ai][1])
        marks = [0.0] + [t for t, _ in ev] + [lengths[ai]]
        for t, _ in ev:
            gaps.append(abs(t - apex_t))
        gaps.extend(b - a for a, b in zip(marks, marks[1:]))
    delta = 0.25 * min(gaps)
    if delta < 1e-6:
        raise _Degenerate("features too close together")

    boundary = tuple((f"b{i}", float(i)) for i in range(1, m + 1))
    interior: dict[str, tuple[float, float]] = {}
    edges: dict[str, Edge] = {}
    labels: dict[str, str] = {}
    counter = {"v": 0, "e": 0}

    def fresh(prefix):
        counter[prefix] += 1
        return f"{prefix}{counter[prefix]}"

    def add_vertex(pos):
        vid = fresh("v")
        interior[vid] = pos
        return vid

    def add_edge(tail, head, weight, pts, label):
        eid = fresh("e")
        edges[eid] = Edge(eid, tail, head, weight, tuple(pts[1:-1]))
        labels[eid] = label
        return eid

    # Crossing vertices: v_top ends the low arc's incoming run and starts
    # the high arc's outgoing run; v_bot the other way around.  The new
    # edge v_bot -> v_top runs with the higher color.
    cross_v: list[tuple[str, str]] = []
    for cr in crossings:
        u_low = _direction_at(polys[cr.low_arc], cr.t_low)
        u_high = _direction_at(polys[cr.high_arc], cr.t_high)
        p = cr.point
        v_top = add_vertex((p[0] - delta * u_low[0], p[1] - delta * u_low[1]))
        v_bot = add_vertex((p[0] - delta * u_high[0], p[1] - delta * u_high[1]))
        cross_v.append((v_top, v_bot))
        ca = arcs[cr.low_arc].color
        cb = arcs[cr.high_arc].color
        label = "0" * ca + "1" * (cb - ca) + "0" * (n - cb)
        add_edge(v_bot, v_top, cb - ca, [interior[v_bot], interior[v_top]], label)

    # Boundary resolution: double positions grow a weight-1 edge upward.
    double_v: dict[int, str] = {}
    for pos in range(1, m + 1):
        r = word[pos - 1]
        if 2 <= r <= n - 1:
            vid = add_vertex((float(pos), -delta))
            double_v[pos] = vid
            add_edge(vid, f"b{pos}", 1, [interior[vid], (float(pos), 0.0)],
                     unit_word(r, n))

    # Walk each arc, cutting at crossings and rerouting through the new
    # vertices; every run becomes one edge of the arc's color.
    for ai, arc in enumerate(arcs):
        pts = polys[ai]
        total = lengths[ai]
        color = arc.color
        start_t = 0.0
        if arc.closer in double_v:
            cur_v = double_v[arc.closer]
            start_t = 2 * delta
        else:
            cur_v = f"b{arc.closer}"
        end_t = total
        end_v = f"b{arc.opener}"
        if arc.opener in double_v:
            end_v = double_v[arc.opener]
            end_t = total - 2 * delta
        runs = []
        t_prev = start_t
        v_prev = cur_v
        for t, ci in events[ai]:
            cr = crossings[ci]
            v_top, v_bot = cross_v[ci]
            if ai == cr.low_arc:
                v_in, v_out = v_top, v_bot
            else:
                v_in, v_out = v_bot, v_top
            runs.append((v_prev, t_prev, t - delta, v_in))
            v_prev = v_out
            t_prev = t + delta
        runs.append((v_prev, t_prev, end_t, end_v))
        for tail, t0, t1, head in runs:
            mid = _polyline_slice(pts, t0, t1)
            pts_full = []
            if tail.startswith("v"):
                pts_full.append(interior[tail])
            pts_full.extend(mid)
            if head.startswith("v"):
                pts_full.append(interior[head])
            # Drop near-duplicate consecutive points.
            cleaned = [pts_full[0]]
            for p in pts_full[1:]:
                if math.dist(p, cleaned[-1]) > 1e-9:
                    cleaned.append(p)
            add_edge(tail, head, color, cleaned, lambda_word(color, n))

    G = WebGraph(n, boundary, interior, edges)
    return G, Stranding(labels)


# -- exact basis rank ---------------------------------------------------------


def tableau_webs(n: int, m: int) -> dict[str, tuple[WebGraph, Stranding]]:
    if m % n != 0:
        raise ValueError("m must be divisible by n")
    out = {}
    for T in all_syt(n, m // n):
        name = "t" + "".join(map(str, T.word()))
        out[name] = web_from_tableau(T)
    return out


def basis_rank_check(n: int, m: int) -> bool:
    """Web vectors of all standard-tableau webs span a space of dimension
    equal to the tableau count."""
    from .invariantvec import web_vector
    vectors = [web_vector(G) for G, _ in tableau_webs(n, m).values()]
    monomials = sorted({mono for v in vectors for mono in v.monomials()})
    rows = [[v.coefficient(mono) for mono in monomials] for v in vectors]
    return rank_over_q(rows) == count_syt(n, m // n)
