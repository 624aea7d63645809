"""Deterministic SVG drawings of webs, strandings, and flow overlays."""

from __future__ import annotations

from .stranding import Stranding, binary_to_strands, flows
from .webgraph import WebGraph

# Color c maps to entry c-1; mirrors the blue/red/green/orange figures.
PALETTE = ("#1f4fd8", "#d82719", "#1e9e3a", "#e88412",
           "#8023c9", "#118a8a", "#d625ac", "#7a4b12")

SCALE = 60.0
MARGIN = 40.0


def _bounds(G: WebGraph):
    pts = []
    for eid in G.edges:
        pts.extend(G.polyline(eid))
    for bid, x in G.boundary:
        pts.append((x, 0.0))
    if not pts:
        pts = [(0.0, 0.0), (1.0, -1.0)]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


class _Canvas:
    def __init__(self, G: WebGraph):
        x0, x1, y0, y1 = _bounds(G)
        self.x0 = x0 - 0.5
        self.y1 = max(y1, 0.0) + 0.3
        self.width = (x1 - x0 + 1.0) * SCALE + 2 * MARGIN
        self.height = (self.y1 - y0 + 0.6) * SCALE + 2 * MARGIN
        self.parts: list[str] = []

    def pt(self, p):
        x = MARGIN + (p[0] - self.x0) * SCALE
        y = MARGIN + (self.y1 - p[1]) * SCALE
        return x, y

    def path(self, pts, color, width, dashed=False, opacity=1.0):
        d = "M " + " L ".join(f"{x:.2f} {y:.2f}" for x, y in map(self.pt, pts))
        dash = ' stroke-dasharray="6 4"' if dashed else ""
        self.parts.append(
            f'<path d="{d}" fill="none" stroke="{color}" '
            f'stroke-width="{width}" opacity="{opacity}"{dash}/>')

    def arrow(self, p, q, color):
        """Small arrowhead at the midpoint of segment p -> q."""
        (x1, y1), (x2, y2) = self.pt(p), self.pt(q)
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        dx, dy = x2 - x1, y2 - y1
        norm = (dx * dx + dy * dy) ** 0.5 or 1.0
        ux, uy = dx / norm, dy / norm
        size = 7.0
        left = (mx - size * ux + size * 0.5 * uy, my - size * uy - size * 0.5 * ux)
        right = (mx - size * ux - size * 0.5 * uy, my - size * uy + size * 0.5 * ux)
        self.parts.append(
            f'<path d="M {left[0]:.2f} {left[1]:.2f} L {mx:.2f} {my:.2f} '
            f'L {right[0]:.2f} {right[1]:.2f}" fill="none" '
            f'stroke="{color}" stroke-width="1.6"/>')

    def dot(self, p, r=4.0):
        x, y = self.pt(p)
        self.parts.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}"/>')

    def text(self, p, s, color="#444444"):
        x, y = self.pt(p)
        self.parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="13" '
            f'fill="{color}">{s}</text>')

    def render(self) -> str:
        head = (f'<svg xmlns="http://www.w3.org/2000/svg" '
                f'width="{self.width:.0f}" height="{self.height:.0f}">')
        return head + "\n" + "\n".join(self.parts) + "\n</svg>\n"


def _offset_polyline(pts, offset):
    """Crude parallel offset: shift each point by the average normal."""
    out = []
    for i, p in enumerate(pts):
        a = pts[max(i - 1, 0)]
        b = pts[min(i + 1, len(pts) - 1)]
        dx, dy = b[0] - a[0], b[1] - a[1]
        norm = (dx * dx + dy * dy) ** 0.5 or 1.0
        out.append((p[0] - offset * dy / norm, p[1] + offset * dx / norm))
    return out


def _mid_segment(pts):
    return pts[len(pts) // 2 - 1], pts[len(pts) // 2]


def render_svg(G: WebGraph, S: Stranding | None = None,
               flow_pair: tuple[int, int] | None = None) -> str:
    cv = _Canvas(G)
    if G.boundary:
        x_lo = G.boundary[0][1] - 0.5
        x_hi = G.boundary[-1][1] + 0.5
        cv.path([(x_lo, 0.0), (x_hi, 0.0)], "#999999", 1.0, dashed=True)
    for eid in sorted(G.edges):
        pts = G.polyline(eid)
        cv.path(pts, "#000000", 2.0)
        cv.arrow(*_mid_segment(pts), "#000000")
        mid = pts[len(pts) // 2]
        cv.text((mid[0] + 0.08, mid[1] + 0.08), str(G.edges[eid].weight))
    if S is not None:
        for eid in sorted(G.edges):
            pts = G.polyline(eid)
            strands = binary_to_strands(S.labels[eid])
            for idx, color in enumerate(sorted(strands)):
                shifted = _offset_polyline(pts, 0.06 * (idx + 1))
                hue = PALETTE[(color - 1) % len(PALETTE)]
                cv.path(shifted, hue, 1.6, opacity=0.9)
                a, b = _mid_segment(shifted)
                if strands[color] == "against":
                    a, b = b, a
                cv.arrow(a, b, hue)
    if flow_pair is not None and S is not None:
        i, j = flow_pair
        for comp in flows(G, S):
            if comp.pair != (i, j):
                continue
            for eid, with_edge in comp.traversals:
                pts = _offset_polyline(G.polyline(eid), -0.08)
                cv.path(pts, "#7733bb", 3.0, opacity=0.55)
                a, b = _mid_segment(pts)
                if not with_edge:
                    a, b = b, a
                cv.arrow(a, b, "#7733bb")
    for vid in sorted(G.interior):
        cv.dot(G.interior[vid])
    for bid, x in G.boundary:
        cv.dot((x, 0.0))
    return cv.render()
