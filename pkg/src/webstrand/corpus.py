"""Built-in webs used throughout the tests and the command line tools:
cups, tripods of both vertex types, vertexless loops, a disjoint pair of
cups, and the four-point sl4 example with boundary weights (1,1,3,3)."""

from __future__ import annotations

import math

from .webgraph import Edge, WebGraph


def cup_web(n: int, k: int) -> WebGraph:
    """Single edge b1 -> b2 of weight k; boundary weight vector (n-k, k)."""
    return WebGraph(
        n=n,
        boundary=(("b1", 1.0), ("b2", 2.0)),
        interior={},
        edges={"e1": Edge("e1", "b1", "b2", k, ((1.5, -0.75),))},
    )


def tripod_web(n: int, k: int, l: int, m: int) -> WebGraph:
    """Tripod with all edges directed out of the center, weights (k, l, m)
    left to right; k + l + m must be n (Type I) or 2n (Type II)."""
    if (k + l + m) % n != 0:
        raise ValueError("tripod weights must conserve flow mod n")
    return WebGraph(
        n=n,
        boundary=(("b1", 1.0), ("b2", 2.0), ("b3", 3.0)),
        interior={"v": (2.0, -1.0)},
        edges={
            "e1": Edge("e1", "v", "b1", k),
            "e2": Edge("e2", "v", "b2", l),
            "e3": Edge("e3", "v", "b3", m),
        },
    )


def loop_web(n: int, k: int, points: int = 8) -> WebGraph:
    """Vertexless counterclockwise loop of weight k below the axis."""
    via = tuple(
        (2.0 + math.cos(2 * math.pi * t / points),
         -2.0 + math.sin(2 * math.pi * t / points))
        for t in range(points)
    )
    return WebGraph(n=n, boundary=(), interior={},
                    edges={"e1": Edge("e1", None, None, k, via)})


def two_cup_web(n: int, k1: int, k2: int, nested: bool = False) -> WebGraph:
    """Two disjoint cups, side by side or nested."""
    if nested:
        edges = {
            "e1": Edge("e1", "b1", "b4", k1, ((1.5, -1.5), (3.5, -1.5))),
            "e2": Edge("e2", "b2", "b3", k2, ((2.5, -0.5),)),
        }
    else:
        edges = {
            "e1": Edge("e1", "b1", "b2", k1, ((1.5, -0.75),)),
            "e2": Edge("e2", "b3", "b4", k2, ((3.5, -0.75),)),
        }
    return WebGraph(
        n=n,
        boundary=(("b1", 1.0), ("b2", 2.0), ("b3", 3.0), ("b4", 4.0)),
        interior={},
        edges=edges,
    )


def running_example() -> WebGraph:
    """The sl4 web with boundary weight vector (1, 1, 3, 3): two Type I
    vertices on the left, two Type II on the right."""
    return WebGraph(
        n=4,
        boundary=(("b1", 1.0), ("b2", 2.0), ("b3", 5.0), ("b4", 6.0)),
        interior={"v1": (3.0, -1.0), "v2": (4.0, -1.0),
                  "v3": (3.0, -2.0), "v4": (4.0, -2.0)},
        edges={
            "e1": Edge("e1", "v3", "b1", 1, ((1.8, -1.95), (1.05, -1.0))),
            "e2": Edge("e2", "b2", "v1", 3, ((2.0, -0.85), (2.5, -1.0))),
            "e3": Edge("e3", "v1", "v3", 2),
            "e4": Edge("e4", "v4", "v3", 3),
            "e5": Edge("e5", "v2", "b3", 3, ((4.5, -0.95), (5.0, -0.6))),
            "e6": Edge("e6", "v1", "v2", 1),
            "e7": Edge("e7", "b4", "v4", 1, ((6.0, -1.0), (5.0, -1.9))),
            "e8": Edge("e8", "v4", "v2", 2),
        },
    )


def cups(max_n: int = 5) -> dict[str, WebGraph]:
    out = {}
    for n in range(2, max_n + 1):
        for k in range(1, n):
            out[f"cup_n{n}_k{k}"] = cup_web(n, k)
    return out


def tripods(max_n: int = 5) -> dict[str, WebGraph]:
    out = {}
    for n in range(2, max_n + 1):
        for k in range(1, n):
            for l in range(1, n - k):
                m = n - k - l
                if 1 <= m <= n - 1:
                    out[f"tripod1_n{n}_k{k}_l{l}"] = tripod_web(n, k, l, m)
        for k in range(1, n):
            for l in range(1, n):
                m = 2 * n - k - l
                if 1 <= m <= n - 1:
                    out[f"tripod2_n{n}_k{k}_l{l}"] = tripod_web(n, k, l, m)
    return out


def loops(max_n: int = 6) -> dict[str, WebGraph]:
    out = {}
    for n in range(2, max_n + 1):
        for k in range(1, n):
            out[f"loop_n{n}_k{k}"] = loop_web(n, k)
    return out


def standard_corpus(max_n: int = 5) -> dict[str, WebGraph]:
    """Cups and tripods up to max_n, the running sl4 example, and two
    disjoint-cup webs.  Tableau webs are built separately."""
    out = {}
    out.update(cups(max_n))
    out.update(tripods(max_n))
    out["running_sl4"] = running_example()
    out["two_cups_n3"] = two_cup_web(3, 1, 2)
    out["nested_cups_n3"] = two_cup_web(3, 1, 2, nested=True)
    return out
