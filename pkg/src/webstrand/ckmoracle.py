"""Composition-of-maps oracle for web vectors.

A DecompositionProgram is a bottom-to-top sequence of layers, each acting
on one slot of a tensor signature (merge, split, dualities, cups, caps,
and the flat cap).  Evaluating the layers from the scalar 1 gives the
oracle vector g; the same program renders to a web graph built from cups,
tripods and caps, whose state-sum vector must equal sgn * g.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .qlaurent import LaurentPoly, ONE
from .tensorspace import (TensorFactor, WebVector, all_words, complement,
                          inversion_ell, monomial, weight, word_add,
                          words_disjoint)
from .webgraph import Edge, WebGraph

Signature = tuple[tuple[int, bool], ...]   # (weight, dual) per factor


class Primitive(NamedTuple):
    kind: str
    slot: int
    k: int
    l: int | None = None


# kind -> (input factors, output factors) as functions of (n, k, l)
def primitive_signature(n: int, p: Primitive) -> tuple[Signature, Signature]:
    k, l = p.k, p.l
    if p.kind == "MergeM":
        return ((k, False), (l, False)), ((k + l, False),)
    if p.kind == "SplitM'":
        return ((k + l, False),), ((k, False), (l, False))
    if p.kind in ("Dual_D", "Dual_D_signed"):
        return ((k, False),), ((n - k, True),)
    if p.kind in ("DualInv", "DualInv_signed"):
        # k is the output weight; the input is the dual of weight n-k.
        return ((n - k, True),), ((k, False),)
    if p.kind == "CupLeft_C_L":
        return ((k, True), (k, False)), ()
    if p.kind == "CupRight_C_R":
        return (), ((k, True), (k, False))
    if p.kind == "CapLeft_CL":
        return (), ((k, False), (k, True))
    if p.kind == "CapRight_CR":
        return ((k, False), (k, True)), ()
    if p.kind == "FCap_C":
        return ((k, False), (n - k, False)), ()
    raise ValueError(f"unknown primitive kind {p.kind!r}")


def fcap(n: int, k: int, left: TensorFactor, right: TensorFactor) -> LaurentPoly:
    """Cap pairing V_k (x) V_{n-k} -> scalars: (-q)^(number of clockwise
    flows across the cap) when the right word complements the left."""
    if left.dual or right.dual:
        raise ValueError("cap expects non-dual factors")
    if weight(left.word) != k or weight(right.word) != n - k:
        raise ValueError("cap weight mismatch")
    if right.word != complement(left.word):
        return LaurentPoly.zero()
    return LaurentPoly.minus_q_power(inversion_ell(left.word,
                                                   complement(left.word)))


def _apply_local(n: int, p: Primitive, factors: tuple[TensorFactor, ...]) \
        -> list[tuple[LaurentPoly, tuple[TensorFactor, ...]]]:
    """Primitive applied to exactly its input factors; returns the formal
    sum as (coefficient, output factors) pairs."""
    k, l = p.k, p.l
    if p.kind == "MergeM":
        b1, b2 = factors[0].word, factors[1].word
        if not words_disjoint(b1, b2):
            return []
        c = LaurentPoly.minus_q_power(inversion_ell(b1, b2))
        return [(c, (TensorFactor(word_add(b1, b2)),))]
    if p.kind == "SplitM'":
        b = factors[0].word
        sign = -1 if (k * l) % 2 else 1
        out = []
        for b1 in all_words(n, k):
            contained = all(y == "1" for x, y in zip(b1, b) if x == "1")
            if contained:
                b2 = "".join("1" if (x == "0" and y == "1") else "0"
                             for x, y in zip(b1, b))
                c = LaurentPoly.minus_q_power(-inversion_ell(b2, b1)).scale(sign)
                out.append((c, (TensorFactor(b1), TensorFactor(b2))))
        return out
    if p.kind in ("Dual_D", "Dual_D_signed"):
        b = factors[0].word
        c = LaurentPoly.minus_q_power(inversion_ell(b, complement(b)))
        if p.kind.endswith("signed") and (k * (n - k)) % 2:
            c = c.scale(-1)
        return [(c, (TensorFactor(complement(b), True),))]
    if p.kind in ("DualInv", "DualInv_signed"):
        b = factors[0].word
        c = LaurentPoly.minus_q_power(-inversion_ell(complement(b), b))
        if p.kind.endswith("signed") and (k * (n - k)) % 2:
            c = c.scale(-1)
        return [(c, (TensorFactor(complement(b)),))]
    if p.kind == "CupLeft_C_L":
        b1, b2 = factors
        if b1.word == b2.word:
            return [(ONE, ())]
        return []
    if p.kind == "CupRight_C_R":
        out = []
        for b in all_words(n, k):
            e = k * (n - k) - 2 * inversion_ell(b, complement(b))
            out.append((LaurentPoly.q_power(e),
                        (TensorFactor(b, True), TensorFactor(b))))
        return out
    if p.kind == "CapLeft_CL":
        return [(ONE, (TensorFactor(b), TensorFactor(b, True)))
                for b in all_words(n, k)]
    if p.kind == "CapRight_CR":
        b1, b2 = factors
        if b1.word == b2.word:
            e = 2 * inversion_ell(b1.word, complement(b1.word)) - k * (n - k)
            return [(LaurentPoly.q_power(e), ())]
        return []
    if p.kind == "FCap_C":
        return [(fcap(n, k, factors[0], factors[1]), ())]
    raise ValueError(f"unknown primitive kind {p.kind!r}")


def apply_primitive(n: int, p: Primitive, v: WebVector) -> WebVector:
    """Apply p at its slot with identity on the other factors."""
    sig_in, _ = primitive_signature(n, p)
    arity = len(sig_in)
    ambient = v.ambient_signature()
    if ambient is not None:
        if p.slot < 0 or p.slot + arity > len(ambient):
            raise ValueError(f"slot {p.slot} out of range for {p.kind}")
        if tuple(ambient[p.slot:p.slot + arity]) != sig_in:
            raise ValueError(
                f"{p.kind} at slot {p.slot} expects {sig_in}, found "
                f"{tuple(ambient[p.slot:p.slot + arity])}")

    def per_term(m, c):
        local = m[p.slot:p.slot + arity]
        acc = WebVector.zero()
        for coeff, out in _apply_local(n, p, local):
            if coeff.is_zero():
                continue
            acc = acc + WebVector.of(m[:p.slot] + out + m[p.slot + arity:],
                                     c * coeff)
        return acc

    return v.map_terms(per_term)


# -- pieces and programs -----------------------------------------------------


class Piece(NamedTuple):
    kind: str                 # 'cup' | 'tripod1' | 'tripod2' | 'cap'
    slot: int
    weights: tuple[int, ...]  # cup: (k,); tripod1: (k, l); tripod2: (k, l, m);
                              # cap: (k,)


def piece_layers(n: int, piece: Piece) -> list[Primitive]:
    s = piece.slot
    if piece.kind == "cup":
        (k,) = piece.weights
        return [Primitive("CapLeft_CL", s, n - k),
                Primitive("DualInv", s + 1, k)]
    if piece.kind == "tripod1":
        k, l = piece.weights
        m = n - k - l
        return [Primitive("CapLeft_CL", s, k + l),
                Primitive("DualInv", s + 1, m),
                Primitive("SplitM'", s, k, l)]
    if piece.kind == "tripod2":
        k, l, m = piece.weights
        if k + l + m != 2 * n:
            raise ValueError("tripod2 weights must sum to 2n")
        return [Primitive("CapLeft_CL", s, n - m),
                Primitive("DualInv", s + 1, m),
                Primitive("CapLeft_CL", s + 1, n - l),
                Primitive("DualInv", s + 2, l),
                Primitive("MergeM", s, n - m, n - l)]
    if piece.kind == "cap":
        (k,) = piece.weights
        return [Primitive("FCap_C", s, k)]
    raise ValueError(f"unknown piece kind {piece.kind!r}")


def piece_sign(piece: Piece) -> int:
    if piece.kind == "tripod1":
        k, l = piece.weights
        return -1 if (k * l) % 2 else 1
    return 1


@dataclass(frozen=True)
class DecompositionProgram:
    n: int
    layers: tuple[Primitive, ...]
    pieces: tuple[Piece, ...] | None = None

    def signature_trace(self) -> list[Signature]:
        """Signatures between layers, starting from the scalar."""
        sig: Signature = ()
        trace = [sig]
        for p in self.layers:
            sin, sout = primitive_signature(self.n, p)
            if p.slot < 0 or p.slot + len(sin) > len(sig):
                if sin or p.slot > len(sig):
                    raise ValueError(f"layer {p} does not fit signature {sig}")
            if tuple(sig[p.slot:p.slot + len(sin)]) != sin:
                raise ValueError(
                    f"layer {p} expects {sin} at slot {p.slot} in {sig}")
            sig = sig[:p.slot] + sout + sig[p.slot + len(sin):]
            trace.append(sig)
        return trace

    def boundary_signature(self) -> Signature:
        return self.signature_trace()[-1]


def program_from_pieces(n: int, pieces: Iterable[Piece]) -> DecompositionProgram:
    pieces = tuple(pieces)
    layers: list[Primitive] = []
    for piece in pieces:
        layers.extend(piece_layers(n, piece))
    prog = DecompositionProgram(n, tuple(layers), pieces)
    prog.signature_trace()   # raises early on malformed stacks
    return prog


def eval_program(P: DecompositionProgram) -> WebVector:
    P.signature_trace()
    v = WebVector.scalar()
    for p in P.layers:
        v = apply_primitive(P.n, p, v)
    return v


def program_sign(P: DecompositionProgram) -> int:
    sign = 1
    for piece in _pieces_of(P):
        sign *= piece_sign(piece)
    return sign


def _pieces_of(P: DecompositionProgram) -> tuple[Piece, ...]:
    if P.pieces is not None:
        return P.pieces
    return infer_pieces(P)


def infer_pieces(P: DecompositionProgram) -> tuple[Piece, ...]:
    """Recover the cup/tripod/cap structure from raw layers by matching
    the fixed expansion patterns (longest first)."""
    layers = list(P.layers)
    pieces = []
    i = 0
    while i < len(layers):
        found = None
        for kind, params in _pattern_candidates(P.n, layers, i):
            found = Piece(kind, layers[i].slot, params)
            break
        if found is None:
            raise ValueError(
                f"layers at position {i} do not match any piece pattern")
        pieces.append(found)
        i += len(piece_layers(P.n, found))
    return tuple(pieces)


def _pattern_candidates(n, layers, i):
    def match(kind, params):
        piece = Piece(kind, layers[i].slot, params)
        want = piece_layers(n, piece)
        got = layers[i:i + len(want)]
        return list(got) == want

    first = layers[i]
    if first.kind == "CapLeft_CL" and i + 4 < len(layers):
        merge = layers[i + 4]
        if merge.kind == "MergeM":
            m = n - first.k
            l = n - (merge.l or 0)
            k = 2 * n - l - m
            if match("tripod2", (k, l, m)):
                yield "tripod2", (k, l, m)
    if first.kind == "CapLeft_CL" and i + 2 < len(layers):
        split = layers[i + 2]
        if split.kind == "SplitM'" and match("tripod1", (split.k, split.l)):
            yield "tripod1", (split.k, split.l)
    if first.kind == "CapLeft_CL" and i + 1 < len(layers):
        k = n - first.k
        if match("cup", (k,)):
            yield "cup", (k,)
    if first.kind == "FCap_C" and match("cap", (first.k,)):
        yield "cap", (first.k,)


# -- rendering to a Fontaine web ---------------------------------------------


class _BuildEdge:
    __slots__ = ("tail", "head", "weight", "pts")

    def __init__(self, tail, head, weight, pts):
        self.tail = tail
        self.head = head
        self.weight = weight
        self.pts = pts   # full coordinate list tail..head; None ends pending


class _Port(NamedTuple):
    x: float
    edge: str
    end: str    # 'head' | 'tail'


AXIS_Y = -2.0


def render_program(P: DecompositionProgram) -> WebGraph:
    """Draw the program as a Fontaine web: cups and tripods below an
    internal axis, cap arcs above it, verticals up to the boundary."""
    pieces = _pieces_of(P)
    n = P.n
    edges: dict[str, _BuildEdge] = {}
    interior: dict[str, tuple[float, float]] = {}
    ports: list[_Port] = []
    shadows: list[tuple[float, float]] = []   # x intervals under cap arcs
    counter = {"e": 0, "v": 0}

    def fresh(prefix):
        counter[prefix] += 1
        return f"{prefix}{counter[prefix]}"

    def insert_xs(slot: int, count: int) -> list[float]:
        """x positions for new ports in the gap at the given slot, avoiding
        intervals already covered by cap arcs (their shadows would block
        the final verticals up to the boundary)."""
        marks = [p.x for p in ports] + [x for s in shadows for x in s]
        lo_default, hi_default = (min(marks, default=0.0),
                                  max(marks, default=0.0))
        a = ports[slot - 1].x if slot > 0 else lo_default - 2.0
        b = ports[slot].x if slot < len(ports) else hi_default + 2.0
        cur = a
        free: list[tuple[float, float]] = []
        for sa, sb in sorted(s for s in shadows if s[0] < b and s[1] > a):
            if sa > cur:
                free.append((cur, min(sa, b)))
            cur = max(cur, sb)
        if cur < b:
            free.append((cur, b))
        lo, hi = next((iv for iv in free if iv[1] - iv[0] > 1e-6), (a, b))
        return [lo + (hi - lo) * (i + 1) / (count + 1) for i in range(count)]

    def flip_build_edge(eid: str):
        e = edges[eid]
        e.tail, e.head = e.head, e.tail
        e.weight = n - e.weight
        e.pts = list(reversed(e.pts))
        for idx, port in enumerate(ports):
            if port.edge == eid:
                ports[idx] = port._replace(
                    end="head" if port.end == "tail" else "tail")

    for t, piece in enumerate(pieces):
        depth = 1.5 * (0.55 ** t)
        cap_h = 1.6 - 1.2 * (0.55 ** t)
        s = piece.slot
        if piece.kind == "cup":
            (k,) = piece.weights
            x1, x2 = insert_xs(s, 2)
            eid = fresh("e")
            edges[eid] = _BuildEdge(None, None, k, [
                (x1, AXIS_Y), (x1, AXIS_Y - depth),
                (x2, AXIS_Y - depth), (x2, AXIS_Y)])
            ports[s:s] = [_Port(x1, eid, "tail"), _Port(x2, eid, "head")]
        elif piece.kind in ("tripod1", "tripod2"):
            if piece.kind == "tripod1":
                k, l = piece.weights
                ws = (k, l, n - k - l)
            else:
                ws = piece.weights
            x1, x2, x3 = insert_xs(s, 3)
            vid = fresh("v")
            center = (x2, AXIS_Y - 1.25 * depth)
            interior[vid] = center
            new_ports = []
            for x, w in zip((x1, x2, x3), ws):
                eid = fresh("e")
                if x == x2:
                    pts = [center, (x, AXIS_Y)]
                else:
                    pts = [center, (x, AXIS_Y - depth), (x, AXIS_Y)]
                edges[eid] = _BuildEdge(vid, None, w, pts)
                new_ports.append(_Port(x, eid, "head"))
            ports[s:s] = new_ports
        elif piece.kind == "cap":
            (k,) = piece.weights
            p1, p2 = ports[s], ports[s + 1]
            if p1.end != "head":
                flip_build_edge(p1.edge)
                p1 = ports[s]
            if ports[s + 1].end != "tail":
                flip_build_edge(ports[s + 1].edge)
            p2 = ports[s + 1]
            arc = [(p1.x, AXIS_Y + cap_h), (p2.x, AXIS_Y + cap_h)]
            shadows.append((min(p1.x, p2.x), max(p1.x, p2.x)))
            e1, e2 = edges[p1.edge], edges[p2.edge]
            if e1.weight != k:
                raise ValueError("cap weight does not match its left edge")
            if p1.edge == p2.edge:
                # Capping both ends of one cup: a vertexless closed loop.
                e1.tail = e1.head = None
                e1.pts = e1.pts + arc
            else:
                if e1.weight != e2.weight:
                    raise ValueError("cap joins edges of different weights")
                e1.head = e2.head
                e1.pts = e1.pts + arc + e2.pts
                for idx, port in enumerate(ports):
                    if port.edge == p2.edge:
                        ports[idx] = port._replace(edge=p1.edge)
                del edges[p2.edge]
            del ports[s:s + 2]
        else:
            raise ValueError(f"unknown piece kind {piece.kind!r}")

    boundary = []
    for j, port in enumerate(sorted(ports, key=lambda p: p.x)):
        bid = f"b{j + 1}"
        boundary.append((bid, port.x))
        e = edges[port.edge]
        if port.end == "head":
            e.head = bid
            e.pts = e.pts + [(port.x, 0.0)]
        else:
            e.tail = bid
            e.pts = [(port.x, 0.0)] + e.pts

    final = {}
    for eid, e in edges.items():
        if e.tail is None and e.head is None:
            pts = e.pts
            if pts[0] == pts[-1]:
                pts = pts[:-1]
            final[eid] = Edge(eid, None, None, e.weight, tuple(pts))
        else:
            final[eid] = Edge(eid, e.tail, e.head, e.weight,
                              tuple(e.pts[1:-1]))
    return WebGraph(n, tuple(boundary), interior, final)


def compare_f_g(P: DecompositionProgram) -> bool:
    """web_vector(render_program(P)) == program_sign(P) * eval_program(P)."""
    from .invariantvec import web_vector
    got = web_vector(render_program(P))
    want = eval_program(P).scale(LaurentPoly.const(program_sign(P)))
    return got == want


# -- JSON form ---------------------------------------------------------------


def _prim_to_json(n: int, p: Primitive, width: int) -> list:
    sin, _ = primitive_signature(n, p)
    arity = len(sin)
    slots: list = ["id"] * width
    obj = {"prim": p.kind, "k": p.k}
    if p.l is not None:
        obj["l"] = p.l
    if arity == 0:
        slots.insert(p.slot, obj)
    else:
        slots[p.slot:p.slot + arity] = [obj]
    return slots


def to_json_obj(P: DecompositionProgram) -> dict:
    trace = P.signature_trace()
    layers = []
    for p, sig in zip(P.layers, trace):
        sin, _ = primitive_signature(P.n, p)
        layers.append({"slots": _prim_to_json(P.n, p, len(sig))})
    out = {"n": P.n, "layers": layers}
    if P.pieces is not None:
        out["pieces"] = [{"kind": pc.kind, "slot": pc.slot,
                          "weights": list(pc.weights)} for pc in P.pieces]
    return out


def serialize(P: DecompositionProgram) -> str:
    return json.dumps(to_json_obj(P), indent=2) + "\n"


def from_json_obj(obj: dict) -> DecompositionProgram:
    n = obj["n"]
    layers = []
    for layer in obj["layers"]:
        slots = layer["slots"]
        prims = [(i, s) for i, s in enumerate(slots) if s != "id"]
        if len(prims) != 1:
            raise ValueError("each layer must hold exactly one primitive")
        i, spec = prims[0]
        layers.append(Primitive(spec["prim"], i, spec["k"], spec.get("l")))
    pieces = None
    if "pieces" in obj:
        pieces = tuple(Piece(pc["kind"], pc["slot"], tuple(pc["weights"]))
                       for pc in obj["pieces"])
    P = DecompositionProgram(n, tuple(layers), pieces)
    P.signature_trace()
    if pieces is not None:
        expanded = []
        for pc in pieces:
            expanded.extend(piece_layers(n, pc))
        if tuple(expanded) != P.layers:
            raise ValueError("piece annotations do not match the layers")
    return P


def parse(text: str) -> DecompositionProgram:
    return from_json_obj(json.loads(text))


# -- builders ----------------------------------------------------------------


def cup_program(n: int, k: int) -> DecompositionProgram:
    return program_from_pieces(n, [Piece("cup", 0, (k,))])


def tripod1_program(n: int, k: int, l: int) -> DecompositionProgram:
    return program_from_pieces(n, [Piece("tripod1", 0, (k, l))])


def tripod2_program(n: int, k: int, l: int, m: int) -> DecompositionProgram:
    return program_from_pieces(n, [Piece("tripod2", 0, (k, l, m))])


def random_program(n: int, rng, npieces: int = 3) -> DecompositionProgram:
    """Random stack of cups, tripods and caps with a consistent signature.

    A cap never seals off a connected component into a closed piece unless
    it is the very last move and nothing else remains (the whole web then
    being a single vertexless loop)."""
    pieces: list[Piece] = []
    sig: list[int] = []      # non-dual weights, bottom signature so far
    comp: list[int] = []     # component id per slot
    next_comp = 0

    def creations():
        opts = [("cup", (k,)) for k in range(1, n)]
        for k in range(1, n):
            for l in range(1, n - k):
                if 1 <= n - k - l <= n - 1:
                    opts.append(("tripod1", (k, l)))
        for k in range(1, n):
            for l in range(1, n):
                m = 2 * n - k - l
                if 1 <= m <= n - 1:
                    opts.append(("tripod2", (k, l, m)))
        return opts

    for step in range(npieces):
        last = step == npieces - 1
        caps = []
        for s in range(len(sig) - 1):
            if sig[s] + sig[s + 1] != n:
                continue
            same = comp[s] == comp[s + 1]
            closes = same and comp.count(comp[s]) == 2
            if closes and not (last and len(sig) == 2):
                continue
            caps.append(s)
        if caps and rng.random() < 0.35:
            s = rng.choice(caps)
            pieces.append(Piece("cap", s, (sig[s],)))
            merged = comp[s]
            other = comp[s + 1]
            del sig[s:s + 2]
            del comp[s:s + 2]
            comp[:] = [merged if c == other else c for c in comp]
            continue
        kind, weights = rng.choice(creations())
        s = rng.randint(0, len(sig))
        pieces.append(Piece(kind, s, weights))
        if kind == "cup":
            new = [n - weights[0], weights[0]]
        elif kind == "tripod1":
            k, l = weights
            new = [k, l, n - k - l]
        else:
            new = list(weights)
        sig[s:s] = new
        comp[s:s] = [next_comp] * len(new)
        next_comp += 1
    return program_from_pieces(n, pieces)
