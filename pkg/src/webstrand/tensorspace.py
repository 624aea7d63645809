"""Binary words, wedge-basis tensor monomials, and formal linear combinations.

Binary words are strings over '0'/'1' of length n; a word b with k ones
labels the basis vector x_b of the k-th fundamental representation (the
canonical basis lists wedge factors with strictly decreasing indices).
A WebVector is a formal sum of tensor monomials with LaurentPoly
coefficients, kept in canonical form (no zero coefficients).
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple

from .qlaurent import LaurentPoly, ONE, render_poly


# -- binary words ------------------------------------------------------

def weight(word: str) -> int:
    return word.count("1")


def complement(word: str) -> str:
    return "".join("1" if b == "0" else "0" for b in word)


def swap_bits(word: str, i: int) -> str:
    """Swap bits i and i+1 (1-indexed positions)."""
    j = i - 1
    return word[:j] + word[j + 1] + word[j] + word[j + 2:]


def word_add(a: str, b: str) -> str:
    """Bitwise sum of disjoint words (entries stay 0/1)."""
    out = []
    for x, y in zip(a, b):
        s = int(x) + int(y)
        if s > 1:
            raise ValueError("words are not disjoint")
        out.append(str(s))
    return "".join(out)


def words_disjoint(a: str, b: str) -> bool:
    return all(not (x == "1" and y == "1") for x, y in zip(a, b))


def lambda_word(c: int, n: int) -> str:
    """Word with ones in the first c positions (c = 0 gives the zero word)."""
    return "1" * c + "0" * (n - c)


def unit_word(i: int, n: int) -> str:
    """Word with a single one in position i (1-indexed)."""
    return "0" * (i - 1) + "1" + "0" * (n - i)


def indices_of(word: str) -> tuple[int, ...]:
    """Ascending 1-indexed positions of the ones."""
    return tuple(i + 1 for i, b in enumerate(word) if b == "1")


def word_from_indices(indices: Iterable[int], n: int) -> str:
    out = ["0"] * n
    for i in indices:
        out[i - 1] = "1"
    return "".join(out)


def all_words(n: int, k: int) -> list[str]:
    """All n-bit words of weight k, in lexicographic order."""
    if k < 0 or k > n:
        return []
    if n == 0:
        return [""]
    return ["0" + w for w in all_words(n - 1, k)] + \
           ["1" + w for w in all_words(n - 1, k - 1)]


def inversion_ell(b: str, b2: str) -> int:
    """|{(i, j) : i < j, b_i = 1, b2_j = 1}|."""
    if len(b) != len(b2):
        raise ValueError("length mismatch")
    count = 0
    ones_seen = 0
    for x, y in zip(b, b2):
        if y == "1":
            count += ones_seen
        if x == "1":
            ones_seen += 1
    return count


def wedge_sort_scalar(indices: Iterable[int]) -> tuple[LaurentPoly, str | None]:
    """Scalar c and descending-order word b with x_{i_1}^...^x_{i_k} = c x_b.

    Each adjacent swap moving a smaller index past a larger one contributes
    a factor -q; repeated indices give the zero result (word None).
    """
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return LaurentPoly.zero(), None
    swaps = 0
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] < seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                swaps += 1
    n = max(seq, default=0)
    word = word_from_indices(seq, n)
    return LaurentPoly.minus_q_power(swaps) if swaps % 2 else \
        LaurentPoly.q_power(swaps), word


# -- tensor monomials --------------------------------------------------

class TensorFactor(NamedTuple):
    word: str
    dual: bool = False


TensorMonomial = tuple  # tuple[TensorFactor, ...]


def monomial(*factors: TensorFactor | str) -> TensorMonomial:
    out = []
    for f in factors:
        out.append(TensorFactor(f) if isinstance(f, str) else f)
    return tuple(out)


def monomial_lex_key(m: TensorMonomial) -> tuple:
    """Factor-wise ascending index subsets, compared left to right."""
    return tuple(indices_of(f.word) for f in m)


def signature(m: TensorMonomial) -> tuple[tuple[int, bool], ...]:
    return tuple((weight(f.word), f.dual) for f in m)


class WebVector:
    """Formal sum: map from TensorMonomial to LaurentPoly, canonical form."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[TensorMonomial, LaurentPoly] | None = None):
        t = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero():
                    t[m] = c
        self._terms = t
        self._check_ambient()

    def _check_ambient(self):
        sigs = {signature(m) for m in self._terms}
        if len(sigs) > 1:
            raise ValueError("mixed ambient spaces in WebVector")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def zero() -> "WebVector":
        return WebVector()

    @staticmethod
    def scalar(c: LaurentPoly = ONE) -> "WebVector":
        """Scalar as a vector on the empty monomial."""
        return WebVector({(): c})

    @staticmethod
    def of(m: TensorMonomial, c: LaurentPoly = ONE) -> "WebVector":
        return WebVector({m: c})

    # -- accessors -------------------------------------------------------

    def terms(self) -> dict[TensorMonomial, LaurentPoly]:
        return dict(self._terms)

    def coefficient(self, m: TensorMonomial) -> LaurentPoly:
        return self._terms.get(m, LaurentPoly.zero())

    def is_zero(self) -> bool:
        return not self._terms

    def monomials(self) -> Iterator[TensorMonomial]:
        return iter(self._terms)

    def sorted_terms(self) -> list[tuple[TensorMonomial, LaurentPoly]]:
        return sorted(self._terms.items(), key=lambda kv: monomial_lex_key(kv[0]))

    def ambient_signature(self) -> tuple[tuple[int, bool], ...] | None:
        for m in self._terms:
            return signature(m)
        return None

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "WebVector") -> "WebVector":
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = t.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                t.pop(m, None)
            else:
                t[m] = s
        out = WebVector()
        out._terms = t
        out._check_ambient()
        return out

    def __sub__(self, other: "WebVector") -> "WebVector":
        return self + other.scale(LaurentPoly.const(-1))

    def scale(self, c: LaurentPoly) -> "WebVector":
        if c.is_zero():
            return WebVector()
        out = WebVector()
        out._terms = {m: v * c for m, v in self._terms.items()}
        return out

    def map_terms(self, fn) -> "WebVector":
        """Apply fn(monomial, coeff) -> WebVector to each term and sum."""
        out = WebVector()
        acc: dict[TensorMonomial, LaurentPoly] = {}
        for m, c in self._terms.items():
            for m2, c2 in fn(m, c)._terms.items():
                s = acc.get(m2)
                s = c2 if s is None else s + c2
                if s.is_zero():
                    acc.pop(m2, None)
                else:
                    acc[m2] = s
        out._terms = acc
        out._check_ambient()
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WebVector) and self._terms == other._terms

    def __hash__(self):
        raise TypeError("WebVector is unhashable")

    # -- rendering / serialization ----------------------------------------

    def __str__(self) -> str:
        return render_vector(self)

    def __repr__(self) -> str:
        return f"WebVector({self._terms!r})"

    def to_json_obj(self) -> list[dict]:
        out = []
        for m, c in self.sorted_terms():
            out.append({
                "factors": [{"bits": f.word, "dual": f.dual} for f in m],
                "coeff": render_poly(c),
            })
        return out


def vector_canonicalize(v: WebVector) -> WebVector:
    """Return the canonical form (already maintained by WebVector)."""
    return WebVector(v.terms())


def render_vector(v: WebVector, ascending: bool = True) -> str:
    """Human-readable rendering with ascending-wedge display.

    Each factor x_b is shown as x_{i_1} wedge ... with indices ascending;
    the scalar from reordering the canonical descending basis is folded
    into the displayed coefficient via wedge_sort_scalar.
    """
    if v.is_zero():
        return "0"
    parts = []
    for m, c in v.sorted_terms():
        shown = c
        factor_strs = []
        for f in m:
            idx = indices_of(f.word)
            if ascending and len(idx) > 1:
                scalar, _ = wedge_sort_scalar(idx)
                # x_{asc} = scalar * x_b; fold scalar^{-1} (a unit monomial
                # (-q)^s) into the displayed coefficient.
                e = scalar.min_exp()
                shown = shown * LaurentPoly({-e: scalar.coefficient(e)})
            body = "∧".join(f"x{i}" for i in idx)
            factor_strs.append(body + ("*" if f.dual else ""))
        if not m:
            parts.append(render_poly(shown))
            continue
        mono = "⊗".join(factor_strs)
        cs = render_poly(shown)
        if cs == "1":
            parts.append(mono)
        elif cs == "-1":
            parts.append(f"-{mono}")
        elif len(shown.coeffs()) > 1:
            parts.append(f"({cs}) {mono}")
        else:
            parts.append(f"{cs} {mono}")
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
