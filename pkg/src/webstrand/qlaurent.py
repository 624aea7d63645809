"""Exact Laurent polynomial arithmetic in one variable q over the integers.

A LaurentPoly is stored as a map from integer exponent to nonzero integer
coefficient.  All arithmetic is exact; equality is coefficient-map equality.
This module also provides quantum integers [k]_q, quantum binomial
coefficients, the substitution q -> -q, and exact rank computation for
matrices with LaurentPoly entries over the field of rational functions.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class LaurentPoly:
    """Laurent polynomial in q with integer coefficients, in canonical form.

    Canonical form means no stored coefficient is zero, so structural
    equality of the coefficient maps is mathematical equality.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v != 0:
                    c[int(e)] = v
        self._c = c

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly({0: 1})

    @staticmethod
    def const(c: int) -> "LaurentPoly":
        return LaurentPoly({0: c})

    @staticmethod
    def q_power(e: int, c: int = 1) -> "LaurentPoly":
        return LaurentPoly({e: c})

    @staticmethod
    def minus_q_power(e: int) -> "LaurentPoly":
        """(-q)^e, defined for any integer e."""
        return LaurentPoly({e: -1 if e % 2 else 1})

    # -- predicates / accessors ---------------------------------------

    def is_zero(self) -> bool:
        return not self._c

    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coefficient(self, e: int) -> int:
        return self._c.get(e, 0)

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        out = LaurentPoly()
        out._c = c
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly()
        out._c = {e: -v for e, v in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + v1 * v2
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        out = LaurentPoly()
        out._c = c
        return out

    def scale(self, c: int) -> "LaurentPoly":
        if c == 0:
            return LaurentPoly()
        out = LaurentPoly()
        out._c = {e: c * v for e, v in self._c.items()}
        return out

    def shift(self, e: int) -> "LaurentPoly":
        """Multiply by q^e."""
        out = LaurentPoly()
        out._c = {k + e: v for k, v in self._c.items()}
        return out

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            raise ValueError("negative powers only defined for monomials")
        result = LaurentPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises InexactDivision if the quotient is not
        a Laurent polynomial over the integers."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero LaurentPoly")
        if self.is_zero():
            return LaurentPoly()
        # Shift both so the divisor becomes an ordinary polynomial with
        # nonzero constant term, then do ordinary polynomial division
        # from the top degree down.
        shift = other.min_exp()
        num = dict(self.shift(-self.min_exp())._c)
        den = other.shift(-shift)._c
        quot_shift = self.min_exp() - shift
        dm = max(den)
        lead = den[dm]
        q: dict[int, int] = {}
        while num:
            nm = max(num)
            if nm < dm:
                raise InexactDivision("remainder is nonzero")
            c, r = divmod(num[nm], lead)
            if r != 0:
                raise InexactDivision("leading coefficient does not divide")
            q[nm - dm] = c
            for e, v in den.items():
                ne = e + nm - dm
                s = num.get(ne, 0) - c * v
                if s:
                    num[ne] = s
                else:
                    num.pop(ne, None)
        return LaurentPoly(q).shift(quot_shift)

    # -- substitutions and evaluation ----------------------------------

    def subst_neg_q(self) -> "LaurentPoly":
        """Substitute q -> -q: negate every odd-exponent coefficient."""
        out = LaurentPoly()
        out._c = {e: (-v if e % 2 else v) for e, v in self._c.items()}
        return out

    def subst_q_inverse(self) -> "LaurentPoly":
        out = LaurentPoly()
        out._c = {-e: v for e, v in self._c.items()}
        return out

    def evaluate(self, x: Fraction) -> Fraction:
        return sum((Fraction(v) * x ** e for e, v in self._c.items()),
                   Fraction(0))

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    # -- rendering -----------------------------------------------------

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._c!r})"


class InexactDivision(ArithmeticError):
    """Raised when LaurentPoly division leaves a remainder."""


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
Q = LaurentPoly.q_power(1)


def render_poly(p: LaurentPoly) -> str:
    """Render as e.g. "q^4 + 2 - q^-2", terms in decreasing exponent order."""
    if p.is_zero():
        return "0"
    parts = []
    for i, e in enumerate(sorted(p._c, reverse=True)):
        v = p._c[e]
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        if e == 0:
            body = str(mag)
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            body = qpart if mag == 1 else f"{mag}{qpart}"
        if i == 0:
            parts.append(body if v > 0 else f"-{body}")
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def qint(k: int) -> LaurentPoly:
    """Quantum integer [k]_q = (q^k - q^-k)/(q - q^-1)."""
    if k == 0:
        return LaurentPoly()
    if k < 0:
        return -qint(-k)
    return LaurentPoly({e: 1 for e in range(k - 1, -k, -2)})


def qfactorial(k: int) -> LaurentPoly:
    out = ONE
    for i in range(1, k + 1):
        out = out * qint(i)
    return out


def qbinom(k: int, l: int) -> LaurentPoly:
    """Quantum binomial [k]_q ... [k-l+1]_q / ([l]_q ... [1]_q), exact."""
    if l < 0:
        raise ValueError("lower index must be nonnegative")
    if l == 0:
        return ONE
    num = ONE
    for i in range(l):
        num = num * qint(k - i)
    return num.exact_div(qfactorial(l))


def subst_neg_q(p: LaurentPoly) -> LaurentPoly:
    return p.subst_neg_q()


def _rank_at_point(rows: Sequence[Sequence[LaurentPoly]], x: Fraction) -> int:
    """Rank of the matrix specialized at q = x, by exact Gaussian
    elimination over the rationals.  Can only under-report the rank."""
    m = [[p.evaluate(x) for p in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = 1 / m[rank][col]
        for r in range(rank + 1, nrows):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, ncols):
                    m[r][c] -= factor * m[rank][c]
        rank += 1
        col += 1
    return rank


def _rank_bareiss(rows: Sequence[Sequence[LaurentPoly]]) -> int:
    """Fraction-free (Bareiss) elimination rank with LaurentPoly entries.

    Exact divisions by the previous pivot are guaranteed by the Bareiss
    identity, so every intermediate entry stays a LaurentPoly.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev_pivot = ONE
    rank = 0
    col = 0
    while rank < nrows and col < ncols:
        piv = next((r for r in range(rank, nrows) if not m[r][col].is_zero()),
                   None)
        if piv is None:
            col += 1
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pivot = m[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                m[r][c] = (pivot * m[r][c] - m[r][col] * m[rank][c]) \
                    .exact_div(prev_pivot)
            m[r][col] = ZERO
        prev_pivot = pivot
        rank += 1
        col += 1
    return rank


def rank_over_q(rows: Sequence[Sequence[LaurentPoly]],
                rng: random.Random | None = None) -> int:
    """Rank over the field of rational functions in q.

    Fraction-free elimination is the authoritative method.  Random
    rational specializations can only under-report the rank, so they are
    used only as a shortcut when they already certify full rank.
    """
    nrows = len(rows)
    if nrows == 0:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("matrix must be rectangular")
    if ncols == 0:
        return 0
    rng = rng or random.Random(0x5EED)
    bound = min(nrows, ncols)
    best = 0
    for _ in range(3):
        x = Fraction(rng.randint(2, 10 ** 6), rng.randint(2, 10 ** 6))
        best = max(best, _rank_at_point(rows, x))
        if best == bound:
            # Specialization never over-reports, so full rank is certified.
            return best
    return _rank_bareiss(rows)
