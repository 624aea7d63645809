"""Quantum group generators acting on wedge-basis tensor monomials.

Single-factor rules on x_T and duals x_T^*, extended to tensor products by
the coproduct: E_i acts as sum_j Id^(j-1) (x) E_i (x) K_i^(t-j), F_i as
sum_j (K_i^-1)^(j-1) (x) F_i (x) Id^(t-j), and K_i diagonally."""

from __future__ import annotations

from .qlaurent import LaurentPoly, ONE
from .tensorspace import TensorFactor, WebVector, swap_bits

Q = LaurentPoly.q_power(1)
QINV = LaurentPoly.q_power(-1)
MINUS_Q = LaurentPoly.q_power(1, -1)
MINUS_QINV = LaurentPoly.q_power(-1, -1)


def _bits(f: TensorFactor, i: int) -> tuple[bool, bool]:
    """Membership of i and i+1 in the index set of the factor's word."""
    return f.word[i - 1] == "1", f.word[i] == "1"


def _k_scalar(f: TensorFactor, i: int) -> LaurentPoly:
    has_i, has_next = _bits(f, i)
    if has_i and not has_next:
        return QINV if f.dual else Q
    if has_next and not has_i:
        return Q if f.dual else QINV
    return ONE


def _k_inv_scalar(f: TensorFactor, i: int) -> LaurentPoly:
    has_i, has_next = _bits(f, i)
    if has_i and not has_next:
        return Q if f.dual else QINV
    if has_next and not has_i:
        return QINV if f.dual else Q
    return ONE


def _e_single(f: TensorFactor, i: int) -> tuple[LaurentPoly, TensorFactor] | None:
    has_i, has_next = _bits(f, i)
    if f.dual:
        if has_i and not has_next:
            return MINUS_Q, TensorFactor(swap_bits(f.word, i), True)
        return None
    if has_next and not has_i:
        return ONE, TensorFactor(swap_bits(f.word, i), False)
    return None


def _f_single(f: TensorFactor, i: int) -> tuple[LaurentPoly, TensorFactor] | None:
    has_i, has_next = _bits(f, i)
    if f.dual:
        if has_next and not has_i:
            return MINUS_QINV, TensorFactor(swap_bits(f.word, i), True)
        return None
    if has_i and not has_next:
        return ONE, TensorFactor(swap_bits(f.word, i), False)
    return None


def _check_color(i: int, v: WebVector):
    sig = v.ambient_signature()
    if sig is None:
        return
    n = None
    for m in v.monomials():
        n = len(m[0].word) if m else None
        break
    if n is not None and not (1 <= i <= n - 1):
        raise ValueError(f"color {i} out of range for n = {n}")


def act_K(i: int, v: WebVector) -> WebVector:
    _check_color(i, v)

    def per_term(m, c):
        scalar = ONE
        for f in m:
            scalar = scalar * _k_scalar(f, i)
        return WebVector.of(m, c * scalar)

    return v.map_terms(per_term)


def act_K_inv(i: int, v: WebVector) -> WebVector:
    _check_color(i, v)

    def per_term(m, c):
        scalar = ONE
        for f in m:
            scalar = scalar * _k_inv_scalar(f, i)
        return WebVector.of(m, c * scalar)

    return v.map_terms(per_term)


def act_E(i: int, v: WebVector) -> WebVector:
    _check_color(i, v)

    def per_term(m, c):
        acc = WebVector.zero()
        for j, f in enumerate(m):
            hit = _e_single(f, i)
            if hit is None:
                continue
            scalar, new_f = hit
            for g in m[j + 1:]:
                scalar = scalar * _k_scalar(g, i)
            acc = acc + WebVector.of(m[:j] + (new_f,) + m[j + 1:], c * scalar)
        return acc

    return v.map_terms(per_term)


def act_F(i: int, v: WebVector) -> WebVector:
    _check_color(i, v)

    def per_term(m, c):
        acc = WebVector.zero()
        for j, f in enumerate(m):
            hit = _f_single(f, i)
            if hit is None:
                continue
            scalar, new_f = hit
            for g in m[:j]:
                scalar = scalar * _k_inv_scalar(g, i)
            acc = acc + WebVector.of(m[:j] + (new_f,) + m[j + 1:], c * scalar)
        return acc

    return v.map_terms(per_term)


def check_invariant(v: WebVector) -> bool:
    """True iff E_i v = F_i v = 0 and K_i v = v for every color."""
    sig = v.ambient_signature()
    if sig is None or not sig:
        return True   # zero vector or scalar: trivial action
    n = None
    for m in v.monomials():
        n = len(m[0].word)
        break
    for i in range(1, n):
        if not act_E(i, v).is_zero():
            return False
        if not act_F(i, v).is_zero():
            return False
        if act_K(i, v) != v:
            return False
    return True


def invariance_report(v: WebVector) -> list[tuple[int, str, bool]]:
    """Per-generator pass/fail table: (color, generator, ok)."""
    sig = v.ambient_signature()
    if sig is None or not sig:
        return []
    n = len(next(iter(v.monomials()))[0].word)
    rows = []
    for i in range(1, n):
        rows.append((i, "E", act_E(i, v).is_zero()))
        rows.append((i, "F", act_F(i, v).is_zero()))
        rows.append((i, "K", act_K(i, v) == v))
    return rows
