"""The deformed sl(2) operators E, F, H and the locally finite exponentials.

Generator values:   E x = 0, E y = x;  F x = y, F y = 0;  H x = x, H y = -y;
all three kill 1.  Products obey the twisted Leibniz rules

    E(ab) = E(a) exp(-hF)(b) + exp(hF)(a) E(b)
    F(ab) = F(a) b + a F(b)
    H(ab) = H(a) exp(-hF)(b) + exp(hF)(a) H(b)

F is locally nilpotent (it lowers x-degree), so exp(+-hF) is a finite sum on
every element; since F is a derivation, exp(+-hF) is in fact the algebra
automorphism x_i -> x_i +- h y_i, y_i -> y_i, which is what the fast path
uses.  The series route is kept as a cross-check (tests compare them).

Clone letters (dx_i, dy_i) follow the same pattern, mirroring the action on
their base letters.
"""
from __future__ import annotations

from math import factorial

from . import _kernel as K
from .pbw import PBWPoly, gen
from .scalars import Scalar

__all__ = [
    "act",
    "act_E",
    "act_F",
    "act_H",
    "exp_hF",
    "is_invariant",
    "check_lie_relations",
]

_E_CACHE = {}
_H_CACHE = {}
_TAU_CACHE = {}
_SIGMA_CACHE = {}


def _letter_poly(code):
    return PBWPoly({(code,): Scalar.one()})


def _twist_letter(code, sign):
    # x -> x + sign*h*y, y -> y
    if code & 1 == K.KIND_X:
        return PBWPoly({(code,): Scalar.one(), (code & ~1,): Scalar.h(1, sign)})
    return _letter_poly(code)


def _twist_word(w, sign):
    cache = _TAU_CACHE if sign > 0 else _SIGMA_CACHE
    hit = cache.get(w)
    if hit is not None:
        return hit
    if not w:
        out = PBWPoly.one()
    else:
        out = _twist_letter(w[0], sign) * _twist_word(w[1:], sign)
    cache[w] = out
    return out


def exp_hF(p, sign=1):
    """The automorphism exp(sign*hF): x_i -> x_i + sign*h*y_i."""
    out = PBWPoly.zero()
    for w, c in p.terms.items():
        out = out + _twist_word(w, sign) * c
    return out


def exp_hF_series(p, sign=1):
    """Same map evaluated as the terminating power series (for cross-checks)."""
    out = p
    acc = p
    m = p.max_x_degree()
    for k in range(1, m + 1):
        acc = act_F(acc)
        if not acc:
            break
        out = out + acc * Scalar.h(k, sign**k) * Scalar.rat(1, factorial(k))
    return out


def _E_word(w):
    hit = _E_CACHE.get(w)
    if hit is not None:
        return hit
    if not w:
        out = PBWPoly.zero()
    else:
        g, rest = w[0], w[1:]
        out = PBWPoly.zero()
        if g & 1 == K.KIND_Y:
            out = _letter_poly(g | 1) * _twist_word(rest, -1)
        out = out + _twist_letter(g, 1) * _E_word(rest)
    _E_CACHE[w] = out
    return out


def _H_word(w):
    hit = _H_CACHE.get(w)
    if hit is not None:
        return hit
    if not w:
        out = PBWPoly.zero()
    else:
        g, rest = w[0], w[1:]
        sign = 1 if g & 1 == K.KIND_X else -1
        out = _letter_poly(g) * _twist_word(rest, -1) * sign
        out = out + _twist_letter(g, 1) * _H_word(rest)
    _H_CACHE[w] = out
    return out


def act_E(p):
    out = PBWPoly.zero()
    for w, c in p.terms.items():
        out = out + _E_word(w) * c
    return out


def act_F(p):
    # a plain derivation: replace each x by its y in place, then renormalize
    # (the replaced letter may now sit left of same-index x's, so the word
    # must go back through the kernel)
    pairs = []
    for w, c in p.terms.items():
        for k, code in enumerate(w):
            if code & 1 == K.KIND_X:
                pairs.append((c, w[:k] + (code & ~1,) + w[k + 1 :]))
    return PBWPoly.from_raw(pairs)


def act_H(p):
    out = PBWPoly.zero()
    for w, c in p.terms.items():
        out = out + _H_word(w) * c
    return out


_OPS = {
    "E": act_E,
    "F": act_F,
    "H": act_H,
    "exphf": lambda p: exp_hF(p, 1),
    "expneghf": lambda p: exp_hF(p, -1),
}


def act(op, p):
    """Dispatch by tag: E, F, H, exphf, expneghf."""
    key = op.lower() if op not in ("E", "F", "H") else op
    try:
        return _OPS[key](p)
    except KeyError:
        raise ValueError(f"unknown operator {op!r}") from None


def is_invariant(p):
    return (not act_E(p)) and (not act_F(p)) and (not act_H(p))


def _F_power_series(p, coeff_of_power):
    """sum_k coeff_of_power(k) * F^k(p), terminating by nilpotency; k >= 1."""
    out = PBWPoly.zero()
    acc = p
    k = 0
    m = p.max_x_degree()
    while k < m:
        acc = act_F(acc)
        k += 1
        if not acc:
            break
        c = coeff_of_power(k)
        if c:
            out = out + acc * c
    return out


def check_lie_relations(samples):
    """Verify the defining operator relations on each sample.

    [E,F] = H,
    [H,F] = -(2/h) sinh(hF)   (as the series sum_{k odd} 2 h^{k-1} F^k / k!),
    [H,E] = E cosh(hF) + cosh(hF) E.

    Returns {'ok': True} or the first violating sample with residuals.
    """
    for a in samples:
        r1 = act_E(act_F(a)) - act_F(act_E(a)) - act_H(a)
        if r1:
            return {"ok": False, "relation": "[E,F]=H", "sample": str(a), "residual": str(r1)}
        sinh_part = _F_power_series(
            a, lambda k: Scalar.h(k - 1, 2) * Scalar.rat(1, factorial(k)) if k % 2 == 1 else None
        )
        r2 = act_H(act_F(a)) - act_F(act_H(a)) + sinh_part
        if r2:
            return {"ok": False, "relation": "[H,F]=-(2/h)sinh(hF)", "sample": str(a), "residual": str(r2)}

        def cosh(q):
            even = _F_power_series(
                q, lambda k: Scalar.h(k) * Scalar.rat(1, factorial(k)) if k % 2 == 0 else None
            )
            return q + even

        r3 = act_H(act_E(a)) - act_E(act_H(a)) - act_E(cosh(a)) - cosh(act_E(a))
        if r3:
            return {
                "ok": False,
                "relation": "[H,E]=E cosh(hF)+cosh(hF)E",
                "sample": str(a),
                "residual": str(r3),
            }
    return {"ok": True}


def clear_caches():
    _E_CACHE.clear()
    _H_CACHE.clear()
    _TAU_CACHE.clear()
    _SIGMA_CACHE.clear()
