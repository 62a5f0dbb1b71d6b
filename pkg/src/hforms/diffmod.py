"""Total differentials d_K and the bimodule of differential one-forms.

The differentials dx_i, dy_i are the clone letters of the parent algebra:
they satisfy the same braided relations with every base letter (with the
clone treated as the later index), so the module of one-forms sits inside
the algebra as the clone-degree-one slice, and the canonical basis already
writes every one-form with left coefficients, sum of a_i dx_i + b_i dy_i.

d_K differentiates the letters with base index in K and kills the rest;
it is the unique such derivation.  It commutes with the E, F, H action
(the clone letters carry the mirrored action) and splits over disjoint
variable sets.  The quotient rule extends it to right fractions.
"""
from __future__ import annotations

from . import _kernel as K
from .brackets import bracket
from .localization import LocElement, from_pbw, loc_inverse, yinv
from .pbw import PBWPoly, gen, y
from .polarize import apply_derivation

__all__ = [
    "total_differential",
    "d0",
    "delta",
    "diff_bracket",
    "diff_loc",
    "differential_components",
    "polar_delta_differential",
    "check_equivariance",
]


def _base_indices(p):
    return {idx for clone, idx in p.indices() if not clone}


def total_differential(p, diff_vars=None):
    """d_K p for K = diff_vars (default: every base index occurring in p)."""
    K_set = None if diff_vars is None else set(diff_vars)

    def image(g):
        clone, idx, kind = K.decode(g)
        if clone:
            raise ValueError("total differential of an element that already carries differentials")
        if K_set is not None and idx not in K_set:
            return None
        return gen(idx, kind, 1)

    return apply_derivation(p, image)


def d0(p):
    """Differentiate the index-0 letters only."""
    return total_differential(p, {0})


def delta(p, diff_vars=None):
    """Differentiate every base index except 0 (the root variables)."""
    K_set = _base_indices(p) if diff_vars is None else set(diff_vars)
    return total_differential(p, K_set - {0})


def diff_bracket(i, j):
    """(i dj) := x_i dy_j - y_i dx_j - h y_i dy_j  =  d_{{j}} (ij)."""
    return bracket(i, ("d", j))


def differential_components(p):
    """Write a one-form as {clone letter code: left coefficient}.

    Canonical words put the single clone letter last, so the left normal
    form of the module is read off directly.
    """
    if p.clone_degree_set() != {1}:
        raise ValueError("not homogeneous of differential degree one")
    out = {}
    for w, c in p.terms.items():
        head, d_letter = w[:-1], w[-1]
        comp = out.setdefault(d_letter, {})
        prev = comp.get(head)
        s = c if prev is None else prev + c
        if s:
            comp[head] = s
        else:
            del comp[head]
    return {code: PBWPoly(t) for code, t in out.items() if t}


def diff_loc(el, diff_vars=None):
    """The quotient-rule extension of d_K to right fractions."""
    if isinstance(el, PBWPoly):
        return from_pbw(total_differential(el, diff_vars))
    facs = [("num", el.num)]
    for i in sorted(el.ydens):
        facs.extend([("yinv", i)] * el.ydens[i])
    for p, _d in el.gdens:
        facs.append(("inv", p))
    for p in el.cdens:
        facs.append(("inv", p))

    def as_loc(f):
        kind, v = f
        if kind == "num":
            return from_pbw(v)
        if kind == "yinv":
            return yinv(v)
        return loc_inverse(v)

    def d_of(f):
        kind, v = f
        if kind == "num":
            return from_pbw(total_differential(v, diff_vars))
        base = y(v) if kind == "yinv" else v
        dv = total_differential(base, diff_vars)
        if not dv:
            return None
        inv = yinv(v) if kind == "yinv" else loc_inverse(v)
        return -(inv * from_pbw(dv) * inv)

    total = from_pbw(PBWPoly.zero())
    for k, fac in enumerate(facs):
        dk = d_of(fac)
        if dk is None or dk.is_zero():
            continue
        term = from_pbw(PBWPoly.one())
        for m in range(k):
            term = term * as_loc(facs[m])
        term = term * dk
        for m in range(k + 1, len(facs)):
            term = term * as_loc(facs[m])
        total = total + term
    return total


def polar_delta_differential(p, k, l):
    """The polarization derivation x_k -> x_l extended by Delta(da) = d(Delta a).

    Concretely: the same letter replacement applied to clone letters too.
    """
    def image(g):
        clone, idx, kind = K.decode(g)
        if idx != k:
            return None
        return gen(l, kind, clone)

    return apply_derivation(p, image)


def check_equivariance(samples, diff_vars=None):
    """d_K E = E d_K etc. on each sample; {'ok': True} or a witness."""
    from .action import act_E, act_F, act_H

    for a in samples:
        for name, op in (("E", act_E), ("F", act_F), ("H", act_H)):
            r = op(total_differential(a, diff_vars)) - total_differential(
                op(a), diff_vars
            )
            if r:
                return {
                    "ok": False,
                    "operator": name,
                    "sample": str(a),
                    "residual": str(r),
                }
    return {"ok": True}
