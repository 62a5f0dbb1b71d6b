"""Polarization operators and evaluation at a point.

The unnormalized operator carries one index's letters onto another index
(or onto the coordinates of a point) by the Leibniz rule; the normalized
operator divides by the degree.  Lowering a form's whole degree onto a
point is the same as substituting the point's coordinates, which is what
`substitute_point` does directly.
"""
from __future__ import annotations

from . import _kernel as K
from .forms import Point, base_point
from .pbw import PBWPoly, x, y
from .scalars import QQ, Scalar

__all__ = [
    "apply_derivation",
    "index_degree",
    "polar_delta",
    "polar_delta_point",
    "polar",
    "polar_point",
    "substitute_point",
    "point_bracket",
]


def apply_derivation(p, image):
    """Extend a generator map to ``p`` by the Leibniz rule.

    ``image(letter_code)`` returns the replacement PBWPoly or None for a
    letter the derivation annihilates.  Every canonical word contributes one
    summand per replaced position.
    """
    pairs = []
    for w, c in p.terms.items():
        for pos, g in enumerate(w):
            rep = image(g)
            if rep is None:
                continue
            pre, post = w[:pos], w[pos + 1:]
            for wr, cr in rep.terms.items():
                pairs.append((c * cr, pre + wr + post))
    return PBWPoly.from_raw(pairs)


def _target_image(i, X, Y):
    def image(g):
        clone, idx, kind = K.decode(g)
        if idx != i:
            return None
        if clone:
            raise ValueError(f"cannot polarize a differential letter of index {i}")
        return X if kind == K.KIND_X else Y

    return image


def index_degree(p, i):
    """Degree of ``p`` in the base letters of index ``i`` (must be pure)."""
    degs = set()
    for w in p.terms:
        d = 0
        for g in w:
            clone, idx, _kind = K.decode(g)
            if idx == i and not clone:
                d += 1
        degs.add(d)
    if not degs:
        return 0
    if len(degs) > 1:
        raise ValueError(f"not homogeneous in index {i}: degrees {sorted(degs)}")
    return degs.pop()


def polar_delta(p, k, l):
    """Unnormalized polarization x_k -> x_l, y_k -> y_l."""
    return apply_derivation(p, _target_image(k, x(l), y(l)))


def polar_delta_point(p, i, point):
    """Unnormalized polarization of index ``i`` onto a point's coordinates."""
    return apply_derivation(p, _target_image(i, point.X, point.Y))


def polar(p, i, j):
    """Normalized polarization of index ``i`` onto index ``j``."""
    n = index_degree(p, i)
    if n == 0:
        return PBWPoly.zero()
    return polar_delta(p, i, j) * Scalar.rat(QQ(1, n))


def polar_point(p, i, point):
    """Normalized polarization of index ``i`` onto a point."""
    n = index_degree(p, i)
    if n == 0:
        return PBWPoly.zero()
    return polar_delta_point(p, i, point) * Scalar.rat(QQ(1, n))


def substitute_point(p, i, point):
    """The endomorphism x_i -> X, y_i -> Y, identity on other letters.

    Well defined because a point's coordinates satisfy the same relations
    as a generator pair; fully lowering an n-form by the normalized
    polarization gives the same element.
    """
    X, Y = point.X, point.Y
    out = PBWPoly.zero()
    one = Scalar.one()
    for w, c in p.terms.items():
        acc = PBWPoly.scalar(c)
        run = []
        for g in w:
            clone, idx, kind = K.decode(g)
            if idx == i and clone:
                raise ValueError(f"cannot substitute a differential letter of index {i}")
            if idx == i:
                if run:
                    acc = acc * PBWPoly({tuple(run): one})
                    run = []
                acc = acc * (X if kind == K.KIND_X else Y)
            else:
                run.append(g)
        if run:
            acc = acc * PBWPoly({tuple(run): one})
        out = out + acc
    return out


def point_bracket(point, k):
    """The invariant pairing X y_k - Y x_k - h Y y_k of a point with index k."""
    return point.bracket(base_point(k))
