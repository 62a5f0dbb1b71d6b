"""Bracket symbols and the formal commutative bracket algebra.

(ij) := x_i y_j - y_i x_j - h y_i y_j is invariant and central; the same
expression with the middle term reordered gives the two alternative forms
x_i y_j - x_j y_i and y_j x_i - y_i x_j.  Brackets over clone letters (the
differential invariants) use exactly the same formula.

BracketPoly is the free commutative algebra on symbols [ab] over letter keys
a = (clone, index), with antisymmetry normalized away at construction.  It
expands into the engine through `expand`, and into the independent
commutative oracle through `oracle.classical_eval`.
"""
from __future__ import annotations

from . import _kernel as K
from .pbw import PBWPoly, gen
from .scalars import Scalar

__all__ = ["bracket", "BracketPoly", "gp_combination"]

_BRACKET_CACHE = {}


def _as_key(i):
    """Letter key: plain int means base index; ('d', i) means the clone."""
    if isinstance(i, tuple):
        if len(i) == 2 and i[0] in (0, 1):
            return i
        if len(i) == 2 and i[0] == "d":
            return (1, i[1])
        raise ValueError(f"bad index key {i!r}")
    return (0, i)


def bracket(i, j):
    """The central invariant (ij) as a PBWPoly; accepts ('d', k) clones."""
    a, b = _as_key(i), _as_key(j)
    hit = _BRACKET_CACHE.get((a, b))
    if hit is not None:
        return hit
    xi = K.encode(a[0], a[1], K.KIND_X)
    yi = K.encode(a[0], a[1], K.KIND_Y)
    xj = K.encode(b[0], b[1], K.KIND_X)
    yj = K.encode(b[0], b[1], K.KIND_Y)
    p = PBWPoly.from_raw(
        [
            (Scalar.one(), (xi, yj)),
            (Scalar.rat(-1), (yi, xj)),
            (Scalar.h(1, -1), (yi, yj)),
        ]
    )
    _BRACKET_CACHE[(a, b)] = p
    return p


class BracketPoly:
    """{multiset of ordered pairs: Scalar}; [ba] folded to -[ab], [aa] to 0."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero():
        return BracketPoly({})

    @staticmethod
    def one():
        return BracketPoly({(): Scalar.one()})

    @staticmethod
    def br(i, j, coeff=1):
        a, b = _as_key(i), _as_key(j)
        if a == b:
            return BracketPoly({})
        sign = 1
        if a > b:
            a, b, sign = b, a, -1
        c = (Scalar.from_cyc(coeff) if not isinstance(coeff, Scalar) else coeff) * sign
        if not c:
            return BracketPoly({})
        return BracketPoly({((a, b),): c})

    @staticmethod
    def scalar(s):
        s = s if isinstance(s, Scalar) else Scalar.from_cyc(s)
        return BracketPoly({(): s} if s else {})

    # -- commutative ring -------------------------------------------------

    def __add__(self, other):
        o = _coerce_bp(other)
        if o is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            prev = t.get(m)
            s = c if prev is None else prev + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return BracketPoly(t)

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce_bp(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return BracketPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, BracketPoly):
            t = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(sorted(m1 + m2))
                    c = c1 * c2
                    prev = t.get(m)
                    s = c if prev is None else prev + c
                    if s:
                        t[m] = s
                    else:
                        t.pop(m, None)
            return BracketPoly(t)
        o = _coerce_bp(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o

    __rmul__ = __mul__

    def __pow__(self, n):
        r = BracketPoly.one()
        for _ in range(n):
            r = r * self
        return r

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = _coerce_bp(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    # -- expansion into the engine -----------------------------------------

    def expand(self):
        out = PBWPoly.zero()
        for m, c in self.terms.items():
            p = PBWPoly.scalar(c)
            for a, b in m:
                p = p * bracket(a, b)
            out = out + p
        return out

    def map_scalars(self, f):
        out = {}
        for m, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[m] = c2
        return BracketPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(f"br({_key_str(a)},{_key_str(b)})" for a, b in m) or "1"
            cs = str(c)
            if cs == "1" and m:
                parts.append(mono)
            elif cs == "-1" and m:
                parts.append(f"-{mono}")
            elif m:
                parts.append(f"({cs})*{mono}" if ("+" in cs or " - " in cs) else f"{cs}*{mono}")
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"BracketPoly({self})"


def _coerce_bp(v):
    if isinstance(v, BracketPoly):
        return v
    if isinstance(v, (int, Scalar)) or type(v).__name__ in ("mpq", "Fraction", "CycRat"):
        return BracketPoly.scalar(v)
    return NotImplemented


def _key_str(k):
    return f"d{k[1]}" if k[0] else str(k[1])


def gp_combination(i, j, k, l):
    """[ij][kl] + [ik][lj] + [il][jk] -- the Grassmann-Pluecker combination."""
    return (
        BracketPoly.br(i, j) * BracketPoly.br(k, l)
        + BracketPoly.br(i, k) * BracketPoly.br(l, j)
        + BracketPoly.br(i, l) * BracketPoly.br(j, k)
    )
