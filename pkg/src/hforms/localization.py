"""Right-fraction localization at the y letters and at central elements.

Every y letter satisfies the same Ore passage rule  y_j * a = sigma(a) * y_j
with the single global twist sigma: x_i -> x_i - h*y_i (clones included,
y's fixed).  Consequently any product of y letters, and more generally any
y-homogeneous polynomial of degree m, passes by sigma^m, and right fractions

    num * y_{i1}^{-1} ... y_{ik}^{-1} * g^{-1} ... * c^{-1} ...

close under the ring operations.  A LocElement keeps the numerator as a
PBWPoly and the denominator as a multiset of factors of three kinds:

* single y letters (dict index -> power),
* monic y-homogeneous polynomials, tagged with their degree, and
* certified central elements (checked against every realizable letter
  pattern, base and clone).

All y-type factors commute with each other and central factors commute with
everything, so the multiset is an honest denominator.  The parent algebra
has no zero divisors, hence num * D^{-1} = 0 iff num = 0 and equality is
decided by clearing to a common denominator.
"""
from __future__ import annotations

from collections import Counter

from . import _kernel as K
from .pbw import PBWPoly, gen, x, y, dx, dy
from .brackets import bracket
from .scalars import QQ, CycRat, Scalar

__all__ = [
    "LocElement",
    "from_pbw",
    "yinv",
    "z",
    "dz",
    "slash_bracket",
    "loc_inverse",
    "sigma",
    "tau",
    "is_central",
]


def sigma(p, m=1):
    """The global Ore twist x_i -> x_i - m*h*y_i (y's fixed, clones included).

    ``sigma(p, -m)`` is the inverse twist tau^m.
    """
    if m == 0:
        return p
    hC = Scalar.h(1, -m)

    def image(g):
        clone, idx, kind = K.decode(g)
        if kind != K.KIND_X:
            return None
        return gen(idx, K.KIND_X, clone) + hC * gen(idx, K.KIND_Y, clone)

    return p.substitute(image)


def tau(p, m=1):
    return sigma(p, -m)


def is_central(p):
    """Certify that ``p`` commutes with the whole algebra.

    The defining relations only depend on the relative order of indices (and
    on cloneness), so commuting with x_k, y_k, dx_k, dy_k for every k up to
    one past the largest index occurring in ``p`` covers every realizable
    letter pattern.
    """
    top = max((idx for _, idx in p.indices()), default=0) + 2
    for k in range(top):
        for g in (x(k), y(k), dx(k), dy(k)):
            if not p.commutes_with(g):
                return False
    return True


def _poly_key(p):
    return tuple(sorted((w, c.key()) for w, c in p.terms.items()))


def _y_letter(i):
    return K.encode(0, i, K.KIND_Y)


def _y_monomial(ydens):
    """The denominator product of the single-letter part, as a PBWPoly."""
    w = []
    for i in sorted(ydens):
        w.extend([_y_letter(i)] * ydens[i])
    return PBWPoly({tuple(w): Scalar.one()})


def _merge(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + v
    return out


class LocElement:
    """num * (product of y letters)^-1 * (y-polys)^-1 * (centrals)^-1."""

    __slots__ = ("num", "ydens", "gdens", "cdens")

    def __init__(self, num, ydens=None, gdens=(), cdens=()):
        self.num = num
        self.ydens = {i: m for i, m in (ydens or {}).items() if m}
        self.gdens = tuple(gdens)
        self.cdens = tuple(cdens)
        self._simplify()

    # -- internal helpers ----------------------------------------------------

    def _twist_degree(self):
        return sum(self.ydens.values()) + sum(d for _, d in self.gdens)

    def _simplify(self):
        if not self.num:
            self.ydens, self.gdens, self.cdens = {}, (), ()
            return
        # cancel single y letters: num = y_i * m  =>  num * y_i^-1 = sigma(m)
        changed = True
        while changed and self.ydens:
            changed = False
            for i in list(self.ydens):
                code = _y_letter(i)
                words = self.num.terms
                if all(w and w[0] == code for w in words):
                    stripped = PBWPoly({w[1:]: c for w, c in words.items()})
                    self.num = sigma(stripped)
                    self.ydens[i] -= 1
                    if not self.ydens[i]:
                        del self.ydens[i]
                    changed = True

    # -- coercion --------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LocElement):
            return other
        if isinstance(other, PBWPoly):
            return LocElement(other)
        s = other if isinstance(other, Scalar) else None
        if s is None:
            if isinstance(other, (int, CycRat)) or type(other).__name__ in (
                "mpq",
                "Fraction",
            ):
                s = Scalar.from_cyc(other)
            else:
                return None
        return LocElement(PBWPoly.scalar(s))

    # -- ring operations ---------------------------------------------------------

    def __mul__(self, other):
        o = LocElement._coerce(other)
        if o is None:
            return NotImplemented
        num = self.num * tau(o.num, self._twist_degree())
        return LocElement(
            num,
            _merge(self.ydens, o.ydens),
            self.gdens + o.gdens,
            self.cdens + o.cdens,
        )

    def __rmul__(self, other):
        o = LocElement._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __add__(self, other):
        o = LocElement._coerce(other)
        if o is None:
            return NotImplemented
        ydens, gkeys, ckeys = _common_denominator(self, o)
        n = self._complemented_num(ydens, gkeys, ckeys) + o._complemented_num(
            ydens, gkeys, ckeys
        )
        return LocElement(
            n,
            ydens,
            tuple((p, d) for _, d, p in gkeys),
            tuple(p for _, p in ckeys),
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = LocElement._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return LocElement(-self.num, self.ydens, self.gdens, self.cdens)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LocElement; use loc_inverse")
        out = LocElement(PBWPoly.one())
        for _ in range(n):
            out = out * self
        return out

    def _complemented_num(self, ydens, gkeys, ckeys):
        comp = PBWPoly.one()
        for i, m in ydens.items():
            extra = m - self.ydens.get(i, 0)
            if extra:
                comp = comp * _y_monomial({i: extra})
        mine = sorted(_poly_key(p) for p, _ in self.gdens)
        for key, _d, p in gkeys:
            if key in mine:
                mine.remove(key)
            else:
                comp = comp * p
        mine = sorted(_poly_key(p) for p in self.cdens)
        for key, p in ckeys:
            if key in mine:
                mine.remove(key)
            else:
                comp = comp * p
        return self.num * comp

    # -- comparisons ---------------------------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        o = LocElement._coerce(other)
        if o is None:
            return NotImplemented
        ydens, gkeys, ckeys = _common_denominator(self, o)
        return self._complemented_num(ydens, gkeys, ckeys) == o._complemented_num(
            ydens, gkeys, ckeys
        )

    def __hash__(self):
        raise TypeError("LocElement is unhashable; representations are not unique")

    # -- presentation ----------------------------------------------------------

    def __str__(self):
        if not (self.ydens or self.gdens or self.cdens):
            return str(self.num)
        parts = [f"({self.num})"]
        for i in sorted(self.ydens):
            m = self.ydens[i]
            parts.append(f"inv(y{i})" if m == 1 else f"inv(y{i}^{m})")
        for p, _d in sorted(self.gdens, key=lambda t: _poly_key(t[0])):
            parts.append(f"inv({p})")
        for p in sorted(self.cdens, key=_poly_key):
            parts.append(f"inv({p})")
        return " * ".join(parts)

    def __repr__(self):
        return f"LocElement({self})"


def _common_denominator(a, b):
    ydens = dict(a.ydens)
    for i, m in b.ydens.items():
        ydens[i] = max(ydens.get(i, 0), m)
    gkeys = _multiset_max(
        [(_poly_key(p), d, p) for p, d in a.gdens],
        [(_poly_key(p), d, p) for p, d in b.gdens],
    )
    ckeys = _multiset_max(
        [(_poly_key(p), p) for p in a.cdens],
        [(_poly_key(p), p) for p in b.cdens],
    )
    return ydens, gkeys, ckeys


def _multiset_max(xs, ys):
    """Multiset union-by-max on the first component, keeping payloads."""
    cx = Counter(e[0] for e in xs)
    cy = Counter(e[0] for e in ys)
    payload = {}
    for e in xs + ys:
        payload.setdefault(e[0], e)
    out = []
    for key in sorted(set(cx) | set(cy)):
        out.extend([payload[key]] * max(cx[key], cy[key]))
    return out


# -- constructors --------------------------------------------------------------


def from_pbw(p):
    """Embed a polynomial element into the localization."""
    if not isinstance(p, PBWPoly):
        el = LocElement._coerce(p)
        if el is None:
            raise TypeError(f"cannot localize {p!r}")
        return el
    return LocElement(p)


def yinv(i, m=1):
    """y_i^{-m}."""
    if m < 0:
        raise ValueError("yinv wants a nonnegative power")
    return LocElement(PBWPoly.one(), {i: m})


def z(i):
    """The noncommutative projective coordinate x_i*y_i^{-1} + h/2."""
    num = x(i) + Scalar.h(1, QQ(1, 2)) * y(i)
    return LocElement(num, {i: 1})


def dz(i):
    """The coordinate differential: dz_i = -(i di) * y_i^{-2}."""
    return LocElement(-bracket(i, ("d", i)), {i: 2})


def slash_bracket(i, j):
    """[ij) := y_i^{-1} (ij) = (ij) y_i^{-1} = (z_i - h/2) y_j - x_j.

    The second slot may be a clone key ('d', k); the first slot must be a
    plain index because only base y letters are inverted here.
    """
    if isinstance(i, tuple):
        raise ValueError("slash bracket needs a plain base index in the first slot")
    return LocElement(bracket(i, j), {i: 1})


def loc_inverse(p):
    """Invert a PBWPoly: unit scalars, y-monomials, y-homogeneous polynomials
    and certified central elements (or a scalar multiple of those)."""
    if not isinstance(p, PBWPoly):
        el = LocElement._coerce(p)
        if el is None:
            raise TypeError(f"cannot invert {p!r}")
        p = el.num
    if not p:
        raise ZeroDivisionError("inverse of 0")
    words = p.terms
    if len(words) == 1:
        ((w, c),) = words.items()
        if all(not (code & 1) and not (code >> 20) for code in w):
            # c * y-monomial; needs the scalar to be a unit
            if c.h_degree() > 0:
                raise ValueError(f"scalar {c} is not invertible (positive h degree)")
            ydens = {}
            for code in w:
                _, idx, _ = K.decode(code)
                ydens[idx] = ydens.get(idx, 0) + 1
            return LocElement(PBWPoly.scalar(Scalar.one() / c), ydens)
    if _is_y_homogeneous(p):
        lead_word = min(words)
        u = words[lead_word]
        if u.h_degree() > 0:
            raise ValueError("cannot normalize: leading coefficient has h degree > 0")
        monic = p * (Scalar.one() / u)
        return LocElement(
            PBWPoly.scalar(Scalar.one() / u), gdens=((monic, len(lead_word)),)
        )
    if is_central(p):
        return LocElement(PBWPoly.one(), cdens=(p,))
    raise ValueError(
        "inverse not supported: not a y-monomial, y-homogeneous or central element"
    )


def _is_y_homogeneous(p):
    degs = set()
    for w in p.terms:
        if any((code & 1) or (code >> 20) for code in w):
            return False
        degs.add(len(w))
    return len(degs) == 1
