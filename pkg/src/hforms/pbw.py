"""The braided algebra over an ordered index set, with canonical PBW forms.

Generators x_i, y_i (plus differential clones dx_i, dy_i, ordered after all
base letters) modulo the five quadratic relations

    x_i y_i = y_i x_i + h y_i^2
    x_j y_i = y_i x_j + h y_i y_j          (i < j)
    y_j x_i = x_i y_j - h y_i y_j          (i < j)
    y_j y_i = y_i y_j                      (i < j)
    x_j x_i = x_i x_j - h x_i y_j + h y_i x_j + h^2 y_i y_j   (i < j)

read left to right as reductions.  Canonical monomials have ascending
indices and, inside one index block, all y's before all x's; clones sort
after every base index.  The rules preserve per-index homogeneity, which is
what makes the coefficient extraction downstream triangular.

A PBWPoly is a sparse dict {canonical word: Scalar}; the heavy lifting
lives in the kernel (see _core_py / _core).
"""
from __future__ import annotations

from . import _kernel as K
from .scalars import CycRat, Scalar

__all__ = ["PBWPoly", "x", "y", "dx", "dy", "gen", "normal_form"]


def gen(index, kind, clone=0):
    """Single-generator polynomial."""
    return PBWPoly({(K.encode(clone, index, kind),): Scalar.one()})


def x(i):
    return gen(i, K.KIND_X)


def y(i):
    return gen(i, K.KIND_Y)


def dx(i):
    return gen(i, K.KIND_X, 1)


def dy(i):
    return gen(i, K.KIND_Y, 1)


def _letter_str(code):
    clone, idx, kind = K.decode(code)
    base = "x" if kind == K.KIND_X else "y"
    return ("d" if clone else "") + base + str(idx)


def _coerce_scalar(v):
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, CycRat)) or type(v).__name__ in ("mpq", "Fraction"):
        return Scalar.from_cyc(v)
    return None


class PBWPoly:
    """Canonical sparse element of the braided algebra."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero():
        return PBWPoly({})

    @staticmethod
    def one():
        return PBWPoly({(): Scalar.one()})

    @staticmethod
    def scalar(s):
        s = _coerce_scalar(s)
        return PBWPoly({(): s} if s else {})

    @staticmethod
    def from_raw(pairs):
        """Normalize [(Scalar, letter sequence), ...] into a PBWPoly."""
        out = {}
        for coeff, letters in pairs:
            coeff = _coerce_scalar(coeff)
            if not coeff:
                continue
            for w, hp in K.reduce_raw(tuple(letters)).items():
                c = coeff.mul_hpoly(hp)
                _acc(out, w, c)
        return PBWPoly(out)

    def copy(self):
        return PBWPoly(dict(self.terms))

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, PBWPoly):
            s = _coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = PBWPoly.scalar(s)
        t = dict(self.terms)
        for w, c in other.terms.items():
            _acc(t, w, c)
        return PBWPoly(t)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, PBWPoly) else -1 * other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return PBWPoly({w: -c for w, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, PBWPoly):
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    c12 = c1 * c2
                    if not c12:
                        continue
                    for w, hp in K.word_mul(w1, w2).items():
                        _acc(out, w, c12.mul_hpoly(hp))
            return PBWPoly(out)
        s = _coerce_scalar(other)
        if s is None:
            return NotImplemented
        if not s:
            return PBWPoly({})
        return PBWPoly({w: c * s for w, c in self.terms.items()})

    def __rmul__(self, other):
        # scalars are central, so left/right coincide for them
        s = _coerce_scalar(other)
        if s is None:
            return NotImplemented
        return self * s

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a PBWPoly")
        r = PBWPoly.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    # -- comparisons ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, PBWPoly):
            s = _coerce_scalar(other)
            if s is None:
                return NotImplemented
            other = PBWPoly.scalar(s)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted((w, c.key()) for w, c in self.terms.items())))

    # -- structure probes ------------------------------------------------------

    def degree_profile(self):
        """Per-index degree, or the string 'inhomogeneous'.

        Base indices report under their integer, clones under 'd<i>'.
        """
        prof = {}
        first = True
        for w in self.terms:
            cur = {}
            for code in w:
                clone, idx, _ = K.decode(code)
                key = f"d{idx}" if clone else idx
                cur[key] = cur.get(key, 0) + 1
            if first:
                prof = {k: v for k, v in cur.items()}
                first = False
            else:
                for k in set(prof) | set(cur):
                    if prof.get(k) != cur.get(k):
                        prof[k] = "inhomogeneous"
                        cur.setdefault(k, None)
                for k in cur:
                    if k not in prof:
                        prof[k] = "inhomogeneous"
        return prof

    def indices(self):
        out = set()
        for w in self.terms:
            for code in w:
                clone, idx, _ = K.decode(code)
                out.add((clone, idx))
        return out

    def max_x_degree(self):
        """Largest number of x-type letters in any monomial (for exp series)."""
        best = 0
        for w in self.terms:
            n = sum(1 for code in w if code & 1)
            if n > best:
                best = n
        return best

    def clone_degree_set(self):
        return {sum(1 for code in w if code >> 20) for w in self.terms} or {0}

    # -- coefficient-level maps -------------------------------------------------

    def map_scalars(self, f):
        out = {}
        for w, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[w] = c2
        return PBWPoly(out)

    def h0(self):
        """Specialize h := 0 coefficientwise (stays in the same algebra)."""
        return self.map_scalars(lambda c: Scalar.from_cyc(c.eval_h(0)))

    def flip_h(self):
        return self.map_scalars(lambda c: c.flip_h())

    def rev_h(self):
        """The anti-automorphism: reverse words and send h -> -h.

        Fixes every generator and every defining relation, hence is a well
        defined involution; used for left-coefficient extraction.
        """
        out = {}
        for w, c in self.terms.items():
            cf = c.flip_h()
            for w2, hp in K.reduce_raw(w[::-1]).items():
                _acc(out, w2, cf.mul_hpoly(hp))
        return PBWPoly(out)

    def substitute(self, image):
        """Algebra endomorphism from a letter map.

        ``image(code)`` returns None to keep the letter, or a PBWPoly.
        """
        out = PBWPoly.zero()
        for w, c in self.terms.items():
            acc = None  # None means "empty product so far"
            pending = []
            for code in w:
                img = image(code)
                if img is None:
                    pending.append(code)
                    continue
                acc = _flush(acc, pending)
                pending = []
                acc = img if acc is None else acc * img
            acc = _flush(acc, pending)
            if acc is None:
                out = out + PBWPoly({w: c})
            else:
                out = out + acc * c
        return out

    def commutes_with(self, other):
        return not (self * other - other * self)

    # -- presentation ----------------------------------------------------------

    def sorted_words(self):
        return sorted(self.terms, reverse=True)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in self.sorted_words():
            parts.append(_term_str(w, self.terms[w]))
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return f"PBWPoly({self})"


def _acc(d, w, c):
    if not c:
        return
    prev = d.get(w)
    if prev is None:
        d[w] = c
    else:
        s = prev + c
        if s:
            d[w] = s
        else:
            del d[w]


def _flush(acc, pending):
    if not pending:
        return acc
    tail = PBWPoly({tuple(pending): Scalar.one()})
    return tail if acc is None else acc * tail


def _mono_str(w):
    if not w:
        return "1"
    pieces = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = _letter_str(w[i])
        pieces.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(pieces)


def _term_str(w, c):
    mono = _mono_str(w)
    if not w:
        return str(c)
    if len(c.terms) == 1:
        (k, cyc), = c.terms.items()
        if k == 0 and cyc == CycRat(1):
            return mono
        if k == 0 and cyc == CycRat(-1):
            return f"-{mono}"
        cs = str(c)
        if cyc.a != 0 and cyc.b != 0:
            return f"({cs})*{mono}"
        return f"{cs}*{mono}"
    return f"({c})*{mono}"


def normal_form(pairs_or_poly):
    """Normalize raw (Scalar, letters) pairs, or pass a PBWPoly through."""
    if isinstance(pairs_or_poly, PBWPoly):
        return pairs_or_poly
    return PBWPoly.from_raw(pairs_or_poly)
