"""Exact coefficient arithmetic: rationals extended by a primitive cube root
of unity, with a formal central deformation parameter h.

Everything in the engine is linear over Q(eps)[h] with eps^2 + eps + 1 = 0.
Keeping h formal (a polynomial indeterminate, never a float) turns every
identity check downstream into a strict equality of dictionaries.

Two layers:

* ``CycRat``   -- a + b*eps with exact rational a, b.
* ``Scalar``   -- sparse polynomial in h with CycRat coefficients.

gmpy2.mpq is used when available (it is much faster for the deep towers in
the solver tests); plain fractions.Fraction is a drop-in fallback.
"""
from __future__ import annotations

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as _Q

__all__ = ["CycRat", "Scalar", "QQ"]


def QQ(p, q=1):
    """Exact rational constructor (shared by the oracle and the tower)."""
    return _Q(p) / _Q(q) if q != 1 else _Q(p)


def _as_cyc(v):
    if isinstance(v, CycRat):
        return v
    return CycRat(v)


class CycRat:
    """An element a + b*eps of Q(eps), eps^2 = -1 - eps.

    Stored reduced: no eps^2 ever appears, rationals are exact.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = _Q(a)
        self.b = _Q(b)

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        o = _as_cyc(other)
        return CycRat(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_cyc(other)
        return CycRat(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return _as_cyc(other) - self

    def __neg__(self):
        return CycRat(-self.a, -self.b)

    def __mul__(self, other):
        o = _as_cyc(other)
        a, b, c, d = self.a, self.b, o.a, o.b
        bd = b * d
        return CycRat(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def inv(self):
        # (a + b e)(a - b - b e) = a^2 - a b + b^2  (the field norm)
        n = self.a * self.a - self.a * self.b + self.b * self.b
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(eps)")
        return CycRat((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, other):
        return self * _as_cyc(other).inv()

    def __rtruediv__(self, other):
        return _as_cyc(other) * self.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        r, base = CycRat(1), self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    # -- comparisons / hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return Scalar.from_cyc(self) == other
        o = _as_cyc(other)
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def is_rational(self):
        return self.b == 0

    # -- presentation ----------------------------------------------------

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        if b == 1:
            etxt = "eps"
        elif b == -1:
            etxt = "-eps"
        else:
            etxt = f"{b}*eps"
        if a == 0:
            return etxt
        if etxt.startswith("-"):
            return f"{a}{etxt}"
        return f"{a}+{etxt}"

    def __repr__(self):
        return f"CycRat({self})"


_CYC_ONE = CycRat(1)


class Scalar:
    """Sparse polynomial in h over Q(eps): {exponent: CycRat}, zeros pruned."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero():
        return Scalar({})

    @staticmethod
    def one():
        return Scalar({0: CycRat(1)})

    @staticmethod
    def from_cyc(c):
        c = _as_cyc(c)
        return Scalar({0: c} if c else {})

    @staticmethod
    def rat(p, q=1):
        return Scalar.from_cyc(CycRat(_Q(p) / _Q(q)))

    @staticmethod
    def eps():
        return Scalar({0: CycRat(0, 1)})

    @staticmethod
    def h(k=1, coeff=1):
        c = _as_cyc(coeff)
        return Scalar({k: c} if c else {})

    @staticmethod
    def from_hpoly(hp):
        """From a dense integer tuple (c0, c1, ...) meaning sum c_k h^k."""
        return Scalar({k: CycRat(c) for k, c in enumerate(hp) if c})

    def copy(self):
        return Scalar(dict(self.terms))

    # -- ring structure ---------------------------------------------------

    def _coerce(other):  # noqa: N805 - tiny local helper
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, CycRat)) or type(other).__name__ in ("mpq", "Fraction"):
            return Scalar.from_cyc(other)
        return NotImplemented

    def __add__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.terms.items():
            s = t.get(k)
            s = v if s is None else s + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return Scalar(t)

    __radd__ = __add__

    def __sub__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Scalar({k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if not self.terms or not o.terms:
            return Scalar({})
        t = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = k1 + k2
                p = v1 * v2
                s = t.get(k)
                s = p if s is None else s + p
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        return Scalar(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative Scalar power")
        r = Scalar.one()
        base = self
        while n:
            if n & 1:
                r = r * base
            base = base * base
            n >>= 1
        return r

    def __truediv__(self, other):
        """Division by a nonzero CycRat/int or by a single-term Scalar."""
        if isinstance(other, Scalar):
            if len(other.terms) != 1:
                q, r = self.divmod_h(other)
                if r:
                    raise ValueError("inexact Scalar division")
                return q
            (k, c), = other.terms.items()
            ci = c.inv()
            if k == 0:
                return Scalar({e: v * ci for e, v in self.terms.items()})
            t = {}
            for e, v in self.terms.items():
                if e < k:
                    raise ValueError("inexact division by h power")
                t[e - k] = v * ci
            return Scalar(t)
        ci = _as_cyc(other).inv()
        return Scalar({e: v * ci for e, v in self.terms.items()})

    # -- polynomial structure ----------------------------------------------

    def h_degree(self):
        return max(self.terms) if self.terms else -1

    def leading(self):
        return self.terms[self.h_degree()]

    def divmod_h(self, other):
        """Univariate division with remainder in Q(eps)[h]."""
        if not other.terms:
            raise ZeroDivisionError("Scalar division by zero")
        q = Scalar.zero()
        r = self
        dB = other.h_degree()
        lB = other.leading().inv()
        while r.terms and r.h_degree() >= dB:
            k = r.h_degree() - dB
            c = r.leading() * lB
            mono = Scalar({k: c})
            q = q + mono
            r = r - mono * other
        return q, r

    def flip_h(self):
        """The substitution h -> -h."""
        return Scalar({k: (-v if k & 1 else v) for k, v in self.terms.items()})

    def eval_h(self, v):
        """Substitute h := v (a CycRat or int), collapsing to one CycRat."""
        v = _as_cyc(v)
        out = CycRat(0)
        for k, c in self.terms.items():
            out = out + c * v**k
        return out

    def mul_hpoly(self, hp):
        """Multiply by a dense integer h-polynomial tuple (kernel interop)."""
        t = {}
        for k, c in enumerate(hp):
            if not c:
                continue
            for e, v in self.terms.items():
                ke = k + e
                p = v * c
                s = t.get(ke)
                s = p if s is None else s + p
                if s:
                    t[ke] = s
                else:
                    t.pop(ke, None)
        return Scalar(t)

    # -- comparisons / hashing ----------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = Scalar._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def key(self):
        """Hashable canonical key (used for denominator multisets)."""
        return tuple(sorted((k, v.a, v.b) for k, v in self.terms.items()))

    def __hash__(self):
        return hash(self.key())

    def is_rational_constant(self):
        return not self.terms or (set(self.terms) == {0} and self.terms[0].is_rational())

    # -- presentation ---------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, reverse=True):
            c = self.terms[k]
            if k == 0:
                parts.append(str(c))
                continue
            hk = "h" if k == 1 else f"h^{k}"
            if c == _CYC_ONE:
                parts.append(hk)
            elif c == CycRat(-1):
                parts.append(f"-{hk}")
            elif c.a != 0 and c.b != 0:
                parts.append(f"({c})*{hk}")
            else:
                parts.append(f"{c}*{hk}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out

    def __repr__(self):
        return f"Scalar({self})"


def scalar_arith(a, b, op):
    """Spec-shaped convenience wrapper: op in {'add','sub','mul'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")
