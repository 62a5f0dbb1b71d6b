"""Central ring extensions used to split forms into linear factors.

Two kinds of extension appear when solving quadratic and cubic forms:

* adjoining a single central root ``s`` with ``s**m`` equal to a given
  central element (``RootExtension``), and

* adjoining a commuting pair ``u1, u2`` subject to

      u1 * u2   = -D,
      u1**3 + u2**3 =  J,

  for central ``D, J`` (``CardanoExtension``).  The pair relations force
  ``u1**3`` to satisfy ``t**2 - J*t - D**3 = 0``, so the reduced monomials
  ``1, u1, ..., u1**5, u2, u2**2`` form a basis of the extension as a free
  module over the base ring.

The adjoined elements commute with everything, so an element is stored as
a dict mapping basis keys to PBWPoly coefficients; coefficient products
keep their original order and the central structure constants may be
multiplied in on either side.  Both constructors certify centrality of
the structure constants unless told not to.
"""
from __future__ import annotations

from .scalars import QQ, CycRat, Scalar
from .pbw import PBWPoly, _coerce_scalar
from .localization import is_central

__all__ = [
    "RootExtension",
    "RootElement",
    "CardanoExtension",
    "CardanoElement",
    "polar_onto",
    "linear_form_at",
    "vanishes_at",
]


def _as_pbw(v):
    if isinstance(v, PBWPoly):
        return v
    return PBWPoly.scalar(_coerce_scalar(v))


class RootExtension:
    """The ring extension by one central root: s**m = c."""

    __slots__ = ("c", "m")

    def __init__(self, c, m=2, check=True):
        c = _as_pbw(c)
        if m < 2:
            raise ValueError("root order must be at least 2")
        if check and not is_central(c):
            raise ValueError("the radicand is not central; the extension would be inconsistent")
        self.c = c
        self.m = m

    def element(self, coeffs):
        """Build an element from {power: coefficient} with powers in range(m)."""
        out = {}
        for k, v in coeffs.items():
            if not 0 <= k < self.m:
                raise ValueError(f"root power {k} outside range(0, {self.m})")
            v = _as_pbw(v)
            if v:
                out[k] = v
        return RootElement(self, out)

    def embed(self, p):
        return self.element({0: p})

    def zero(self):
        return RootElement(self, {})

    def one(self):
        return self.embed(PBWPoly.one())

    def root(self):
        return self.element({1: PBWPoly.one()})

    def __eq__(self, other):
        return (
            isinstance(other, RootExtension)
            and self.m == other.m
            and self.c == other.c
        )

    def __repr__(self):
        return f"RootExtension(s^{self.m} = {self.c})"


class RootElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, RootElement):
            if other.ring == self.ring:
                return other
            raise ValueError("elements of different root extensions")
        try:
            return self.ring.embed(_as_pbw(other))
        except (TypeError, ValueError):
            return None

    def coefficient(self, k):
        return self.coeffs.get(k, PBWPoly.zero())

    def pbw(self):
        """The underlying element when no root power is present."""
        for k in self.coeffs:
            if k:
                raise ValueError("element has nonscalar root part")
        return self.coefficient(0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            s = out.get(k, PBWPoly.zero()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return RootElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RootElement(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        m, c = self.ring.m, self.ring.c
        out = {}
        for i, a in self.coeffs.items():
            for j, b in o.coeffs.items():
                k = i + j
                v = a * b
                if k >= m:
                    k -= m
                    v = v * c
                s = out.get(k, PBWPoly.zero()) + v
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return RootElement(self.ring, out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("powers must be nonnegative integers")
        acc = self.ring.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        raise TypeError("extension elements are mutable views; not hashable")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            head = "" if k == 0 else ("s * " if k == 1 else f"s^{k} * ")
            parts.append(f"{head}({self.coeffs[k]})")
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# The commuting Cardano pair

# Basis keys: nonnegative k stands for u1**k (k <= 5), negative k for
# u2**(-k) (k >= -2).

def _eps(i):
    """The scalar eps**i for the primitive cube root of unity."""
    i %= 3
    if i == 0:
        return Scalar.one()
    if i == 1:
        return Scalar.from_cyc(CycRat(0, 1))
    return Scalar.from_cyc(CycRat(-1, -1))


class CardanoExtension:
    """Extension by commuting u1, u2 with u1*u2 = -D and u1^3 + u2^3 = J."""

    __slots__ = ("D", "J", "_u1_cubed_sq")

    def __init__(self, D, J, check=True):
        D = _as_pbw(D)
        J = _as_pbw(J)
        if check:
            if not is_central(D):
                raise ValueError("the product constant is not central")
            if not is_central(J):
                raise ValueError("the cube-sum constant is not central")
        self.D = D
        self.J = J

    def element(self, coeffs):
        out = {}
        for k, v in coeffs.items():
            if not -2 <= k <= 5:
                raise ValueError(f"monomial key {k} outside the reduced basis")
            v = _as_pbw(v)
            if v:
                out[k] = v
        return CardanoElement(self, out)

    def embed(self, p):
        return self.element({0: p})

    def zero(self):
        return CardanoElement(self, {})

    def one(self):
        return self.embed(PBWPoly.one())

    def u(self, which):
        if which == 1:
            return self.element({1: PBWPoly.one()})
        if which == 2:
            return self.element({-1: PBWPoly.one()})
        raise ValueError("the pair has members 1 and 2")

    def sigma(self, i):
        """The root combination eps^i u1 + eps^(2i) u2."""
        return self.element({1: PBWPoly.scalar(_eps(i)), -1: PBWPoly.scalar(_eps(2 * i))})

    # -- monomial reduction ------------------------------------------------
    def _reduce_u1(self, a, acc, mult):
        # u1^a for a >= 6 splits by u1^6 = J u1^3 + D^3
        if a <= 5:
            self._acc(acc, a, mult)
            return
        self._reduce_u1(a - 3, acc, mult * self.J)
        self._reduce_u1(a - 6, acc, mult * self.D ** 3)

    def _reduce_u2(self, b, acc, mult):
        # u2^b for b >= 3 splits by u2^3 = J - u1^3, then mixing clears u1
        if b <= 2:
            self._acc(acc, -b, mult)
            return
        self._reduce_u2(b - 3, acc, mult * self.J)
        self._reduce_mixed(3, b - 3, acc, -mult)

    def _reduce_mixed(self, a, b, acc, mult):
        # u1^a u2^b with both positive collapses min(a,b) pairs to (-D)
        m = min(a, b)
        if m:
            mult = mult * ((-self.D) ** m)
            a -= m
            b -= m
        if b == 0:
            self._reduce_u1(a, acc, mult)
        else:
            self._reduce_u2(b, acc, mult)

    @staticmethod
    def _acc(acc, key, poly):
        if key == 0 and not poly:
            return
        s = acc.get(key, PBWPoly.zero()) + poly
        if s:
            acc[key] = s
        else:
            acc.pop(key, None)

    def _mono_mul(self, i, j, coeff):
        """coeff * (basis_i * basis_j) accumulated into a fresh dict."""
        acc = {}
        a1 = max(i, 0) + max(j, 0)
        a2 = max(-i, 0) + max(-j, 0)
        self._reduce_mixed(a1, a2, acc, coeff)
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, CardanoExtension)
            and self.D == other.D
            and self.J == other.J
        )

    def __repr__(self):
        return f"CardanoExtension(u1*u2 = -({self.D}), u1^3+u2^3 = {self.J})"


class CardanoElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, CardanoElement):
            if other.ring == self.ring:
                return other
            raise ValueError("elements of different Cardano extensions")
        try:
            return self.ring.embed(_as_pbw(other))
        except (TypeError, ValueError):
            return None

    def coefficient(self, k):
        return self.coeffs.get(k, PBWPoly.zero())

    def pbw(self):
        for k in self.coeffs:
            if k:
                raise ValueError("element has a nonscalar root part")
        return self.coefficient(0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.coeffs)
        for k, v in o.coeffs.items():
            s = out.get(k, PBWPoly.zero()) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return CardanoElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CardanoElement(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        ring = self.ring
        out = {}
        for i, a in self.coeffs.items():
            for j, b in o.coeffs.items():
                for k, mult in ring._mono_mul(i, j, a * b).items():
                    CardanoExtension._acc(out, k, mult)
        return CardanoElement(ring, out)

    def __rmul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("powers must be nonnegative integers")
        acc = self.ring.one()
        base = self
        while e:
            if e & 1:
                acc = acc * base
            base = base * base
            e >>= 1
        return acc

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __hash__(self):
        raise TypeError("extension elements are mutable views; not hashable")

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = {}
        for k in sorted(self.coeffs):
            if k == 0:
                head = ""
            elif k > 0:
                head = ("u1 * " if k == 1 else f"u1^{k} * ")
            else:
                head = ("u2 * " if k == -1 else f"u2^{-k} * ")
            names[k] = f"{head}({self.coeffs[k]})"
        return " + ".join(names[k] for k in sorted(names))


# ---------------------------------------------------------------------------
# Polarization onto a point with extension coordinates

def polar_onto(p, X, Y, index=0):
    """Normalized polarization of one index onto coordinates (X, Y).

    The coordinates may live in either extension ring (or be plain
    elements); the result lives where they do.  Each index letter of a
    canonical word contributes prefix * coordinate * suffix.  The input
    ``p`` may itself be an extension element, in which case the basis
    monomials ride along untouched.
    """
    if not isinstance(p, PBWPoly):
        ring = p.ring
        out = ring.zero()
        for k, poly in p.coeffs.items():
            part = polar_onto(poly, X, Y, index)
            if k:
                part = part * ring.element({k: PBWPoly.one()})
            out = out + part
        return out

    from . import _kernel as K
    from .polarize import index_degree

    n = index_degree(p, index)
    zero = X - X  # the zero of whatever ring the coordinates live in
    if n == 0:
        return zero
    total = zero
    for w, c in p.terms.items():
        for pos, g in enumerate(w):
            clone, idx, kind = K.decode(g)
            if idx != index or clone:
                continue
            pre = PBWPoly({w[:pos]: c})
            post = PBWPoly({w[pos + 1:]: Scalar.one()})
            total = total + pre * (Y if kind == K.KIND_Y else X) * post
    return total * Scalar.rat(QQ(1, n))


def linear_form_at(X, Y):
    """The linear form x Y - y X - h y Y with extension coordinates."""
    from .pbw import x, y

    return x(0) * Y - y(0) * X - (y(0) * Scalar.h(1)) * Y


def vanishes_at(p, n, X, Y, index=0):
    """Whether the n-form vanishes at (X, Y): the n-fold polar is zero."""
    cur = p
    for _ in range(n):
        cur = polar_onto(cur, X, Y, index)
        if not cur:
            return True
    return not cur
