"""Binary forms in the distinguished variable pair and their coefficients.

An n-form is an invariant element written with right coefficients,

    f = x^n A_0 + C(n,1) x^(n-1) y A_1 + ... + y^n A_n,

where x, y are the index-0 generators and the A_i avoid index 0.  The
representation is unique (PBW), which makes coefficient extraction a
triangular linear problem: in canonical order the index-0 letters form the
leading block of every monomial, and x^(n-i) y^i normalizes to
y^i x^(n-i) plus corrections of strictly higher y-degree.

The module also computes the structure constants of coefficient
commutators by an exact linear solve, and builds points (X, Y) from
linear forms.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .scalars import Scalar
from .pbw import PBWPoly, gen, x, y
from ._kernel import decode, KIND_X, KIND_Y


def _split_block(word, index):
    """Split a canonical word into its (clone 0, ``index``) block and tail.

    Returns (ydeg, xdeg, tail).  Valid whenever ``index`` is minimal among
    the base indices of the word, which holds for index 0 always.
    """
    m = a = 0
    pos = 0
    for g in word:
        clone, idx, kind = decode(g)
        if clone == 0 and idx == index:
            if kind == KIND_Y:
                m += 1
            else:
                a += 1
            pos += 1
        else:
            break
    for g in word[pos:]:
        clone, idx, kind = decode(g)
        if clone == 0 and idx == index:
            raise ValueError(
                "extraction index is not minimal in monomial; "
                "index-%d letters not contiguous" % index
            )
    return m, a, word[pos:]


def blocks_of(p, index=0):
    """Group p by its leading x/y-block of ``index``: {(ydeg, xdeg): tail poly}."""
    out = {}
    for w, c in p.terms.items():
        m, a, tail = _split_block(w, index)
        bucket = out.setdefault((m, a), {})
        if tail in bucket:
            s = bucket[tail] + c
            if s:
                bucket[tail] = s
            else:
                del bucket[tail]
        else:
            bucket[tail] = c
    return {
        k: PBWPoly(v) for k, v in out.items() if v
    }


@lru_cache(maxsize=64)
def _xy_block_table(n, index):
    """Normal forms of x^(n-i) y^i as {(ydeg,xdeg): Scalar} maps, i = 0..n."""
    table = []
    for i in range(n + 1):
        p = x(index) ** (n - i) * y(index) ** i
        row = {}
        for w, c in p.terms.items():
            m, a, tail = _split_block(w, index)
            assert not tail
            row[(m, a)] = c
        table.append(row)
    return table


def extract_right(p, n, index=0):
    """Right coefficients [A_0..A_n] of ``p`` as an n-form in ``index``.

    Solves the unitriangular system given by the normal forms of the
    x^(n-i) y^i blocks; raises ValueError when ``p`` is not homogeneous of
    degree n in the index.
    """
    if not p:
        return [PBWPoly.zero() for _ in range(n + 1)]
    B = blocks_of(p, index)
    for (m, a) in B:
        if m + a != n:
            raise ValueError(
                f"not homogeneous of degree {n} in index {index}: "
                f"found block y^{m} x^{a}"
            )
    T = _xy_block_table(n, index)
    coeffs = []
    for i in range(n + 1):
        # block (i, n-i) receives C(n,j)*T[j][(i,n-i)]*A_j for j <= i
        acc = B.get((i, n - i), PBWPoly.zero())
        for j in range(i):
            t = T[j].get((i, n - i))
            if t is not None:
                acc = acc - coeffs[j].map_scalars(lambda s, t=t, j=j: s * t * Scalar.rat(comb(n, j)))
        coeffs.append(acc.map_scalars(lambda s: s / Scalar.rat(comb(n, i))))
    if reconstruct_right(coeffs, index) != p:
        raise ValueError("coefficient extraction failed to reconstruct input")
    return coeffs


def reconstruct_right(coeffs, index=0):
    """Rebuild sum C(n,i) x^(n-i) y^i A_i from right coefficients."""
    n = len(coeffs) - 1
    out = PBWPoly.zero()
    for i, A in enumerate(coeffs):
        if not A:
            continue
        out = out + (x(index) ** (n - i)) * (y(index) ** i) * A * Scalar.rat(comb(n, i))
    return out


def extract_left(p, n, index=0):
    """Left coefficients [A_0^L..A_n^L] with p = sum C(n,i) A_i^L x^(n-i) y^i.

    Uses the reversal anti-automorphism: rev_h maps A^L x^(n-i) y^i to
    y^i x^(n-i) rev_h(A^L), and y^i x^(n-i) is already a canonical block,
    so the coefficients can be read off directly.
    """
    q = p.rev_h()
    B = blocks_of(q, index)
    for (m, a) in B:
        if m + a != n:
            raise ValueError(
                f"not homogeneous of degree {n} in index {index}: "
                f"found block y^{m} x^{a}"
            )
    coeffs = []
    for i in range(n + 1):
        blk = B.get((i, n - i), PBWPoly.zero())
        coeffs.append(blk.rev_h().map_scalars(lambda s: s / Scalar.rat(comb(n, i))))
    if reconstruct_left(coeffs, index) != p:
        raise ValueError("left coefficient extraction failed to reconstruct input")
    return coeffs


def reconstruct_left(coeffs, index=0):
    n = len(coeffs) - 1
    out = PBWPoly.zero()
    for i, A in enumerate(coeffs):
        if not A:
            continue
        out = out + A * (x(index) ** (n - i)) * (y(index) ** i) * Scalar.rat(comb(n, i))
    return out


class Form:
    """An n-form held as its right coefficient vector (binomial convention)."""

    __slots__ = ("coeffs", "n", "index")

    def __init__(self, coeffs, index=0):
        self.coeffs = tuple(coeffs)
        self.n = len(self.coeffs) - 1
        self.index = index

    @classmethod
    def from_element(cls, p, n, index=0):
        return cls(extract_right(p, n, index), index)

    def element(self):
        return reconstruct_right(self.coeffs, self.index)

    def left_coefficients(self):
        return extract_left(self.element(), self.n, self.index)

    def plain_coefficients(self):
        """Coefficients with the binomials folded in: C(n,i) * A_i."""
        return [A * Scalar.rat(comb(self.n, i)) for i, A in enumerate(self.coeffs)]

    def is_invariant_form(self):
        from .action import is_invariant

        return is_invariant(self.element())

    def __eq__(self, other):
        return isinstance(other, Form) and self.coeffs == other.coeffs and self.index == other.index

    def __hash__(self):
        return hash((self.coeffs, self.index, self.n))

    def __repr__(self):
        return f"Form(n={self.n}, {self.element()})"


@lru_cache(maxsize=32)
def special_form(n, offset=0):
    """The special n-form (0,1+offset)(0,2+offset)...(0,n+offset)."""
    from .brackets import bracket

    p = PBWPoly.one()
    for j in range(1 + offset, n + 1 + offset):
        p = p * bracket(0, j)
    return Form.from_element(p, n)


# ---------------------------------------------------------------------------
# Exact linear solve over the fraction field of the scalar ring

class _Frac:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        self.num = num
        self.den = den if den is not None else Scalar.one()

    def __add__(self, o):
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return _Frac(self.num * o.den - o.num * self.den, self.den * o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def __truediv__(self, o):
        if not o.num:
            raise ZeroDivisionError("scalar fraction division by zero")
        return _Frac(self.num * o.den, self.den * o.num)

    def __bool__(self):
        return bool(self.num)

    def to_scalar(self):
        q, r = self.num.divmod_h(self.den)
        if r:
            raise ValueError("linear solve produced a non-polynomial scalar")
        return q


def solve_linear(rows, rhs):
    """Solve rows * c = rhs exactly over the scalar fraction field.

    rows: list of lists of Scalar; rhs: list of Scalar.  Returns a list of
    Scalar, or None if the system is inconsistent.  Raises ValueError when
    the solution is not unique (rank-deficient columns).
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    M = [[_Frac(e) for e in row] + [_Frac(rhs[i])] for i, row in enumerate(rows)]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for rr in range(r, m):
            if M[rr][c]:
                pr = rr
                break
        if pr is None:
            raise ValueError(f"linear system is rank-deficient in column {c}")
        M[r], M[pr] = M[pr], M[r]
        piv = M[r][c]
        for rr in range(m):
            if rr != r and M[rr][c]:
                f = M[rr][c] / piv
                for cc in range(c, ncols + 1):
                    M[rr][cc] = M[rr][cc] - f * M[r][cc]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    if r < ncols:
        raise ValueError("linear system is rank-deficient")
    for rr in range(r, m):
        if M[rr][ncols]:
            return None
    out = [None] * ncols
    for (pr, pc) in pivots:
        out[pc] = (M[pr][ncols] / M[pr][pc]).to_scalar()
    return out


def express_in_basis(target, basis):
    """Scalars c_k with target = sum c_k * basis_k, or None if impossible."""
    words = set(target.terms)
    for b in basis:
        words |= set(b.terms)
    words = sorted(words, reverse=True)
    zero = Scalar.zero()
    rows = [[b.terms.get(w, zero) for b in basis] for w in words]
    rhs = [target.terms.get(w, zero) for w in words]
    return solve_linear(rows, rhs)


# ---------------------------------------------------------------------------
# Commutator structure constants of coefficients

def commutator_constants(f, g=None):
    """Structure constants of coefficient commutators of two equal-degree forms.

    For letters A of ``f`` and A' of ``g`` the commutators expand as

        A'_l A_k - A_k A'_l = sum alpha_ij A_i A'_j

    over the support i <= k, j <= l, i + j < k + l; with ``g`` omitted
    (one form) the support is additionally restricted to sorted products
    i <= j, realizing the triangular shape beta_ij = 0 for i > j.

    Returns {(l, k): {(i, j): Scalar}}.  A nonzero residual outside the
    allowed basis raises RuntimeError (it would signal an engine bug).
    """
    same = g is None
    if same:
        g = f
    if f.n != g.n:
        raise ValueError("forms must have equal degree")
    n = f.n
    A, Ap = f.coeffs, g.coeffs
    table = {}
    for l in range(n + 1):
        for k in range(n + 1):
            if same and l <= k:
                continue
            support = [
                (i, j)
                for i in range(k + 1)
                for j in range(l + 1)
                if i + j < k + l and (not same or i <= j)
            ]
            target = Ap[l] * A[k] - A[k] * Ap[l]
            if not target:
                table[(l, k)] = {}
                continue
            basis = [A[i] * Ap[j] for (i, j) in support]
            sol = express_in_basis(target, basis)
            if sol is None:
                raise RuntimeError(
                    f"commutator of letters ({l},{k}) has residual outside "
                    "the allowed basis"
                )
            table[(l, k)] = {
                ij: c for ij, c in zip(support, sol) if c
            }
    return table


def mixed_constants(f):
    """Constants of A_k x = sum c (x A_j) + c' (y A_j) and A_k y likewise.

    Returns {('x'|'y', k): {('x'|'y', j): Scalar}} for the index-0 pair.
    """
    n = f.n
    X, Y = x(f.index), y(f.index)
    candidates = [("x", j) for j in range(n + 1)] + [("y", j) for j in range(n + 1)]
    basis = [
        (X if side == "x" else Y) * f.coeffs[j] for side, j in candidates
    ]
    table = {}
    for side, V in (("x", X), ("y", Y)):
        for k in range(n + 1):
            target = f.coeffs[k] * V
            sol = express_in_basis(target, basis)
            if sol is None:
                raise RuntimeError(
                    f"letter-variable commutation ({side},{k}) fell outside the basis"
                )
            table[(side, k)] = {
                key: c for key, c in zip(candidates, sol) if c
            }
    return table


# ---------------------------------------------------------------------------
# Points

class Point:
    """Homogeneous coordinates (X, Y) of a noncommutative point."""

    __slots__ = ("X", "Y")

    def __init__(self, X, Y):
        self.X = X if isinstance(X, PBWPoly) else PBWPoly.scalar(X)
        self.Y = Y if isinstance(Y, PBWPoly) else PBWPoly.scalar(Y)

    def form(self):
        """The linear form x Y - y X - h y Y vanishing at the point."""
        h = Scalar.h(1)
        return x(0) * self.Y - y(0) * self.X - y(0) * self.Y * h

    def bracket(self, other):
        """(pq) = X_p Y_q - Y_p X_q - h Y_p Y_q, self in the first role."""
        h = Scalar.h(1)
        return self.X * other.Y - self.Y * other.X - self.Y * other.Y * h

    def __eq__(self, other):
        return isinstance(other, Point) and self.X == other.X and self.Y == other.Y

    def __repr__(self):
        return f"Point(X={self.X}, Y={self.Y})"


def base_point(i):
    """The coordinate point (x_i, y_i)."""
    return Point(x(i), y(i))


def make_point(f):
    """Point of a linear form f = xA + yB: Y = A, X = -B - hA."""
    if isinstance(f, Form):
        if f.n != 1:
            raise ValueError("make_point needs a linear form")
        A, B = f.coeffs
    else:
        A, B = extract_right(f, 1)
    return Point(-B - A * Scalar.h(1), A)


def point_relation_residuals(p, q):
    """Residuals of the six commutation relations of a point pair.

    ``p`` plays the smaller-index role (the primed pair), ``q`` the larger.
    All six must be zero for a compatible pair; base points (x_i, y_i) with
    i < j satisfy them by the defining relations.
    """
    h = Scalar.h(1)
    h2 = Scalar.h(2)
    X, Y = q.X, q.Y
    Xp, Yp = p.X, p.Y
    return [
        X * Y - Y * X - Y * Y * h,
        Xp * Yp - Yp * Xp - Yp * Yp * h,
        X * Xp - Xp * X + Xp * Y * h - Yp * X * h - Yp * Y * h2,
        Y * Yp - Yp * Y,
        X * Yp - Yp * X - Yp * Y * h,
        Y * Xp - Xp * Y + Yp * Y * h,
    ]


def point_relations_hold(p, q):
    return all(not r for r in point_relation_residuals(p, q))
