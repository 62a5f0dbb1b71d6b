"""Independent commutative backend (the h=0 oracle).

An identity between bracket symbols holds in the deformed algebra exactly
when it holds classically, so a plain commutative evaluation decides bracket
identities.  This module deliberately shares nothing with the PBW kernel
except the Scalar coefficient type: its polynomials are commutative
exponent-dict monomials with their own multiplication, so a verdict here is
an implementation-independent cross-check of the engine (and vice versa).

Coefficients stay in Q(eps)[h]: identities whose bracket coefficients carry
h still reduce correctly because the kernel of the bracket-substitution map
is generated in h-degree 0.
"""
from __future__ import annotations

from .brackets import BracketPoly
from .scalars import Scalar

__all__ = [
    "CommPoly",
    "classical_eval",
    "classical_pbw",
    "verify_bracket_identity",
    "verify_pbw_identity",
    "cx",
    "cy",
]


class CommPoly:
    """Sparse commutative polynomial: {((var, exp), ...) sorted: Scalar}.

    Variables are arbitrary hashable keys; here ('x', clone, i) / ('y', clone, i).
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else terms

    @staticmethod
    def zero():
        return CommPoly({})

    @staticmethod
    def one():
        return CommPoly({(): Scalar.one()})

    @staticmethod
    def var(v, exp=1):
        return CommPoly({((v, exp),): Scalar.one()})

    @staticmethod
    def scalar(s):
        s = s if isinstance(s, Scalar) else Scalar.from_cyc(s)
        return CommPoly({(): s} if s else {})

    def __add__(self, other):
        o = other if isinstance(other, CommPoly) else CommPoly.scalar(other)
        t = dict(self.terms)
        for m, c in o.terms.items():
            prev = t.get(m)
            s = c if prev is None else prev + c
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return CommPoly(t)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if isinstance(other, CommPoly) else CommPoly.scalar(other)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CommPoly({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            o = CommPoly.scalar(other)
        else:
            o = other
        t = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                prev = t.get(m)
                s = c if prev is None else prev + c
                if s:
                    t[m] = s
                else:
                    t.pop(m, None)
        return CommPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n):
        r = CommPoly.one()
        for _ in range(n):
            r = r * self
        return r

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = other if isinstance(other, CommPoly) else CommPoly.scalar(other)
        return self.terms == o.terms

    def map_scalars(self, f):
        out = {}
        for m, c in self.terms.items():
            c2 = f(c)
            if c2:
                out[m] = c2
        return CommPoly(out)

    def subs(self, assignment):
        """Substitute CommPoly/Scalar values for variables (total map)."""
        out = CommPoly.zero()
        for m, c in self.terms.items():
            p = CommPoly.scalar(c)
            for v, e in m:
                val = assignment(v)
                if val is None:
                    val = CommPoly.var(v)
                elif not isinstance(val, CommPoly):
                    val = CommPoly.scalar(val)
                p = p * val**e
            out = out + p
        return out

    def first_monomial(self):
        return min(self.terms) if self.terms else None

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = "*".join(f"{v}^{e}" if e > 1 else f"{v}" for v, e in m) or "1"
            bits.append(f"({c})*{mono}")
        return " + ".join(bits)

    __repr__ = __str__


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def cx(key):
    return CommPoly.var(("x", key[0], key[1]))


def cy(key):
    return CommPoly.var(("y", key[0], key[1]))


_CLASSICAL_CACHE = {}


def _classical_bracket(a, b):
    hit = _CLASSICAL_CACHE.get((a, b))
    if hit is None:
        hit = cx(a) * cy(b) - cy(a) * cx(b)
        _CLASSICAL_CACHE[(a, b)] = hit
    return hit


def classical_eval(bp):
    """Substitute [ab] -> x_a y_b - y_a x_b in the commutative ring."""
    out = CommPoly.zero()
    for m, c in bp.terms.items():
        p = CommPoly.scalar(c)
        for a, b in m:
            p = p * _classical_bracket(a, b)
        out = out + p
    return out


def classical_pbw(p):
    """h = 0 image of a PBW element in the commutative ring.

    Setting h to zero turns every defining relation into plain
    commutativity, so the letters map to commuting variables keyed like the
    bracket letters: ('x'|'y', clone, index).  Only the letter codec is
    borrowed from the kernel; no normalization or arithmetic is shared.
    """
    from . import _kernel as K

    out = CommPoly.zero()
    for w, c in p.terms.items():
        c0 = c.eval_h(0)
        if not c0:
            continue
        exps = {}
        for g in w:
            clone, idx, kind = K.decode(g)
            v = ("x" if kind == K.KIND_X else "y", clone, idx)
            exps[v] = exps.get(v, 0) + 1
        mono = tuple(sorted(exps.items()))
        prev = out.terms.get(mono)
        s = Scalar.from_cyc(c0) if prev is None else prev + Scalar.from_cyc(c0)
        if s:
            out.terms[mono] = s
        else:
            out.terms.pop(mono, None)
    return out


class BackendDisagreement(RuntimeError):
    pass


def verify_bracket_identity(bp):
    """Check bp == 0 in both backends; the verdicts must agree.

    Returns {'holds': bool, 'engine_zero': bool, 'classical_zero': bool}.
    Raises BackendDisagreement (with a witness monomial) on a mismatch.
    """
    engine = bp.expand()
    classical = classical_eval(bp)
    ez, cz = not engine, not classical
    if ez != cz:
        witness = (
            str(next(iter(engine.terms))) if engine.terms else str(classical.first_monomial())
        )
        raise BackendDisagreement(
            f"bracket identity backends disagree (engine zero={ez}, classical zero={cz}); "
            f"witness monomial: {witness}"
        )
    return {"holds": ez, "engine_zero": ez, "classical_zero": cz}


def verify_pbw_identity(p):
    """Dual-run zero test for a bracket-expressible PBW element.

    For elements built from brackets, their letters, and polarizations,
    vanishing is independent of h, so the engine verdict and the h = 0
    classical verdict must coincide; a split is an implementation bug.  Do
    not call this on elements with genuinely h-dependent support (e.g. a
    plain h * x_1), where a split is mathematics, not a bug.
    """
    ez = not p
    cz = not classical_pbw(p)
    if ez != cz:
        raise BackendDisagreement(
            f"pbw identity backends disagree (engine zero={ez}, classical zero={cz})"
        )
    return {"holds": ez, "engine_zero": ez, "classical_zero": cz}
