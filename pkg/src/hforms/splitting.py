"""Classical splitting-tower oracle for the pencil differential sum.

Everything here is h = 0 and commutative: rational coordinates are assigned
to the letters, each bracket (0i) becomes the linear polynomial t·yᵢ − xᵢ in
the chart y = 1, and the roots of the pencil polynomial r(t) are adjoined
through a triangular tower of quotient rings over Q.  The branch root w is
eliminated through the squared sign relation w² = a·b, which makes every
summand of the differential sum w-free, and the denominator-cleared
coefficient of each moving differential must be the zero element of the
tower.

The module is deliberately self-contained (fractions + random only): a
verdict here shares no code path with the PBW engine.
"""
from __future__ import annotations

import random
from fractions import Fraction

__all__ = [
    "DegenerateInstance",
    "SplittingTower",
    "TowerElement",
    "pencil_sum_is_zero",
]


class DegenerateInstance(RuntimeError):
    """No nondegenerate rational sample found within the retry budget."""


# -- dense rational polynomials in one variable (lists, low degree first) ----


def _trim(c):
    while c and not c[-1]:
        c.pop()
    return c


def _padd(a, b):
    n = max(len(a), len(b))
    return _trim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _trim(out)


def _pscale(a, c):
    return _trim([ca * c for ca in a])


def _pderiv(a):
    return _trim([a[i] * i for i in range(1, len(a))])


def _pgcd(a, b):
    a, b = list(a), list(b)
    while b:
        # remainder of a by b (b nonzero)
        r = list(a)
        while len(r) >= len(b) and _trim(r):
            coef = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, cb in enumerate(b):
                r[shift + i] -= coef * cb
            _trim(r)
        a, b = b, r
    return a


def _squarefree(a):
    g = _pgcd(a, _pderiv(a))
    return len(g) == 1


def _peval(a, v):
    """Horner evaluation; ``v`` may be a Fraction or a TowerElement."""
    acc = None
    for c in reversed(a):
        acc = c if acc is None else acc * v + c
    return Fraction(0) if acc is None else acc


# -- the triangular tower ------------------------------------------------------


def _raw_mul(t1, t2):
    out = {}
    for e1, c1 in t1.items():
        for e2, c2 in t2.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


class TowerElement:
    """{exponent tuple: Fraction} reduced below the tower degrees."""

    __slots__ = ("tower", "terms")

    def __init__(self, tower, terms):
        self.tower = tower
        self.terms = terms

    def _coerce(self, other):
        if isinstance(other, TowerElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.tower.scalar(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return TowerElement(self.tower, t)

    __radd__ = __add__

    def __neg__(self):
        return TowerElement(self.tower, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return TowerElement(self.tower, self.tower._reduce(_raw_mul(self.terms, o.terms)))

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __repr__(self):
        return f"TowerElement({self.terms!r})"


class SplittingTower:
    """All roots of a monic squarefree rational polynomial.

    Roots are adjoined one at a time: t₀ satisfies the polynomial itself,
    each later generator satisfies the quotient by the previous linear
    factor (synthetic division), and the last root is read off the final
    linear factor.  Reduction is triangular, so elements normalize by
    rewriting top powers downward.
    """

    def __init__(self, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if not coeffs or coeffs[-1] != 1:
            raise ValueError("need a monic polynomial (low coefficients first)")
        self.k = len(coeffs) - 1
        self.nvars = max(self.k - 1, 0)
        self.degrees = []
        self.tops = []  # tops[i] = reduced form of t_i^{degrees[i]}
        self.roots = []
        f = [self.scalar(c) for c in coeffs]
        i = 0
        while len(f) - 1 > 1:
            d = len(f) - 1
            self.degrees.append(d)
            top = self.zero()
            for e in range(d):
                top = top + (-f[e]) * self._var_power(i, e)
            self.tops.append(top)
            root = self._var_power(i, 1)
            self.roots.append(root)
            # synthetic division by (t - root); the remainder vanishes by design
            g = [self.zero()] * d
            b = f[d]
            for e in range(d - 1, -1, -1):
                g[e] = b
                b = f[e] + b * root
            if b:
                raise AssertionError("synthetic division left a remainder")
            f = g
            i += 1
        if len(f) - 1 == 1:
            self.roots.append(-f[0])

    def _zero_exps(self):
        return (0,) * self.nvars

    def zero(self):
        return TowerElement(self, {})

    def scalar(self, c):
        c = Fraction(c)
        return TowerElement(self, {self._zero_exps(): c} if c else {})

    def _var_power(self, i, e):
        if e == 0:
            return self.scalar(1)
        exps = [0] * self.nvars
        exps[i] = e
        return TowerElement(self, {tuple(exps): Fraction(1)})

    def _reduce(self, terms):
        work = dict(terms)
        out = {}
        while work:
            exps, c = work.popitem()
            if not c:
                continue
            hot = None
            for i, d in enumerate(self.degrees):
                if exps[i] >= d:
                    hot = i
                    break
            if hot is None:
                s = out.get(exps, 0) + c
                if s:
                    out[exps] = s
                else:
                    out.pop(exps, None)
                continue
            rest = list(exps)
            rest[hot] -= self.degrees[hot]
            lowered = _raw_mul({tuple(rest): c}, self.tops[hot].terms)
            for e, c2 in lowered.items():
                s = work.get(e, 0) + c2
                if s:
                    work[e] = s
                else:
                    work.pop(e, None)
        return out


# -- the differential sum -----------------------------------------------------


def _product(polys):
    out = [Fraction(1)]
    for p in polys:
        out = _pmul(out, p)
    return out


def pencil_sum_is_zero(data, seed=0, tries=40):
    """Σᵢ εᵢ·dhᵢ = 0 over the roots of a random rational pencil.

    ``data`` only contributes its index tuples (duck-typed, so the caller
    may pass any object with branch/u/p/q index attributes plus s and g).
    Per moving letter v the differentials dx_v, dy_v are independent
    symbols; their denominator-cleared coefficients in the sum must each be
    the zero element of the tower.  In-tower confirmations: r(tᵢ) = 0 and
    the squared sign relation (b·Q)²(tᵢ) = (a·b·P²)(tᵢ) that eliminates the
    branch root.
    """
    rng = random.Random(seed)
    a_idx = list(data.branch[: data.s])
    b_idx = list(data.branch[data.s:])
    letters = sorted(set(data.branch) | set(data.u_indices) | set(data.p_indices) | set(data.q_indices))
    movers = list(data.p_indices) + list(data.q_indices)
    k = data.s + 2 * len(data.p_indices)

    for attempt in range(1, tries + 1):
        coords = {
            i: (
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
                Fraction(rng.randint(-9, 9), rng.randint(1, 4)),
            )
            for i in letters
        }
        lin = {i: _trim([-coords[i][0], coords[i][1]]) for i in letters}
        a = _product([lin[i] for i in a_idx])
        b = _product([lin[i] for i in b_idx])
        P = _product([lin[i] for i in data.p_indices])
        Q = _product([lin[i] for i in data.q_indices])
        u = _product([lin[i] for i in data.u_indices])
        r = _padd(_pmul(a, _pmul(P, P)), _pscale(_pmul(b, _pmul(Q, Q)), -1))
        if len(r) - 1 != k or not _squarefree(r):
            continue
        aux = _product([a, b, P, Q, u])
        if len(_pgcd(r, aux)) != 1:
            continue  # a root of r meets a zero of some cleared factor

        monic = _pscale(r, 1 / r[-1])
        tower = SplittingTower(monic)
        rp = _pderiv(r)

        at = [
            {
                "a": _peval(a, t),
                "b": _peval(b, t),
                "P": _peval(P, t),
                "Q": _peval(Q, t),
                "u": _peval(u, t),
                "rp": _peval(rp, t),
                "r": _peval(r, t),
                "t": t,
            }
            for t in tower.roots
        ]
        if any(not v["r"] == tower.zero() for v in at):
            raise AssertionError("adjoined value is not a root")
        sign_sq = all(
            (v["b"] * v["Q"]) * (v["b"] * v["Q"]) == v["a"] * v["b"] * v["P"] * v["P"]
            for v in at
        )
        dens = [v["rp"] * v["b"] * v["Q"] for v in at]
        if any(not d for d in dens):
            continue

        # coefficient polynomials of each differential symbol in -dr
        symbols = {}
        for v in movers:
            if v in data.p_indices:
                hat = _product([lin[i] for i in data.p_indices if i != v])
                dx_coef = _pscale(_pmul(a, _pmul(P, hat)), -2)  # ∂r/∂x_v
                dy_coef = _pmul(_pscale(_pmul(a, _pmul(P, hat)), 2), [Fraction(0), Fraction(1)])
            else:
                hat = _product([lin[i] for i in data.q_indices if i != v])
                dx_coef = _pscale(_pmul(b, _pmul(Q, hat)), 2)
                dy_coef = _pmul(_pscale(_pmul(b, _pmul(Q, hat)), -2), [Fraction(0), Fraction(1)])
            symbols[("dx", v)] = dx_coef
            symbols[("dy", v)] = dy_coef

        # summand i: u(tᵢ)·dtᵢ·εᵢ/w(tᵢ) with εᵢ/w = P/(b·Q) and
        # dtᵢ = -(Σ_sym coef(tᵢ)·sym)/r'(tᵢ); cleared by ∏ᵢ r'(tᵢ)·b(tᵢ)·Q(tᵢ)
        residuals = {}
        for sym, coef in symbols.items():
            total = tower.zero()
            for i, v in enumerate(at):
                num = -(v["u"] * _peval(coef, v["t"]) * v["P"])
                for j, d in enumerate(dens):
                    if j != i:
                        num = num * d
                total = total + num
            residuals[sym] = total

        holds = sign_sq and all(res == tower.zero() for res in residuals.values())
        return {
            "holds": holds,
            "tries": attempt,
            "k": k,
            "sign_square": sign_sq,
            "symbols": sorted(f"{kind}{v}" for kind, v in residuals),
            "nonzero": sorted(f"{kind}{v}" for (kind, v), res in residuals.items() if res),
        }
    raise DegenerateInstance(f"no nondegenerate sample in {tries} tries")
