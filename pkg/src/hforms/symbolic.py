"""The symbolic method: bracket symbols to invariants and covariants.

A symbol is a bracket expression homogeneous of degree n in each of the
indices 1..k (index 0 may appear too; it survives into a covariant).  The
construction expands the symbol into PBW monomials, then replaces the
index-j block y_j^(n-a) x_j^a of every monomial by the matching
combination of the coefficient letters of the special form (0j)^n.
Because polynomials over disjoint ascending index sets multiply by plain
concatenation, the replacement is slot-local and exactly triangular: the
block of x-degree a maps to the letter A_a plus h-corrections by letters
of smaller subscript.

The result is an :class:`AbstractInvariant` — a noncommutative polynomial
in formal letters A_0..A_n, one slot per index, well defined modulo the
universal commutation relations of the letters.  Equality is decided by
instantiating both sides on a special form over fresh indices.
"""

from __future__ import annotations

from functools import lru_cache

from .scalars import Scalar
from .pbw import PBWPoly
from ._kernel import decode
from . import forms as _forms


@lru_cache(maxsize=32)
def _letters_for_index(n, j):
    """Coefficient letters of (0j)^n, a tuple of polynomials in x_j, y_j."""
    from .brackets import bracket

    return tuple(_forms.extract_right(bracket(0, j) ** n, n))


@lru_cache(maxsize=32)
def _block_to_letters(n):
    """S[a] = {i: Scalar} with  y^(n-a) x^a  =  sum_i S[a][i] * A_i.

    Computed by inverting the triangular matrix of the letters of (01)^n
    expressed in canonical single-index blocks.
    """
    letters = _letters_for_index(n, 1)
    R = [dict() for _ in range(n + 1)]  # R[i] maps block x-degree a -> Scalar
    for i, A in enumerate(letters):
        for w, c in A.terms.items():
            m, a, tail = _forms._split_block(w, 1)
            assert not tail and m + a == n
            R[i][a] = c
    S = [dict() for _ in range(n + 1)]
    for a in range(n + 1):
        # block_a = (A_a - sum_{i<a} R[a appears in A_i? no: corrections]) ...
        # A_a = R[a][a]*block_a + sum_{b<a} R[a][b]*block_b, so
        # block_a = (A_a - sum_{b<a} R[a][b]*block_b) / R[a][a]
        lead = R[a][a]
        row = {a: Scalar.one() / lead}
        for b in range(a):
            cb = R[a].get(b)
            if not cb:
                continue
            for i, c in S[b].items():
                prev = row.get(i, Scalar.zero())
                s = prev - cb * c / lead
                if s:
                    row[i] = s
                elif i in row:
                    del row[i]
        S[a] = row
    return tuple(S)


def _split_indices(word):
    """Split a canonical base word into {index: (ydeg, xdeg)}; rejects clones."""
    prof = {}
    for g in word:
        clone, idx, kind = decode(g)
        if clone:
            raise ValueError("symbols may not contain differential clones")
        m, a = prof.get(idx, (0, 0))
        prof[idx] = (m + 1, a) if kind == 0 else (m, a + 1)
    return prof


class AbstractInvariant:
    """Formal polynomial in coefficient letters A_0..A_n (plus x, y blocks).

    terms maps ((ydeg, xdeg), ivec) -> Scalar, where the first entry is the
    index-0 block of a covariant ((0, 0) for invariants) and ivec is the
    tuple of letter subscripts in slot order.
    """

    __slots__ = ("n", "k", "terms")

    def __init__(self, n, k, terms):
        self.n = n
        self.k = k
        self.terms = {key: c for key, c in terms.items() if c}

    @classmethod
    def from_letter_terms(cls, n, entries):
        """entries: iterable of (coeff, letters, [block]) with letters either
        a string like "AC" or a tuple of subscripts."""
        terms = {}
        k = None
        for entry in entries:
            coeff, word = entry[0], entry[1]
            block = entry[2] if len(entry) > 2 else (0, 0)
            if isinstance(word, str):
                word = tuple(ord(ch) - 65 for ch in word)
            if k is None:
                k = len(word)
            elif k != len(word):
                raise ValueError("letter words must have equal length")
            if not isinstance(coeff, Scalar):
                coeff = Scalar.rat(coeff) if not isinstance(coeff, tuple) else Scalar.h(*coeff)
            key = (tuple(block), tuple(word))
            prev = terms.get(key, Scalar.zero())
            s = prev + coeff
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return cls(n, k or 0, terms)

    def is_covariant(self):
        return any(block != (0, 0) for block, _ in self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other):
        if self.n != other.n or self.k != other.k:
            raise ValueError("mismatched letter shapes")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Scalar.zero()) + c
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
        return AbstractInvariant(self.n, self.k, terms)

    def __sub__(self, other):
        return self + other.scaled(Scalar.rat(-1))

    def scaled(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.rat(c)
        return AbstractInvariant(self.n, self.k, {k: v * c for k, v in self.terms.items()})

    def instantiate(self, letters, index=0):
        """Substitute concrete coefficients (a Form or an (n+1)-sequence)."""
        if isinstance(letters, _forms.Form):
            if letters.n != self.n:
                raise ValueError("form degree does not match letter degree")
            letters = letters.coeffs
        if len(letters) != self.n + 1:
            raise ValueError("need %d letters" % (self.n + 1))
        from .pbw import x, y

        out = PBWPoly.zero()
        for (block, ivec), c in self.terms.items():
            m, a = block
            p = PBWPoly.scalar(c)
            # block keys name canonical monomials: y-part first, then x-part
            if m:
                p = p * y(index) ** m
            if a:
                p = p * x(index) ** a
            for i in ivec:
                p = p * letters[i]
            out = out + p
        return out

    def canonical(self):
        """PBW element on the special form over fresh indices k+1..k+n."""
        return self.instantiate(_forms.special_form(self.n, offset=self.k))

    def is_zero(self):
        return not self.terms or not self.canonical()

    def __eq__(self, other):
        if not isinstance(other, AbstractInvariant):
            return NotImplemented
        if self.n != other.n:
            return False
        if self.terms == other.terms:
            return True
        off = max(self.k, other.k)
        f = _forms.special_form(self.n, offset=off)
        return self.instantiate(f) == other.instantiate(f)

    def __hash__(self):
        raise TypeError("AbstractInvariant is unhashable (equality is modular)")

    def ordered(self):
        """Rewrite every letter word into sorted subscript order.

        Uses the universal commutation table of the special form; the
        corrections carry strictly smaller subscript sums, so the rewriting
        terminates.  The ordered expression is a display normal form.
        """
        table = _commutator_table(self.n)
        terms = {}
        for (block, ivec), c in self.terms.items():
            for word, d in _sort_letter_word(self.n, ivec, table).items():
                key = (block, word)
                s = terms.get(key, Scalar.zero()) + c * d
                if s:
                    terms[key] = s
                elif key in terms:
                    del terms[key]
        return AbstractInvariant(self.n, self.k, terms)

    def _xfirst_terms(self):
        """Re-key the index-0 blocks onto x-before-y monomial products.

        Canonical block keys name the basis words y^m x^a; the classical way
        of writing a covariant is sum_i x^(d-i) y^i * D_i.  Returns the terms
        keyed by ((i, d-i), ivec) where the block now means the *product*
        x^(d-i) * y^i.  Triangular: pushing x past y only raises the y-degree.
        """
        bydeg = {}
        for (block, ivec), c in self.terms.items():
            d = block[0] + block[1]
            bydeg.setdefault(d, {}).setdefault(block, {})[ivec] = c
        out = {}
        for d, byblock in bydeg.items():
            table = _forms._xy_block_table(d, 0)
            sol = []
            for i in range(d + 1):
                acc = dict(byblock.get((i, d - i), {}))
                for j in range(i):
                    t = table[j].get((i, d - i))
                    if t is None:
                        continue
                    for iv, c in sol[j].items():
                        s = acc.get(iv, Scalar.zero()) - c * t
                        if s:
                            acc[iv] = s
                        elif iv in acc:
                            del acc[iv]
                sol.append(acc)
                for iv, c in acc.items():
                    out[((i, d - i), iv)] = c
        return out

    def xfirst_letters(self):
        """Letters D_0..D_d with self = sum_i x^(d-i) y^i * D_i (no binomials).

        Requires a single index-0 degree; each D_i is {ivec: Scalar}.
        """
        degs = {m + a for (m, a), _ in self.terms} or {0}
        if len(degs) != 1:
            raise ValueError("mixed index-0 degrees; no single letter row")
        d = degs.pop()
        rows = [{} for _ in range(d + 1)]
        for ((i, _a), ivec), c in self._xfirst_terms().items():
            rows[i][ivec] = c
        return rows

    def __str__(self):
        if not self.terms:
            return "0"
        def blockkey(item):
            (block, ivec), _ = item
            return (block[0], -sum(ivec), ivec)
        parts = []
        for (block, ivec), c in sorted(self._xfirst_terms().items(), key=blockkey):
            m, a = block
            frags = []
            if a:
                frags.append("x" if a == 1 else f"x^{a}")
            if m:
                frags.append("y" if m == 1 else f"y^{m}")
            i = 0
            while i < len(ivec):
                j = i
                while j < len(ivec) and ivec[j] == ivec[i]:
                    j += 1
                name = chr(65 + ivec[i])
                frags.append(name if j - i == 1 else f"{name}^{j - i}")
                i = j
            mono = "*".join(frags) or "1"
            one = Scalar.one()
            if c == one and frags:
                parts.append(mono)
            elif c == -one and frags:
                parts.append(f"-{mono}")
            elif len(c.terms) == 1 and not frags:
                parts.append(str(c))
            elif len(c.terms) == 1:
                parts.append(f"{c}*{mono}" if "+" not in str(c) else f"({c})*{mono}")
            else:
                parts.append(f"({c})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"AbstractInvariant(n={self.n}, k={self.k}, {self})"


@lru_cache(maxsize=16)
def _commutator_table(n):
    return _forms.commutator_constants(_forms.special_form(n))


@lru_cache(maxsize=None)
def _sorted_word_cached(n, word):
    table = _commutator_table(n)
    for p in range(len(word) - 1):
        l, k = word[p], word[p + 1]
        if l <= k:
            continue
        out = {}
        swaps = [(Scalar.one(), word[:p] + (k, l) + word[p + 2:])]
        swaps += [
            (c, word[:p] + (i, j) + word[p + 2:])
            for (i, j), c in table[(l, k)].items()
        ]
        for c, w in swaps:
            for w2, d in _sorted_word_cached(n, w).items():
                s = out.get(w2, Scalar.zero()) + c * d
                if s:
                    out[w2] = s
                elif w2 in out:
                    del out[w2]
        return out
    return {word: Scalar.one()}


def _sort_letter_word(n, word, table):
    return _sorted_word_cached(n, word)


# ---------------------------------------------------------------------------
# The cascade

def _symbol_poly(sym):
    from .brackets import BracketPoly

    if isinstance(sym, BracketPoly):
        return sym.expand()
    if isinstance(sym, PBWPoly):
        return sym
    raise TypeError("symbol must be a BracketPoly or PBWPoly")


def symbol_slots(sym):
    """Validate homogeneity and return (k, n) of a symbol polynomial."""
    p = _symbol_poly(sym)
    if not p:
        raise ValueError("zero symbol")
    profiles = [_split_indices(w) for w in p.terms]
    idxs = sorted({i for prof in profiles for i in prof if i != 0})
    if not idxs:
        raise ValueError("symbol has no auxiliary indices")
    k = max(idxs)
    if idxs != list(range(1, k + 1)):
        raise ValueError("auxiliary indices must be exactly 1..k")
    degs = {
        j: {prof.get(j, (0, 0))[0] + prof.get(j, (0, 0))[1] for prof in profiles}
        for j in range(1, k + 1)
    }
    ns = {d for s in degs.values() for d in s}
    if len(ns) != 1:
        raise ValueError(f"symbol is not equi-homogeneous in indices 1..{k}: {degs}")
    return k, ns.pop()


def cascade(sym, n, allow_covariant=True):
    """Run the letter-replacement cascade on a symbol.

    Every PBW monomial splits into its index-0 block and one block per
    auxiliary index; each auxiliary block y^(n-a) x^a is replaced by its
    letter combination.  Slot order equals index order.
    """
    p = _symbol_poly(sym)
    k, n_found = symbol_slots(p)
    if n_found != n:
        raise ValueError(f"symbol is homogeneous of degree {n_found}, not {n}")
    S = _block_to_letters(n)
    terms = {}
    for w, c in p.terms.items():
        prof = _split_indices(w)
        block = prof.pop(0, (0, 0))
        if block != (0, 0) and not allow_covariant:
            raise ValueError("symbol contains index 0; use symbolic_covariant")
        choices = [(Scalar.one(), ())]
        for j in range(1, k + 1):
            m, a = prof.get(j, (0, 0))
            nxt = []
            for i, s in S[a].items():
                for c0, ivec in choices:
                    nxt.append((c0 * s, ivec + (i,)))
            choices = nxt
        for c0, ivec in choices:
            key = (block, ivec)
            s = terms.get(key, Scalar.zero()) + c * c0
            if s:
                terms[key] = s
            elif key in terms:
                del terms[key]
    out = AbstractInvariant(n, k, terms)
    _verify_cascade(p, out)
    return out


def _verify_cascade(p, inv):
    """Residual check: per-slot instantiation must reproduce the symbol."""
    from .pbw import x, y

    total = PBWPoly.zero()
    slot_letters = [_letters_for_index(inv.n, j) for j in range(1, inv.k + 1)]
    for (block, ivec), c in inv.terms.items():
        m, a = block
        t = PBWPoly.scalar(c)
        if m:
            t = t * y(0) ** m
        if a:
            t = t * x(0) ** a
        for j, i in enumerate(ivec):
            t = t * slot_letters[j][i]
        total = total + t
    if total != p:
        raise RuntimeError("cascade residual: letter expansion does not reproduce symbol")


def symbolic_invariant(sym, n):
    """Invariant of an abstract n-form from an index-0-free symbol."""
    return cascade(sym, n, allow_covariant=False)


def symbolic_covariant(sym, n):
    """Covariant of an abstract n-form; index 0 passes through as x, y."""
    return cascade(sym, n, allow_covariant=True)


def cascade_by_solve(sym, n):
    """Independent route: solve for the letter coefficients directly.

    Builds the full product basis of per-index letters (times the index-0
    block read off the symbol) and runs the exact linear solver against
    the expanded symbol.
    """
    from .pbw import x, y
    from itertools import product as iproduct

    p = _symbol_poly(sym)
    k, n_found = symbol_slots(p)
    if n_found != n:
        raise ValueError(f"symbol is homogeneous of degree {n_found}, not {n}")
    blocks = sorted({_split_indices(w).get(0, (0, 0)) for w in p.terms})
    slot_letters = [_letters_for_index(n, j) for j in range(1, k + 1)]
    keys = []
    basis = []
    for block in blocks:
        m, a = block
        head = y(0) ** m * x(0) ** a
        for ivec in iproduct(range(n + 1), repeat=k):
            t = head
            for j, i in enumerate(ivec):
                t = t * slot_letters[j][i]
            keys.append((block, ivec))
            basis.append(t)
    sol = _forms.express_in_basis(p, basis)
    if sol is None:
        raise RuntimeError("direct solve found no letter representation")
    terms = {key: c for key, c in zip(keys, sol) if c}
    return AbstractInvariant(n, k, terms)


# ---------------------------------------------------------------------------
# Named symbols

def named_symbol(name):
    from .brackets import bracket as br

    if name == "d2":
        return br(1, 2) ** 2, 2
    if name == "hessian":
        return br(0, 1) * br(0, 2) * br(1, 2) ** 2, 3
    if name == "d3":
        return br(1, 2) ** 2 * br(3, 4) ** 2 * br(1, 3) * br(2, 4), 3
    if name == "j":
        return br(0, 1) ** 2 * br(0, 2) * br(1, 3) * br(2, 3) ** 2, 3
    raise KeyError(f"unknown symbol name {name!r}")


@lru_cache(maxsize=8)
def named_invariant(name):
    sym, n = named_symbol(name)
    return cascade(sym, n)
