"""Frozen letter tables for the classical covariants of low-degree forms.

Letter words use A..Z for the subscripts 0..n of a form's right coefficient
row, in left-to-right product order; coefficients are either an integer, a
rational, or an (h-power, rational) pair.  Covariant rows are given in the
x-before-y writing (``sum_i x^(d-i) y^i * row[i]``, no binomial factors), the
same convention `AbstractInvariant.xfirst_letters` produces.

Every table here was cross-checked two ways before being frozen: once at
h = 0 against an independent commutative-polynomial evaluation, and once at
h != 0 against the letter cascade of this package.
"""

from __future__ import annotations

from .scalars import QQ, Scalar


def letter_dict(entries):
    """Decode ((coeff, word), ...) into {subscript tuple: Scalar}."""
    out = {}
    for coeff, word in entries:
        ivec = tuple(ord(ch) - 65 for ch in word)
        if isinstance(coeff, tuple):
            c = Scalar.h(*coeff)
        elif isinstance(coeff, Scalar):
            c = coeff
        else:
            c = Scalar.rat(coeff)
        if c:
            out[ivec] = c
    return out


# --- quadratic form (letters A, B, C) --------------------------------------

# discriminant normalized with leading term AC; the two-point pair invariant
# evaluates to exactly twice this row
QUADRATIC_DISCRIMINANT = (
    (1, "AC"), (-1, "BB"), ((1, -1), "AB"), ((2, QQ(3, 4)), "AA"),
)

# pair invariant of a quadratic, subscript-ordered writing
QUADRATIC_PAIR_INVARIANT = (
    (2, "AC"), (-2, "BB"), ((1, -2), "AB"), ((2, QQ(3, 2)), "AA"),
)


# --- cubic form (letters A, B, C, D) ----------------------------------------

# hessian covariant x^2*K + x*y*L + y^2*M
HESSIAN_ROWS = (
    # K
    ((2, "AC"), (-2, "BB"), ((1, -4), "AB"), ((2, 2), "AA")),
    # L
    ((2, "AD"), (-2, "BC"), ((1, -2), "AC"), ((2, 4), "AB"), ((3, -2), "AA")),
    # M
    ((2, "BD"), (-2, "CC"), ((1, -4), "AD"), ((2, 6), "BB"),
     ((3, -6), "AB"), ((4, 8), "AA")),
)

# cubicovariant x^3*r0 + x^2 y*r1 + x y^2*r2 + y^3*r3
CUBICOVARIANT_ROWS = (
    ((1, "AAD"), (-3, "ABC"), (2, "BBB"),
     ((1, 9), "ABB"), ((2, -2), "AAB"), ((3, 6), "AAA")),
    ((3, "ABD"), (-6, "ACC"), (3, "BBC"),
     ((1, -9), "AAD"), ((1, 12), "ABC"), ((1, -3), "BBB"),
     ((2, -6), "ABB"), ((3, -12), "AAB"), ((4, 6), "AAA")),
    ((-3, "ACD"), (6, "BBD"), (-3, "BCC"),
     ((1, -6), "ABD"), ((1, 9), "ACC"), ((1, -3), "BBC"),
     ((2, 30), "AAD"), ((2, -12), "ABC"), ((2, 12), "BBB"),
     ((3, -12), "ABB"), ((4, 60), "AAB"), ((5, -90), "AAA")),
    ((-1, "ADD"), (3, "BCD"), (-2, "CCC"),
     ((1, -15), "BBD"), ((1, 6), "BCC"),
     ((2, 36), "ABD"), ((2, -8), "ACC"), ((2, 6), "BBC"),
     ((3, -102), "AAD"), ((3, -18), "ABC"), ((3, -42), "BBB"),
     ((4, 38), "AAC"), ((4, 126), "ABB"),
     ((5, -378), "AAB"), ((6, 704), "AAA")),
)

# cubic discriminant normalized with leading term -A^2 D^2; the four-point
# pair-square invariant evaluates to exactly twice this row
CUBIC_DISCRIMINANT = (
    (-1, "AADD"), (6, "ABCD"), (-4, "ACCC"), (-4, "BBBD"), (3, "BBCC"),
    ((1, -18), "ABBD"), ((1, 9), "ABCC"), ((1, -9), "AACD"),
    ((2, -9), "BBBB"), ((2, 40), "AABD"), ((2, -7), "AACC"), ((2, 12), "ABBC"),
    ((3, -72), "AAAD"), ((3, -36), "AABC"), ((3, -66), "ABBB"),
    ((4, 150), "AABB"), ((4, 76), "AAAC"),
    ((5, -384), "AAAB"), ((6, 652), "AAAA"),
)


# Ratio cascade(symbol) / table value, per named symbol.  Verified at h != 0.
CASCADE_SCALE = {
    "d2": QQ(2),       # vs QUADRATIC_DISCRIMINANT
    "hessian": QQ(1),  # vs HESSIAN_ROWS
    "d3": QQ(2),       # vs CUBIC_DISCRIMINANT
    "j": QQ(1),        # vs CUBICOVARIANT_ROWS
}

# The cubic syzygy 4*Delta^3 + j^2 + d3*f^2 = 0 holds when Delta is taken to
# be *half* the hessian row above (j and d3 as tabled).  Equivalently
# (1/2)*hessian^3 + j^2 + d3*f^2 = 0.  Solved for the unique scaling at
# h = 0 with an independent oracle, then checked at h != 0 on the special
# cubic; the combination with the unhalved hessian does not vanish.
SYZYGY_HESSIAN_SCALE = QQ(1, 2)
