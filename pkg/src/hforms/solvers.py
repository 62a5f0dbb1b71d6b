"""Splitting quadratic and cubic forms into linear factors.

The route is classical (Hermite's typical representation followed by the
quadratic formula or Cardano's formula), carried out with exact deformed
arithmetic:

1. polarize the form onto an auxiliary index until it is linear; the
   next-to-last polar ``xi`` and the bracket ``eta`` of the two indices
   form a commutative pair with invariant coefficients;
2. rewrite ``f * f1**(n-1)`` as a polynomial in ``(xi, eta)`` -- the
   typical representation;
3. split that commutative polynomial by radicals, adjoining the needed
   central roots (`RootExtension` / `CardanoExtension`);
4. read off homogeneous root coordinates ``(X_i, Y_i)``; the form
   vanishes at each of them in the polarization sense.

All degree bookkeeping uses the binomial coefficient convention of
`Form`: a quadratic is x^2 A + 2xy B + y^2 C, a cubic is
x^3 A + 3x^2y B + 3xy^2 C + y^3 D.
"""
from __future__ import annotations

from .scalars import QQ, Scalar
from .pbw import PBWPoly, x, y
from .brackets import bracket
from .forms import Form, make_point
from .polarize import polar
from .extensions import (
    CardanoExtension,
    RootExtension,
    linear_form_at,
    polar_onto,
    vanishes_at,
)

__all__ = [
    "PolarFrame",
    "polar_frame",
    "frame_residuals",
    "quadratic_discriminant",
    "quadratic_radicand",
    "typical_representation_residual",
    "quadratic_root_extension",
    "quadratic_roots",
    "projective_roots",
    "hessian_covariant",
    "cubic_covariant",
    "cubic_discriminant",
    "cardano_extension",
    "cubic_roots",
    "cubic_reconstruction_residual",
    "linear_form_at",
    "vanishes_at",
]

_h = Scalar.h


def _as_form(f, n=None):
    if isinstance(f, Form):
        return f
    if n is None:
        raise ValueError("degree is needed to read a bare element as a form")
    return Form.from_element(f, n)


class PolarFrame:
    """The linear polar of a form and its point coordinates.

    xi    -- the (n-1)-fold polar, linear in the distinguished pair;
    eta   -- the bracket of the distinguished and auxiliary indices;
    f1    -- the n-fold polar (the form carried wholly onto the auxiliary
             index);
    gamma, delta -- the point coordinates of xi, so that
             xi = x*delta - y*gamma - h*y*delta.
    """

    __slots__ = ("n", "aux", "xi", "eta", "f1", "gamma", "delta")

    def __init__(self, n, aux, xi, eta, f1, gamma, delta):
        self.n = n
        self.aux = aux
        self.xi = xi
        self.eta = eta
        self.f1 = f1
        self.gamma = gamma
        self.delta = delta

    def __repr__(self):
        return f"PolarFrame(n={self.n}, aux={self.aux})"


def polar_frame(f, n=None, aux=1):
    F = _as_form(f, n)
    used = {idx for _clone, idx in F.element().indices() if idx != 0}
    if aux == 0 or aux in used:
        raise ValueError(
            f"auxiliary index {aux} already occurs in the form; pick a fresh one"
        )
    xi = F.element()
    for _ in range(F.n - 1):
        xi = polar(xi, 0, aux)
    f1 = polar(xi, 0, aux)
    pt = make_point(xi)
    return PolarFrame(F.n, aux, xi, bracket(0, aux), f1, pt.X, pt.Y)


def frame_residuals(f, frame=None, aux=1):
    """Residuals of the denominator-free frame identities (all must vanish).

    The names describe the cleared content: pulling the distinguished
    variables out of ``xi*y_aux - eta*delta`` and ``xi*x_aux - eta*gamma``
    exposes ``f1`` as the common right factor, which is the
    denominator-free way of saying that (gamma, delta) is a zero of the
    next polar.
    """
    if frame is None:
        frame = polar_frame(f, aux=aux)
    a = frame.aux
    xi, eta, f1 = frame.xi, frame.eta, frame.f1
    g, d = frame.gamma, frame.delta
    h = _h(1)
    return {
        "xi_point_form": xi - (x(0) * d - y(0) * g - y(0) * d * h),
        "pull_out_y": xi * y(a) - eta * d - y(0) * (x(a) * d - g * y(a)),
        "pull_out_x": xi * x(a) - eta * g - x(0) * (d * x(a) - y(a) * g),
        "delta_commutes": y(a) * d - d * y(a),
        "gamma_skew": (x(a) + y(a) * h) * g - (g + d * h) * x(a),
        "factor_sym": (d * x(a) - y(a) * g) - (x(a) * d - g * y(a)),
        "factor_is_f1": (d * x(a) - y(a) * g) - f1,
        "clear_x": x(0) * f1 - (xi * x(a) - eta * g),
        "clear_y": y(0) * f1 - (xi * y(a) - eta * d),
    }


# ---------------------------------------------------------------------------
# Quadratic forms

def quadratic_discriminant(A, B, C):
    """2AC - 2B^2 - 2hAB + (3/2)h^2 A^2 for the quadratic x^2A + 2xyB + y^2C."""
    return A * C * 2 - B * B * 2 - _h(1, 2) * A * B + _h(2, QQ(3, 2)) * A * A


def quadratic_radicand(A, B, C):
    """Minus half the discriminant: B^2 - AC + hAB - (3/4)h^2 A^2."""
    return B * B - A * C + _h(1) * A * B - _h(2, QQ(3, 4)) * A * A


def typical_representation_residual(f, n=2):
    """f * P^2 f - (P f)^2 - (1/2) d2 (01)^2 for a quadratic (zero iff valid)."""
    F = _as_form(f, n)
    if F.n != 2:
        raise ValueError("the quadratic typical representation needs degree 2")
    A, B, C = F.coeffs
    fe = F.element()
    Pf = polar(fe, 0, 1)
    P2f = polar(Pf, 0, 1)
    d2 = quadratic_discriminant(A, B, C)
    return fe * P2f - Pf * Pf - d2 * bracket(0, 1) ** 2 * QQ(1, 2)


def quadratic_root_extension(f, check=True):
    """Adjoin the central square root of minus half the discriminant."""
    F = _as_form(f, 2)
    A, B, C = F.coeffs
    return RootExtension(quadratic_radicand(A, B, C), 2, check=check)


def quadratic_roots(f, s=None, aux=1):
    """Homogeneous root coordinates ((X1, Y1), (X2, Y2)) of a quadratic.

    ``s`` is a square root of the radicand: an element of
    `quadratic_root_extension(f)` (the default), or a concrete central
    element whose square is the radicand.
    """
    F = _as_form(f, 2)
    A, B, C = F.coeffs
    if s is None:
        s = quadratic_root_extension(F).root()
    elif isinstance(s, PBWPoly):
        if s * s != quadratic_radicand(A, B, C):
            raise ValueError("the proposed root does not square to the radicand")
    base_X = -x(aux) * B - y(aux) * C - y(aux) * B * _h(1, 2) - x(aux) * A * _h(1, QQ(3, 2))
    base_Y = x(aux) * A + y(aux) * B - y(aux) * A * _h(1, QQ(1, 2))
    roots = []
    for sign in (1, -1):
        S = s if sign > 0 else -s
        roots.append((base_X + x(aux) * S, base_Y + y(aux) * S))
    return tuple(roots)


def projective_roots(f, s):
    """The two projective roots (-B + s) A^{-1} and (-B - s) A^{-1}.

    Needs a concrete central root ``s`` and a leading coefficient the
    localization can invert; returns a pair of localized elements.
    """
    from . import localization as loc

    F = _as_form(f, 2)
    A, B, _C = F.coeffs
    if not isinstance(s, PBWPoly):
        raise ValueError("projective roots need a concrete root element")
    Ainv = loc.loc_inverse(A)
    return (loc.from_pbw(-B + s) * Ainv, loc.from_pbw(-B - s) * Ainv)


# ---------------------------------------------------------------------------
# Cubic forms

def hessian_covariant(f):
    """The quadratic covariant of a cubic, normalized so that

        f * f1^2 = xi^3 + 3*(P^2 Delta)*eta^2*xi - (P^3 j)*eta^3.

    This is half the letter-table normalization used by the symbolic
    module's cascade.
    """
    from .symbolic import named_invariant

    F = _as_form(f, 3)
    return named_invariant("hessian").instantiate(F) * QQ(1, 2)


def cubic_covariant(f):
    """The degree-three covariant entering the typical representation."""
    from .symbolic import named_invariant

    F = _as_form(f, 3)
    return named_invariant("j").instantiate(F)


def cubic_discriminant(f):
    from .symbolic import named_invariant

    F = _as_form(f, 3)
    return named_invariant("d3").instantiate(F)


def _lower(p, aux, times):
    for _ in range(times):
        p = polar(p, 0, aux)
    return p


def cardano_extension(f, aux=1, check=True):
    """The commuting-pair extension splitting the cubic's representation.

    Returns (ext, frame) where ext carries u1, u2 with u1*u2 = -(P^2 Delta)
    and u1^3 + u2^3 = P^3 j, both carried onto the frame's auxiliary index.
    """
    F = _as_form(f, 3)
    frame = polar_frame(F, aux=aux)
    D1 = _lower(hessian_covariant(F), aux, 2)
    j1 = _lower(cubic_covariant(F), aux, 3)
    return CardanoExtension(D1, j1, check=check), frame


def cubic_roots(f, ext=None, frame=None, aux=1):
    """Root coordinates [(X_i, Y_i)] of a cubic in its Cardano extension.

    X_i = gamma - sigma_i x_aux and Y_i = delta - sigma_i y_aux, where
    sigma_i = eps^i u1 + eps^(2i) u2 runs over the three root combinations.
    """
    F = _as_form(f, 3)
    if ext is None or frame is None:
        ext, frame = cardano_extension(F, aux=aux)
    g, d = frame.gamma, frame.delta
    a = frame.aux
    out = []
    for i in (1, 2, 3):
        sig = ext.sigma(i)
        out.append((ext.embed(g) - sig * x(a), ext.embed(d) - sig * y(a)))
    return out


def cubic_reconstruction_residual(f, ext=None, frame=None, aux=1):
    """Product of the three split linear forms minus f * f1^2 (zero iff valid).

    The expansion of the product through the pair relations is exactly the
    cubic typical representation, so a zero residual certifies both.
    """
    F = _as_form(f, 3)
    if ext is None or frame is None:
        ext, frame = cardano_extension(F, aux=aux)
    xi, eta = ext.embed(frame.xi), ext.embed(frame.eta)
    prod = ext.one()
    for i in (3, 1, 2):
        prod = prod * (xi - ext.sigma(i) * eta)
    return prod - ext.embed(F.element() * frame.f1 * frame.f1)
