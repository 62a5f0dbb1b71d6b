"""Parser and evaluators for the small expression language of the CLI.

Atoms
-----
integers, rationals ``3/2``, the deformation scalar ``h``, the cube root
of unity ``eps``, generators ``x1 y1 x2 ...``, differential clones
``dx1 dy1``, brackets ``br(i,j)``, slashed brackets ``sb(i,j)``,
projective coordinates ``z1``, right inverses ``inv(...)`` and the
differential wrapper ``d[...]``.

Operators: ``+ - * ^`` with the usual precedence (``**`` is accepted as a
synonym for ``^``).  The canonical printers of the value types emit
exactly this language, so ``parse(str(v))`` round-trips.
"""

from __future__ import annotations

from .scalars import QQ, Scalar
from .pbw import PBWPoly, gen


class ExprError(ValueError):
    """Parse or evaluation error carrying a 1-based line/column."""

    def __init__(self, message, line=1, col=1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# Lexer

_PUNCT = {"+", "-", "*", "^", "(", ")", "[", "]", ",", "/"}


def tokenize(text):
    """Yield (kind, value, line, col) tuples; kinds INT, NAME, punct, END."""
    line, col = 1, 1
    i, n = 0, len(text)
    out = []
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(("INT", int(text[i:j]), line, col))
            col += j - i
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalpha():
                j += 1
            while j < n and text[j].isdigit():
                j += 1
            out.append(("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c == "*" and i + 1 < n and text[i + 1] == "*":
            out.append(("^", "^", line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            out.append((c, c, line, col))
            i += 1
            col += 1
            continue
        raise ExprError(f"unexpected character {c!r}", line, col)
    out.append(("END", None, line, col))
    return out


# ---------------------------------------------------------------------------
# Parser -> AST
#
# AST nodes are plain tuples:
#   ('num', Fraction)            ('h',)               ('eps',)
#   ('gen', clone, index, kind)  ('z', i)             ('br', i, j)
#   ('sb', i, j)                 ('inv', node)        ('diff', node)
#   ('add', a, b)  ('sub', a, b)  ('mul', a, b)  ('neg', a)  ('pow', a, k)


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ExprError(f"expected {kind!r}, found {t[1]!r}", t[2], t[3])
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "END":
            raise ExprError(f"trailing input at {t[1]!r}", t[2], t[3])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.next()
            node = ("mul", node, self.factor())
        return node

    def factor(self):
        if self.peek()[0] == "-":
            self.next()
            return ("neg", self.factor())
        if self.peek()[0] == "+":
            self.next()
            return self.factor()
        node = self.atom()
        while self.peek()[0] == "^":
            self.next()
            t = self.expect("INT")
            node = ("pow", node, t[1])
        return node

    def atom(self):
        t = self.next()
        kind, val, line, col = t
        if kind == "INT":
            num = val
            if self.peek()[0] == "/":
                self.next()
                den = self.expect("INT")[1]
                if den == 0:
                    raise ExprError("division by zero in rational literal", line, col)
                return ("num", QQ(num, den))
            return ("num", QQ(num))
        if kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        if kind == "NAME":
            return self.name_atom(val, line, col)
        raise ExprError(f"unexpected token {val!r}", line, col)

    def name_atom(self, name, line, col):
        if name == "h":
            return ("h",)
        if name == "eps":
            return ("eps",)
        if name in ("br", "sb"):
            self.expect("(")
            i = self.index_arg()
            self.expect(",")
            j = self.index_arg()
            self.expect(")")
            return (name, i, j)
        if name == "inv":
            self.expect("(")
            node = self.expr()
            self.expect(")")
            return ("inv", node)
        if name == "d":
            self.expect("[")
            node = self.expr()
            self.expect("]")
            return ("diff", node)
        # generator-style names: x3, y3, dx3, dy3, z3
        head = name.rstrip("0123456789")
        tail = name[len(head):]
        if head in ("x", "y", "dx", "dy", "z") and tail:
            idx = int(tail)
            if head == "z":
                return ("z", idx)
            clone = 1 if head.startswith("d") else 0
            kind = 1 if head.endswith("x") else 0
            return ("gen", clone, idx, kind)
        raise ExprError(f"unknown name {name!r}", line, col)

    def index_arg(self):
        t = self.next()
        if t[0] == "INT":
            return t[1]
        if t[0] == "NAME" and t[1].startswith("d") and t[1][1:].isdigit():
            # differential role inside a bracket, e.g. br(0, d0)
            return ("d", int(t[1][1:]))
        raise ExprError(f"expected an index, found {t[1]!r}", t[2], t[3])


def parse(text):
    """Parse ``text`` into an AST tuple tree."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Evaluators

def to_pbw(ast, diff_vars=None):
    """Evaluate an AST to a PBWPoly.

    ``diff_vars`` (an iterable of indices) selects the variable set of the
    total differential when the ``d[...]`` wrapper occurs.  Localization
    atoms (``z``, ``sb``, ``inv``) are rejected here; use :func:`to_loc`.
    """
    op = ast[0]
    if op == "num":
        return PBWPoly.scalar(Scalar.rat(ast[1]))
    if op == "h":
        return PBWPoly.scalar(Scalar.h(1))
    if op == "eps":
        return PBWPoly.scalar(Scalar.eps())
    if op == "gen":
        return gen(ast[2], ast[3], clone=ast[1])
    if op == "br":
        from .brackets import bracket

        return bracket(ast[1], ast[2])
    if op == "add":
        return to_pbw(ast[1], diff_vars) + to_pbw(ast[2], diff_vars)
    if op == "sub":
        return to_pbw(ast[1], diff_vars) - to_pbw(ast[2], diff_vars)
    if op == "mul":
        return to_pbw(ast[1], diff_vars) * to_pbw(ast[2], diff_vars)
    if op == "neg":
        return -to_pbw(ast[1], diff_vars)
    if op == "pow":
        return to_pbw(ast[1], diff_vars) ** ast[2]
    if op == "diff":
        if diff_vars is None:
            raise ExprError("d[...] needs a variable set (--vars)")
        from .diffmod import total_differential

        return total_differential(to_pbw(ast[1], diff_vars), diff_vars)
    raise ExprError(f"{op!r} atom is not defined in the polynomial ring")


def to_loc(ast, diff_vars=None):
    """Evaluate an AST to a LocElement (localized algebra)."""
    from . import localization as L

    op = ast[0]
    if op == "z":
        return L.z(ast[1])
    if op == "sb":
        return L.slash_bracket(ast[1], ast[2])
    if op == "inv":
        return L.loc_inverse(to_pbw(ast[1], diff_vars))
    if op == "add":
        return to_loc(ast[1], diff_vars) + to_loc(ast[2], diff_vars)
    if op == "sub":
        return to_loc(ast[1], diff_vars) - to_loc(ast[2], diff_vars)
    if op == "mul":
        return to_loc(ast[1], diff_vars) * to_loc(ast[2], diff_vars)
    if op == "neg":
        return -to_loc(ast[1], diff_vars)
    if op == "pow":
        base = to_loc(ast[1], diff_vars)
        out = L.from_pbw(PBWPoly.one())
        for _ in range(ast[2]):
            out = out * base
        return out
    return L.from_pbw(to_pbw(ast, diff_vars))


def to_bracket(ast):
    """Evaluate an AST to a BracketPoly (formal bracket algebra)."""
    from .brackets import BracketPoly

    op = ast[0]
    if op == "num":
        return BracketPoly.scalar(Scalar.rat(ast[1]))
    if op == "h":
        return BracketPoly.scalar(Scalar.h(1))
    if op == "eps":
        return BracketPoly.scalar(Scalar.eps())
    if op == "br":
        return BracketPoly.br(ast[1], ast[2])
    if op == "add":
        return to_bracket(ast[1]) + to_bracket(ast[2])
    if op == "sub":
        return to_bracket(ast[1]) - to_bracket(ast[2])
    if op == "mul":
        return to_bracket(ast[1]) * to_bracket(ast[2])
    if op == "neg":
        return -to_bracket(ast[1])
    if op == "pow":
        return to_bracket(ast[1]) ** ast[2]
    raise ExprError(f"{op!r} is not a bracket-algebra atom")


def parse_pbw(text, diff_vars=None):
    return to_pbw(parse(text), diff_vars)


def parse_loc(text, diff_vars=None):
    return to_loc(parse(text), diff_vars)


def parse_bracket(text):
    return to_bracket(parse(text))
