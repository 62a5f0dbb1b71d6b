"""Pure-Python rewriting kernel.

Hot path of the whole engine: pushing a single letter into an already
canonical word, with memoized results.  Letters are packed ints; monomial
coefficients at this level are dense integer h-polynomials (tuples), so the
inner loop never touches rationals.

Letter packing: code = (clone << 20) | (index << 1) | kind with kind 0 = y,
1 = x.  Integer comparison of codes is exactly the global generator order:
all base letters before all clone letters, then by index, y before x inside
a block.  Canonical words are the nondecreasing tuples.

The compiled twin (_core.pyx) implements the same four entry points and must
produce bit-identical dictionaries; tests enforce that.
"""
from __future__ import annotations

KIND_Y = 0
KIND_X = 1
_CLONE_SHIFT = 20
_IDX_MASK = (1 << 19) - 1

_HP_ONE = (1,)
_HP_H = (0, 1)
_HP_NEG_H = (0, -1)
_HP_H2 = (0, 0, 1)


def encode(clone, index, kind):
    return (clone << _CLONE_SHIFT) | (index << 1) | kind


def decode(code):
    return (code >> _CLONE_SHIFT, (code >> 1) & _IDX_MASK, code & 1)


def hp_add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def hp_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _pair_rules(a, g):
    """Expansion of the descending two-letter word a*g (a > g).

    Returns a tuple of (hpoly, l1, l2) with l1 <= l2, all letters <= a.
    """
    ka = a & 1
    kg = g & 1
    if (a >> 1) == (g >> 1):
        # same block: necessarily x*y -> y*x + h y*y
        return ((_HP_ONE, g, a), (_HP_H, g, g))
    # g carries the smaller index role i, a the larger role j
    yi = g & ~1
    xi = yi | 1
    yj = a & ~1
    xj = yj | 1
    if ka == KIND_X and kg == KIND_Y:
        # x_j y_i = y_i x_j + h y_i y_j
        return ((_HP_ONE, yi, xj), (_HP_H, yi, yj))
    if ka == KIND_Y and kg == KIND_X:
        # y_j x_i = x_i y_j - h y_i y_j
        return ((_HP_ONE, xi, yj), (_HP_NEG_H, yi, yj))
    if ka == KIND_Y and kg == KIND_Y:
        return ((_HP_ONE, yi, yj),)
    # x_j x_i = x_i x_j - h x_i y_j + h y_i x_j + h^2 y_i y_j
    return (
        (_HP_ONE, xi, xj),
        (_HP_NEG_H, xi, yj),
        (_HP_H, yi, xj),
        (_HP_H2, yi, yj),
    )


_INSERT_MEMO = {}


def insert(word, g):
    """word * g for canonical word and letter g: dict canonical word -> hpoly."""
    if not word or word[-1] <= g:
        return {word + (g,): _HP_ONE}
    key = (word, g)
    hit = _INSERT_MEMO.get(key)
    if hit is not None:
        return hit
    head = word[:-1]
    out = {}
    for hp, l1, l2 in _pair_rules(word[-1], g):
        for w1, c1 in insert(head, l1).items():
            c = hp_mul(hp, c1)
            for w2, c2 in insert(w1, l2).items():
                cc = hp_mul(c, c2)
                prev = out.get(w2)
                if prev is None:
                    out[w2] = cc
                else:
                    s = hp_add(prev, cc)
                    if s:
                        out[w2] = s
                    else:
                        del out[w2]
    _INSERT_MEMO[key] = out
    return out


def word_mul(w1, w2):
    """Product of two canonical words: dict canonical word -> hpoly."""
    state = {w1: _HP_ONE}
    for g in w2:
        nxt = {}
        for w, c in state.items():
            for w3, c3 in insert(w, g).items():
                cc = hp_mul(c, c3)
                prev = nxt.get(w3)
                if prev is None:
                    nxt[w3] = cc
                else:
                    s = hp_add(prev, cc)
                    if s:
                        nxt[w3] = s
                    else:
                        del nxt[w3]
        state = nxt
    return state


def reduce_raw(letters):
    """Normalize an arbitrarily ordered letter sequence."""
    return word_mul((), tuple(letters))


def kernel_id():
    return "python"


def clear_caches():
    _INSERT_MEMO.clear()
