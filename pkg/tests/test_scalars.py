import random

from hforms.scalars import CycRat, Scalar, scalar_arith


def test_eps_square():
    eps = CycRat(0, 1)
    assert eps * eps == CycRat(-1, -1)
    assert eps * eps + eps + 1 == CycRat(0)


def test_eps_is_root_of_unity():
    eps = CycRat(0, 1)
    assert eps**3 == CycRat(1)
    assert eps**2 == eps.inv()


def test_cyc_inverse_random():
    rng = random.Random(7)
    for _ in range(200):
        a = CycRat(rng.randint(-9, 9), rng.randint(-9, 9))
        if not a:
            continue
        assert a * a.inv() == CycRat(1)


def test_scalar_monomials():
    h = Scalar.h()
    assert h * h == Scalar.h(2)
    assert (Scalar.one() + h) + (-h) == Scalar.one()
    assert scalar_arith(h, h, "mul") == Scalar.h(2)


def test_scalar_ring_axioms_random():
    rng = random.Random(11)

    def rand_scalar():
        t = {}
        for _ in range(rng.randint(0, 4)):
            t[rng.randint(0, 5)] = CycRat(rng.randint(-5, 5), rng.randint(-5, 5))
        return Scalar({k: v for k, v in t.items() if v})

    for _ in range(150):
        a, b, c = rand_scalar(), rand_scalar(), rand_scalar()
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c


def test_eval_h():
    s = Scalar.rat(3) * Scalar.h(2) + Scalar.rat(2)
    assert s.eval_h(0) == CycRat(2)
    assert Scalar.h().eval_h(1) == CycRat(1)
    assert Scalar.zero().eval_h(CycRat(5, 2)) == CycRat(0)
    assert s.eval_h(2) == CycRat(14)


def test_eval_h_is_ring_hom_random():
    rng = random.Random(13)

    def rand_scalar():
        return Scalar(
            {
                k: CycRat(rng.randint(-4, 4), rng.randint(-4, 4))
                for k in range(rng.randint(0, 4))
            }
        ) + Scalar.rat(rng.randint(-3, 3))

    for _ in range(100):
        a, b = rand_scalar(), rand_scalar()
        v = CycRat(rng.randint(-3, 3), rng.randint(-3, 3))
        assert (a * b).eval_h(v) == a.eval_h(v) * b.eval_h(v)
        assert (a + b).eval_h(v) == a.eval_h(v) + b.eval_h(v)


def test_divmod_h():
    h = Scalar.h()
    num = h**3 + Scalar.rat(2) * h + Scalar.rat(5)
    den = h + Scalar.rat(1)
    q, r = num.divmod_h(den)
    assert q * den + r == num
    assert r.h_degree() < den.h_degree()


def test_flip_h():
    s = Scalar.h() + Scalar.rat(1) + Scalar.h(2)
    assert s.flip_h() == -Scalar.h() + Scalar.rat(1) + Scalar.h(2)
    assert s.flip_h().flip_h() == s


def test_str_roundtrip_shapes():
    assert str(Scalar.zero()) == "0"
    assert str(Scalar.h()) == "h"
    s = Scalar.rat(3, 2) * Scalar.h(2) + Scalar.eps() * Scalar.h()
    assert str(s) == "3/2*h^2 + eps*h"
