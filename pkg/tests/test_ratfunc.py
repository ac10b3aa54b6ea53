from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sasano_galois.ratfunc import ParseError, Poly, RatFunc, parse_ratfunc

T = RatFunc.variable()


def rand_ratfunc(rng):
    num = Poly.make([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)])
    den = Poly.make([Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(3)])
    if den.is_zero():
        den = Poly.make([1])
    return RatFunc.make(num, den)


class TestPoly:
    def test_divmod(self):
        p = Poly.make([-1, 0, 1])  # t^2 - 1
        d = Poly.make([-1, 1])  # t - 1
        q, r = p.divmod(d)
        assert q == Poly.make([1, 1])
        assert r.is_zero()

    def test_gcd_is_monic(self):
        a = Poly.make([0, -2, 0, 2])  # 2t^3 - 2t
        b = Poly.make([0, 4, 4])  # 4t^2 + 4t
        g = a.gcd(b)
        assert g == Poly.make([0, 1, 1])  # t^2 + t

    def test_derivative_and_eval(self):
        p = Poly.make([Fraction(2, 5), 0, 3])
        assert p.derivative() == Poly.make([0, 6])
        assert p(Fraction(1, 2)) == Fraction(2, 5) + Fraction(3, 4)

    def test_degree_of_zero(self):
        assert Poly.make([0, 0]).degree() == -1


class TestRatFunc:
    def test_auto_reduction(self):
        f = RatFunc.make(Poly.make([-1, 0, 1]), Poly.make([-1, 1]))
        assert f == RatFunc.make(Poly.make([1, 1]))

    def test_monic_denominator(self):
        f = RatFunc.make(1, Poly.make([0, 2]))  # 1/(2t)
        assert f.den == Poly.make([0, 1])
        assert f.num == Poly.make([Fraction(1, 2)])

    def test_field_axioms_random(self):
        rng = random.Random(707)
        for _ in range(20):
            a, b, c = rand_ratfunc(rng), rand_ratfunc(rng), rand_ratfunc(rng)
            assert (a + b) * c == a * c + b * c
            assert a - a == RatFunc.const(0)
            if not b.is_zero():
                assert (a / b) * b == a

    def test_derivative_quotient_rule(self):
        f = RatFunc.make(Poly.make([1, 0, 1]), Poly.make([0, 1]))  # (t^2+1)/t
        df = f.derivative()
        expect = RatFunc.const(1) - RatFunc.make(1, Poly.make([0, 0, 1]))
        assert df == expect

    def test_eval_and_pole(self):
        f = RatFunc.make(1, Poly.make([-1, 1]))  # 1/(t-1)
        assert f(3) == Fraction(1, 2)
        with pytest.raises(ZeroDivisionError):
            f(1)

    def test_negative_power(self):
        f = T**-2
        assert f == RatFunc.make(1, Poly.make([0, 0, 1]))

    def test_hashable(self):
        a = RatFunc.make(Poly.make([-1, 0, 1]), Poly.make([-1, 1]))
        b = RatFunc.make(Poly.make([1, 1]))
        assert hash(a) == hash(b)


class TestParser:
    def test_seed_component(self):
        f = parse_ratfunc("-2*t/5 - 1/(4*t^2)")
        expect = T * Fraction(-2, 5) - (T**2 * 4) ** -1
        assert f == expect

    def test_precedence(self):
        assert parse_ratfunc("1 + 2*t^2") == RatFunc.const(1) + 2 * T**2
        assert parse_ratfunc("-t^2") == -(T**2)
        assert parse_ratfunc("2/4") == RatFunc.const(Fraction(1, 2))

    def test_negative_exponent(self):
        assert parse_ratfunc("t^-1") == RatFunc.make(1, Poly.variable())

    def test_errors(self):
        with pytest.raises(ParseError):
            parse_ratfunc("t +")
        with pytest.raises(ParseError):
            parse_ratfunc("(1 + t")
        with pytest.raises(ParseError):
            parse_ratfunc("u + 1")
        with pytest.raises(ParseError):
            parse_ratfunc("t^t")
        with pytest.raises(ParseError):
            parse_ratfunc("1 @ 2")

    def test_round_trip_render(self):
        f = parse_ratfunc("(t^2 + 1)/(t - 1)")
        again = parse_ratfunc(f.render())
        assert f == again
