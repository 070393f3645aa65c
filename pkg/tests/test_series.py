import pytest

from commclose.semilinear import LinearSet, box, member, semilinear
from commclose.series import (
    FactoredDenominator, NotRecognizable, Polynomial, RationalFraction,
    Recognizable, binomial, char_series, expand_truncated, format_fraction,
    format_polynomial, poly_divide_exact, simplify_and_decide,
)


def good(dim, *terms):
    return semilinear(dim, [LinearSet(o, tuple(b)) for o, b in terms],
                      all_free=True, consistent=True, unambiguous=True)


def test_char_series_diagonal():
    f = char_series(good(2, ((1, 1), (((1, 1)),))))
    assert f.numerator == Polynomial.monomial((1, 1))
    assert f.denominator.factors == ((1, 1),)


def test_char_series_even_odd():
    f = char_series(good(2, ((0, 1), ((2, 0), (0, 2)))))
    assert f.numerator == Polynomial.monomial((0, 1))
    assert set(f.denominator.factors) == {(2, 0), (0, 2)}


def test_char_series_singleton():
    f = char_series(good(2, ((2, 3), ())))
    assert f.numerator == Polynomial.monomial((2, 3))
    assert f.denominator.factors == ()


def test_char_series_requires_flags():
    s = semilinear(2, (LinearSet((0, 0), ()),), all_free=True)
    with pytest.raises(ValueError):
        char_series(s)


def test_char_series_example_s_combination():
    s = good(2,
             ((1, 1), (((1, 1)),)),
             ((1, 0), ((1, 0), (1, 1))),
             ((0, 1), ((0, 1), (1, 1))))
    f = char_series(s)
    want = (binomial(2, (1, 1))
            * Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1}))
    assert f.numerator == want
    assert sorted(f.denominator.factors) == [(0, 1), (1, 0), (1, 1)]
    verdict = simplify_and_decide(f)
    assert isinstance(verdict, Recognizable)
    assert verdict.numerator == Polynomial(2, {(1, 0): 1, (0, 1): 1,
                                               (1, 1): -1})
    assert sorted(verdict.denominator.factors) == [(0, 1), (1, 0)]


def test_simplify_not_recognizable():
    f = RationalFraction(Polynomial.monomial((1, 1)),
                         FactoredDenominator(2, ((1, 1),)))
    verdict = simplify_and_decide(f)
    assert verdict == NotRecognizable((1, 1))


def test_simplify_finite():
    f = RationalFraction(Polynomial.monomial((2, 3)),
                         FactoredDenominator(2, ()))
    verdict = simplify_and_decide(f)
    assert isinstance(verdict, Recognizable)
    assert verdict.numerator == Polynomial.monomial((2, 3))
    assert verdict.denominator.factors == ()


def test_simplify_opportunistic_single_variable():
    # (1 - y^2) * y / ((1 - y^2)(1 - x)) reduces to y / (1 - x)
    num = binomial(2, (0, 2)) * Polynomial.monomial((0, 1))
    f = RationalFraction(num, FactoredDenominator(2, ((0, 2), (1, 0))))
    verdict = simplify_and_decide(f)
    assert isinstance(verdict, Recognizable)
    assert verdict.numerator == Polynomial.monomial((0, 1))
    assert verdict.denominator.factors == ((1, 0),)


def test_poly_divide_exact_roundtrip():
    num = Polynomial(2, {(0, 0): 1, (2, 2): -1})  # 1 - x^2 y^2
    q = poly_divide_exact(num, (1, 1))
    assert q == Polynomial(2, {(0, 0): 1, (1, 1): 1})
    assert q * binomial(2, (1, 1)) == num


def test_poly_divide_inexact():
    num = Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1})
    assert poly_divide_exact(num, (1, 1)) is None


def test_poly_divide_zero():
    assert poly_divide_exact(Polynomial.zero(2), (1, 1)) \
        == Polynomial.zero(2)


def test_poly_divide_randomized_roundtrip():
    import random
    rng = random.Random(31)
    for _ in range(40):
        dim = rng.randint(1, 3)
        q = Polynomial(dim, {
            tuple(rng.randint(0, 3) for _ in range(dim)): rng.randint(-3, 3)
            for _ in range(rng.randint(1, 5))})
        beta = tuple(rng.randint(0, 2) for _ in range(dim))
        if not any(beta):
            beta = (1,) * dim
        num = q * binomial(dim, beta)
        got = poly_divide_exact(num, beta)
        if not num:
            assert got == Polynomial.zero(dim)
        else:
            assert got == q, (q.coeffs, beta)


def test_expand_diagonal():
    f = RationalFraction(Polynomial.monomial((1, 1)),
                         FactoredDenominator(2, ((1, 1),)))
    table = expand_truncated(f, 6)
    assert table == {(1, 1): 1, (2, 2): 1, (3, 3): 1}


def test_expand_plain_polynomial():
    p = Polynomial(2, {(1, 0): 2, (0, 2): -1})
    f = RationalFraction(p, FactoredDenominator(2, ()))
    assert expand_truncated(f, 9) == p.coeffs


def test_expand_example_s_reduced():
    f = RationalFraction(Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1}),
                         FactoredDenominator(2, ((1, 0), (0, 1))))
    table = expand_truncated(f, 5)
    for i in range(6):
        for j in range(6 - i):
            want = 0 if (i, j) == (0, 0) else 1
            assert table.get((i, j), 0) == want


def test_characteristic_property_and_conservation():
    s = good(2,
             ((1, 1), (((1, 1)),)),
             ((1, 0), ((1, 0), (1, 1))),
             ((0, 1), ((0, 1), (1, 1))))
    f = char_series(s)
    table = expand_truncated(f, 10)
    for sigma in box(2, 5):
        assert table.get(sigma, 0) == int(member(sigma, s))
    verdict = simplify_and_decide(f)
    # cross-multiplication conservation against the original fraction
    lhs = verdict.numerator * f.denominator.expand()
    rhs = f.numerator * verdict.denominator.expand()
    assert lhs == rhs
    assert f.denominator.expand().constant_term() == 1
    reduced = RationalFraction(verdict.numerator, verdict.denominator)
    table2 = expand_truncated(reduced, 10)
    for sigma in box(2, 5):
        assert table2.get(sigma, 0) == int(member(sigma, s))


def test_format_fraction_strings():
    assert format_fraction(Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1}),
                           FactoredDenominator(2, ((1, 0), (0, 1)))) \
        == "(x + y - x*y) / ((1 - x)*(1 - y))"
    assert format_fraction(Polynomial.monomial((0, 1)),
                           FactoredDenominator(2, ((2, 0), (0, 2)))) \
        == "y / ((1 - x^2)*(1 - y^2))"
    assert format_fraction(Polynomial.monomial((1, 1)),
                           FactoredDenominator(2, ((1, 1),))) \
        == "x*y / (1 - x*y)"
    assert format_fraction(Polynomial.one(2), FactoredDenominator(2, ())) \
        == "1 / 1"
    assert format_polynomial(Polynomial.zero(2)) == "0"
