import pytest

from commclose.resimple import (
    AtomicResimple, SystemInvariantError, achievable_patterns, build_system,
    class_nonempty, member_system,
)
from commclose.semilinear import box
from commclose.series import FactoredDenominator, Polynomial


def example_s_system():
    p = Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1})
    q = FactoredDenominator(2, ((1, 0), (0, 1)))
    return build_system(p, q)


def test_build_example_s():
    system = example_s_system()
    assert system.periods == (1, 1)
    assert [(mu, atom.offset) for mu, atom in system.terms] \
        == [(1, (0, 1)), (1, (1, 0)), (-1, (1, 1))]
    idx = {atom.offset: h for h, (_, atom) in enumerate(system.terms)}
    s1, s2, s3 = idx[(1, 0)], idx[(0, 1)], idx[(1, 1)]
    assert system.good_classes == frozenset({
        frozenset({s1, s2, s3}), frozenset({s1}), frozenset({s2})})


def test_build_even_odd():
    p = Polynomial.monomial((0, 1))
    q = FactoredDenominator(2, ((2, 0), (0, 2)))
    system = build_system(p, q)
    assert system.periods == (2, 2)
    assert len(system.terms) == 1
    assert system.good_classes == frozenset({frozenset({0})})


def test_build_finite_point():
    system = build_system(Polynomial.monomial((2, 3)),
                          FactoredDenominator(2, ()))
    assert system.periods == (None, None)
    assert system.good_classes == frozenset({frozenset({0})})


def test_build_finite_rejects_bad_coefficient():
    with pytest.raises(SystemInvariantError):
        build_system(Polynomial(2, {(1, 0): 2}), FactoredDenominator(2, ()))


def test_build_rejects_multivariable_factor():
    with pytest.raises(SystemInvariantError):
        build_system(Polynomial.one(2), FactoredDenominator(2, ((1, 1),)))


def test_class_nonempty_example_s():
    system = example_s_system()
    idx = {atom.offset: h for h, (_, atom) in enumerate(system.terms)}
    s3 = idx[(1, 1)]
    assert not class_nonempty(system, {s3})  # S3 lies inside S1 and S2
    assert class_nonempty(system, ())        # (0,0) avoids every term
    single = build_system(Polynomial.monomial((1, 1)),
                          FactoredDenominator(2, ((1, 0), (0, 1))))
    assert class_nonempty(single, {0})


def test_member_system_example_s():
    system = example_s_system()
    assert not member_system((0, 0), system)
    assert member_system((2, 1), system)
    for sigma in box(2, 6):
        assert member_system(sigma, system) == (sigma != (0, 0))


def test_member_system_finite():
    system = build_system(Polynomial.monomial((2, 3)),
                          FactoredDenominator(2, ()))
    assert member_system((2, 3), system)
    assert not member_system((0, 0), system)


def test_member_system_even_odd():
    p = Polynomial.monomial((0, 1))
    q = FactoredDenominator(2, ((2, 0), (0, 2)))
    system = build_system(p, q)
    assert member_system((4, 3), system)
    assert not member_system((1, 1), system)


def test_indicator_agreement_with_expansion():
    from commclose.series import RationalFraction, expand_truncated
    p = Polynomial(2, {(1, 0): 1, (0, 1): 1, (1, 1): -1})
    q = FactoredDenominator(2, ((1, 0), (0, 1)))
    system = build_system(p, q)
    table = expand_truncated(RationalFraction(p, q), 10)
    for sigma in box(2, 5):
        assert int(member_system(sigma, system)) == table.get(sigma, 0)


def test_good_classes_partition():
    system = example_s_system()
    pats = achievable_patterns(system)
    assert system.good_classes <= pats
    # the union of good classes is exactly the members
    for sigma in box(2, 5):
        pattern = frozenset(
            h for h, (_, atom) in enumerate(system.terms)
            if atom.contains(sigma))
        assert (pattern in system.good_classes) == member_system(sigma,
                                                                 system)


def test_atomic_contains():
    atom = AtomicResimple((1, 2), (2, None))
    assert atom.contains((3, 2))
    assert not atom.contains((2, 2))
    assert not atom.contains((3, 3))
