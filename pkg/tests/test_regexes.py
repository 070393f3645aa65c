import itertools
import random

import pytest

from commclose.regexes import (
    Concat, EmptySet, EmptyWord, Letter, Regex, RegexSyntaxError, Star, Union,
    WordLimitExceeded, enumerate_language, parikh_expression, parikh_vector,
    parse_regex, pretty,
)
from commclose.semilinear import member, to_semilinear


def test_parse_paper_example():
    r = parse_regex("b(aa|bb)*")
    assert r.alphabet == ("a", "b")
    assert r.root == Concat(
        Letter("b"),
        Star(Union(Concat(Letter("a"), Letter("a")),
                   Concat(Letter("b"), Letter("b")))))


def test_parse_empty_word():
    assert parse_regex("_").root == EmptyWord()


def test_parse_union_with_explicit_alphabet():
    r = parse_regex("(ab)*|c", alphabet="abc")
    assert r.alphabet == ("a", "b", "c")
    assert r.root == Union(Star(Concat(Letter("a"), Letter("b"))),
                           Letter("c"))


def test_parse_errors():
    with pytest.raises(RegexSyntaxError):
        parse_regex("a|")
    with pytest.raises(RegexSyntaxError):
        parse_regex("(ab")
    with pytest.raises(RegexSyntaxError):
        parse_regex("aA")
    with pytest.raises(ValueError):
        parse_regex("abc", alphabet="ab")


def test_enumerate_star():
    r = parse_regex("(ab)*")
    assert enumerate_language(r, 4) == {"", "ab", "abab"}


def test_enumerate_empty_set():
    assert enumerate_language(parse_regex("#"), 5) == set()


def test_enumerate_paper_example():
    r = parse_regex("b(aa|bb)*")
    assert enumerate_language(r, 3) == {"b", "baa", "bbb"}


def test_enumerate_cap():
    r = parse_regex("(a|b)*")
    with pytest.raises(WordLimitExceeded):
        enumerate_language(r, 12, cap=100)


def test_parikh_expression_paper_example():
    r = parse_regex("b(aa|bb)*")
    s = to_semilinear(parikh_expression(r), 2)
    assert [(t.offset, t.basis) for t in s.terms] \
        == [((0, 1), ((0, 2), (2, 0)))]


def test_parikh_expression_diagonal():
    r = parse_regex("(ab)*")
    s = to_semilinear(parikh_expression(r), 2)
    for i, j in itertools.product(range(7), repeat=2):
        assert member((i, j), s) == (i == j)


def test_parikh_empty_word():
    r = parse_regex("_", alphabet="ab")
    s = to_semilinear(parikh_expression(r), 2)
    assert member((0, 0), s)
    assert not member((1, 0), s)


def test_pretty_round_trip():
    for text in ["b(aa|bb)*", "(ab)*|c", "_", "#", "a|b|c", "a(b|c)d",
                 "((a))", "ab*", "(ab)*", "a**"]:
        r = parse_regex(text, alphabet="abcd")
        again = parse_regex(pretty(r), alphabet="abcd")
        assert again.root == r.root, text


def random_node(rng, depth, letters="ab"):
    if depth == 0:
        c = rng.random()
        if c < 0.08:
            return EmptyWord()
        if c < 0.12:
            return EmptySet()
        return Letter(rng.choice(letters))
    kind = rng.choice(["u", "c", "s"])
    if kind == "u":
        return Union(random_node(rng, depth - 1, letters),
                     random_node(rng, depth - 1, letters))
    if kind == "c":
        return Concat(random_node(rng, depth - 1, letters),
                      random_node(rng, depth - 1, letters))
    return Star(random_node(rng, depth - 1, letters))


def test_pretty_round_trip_randomized():
    rng = random.Random(3)
    for _ in range(80):
        node = random_node(rng, rng.randint(1, 4))
        r = Regex(node, ("a", "b"))
        assert parse_regex(pretty(r), alphabet="ab").root == node


def test_morphism_soundness_randomized():
    """Enumerated word counts lie in the Parikh set, and every small vector
    of the Parikh set is hit by some enumerated word."""
    rng = random.Random(17)
    max_len = 6
    for _ in range(30):
        node = random_node(rng, rng.randint(1, 3))
        r = Regex(node, ("a", "b"))
        s = to_semilinear(parikh_expression(r), 2)
        words = enumerate_language(r, max_len)
        vectors = {parikh_vector(w, r.alphabet) for w in words}
        for w in words:
            assert member(parikh_vector(w, r.alphabet), s)
        for i in range(max_len + 1):
            for j in range(max_len + 1 - i):
                if member((i, j), s):
                    assert (i, j) in vectors, (pretty(r), (i, j))
