"""Regular expressions: parsing, bounded enumeration, and the Parikh map.

Concrete syntax: lowercase letters, `|` union, juxtaposition concatenation,
`*` star, parentheses, `_` the empty word, `#` the empty set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .semilinear import Empty, Point, RatExpr, RPlus, RSum, RUnion


class RegexSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class WordLimitExceeded(RuntimeError):
    """Bounded enumeration produced more words than the configured cap."""


@dataclass(frozen=True)
class Node:
    pass


@dataclass(frozen=True)
class EmptySet(Node):
    pass


@dataclass(frozen=True)
class EmptyWord(Node):
    pass


@dataclass(frozen=True)
class Letter(Node):
    char: str


@dataclass(frozen=True)
class Union(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Concat(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class Star(Node):
    inner: Node


@dataclass(frozen=True)
class Regex:
    root: Node
    alphabet: tuple[str, ...]


def _letters_of(node: Node) -> set[str]:
    match node:
        case Letter(c):
            return {c}
        case Union(l, r) | Concat(l, r):
            return _letters_of(l) | _letters_of(r)
        case Star(i):
            return _letters_of(i)
    return set()


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def error(self, message):
        raise RegexSyntaxError(message, self.pos)

    def parse(self) -> Node:
        node = self.union()
        if self.peek() is not None:
            self.error("unexpected %r" % self.peek())
        return node

    def union(self) -> Node:
        node = self.concat()
        while self.peek() == "|":
            self.pos += 1
            node = Union(node, self.concat())
        return node

    def concat(self) -> Node:
        node = self.factor()
        while self.peek() is not None and self.peek() not in "|)":
            node = Concat(node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.atom()
        while self.peek() == "*":
            self.pos += 1
            node = Star(node)
        return node

    def atom(self) -> Node:
        c = self.peek()
        if c is None:
            self.error("unexpected end of input")
        if c == "(":
            self.pos += 1
            node = self.union()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return node
        if c == "_":
            self.pos += 1
            return EmptyWord()
        if c == "#":
            self.pos += 1
            return EmptySet()
        if c.isascii() and c.islower() and c.isalpha():
            self.pos += 1
            return Letter(c)
        self.error("unexpected %r" % c)


def parse_regex(text: str, alphabet=None) -> Regex:
    """Parse `text`; the alphabet is inferred as the sorted letters used
    unless given explicitly, in which case every letter must belong to it."""
    root = _Parser(text).parse()
    used = _letters_of(root)
    if alphabet is None:
        alpha = tuple(sorted(used))
    else:
        alpha = tuple(sorted(alphabet))
        if len(set(alpha)) != len(alpha):
            raise ValueError("alphabet letters must be distinct")
        missing = used - set(alpha)
        if missing:
            raise ValueError(
                "letter(s) %s not in declared alphabet %s"
                % (",".join(sorted(missing)), "".join(alpha)))
    return Regex(root, alpha)


def pretty(node) -> str:
    """Emit the same grammar the parser reads (minimal parentheses)."""
    if isinstance(node, Regex):
        node = node.root

    def go(n: Node, prec: int) -> str:
        match n:
            case EmptySet():
                return "#"
            case EmptyWord():
                return "_"
            case Letter(c):
                return c
            case Union(l, r):
                s = "%s|%s" % (go(l, 0), go(r, 1))
                return "(%s)" % s if prec > 0 else s
            case Concat(l, r):
                s = "%s%s" % (go(l, 1), go(r, 2))
                return "(%s)" % s if prec > 1 else s
            case Star(i):
                return "%s*" % go(i, 3)
        raise TypeError(n)

    return go(node, 0)


def enumerate_language(regex: Regex, max_len: int,
                       cap: int = 10 ** 6) -> set[str]:
    """Exactly the words of the language with length <= max_len."""

    def check(words):
        if len(words) > cap:
            raise WordLimitExceeded("more than %d words" % cap)
        return words

    def go(n: Node) -> set[str]:
        match n:
            case EmptySet():
                return set()
            case EmptyWord():
                return {""}
            case Letter(c):
                return {c} if max_len >= 1 else set()
            case Union(l, r):
                return check(go(l) | go(r))
            case Concat(l, r):
                lw, rw = go(l), go(r)
                return check({u + v for u in lw for v in rw
                              if len(u) + len(v) <= max_len})
            case Star(i):
                base = go(i) - {""}
                acc = {""}
                frontier = {""}
                while frontier:
                    nxt = set()
                    for u in frontier:
                        for v in base:
                            w = u + v
                            if len(w) <= max_len and w not in acc:
                                nxt.add(w)
                    acc |= nxt
                    check(acc)
                    frontier = nxt
                return acc
        raise TypeError(n)

    return go(regex.root)


def parikh_vector(word: str, alphabet) -> tuple[int, ...]:
    """The commutative image: per-letter occurrence counts."""
    return tuple(word.count(a) for a in alphabet)


def parikh_expression(regex: Regex) -> RatExpr:
    """Parikh image as a rational expression over N^k: the morphism sends a
    letter to its unit vector, concatenation to +, union to union, star to
    the iteration operator."""
    k = len(regex.alphabet)
    index = {a: j for j, a in enumerate(regex.alphabet)}

    def go(n: Node) -> RatExpr:
        match n:
            case EmptySet():
                return Empty()
            case EmptyWord():
                return Point((0,) * k)
            case Letter(c):
                return Point(tuple(1 if j == index[c] else 0
                                   for j in range(k)))
            case Union(l, r):
                return RUnion(go(l), go(r))
            case Concat(l, r):
                return RSum(go(l), go(r))
            case Star(i):
                return RPlus(go(i))
        raise TypeError(n)

    return go(regex.root)
