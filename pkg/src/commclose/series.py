"""Characteristic series of semilinear sets as integer polynomial fractions.

A semilinear set in good form (free bases, unambiguous union, consistent
primary elements) has characteristic series sum_t x^offset / prod (1 - x^b)
over its terms.  The fraction keeps its denominator as a multiset of binomial
factors (1 - x^beta); the recognizability verdict divides every factor with
two or more variables out of the numerator, and fails on the first factor
that does not divide exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .semilinear import SemilinearSet, Vec


def _grlex(exp: Vec):
    return (sum(exp), exp)


class Polynomial:
    """Sparse multivariate polynomial with arbitrary-precision integers."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs=None):
        self.dim = dim
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def one(cls, dim: int) -> "Polynomial":
        return cls(dim, {(0,) * dim: 1})

    @classmethod
    def monomial(cls, exp: Vec, coeff: int = 1) -> "Polynomial":
        return cls(len(exp), {tuple(exp): coeff})

    def items(self):
        """Monomials in lexicographic exponent order."""
        return sorted(self.coeffs.items())

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.coeffs == other.coeffs \
            and self.dim == other.dim

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.dim, out)

    def __neg__(self):
        return Polynomial(self.dim, {e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Polynomial(self.dim,
                              {e: c * other for e, c in self.coeffs.items()})
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def total_degree(self) -> int:
        return max((sum(e) for e in self.coeffs), default=0)

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * self.dim, 0)

    def __repr__(self):
        return "Polynomial(%r)" % (format_polynomial(self),)


def binomial(dim: int, beta: Vec) -> Polynomial:
    """The factor 1 - x^beta."""
    return Polynomial(dim, {(0,) * dim: 1, tuple(beta): -1})


@dataclass(frozen=True)
class FactoredDenominator:
    """Multiset of exponent vectors beta, each standing for (1 - x^beta)."""
    dim: int
    factors: tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))
        for b in self.factors:
            if not any(b):
                raise ValueError("denominator factor exponent must be nonzero")

    def expand(self) -> Polynomial:
        out = Polynomial.one(self.dim)
        for b in self.factors:
            out = out * binomial(self.dim, b)
        return out


@dataclass(frozen=True)
class RationalFraction:
    numerator: Polynomial
    denominator: FactoredDenominator


@dataclass(frozen=True)
class Recognizable:
    numerator: Polynomial
    denominator: FactoredDenominator


@dataclass(frozen=True)
class NotRecognizable:
    witness: Vec


def char_series(s: SemilinearSet) -> RationalFraction:
    """Characteristic series of a freed, consistent, unambiguous union.

    Points map to monomials, sums to products, unions to sums, and a free
    basis iterates to 1 / prod (1 - x^b); terms are combined over the common
    denominator holding each factor at its maximum multiplicity.
    """
    if not (s.all_free and s.consistent and s.unambiguous):
        raise ValueError("char_series requires checked all_free, consistent "
                         "and unambiguous flags")
    dim = s.dim
    common: dict[Vec, int] = {}
    for t in s.terms:
        for b in t.basis:
            common[b] = max(common.get(b, 0), 1)
    factors = tuple(sorted(b for b, mult in common.items()
                           for _ in range(mult)))
    numerator = Polynomial.zero(dim)
    for t in s.terms:
        part = Polynomial.monomial(t.offset)
        missing = dict(common)
        for b in t.basis:
            missing[b] -= 1
        for b, mult in sorted(missing.items()):
            for _ in range(mult):
                part = part * binomial(dim, b)
        numerator = numerator + part
    return RationalFraction(numerator, FactoredDenominator(dim, factors))


def poly_divide_exact(num: Polynomial, beta: Vec) -> Polynomial | None:
    """Quotient of num by (1 - x^beta) when the remainder is zero, else None.

    Works from the graded-lex minimal monomial up, mirroring the power-series
    inverse of (1 - x^beta); any exact polynomial quotient has total degree
    at most deg(num) - |beta|, which bounds the loop.
    """
    if not num:
        return Polynomial.zero(num.dim)
    beta = tuple(beta)
    bound = num.total_degree() - sum(beta)
    if bound < 0:
        return None
    quotient: dict = {}
    rest = dict(num.coeffs)
    while rest:
        alpha = min(rest, key=_grlex)
        if sum(alpha) > bound:
            return None
        c = rest.pop(alpha)
        quotient[alpha] = c
        shifted = tuple(a + b for a, b in zip(alpha, beta))
        val = rest.get(shifted, 0) + c
        if val:
            rest[shifted] = val
        elif shifted in rest:
            del rest[shifted]
    return Polynomial(num.dim, quotient)


def simplify_and_decide(f: RationalFraction):
    """Recognizability verdict by clearing multivariable denominator factors.

    Every factor (1 - x^beta) with two or more variables must divide the
    numerator exactly (per occurrence, in lexicographic order); the first
    failure witnesses non-recognizability.  Whole single-variable binomials
    are then divided out opportunistically when the remainder is zero.
    """
    num = f.numerator
    single: list[Vec] = []
    for beta in sorted(f.denominator.factors):
        if sum(1 for c in beta if c) >= 2:
            divided = poly_divide_exact(num, beta)
            if divided is None:
                return NotRecognizable(beta)
            num = divided
        else:
            single.append(beta)
    changed = True
    while changed:
        changed = False
        for beta in list(single):
            divided = poly_divide_exact(num, beta)
            if divided is not None:
                num = divided
                single.remove(beta)
                changed = True
    return Recognizable(num, FactoredDenominator(f.numerator.dim,
                                                 tuple(single)))


def expand_truncated(f: RationalFraction, degree_cap: int) -> dict[Vec, int]:
    """All series coefficients of total degree <= degree_cap."""

    def mul_trunc(a: dict, b: dict) -> dict:
        out: dict = {}
        for e1, c1 in a.items():
            d1 = sum(e1)
            for e2, c2 in b.items():
                if d1 + sum(e2) > degree_cap:
                    continue
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return {e: c for e, c in out.items() if c}

    acc = {e: c for e, c in f.numerator.coeffs.items()
           if sum(e) <= degree_cap}
    for beta in f.denominator.factors:
        step = sum(beta)
        geom = {}
        t = 0
        while t * step <= degree_cap:
            geom[tuple(t * b for b in beta)] = 1
            t += 1
        acc = mul_trunc(acc, geom)
    return acc


# ---------------------------------------------------------------------------
# Pretty printing


def variable_names(dim: int) -> tuple[str, ...]:
    if dim <= 3:
        return ("x", "y", "z")[:dim]
    return tuple("x%d" % (i + 1) for i in range(dim))


def format_monomial(exp: Vec, names) -> str:
    parts = []
    for e, name in zip(exp, names):
        if e == 0:
            continue
        parts.append(name if e == 1 else "%s^%d" % (name, e))
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial) -> str:
    if not p:
        return "0"
    names = variable_names(p.dim)
    # total degree first, then reverse-lex, matching x + y - x*y readability
    order = sorted(p.coeffs, key=lambda e: (sum(e), tuple(-v for v in e)))
    out = []
    for e in order:
        c = p.coeffs[e]
        mono = format_monomial(e, names)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%d*%s" % (mag, mono)
        if not out:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


def format_factor(beta: Vec, names) -> str:
    return "1 - %s" % format_monomial(beta, names)


def format_denominator(d: FactoredDenominator) -> str:
    if not d.factors:
        return "1"
    names = variable_names(d.dim)
    order = sorted(d.factors,
                   key=lambda b: (next(i for i, v in enumerate(b) if v), b))
    return "*".join("(%s)" % format_factor(b, names) for b in order)


def format_fraction(num: Polynomial, den: FactoredDenominator) -> str:
    n = format_polynomial(num)
    if len(num.coeffs) > 1:
        n = "(%s)" % n
    d = format_denominator(den)
    if len(den.factors) > 1:
        d = "(%s)" % d
    return "%s / %s" % (n, d)
