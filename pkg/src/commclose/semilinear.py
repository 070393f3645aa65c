"""Rational-expression algebra over N^k: semilinear sets and their normal forms.

Sets are unions of linear terms ``offset + basis^*``.  The transformations
here (star-height reduction, basis freeing, disambiguation, consistency)
preserve the denoted set; tests verify that against the membership oracle.

Disambiguation leans on :mod:`commclose.dioph`: intersections and complements
of linear terms with free bases are computed as disjoint unions of linear
terms with free bases, so sequential differencing yields a provably
unambiguous union rather than an oracle-guessed one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dioph import Limits, SolverLimitError, solve_disjoint

Vec = tuple[int, ...]


class DeskScaleExceeded(RuntimeError):
    """Input drove a search or rewrite past its configured cap."""


# ---------------------------------------------------------------------------
# Rational expressions over N^k


@dataclass(frozen=True)
class RatExpr:
    """Base class for rational expressions over N^k."""


@dataclass(frozen=True)
class Empty(RatExpr):
    pass


@dataclass(frozen=True)
class Point(RatExpr):
    vec: Vec


@dataclass(frozen=True)
class RUnion(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class RSum(RatExpr):
    left: RatExpr
    right: RatExpr


@dataclass(frozen=True)
class RPlus(RatExpr):
    """The iteration operator: all finite sums of elements of the operand."""
    inner: RatExpr


def format_rat_expr(e: RatExpr) -> str:
    match e:
        case Empty():
            return "{}"
        case Point(v):
            return "(%s)" % ",".join(str(c) for c in v)
        case RUnion(l, r):
            return "(%s U %s)" % (format_rat_expr(l), format_rat_expr(r))
        case RSum(l, r):
            return "(%s + %s)" % (format_rat_expr(l), format_rat_expr(r))
        case RPlus(i):
            return "%s+" % format_rat_expr(i)
    raise TypeError(e)


# ---------------------------------------------------------------------------
# Linear and semilinear sets


@dataclass(frozen=True)
class LinearSet:
    """offset + basis^*, the N-combinations of `basis` shifted by `offset`."""
    offset: Vec
    basis: tuple[Vec, ...]

    def __post_init__(self):
        basis = tuple(sorted(set(self.basis)))
        object.__setattr__(self, "offset", tuple(self.offset))
        object.__setattr__(self, "basis", basis)
        k = len(self.offset)
        for b in basis:
            if len(b) != k:
                raise ValueError("basis vector dimension mismatch")
            if not any(b):
                raise ValueError("zero vector not allowed in a basis")


@dataclass(frozen=True)
class SemilinearSet:
    """Finite union of linear sets, with tri-state normal-form flags.

    Flags are None until the corresponding property has been established by a
    transformation (True) or refuted (False).
    """
    dim: int
    terms: tuple[LinearSet, ...]
    all_free: bool | None = None
    consistent: bool | None = None
    unambiguous: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        for t in self.terms:
            if len(t.offset) != self.dim:
                raise ValueError("term dimension mismatch")


def semilinear(dim: int, terms, **flags) -> SemilinearSet:
    return SemilinearSet(dim, tuple(sorted(set(terms),
                                           key=lambda t: (t.offset, t.basis))),
                         **flags)


def format_linear(t: LinearSet) -> str:
    off = "(%s)" % ",".join(str(c) for c in t.offset)
    if not t.basis:
        return off
    body = "|".join("(%s)" % ",".join(str(c) for c in b) for b in t.basis)
    return "%s+(%s)+" % (off, body)


def format_semilinear(s: SemilinearSet, sep: str = " | ") -> str:
    if not s.terms:
        return "{}"
    return sep.join(format_linear(t) for t in s.terms)


# ---------------------------------------------------------------------------
# Membership


def _representations(term: LinearSet, sigma: Vec, stop_at: int) -> int:
    """Number of coefficient vectors (capped at stop_at) writing sigma."""
    delta = tuple(s - o for s, o in zip(sigma, term.offset))
    if any(d < 0 for d in delta):
        return 0
    basis = term.basis
    memo: dict[tuple[Vec, int], int] = {}

    def rec(d: Vec, i: int) -> int:
        if i == len(basis):
            return 1 if not any(d) else 0
        key = (d, i)
        if key in memo:
            return memo[key]
        for r in range(len(d)):
            if d[r] and all(b[r] == 0 for b in basis[i:]):
                memo[key] = 0
                return 0
        b = basis[i]
        total = 0
        cur = d
        while True:
            total += rec(cur, i + 1)
            if total >= stop_at:
                break
            cur = tuple(a - x for a, x in zip(cur, b))
            if any(v < 0 for v in cur):
                break
        memo[key] = total
        return total

    return rec(delta, 0)


def member_term(sigma: Vec, term: LinearSet) -> bool:
    return _representations(term, sigma, 1) > 0


def representation_count(term: LinearSet, sigma: Vec, cap: int = 64) -> int:
    return _representations(term, sigma, cap)


def member(sigma, s: SemilinearSet) -> bool:
    sigma = tuple(sigma)
    return any(member_term(sigma, t) for t in s.terms)


def box(dim: int, radius: int):
    """All sigma in N^dim with every coordinate <= radius."""
    import itertools
    return itertools.product(range(radius + 1), repeat=dim)


# ---------------------------------------------------------------------------
# Exact rational elimination (shared by freeness, kernels, complements)


def _rref_tracked(columns, dim):
    """Row-reduce the dim x p matrix with the given columns, tracking E.

    Returns (M, E, pivots) with E . original = M, pivots the pivot column
    indices in processing order (row i has its pivot in column pivots[i]).
    """
    p = len(columns)
    M = [[Fraction(columns[i][r]) for i in range(p)] for r in range(dim)]
    E = [[Fraction(1 if i == j else 0) for j in range(dim)]
         for i in range(dim)]
    pivots = []
    r = 0
    for col in range(p):
        pr = next((i for i in range(r, dim) if M[i][col] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        E[r], E[pr] = E[pr], E[r]
        inv = 1 / M[r][col]
        M[r] = [a * inv for a in M[r]]
        E[r] = [a * inv for a in E[r]]
        for i in range(dim):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
                E[i] = [a - f * b for a, b in zip(E[i], E[r])]
        pivots.append(col)
        r += 1
    return M, E, pivots


def _integerize(row):
    """Scale a Fraction row to coprime integers; returns (ints, multiplier)."""
    lcm = 1
    for f in row:
        lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
    ints = [int(f * lcm) for f in row]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
        # keep lcm consistent with the scaled row only when it divides evenly
        if lcm % g == 0:
            lcm //= g
    return tuple(ints), lcm


def is_free(basis) -> bool:
    """A basis is free iff its vectors are linearly independent over Q.

    A rational dependency among nonzero nonnegative vectors splits into two
    equal N-combinations, so independence is equivalent to unambiguity of the
    iteration basis^*.
    """
    basis = tuple(basis)
    if not basis:
        return True
    dim = len(basis[0])
    _, _, pivots = _rref_tracked(basis, dim)
    return len(pivots) == len(basis)


def _kernel_vector(basis) -> tuple[int, ...] | None:
    """Nonzero integer z with sum z_i basis_i = 0, or None if independent."""
    basis = tuple(basis)
    p = len(basis)
    dim = len(basis[0])
    M, _, pivots = _rref_tracked(basis, dim)
    if len(pivots) == p:
        return None
    free_col = next(c for c in range(p) if c not in pivots)
    z = [Fraction(0)] * p
    z[free_col] = Fraction(1)
    for row, col in enumerate(pivots):
        z[col] = -M[row][free_col]
    ints, _ = _integerize(z)
    return ints


# ---------------------------------------------------------------------------
# Star-height reduction: rational expression -> semilinear form


def to_semilinear(expr: RatExpr, dim: int) -> SemilinearSet:
    """Rewrite to a union of linear terms denoting the same subset of N^k.

    Uses the commutative-monoid identities: iterating a union multiplies the
    iterations, iterating an iteration is idempotent, and iterating a single
    linear term gives {0} union (offset + (basis U {offset})^*).
    """
    match expr:
        case Empty():
            return semilinear(dim, ())
        case Point(v):
            if len(v) != dim:
                raise ValueError("point dimension mismatch")
            return semilinear(dim, (LinearSet(v, ()),))
        case RUnion(l, r):
            a, b = to_semilinear(l, dim), to_semilinear(r, dim)
            return semilinear(dim, a.terms + b.terms)
        case RSum(l, r):
            a, b = to_semilinear(l, dim), to_semilinear(r, dim)
            return _minkowski(a, b)
        case RPlus(inner):
            s = to_semilinear(inner, dim)
            zero = (0,) * dim
            # points iterate jointly into a single basis; only terms with a
            # nonempty basis need the offset-absorbing star identity
            points = [t.offset for t in s.terms
                      if not t.basis and t.offset != zero]
            others = [t for t in s.terms if t.basis]
            result = semilinear(dim, (LinearSet(zero, tuple(points)),))
            for t in others:
                result = _minkowski(result, _star_term(t, dim))
            return result
    raise TypeError(expr)


def _minkowski(a: SemilinearSet, b: SemilinearSet) -> SemilinearSet:
    terms = []
    for t in a.terms:
        for u in b.terms:
            off = tuple(x + y for x, y in zip(t.offset, u.offset))
            terms.append(LinearSet(off, t.basis + u.basis))
    return semilinear(a.dim, terms)


def _star_term(t: LinearSet, dim: int) -> SemilinearSet:
    zero = (0,) * dim
    if t.offset == zero:
        return semilinear(dim, (LinearSet(zero, t.basis),))
    return semilinear(dim, (LinearSet(zero, ()),
                            LinearSet(t.offset, t.basis + (t.offset,))))


# ---------------------------------------------------------------------------
# Basis freeing


def make_free_term(term: LinearSet, max_depth: int = 64) -> list[LinearSet]:
    """Rewrite one linear term as a union of terms with free bases.

    A nonzero integer kernel relation sum(pos_i b_i) = sum(neg_i b_i) lets
    any representation be pushed below the relation on its cheaper side, so
    the iteration splits into the union over that side's vectors b_i and
    residual coefficients c < z_i of (offset + c b_i) + (basis without b_i)^*.
    """
    if max_depth <= 0:
        raise DeskScaleExceeded("basis-freeing recursion exceeded its cap")
    z = _kernel_vector(term.basis) if term.basis else None
    if z is None:
        return [term]
    pos = [(i, v) for i, v in enumerate(z) if v > 0]
    neg = [(i, -v) for i, v in enumerate(z) if v < 0]
    side = pos if sum(v for _, v in pos) <= sum(v for _, v in neg) else neg
    out = []
    for i, bound in side:
        b = term.basis[i]
        rest = term.basis[:i] + term.basis[i + 1:]
        for c in range(bound):
            off = tuple(o + c * x for o, x in zip(term.offset, b))
            out.extend(make_free_term(LinearSet(off, rest), max_depth - 1))
    return out


def make_free(s: SemilinearSet | LinearSet, max_depth: int = 64) -> SemilinearSet:
    if isinstance(s, LinearSet):
        s = semilinear(len(s.offset), (s,))
    terms = []
    for t in s.terms:
        terms.extend(make_free_term(t, max_depth))
    return semilinear(s.dim, terms, all_free=True, consistent=s.consistent)


# ---------------------------------------------------------------------------
# Disjoint cell algebra (free bases throughout)


def _cell_intersect(c1: LinearSet, c2: LinearSet, dim: int,
                    limits: Limits) -> list[LinearSet]:
    """Intersection of two free-basis terms as disjoint free-basis terms.

    Solves offset1 + B1 n = offset2 + B2 m; freeness of both bases makes the
    solution-to-point map injective, so the disjoint solver decomposition
    projects to a disjoint decomposition of the intersection itself.
    """
    p1, p2 = len(c1.basis), len(c2.basis)
    rows = []
    rhs = []
    for r in range(dim):
        row = [b[r] for b in c1.basis] + [-b[r] for b in c2.basis]
        rows.append(tuple(row))
        rhs.append(c2.offset[r] - c1.offset[r])
    pieces = solve_disjoint(rows, rhs, p1 + p2, limits)
    out = []
    seen = set()
    for off, periods in pieces:
        n = off[:p1]
        sigma = tuple(c + sum(ni * b[r] for ni, b in zip(n, c1.basis))
                      for r, c in enumerate(c1.offset))
        new_basis = []
        for h in periods:
            hn = h[:p1]
            img = tuple(sum(ni * b[r] for ni, b in zip(hn, c1.basis))
                        for r in range(dim))
            if any(img):
                new_basis.append(img)
        cell = LinearSet(sigma, tuple(new_basis))
        if p1 == 0 or p2 == 0:
            # a point side collapses all witnesses onto one image
            if cell in seen:
                continue
            seen.add(cell)
        out.append(cell)
    return out


def _solution_structure(basis, dim):
    """For a free basis: span conditions and coordinate formulas.

    Returns (span_rows, coord_rows): tau lies in the rational span iff every
    span row l gives l . tau == 0, and then the unique coefficient of basis
    vector i is (alpha_i . tau) / delta_i.
    """
    M, E, pivots = _rref_tracked(basis, dim)
    p = len(basis)
    assert len(pivots) == p, "basis must be free"
    coord_rows = []
    for i in range(p):
        ints, delta = _integerize(E[i])
        coord_rows.append((ints, delta))
    span_rows = []
    for i in range(p, dim):
        ints, _ = _integerize(E[i])
        if any(ints):
            span_rows.append(ints)
    return span_rows, coord_rows


class _ModeSystem:
    """Accumulates linear constraints over sigma plus determined witnesses."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list[int]] = []
        self.rhs: list[int] = []
        self.extra = 0

    def _pad(self):
        for row in self.rows:
            while len(row) < self.dim + self.extra:
                row.append(0)

    def eq(self, form, const):
        self.rows.append(list(form))
        self.rhs.append(const)
        self._pad()

    def ge(self, form, const):
        # form . sigma - s = const with fresh slack s
        self.extra += 1
        self._pad()
        row = list(form) + [0] * self.extra
        row[self.dim + self.extra - 1] = -1
        self.rows.append(row)
        self.rhs.append(const)

    def le(self, form, const):
        self.ge([-a for a in form], -const)

    def cong_nonneg(self, form, const, modulus):
        """form . sigma == const + modulus * w for a fresh witness w >= 0."""
        self.extra += 1
        self._pad()
        row = list(form) + [0] * self.extra
        row[self.dim + self.extra - 1] = -modulus
        self.rows.append(row)
        self.rhs.append(const)

    def solve(self, limits: Limits) -> list[LinearSet]:
        self._pad()
        nvars = self.dim + self.extra
        rows = [tuple(r) for r in self.rows]
        pieces = solve_disjoint(rows, self.rhs, nvars, limits)
        out = []
        for off, periods in pieces:
            basis = []
            for h in periods:
                img = h[:self.dim]
                assert any(img), "witness variables must be sigma-determined"
                basis.append(img)
            out.append(LinearSet(off[:self.dim], tuple(basis)))
        return out


def cell_complement(cell: LinearSet, dim: int,
                    limits: Limits | None = None) -> list[LinearSet]:
    """Complement of a free-basis term in N^dim as disjoint free terms.

    Membership of sigma is: sigma - offset lies in the rational span of the
    basis and every (unique) rational coefficient is a nonnegative integer.
    The complement enumerates the exclusive first-failure modes of that chain;
    each mode is a linear-congruence cell solved disjointly.
    """
    limits = limits or Limits()
    u0 = cell.offset
    span_rows, coord_rows = _solution_structure(cell.basis, dim) \
        if cell.basis else ([tuple(1 if i == r else 0 for i in range(dim))
                             for r in range(dim)], [])
    systems: list[_ModeSystem] = []

    def base_system() -> _ModeSystem:
        return _ModeSystem(dim)

    def add_span_holds(sys: _ModeSystem, upto: int):
        for srow in span_rows[:upto]:
            sys.eq(srow, sum(a * b for a, b in zip(srow, u0)))

    def add_coord_passes(sys: _ModeSystem, upto: int):
        for alpha, delta in coord_rows[:upto]:
            t0 = sum(a * b for a, b in zip(alpha, u0))
            # G = alpha.sigma - t0 must be a nonnegative multiple of delta
            sys.cong_nonneg(alpha, t0, delta)

    # span failures, first failing row s, each sign separately
    for s_i, srow in enumerate(span_rows):
        t0 = sum(a * b for a, b in zip(srow, u0))
        for sign in (+1, -1):
            sys = base_system()
            add_span_holds(sys, s_i)
            if sign > 0:
                sys.ge(srow, t0 + 1)
            else:
                sys.le(srow, t0 - 1)
            systems.append(sys)

    # all span rows hold; first failing coefficient i
    for i, (alpha, delta) in enumerate(coord_rows):
        t0 = sum(a * b for a, b in zip(alpha, u0))
        # non-integral coefficient: G == rho (mod delta), rho in 1..delta-1,
        # split by the sign of G so the witness stays sigma-determined
        for rho in range(1, delta):
            sys = base_system()
            add_span_holds(sys, len(span_rows))
            add_coord_passes(sys, i)
            sys.cong_nonneg(alpha, t0 + rho, delta)
            systems.append(sys)
            sys = base_system()
            add_span_holds(sys, len(span_rows))
            add_coord_passes(sys, i)
            neg_rho = (-rho) % delta
            start = neg_rho if neg_rho else delta
            sys.cong_nonneg([-a for a in alpha], -t0 + start, delta)
            systems.append(sys)
        # integral but negative coefficient: -G >= delta and divisible
        sys = base_system()
        add_span_holds(sys, len(span_rows))
        add_coord_passes(sys, i)
        sys.cong_nonneg([-a for a in alpha], -t0 + delta, delta)
        systems.append(sys)

    out = []
    for sys in systems:
        out.extend(sys.solve(limits))
    return out


def _cells_disjoint(c1: LinearSet, c2: LinearSet, dim: int,
                    limits: Limits) -> bool:
    from .dioph import has_solution
    rows = []
    rhs = []
    for r in range(dim):
        row = [b[r] for b in c1.basis] + [-b[r] for b in c2.basis]
        rows.append(tuple(row))
        rhs.append(c2.offset[r] - c1.offset[r])
    return not has_solution(rows, rhs, len(c1.basis) + len(c2.basis), limits)


def cell_difference(c: LinearSet, x: LinearSet, dim: int, limits: Limits,
                    complement_cache: dict | None = None) -> list[LinearSet]:
    """c minus x as disjoint free-basis terms (both inputs free-basis)."""
    if _cells_disjoint(c, x, dim, limits):
        return [c]
    if member_term(c.offset, x) and all(
            member_term(b, LinearSet((0,) * dim, x.basis)) for b in c.basis):
        return []  # c is contained in x
    if complement_cache is not None and x in complement_cache:
        comp = complement_cache[x]
    else:
        comp = cell_complement(x, dim, limits)
        if complement_cache is not None:
            complement_cache[x] = comp
    out = []
    for w in comp:
        out.extend(_cell_intersect(c, w, dim, limits))
    return out


# ---------------------------------------------------------------------------
# Disambiguation, intersection, consistency


def disambiguate(s: SemilinearSet, limits: Limits | None = None,
                 max_terms: int = 4000) -> SemilinearSet:
    """Same set, as a union whose terms are pairwise disjoint with free bases.

    Sequential differencing: each incoming term is replaced by its difference
    with everything already kept.  Differences are exact, so the counting
    certificate holds by construction (and is still checked in tests).
    """
    if s.all_free is not True:
        raise ValueError("disambiguate requires free bases; run make_free")
    limits = limits or Limits()
    kept: list[LinearSet] = []
    cache: dict = {}
    for term in s.terms:
        pieces = [term]
        for x in list(kept):
            nxt: list[LinearSet] = []
            for p in pieces:
                nxt.extend(cell_difference(p, x, s.dim, limits, cache))
                if len(nxt) + len(kept) > max_terms:
                    raise DeskScaleExceeded("disambiguation size cap exceeded")
            pieces = nxt
            if not pieces:
                break
        kept.extend(pieces)
    return semilinear(s.dim, kept, all_free=True, unambiguous=True,
                      consistent=s.consistent)


def intersect_linear(t1: LinearSet, t2: LinearSet,
                     limits: Limits | None = None) -> SemilinearSet:
    """Semilinear intersection of two linear terms (any bases).

    Computed from the nonnegative solutions of offset1 + B1 n = offset2 + B2 m;
    free inputs additionally yield pairwise-disjoint output terms.
    """
    limits = limits or Limits()
    dim = len(t1.offset)
    try:
        if is_free(t1.basis) and is_free(t2.basis):
            return semilinear(dim, _cell_intersect(t1, t2, dim, limits),
                              all_free=True)
        terms = []
        for a in make_free_term(t1):
            for b in make_free_term(t2):
                terms.extend(_cell_intersect(a, b, dim, limits))
        return semilinear(dim, terms, all_free=True)
    except SolverLimitError as e:
        raise DeskScaleExceeded(str(e)) from e


def primary_coordinate(v: Vec) -> int | None:
    """Index j if v = n e_j for some n > 0, else None."""
    nz = [i for i, c in enumerate(v) if c]
    return nz[0] if len(nz) == 1 else None


def make_consistent(s: SemilinearSet) -> SemilinearSet:
    """Align primary basis elements so each coordinate has one shared period.

    The shared period p_j is the lcm of the j-primary coordinates present.
    Replacing m e_j by p_j e_j splits a term into p_j/m residue translates;
    the translates partition the term, so unambiguity survives untouched.
    """
    if s.all_free is not True:
        raise ValueError("make_consistent requires free bases")
    periods: dict[int, int] = {}
    for t in s.terms:
        for b in t.basis:
            j = primary_coordinate(b)
            if j is not None:
                periods[j] = math.lcm(periods[j], b[j]) if j in periods \
                    else b[j]
    terms = list(s.terms)
    for j, pj in sorted(periods.items()):
        nxt = []
        for t in terms:
            prim = next((b for b in t.basis
                         if primary_coordinate(b) == j), None)
            if prim is None or prim[j] == pj:
                nxt.append(t)
                continue
            m = prim[j]
            stretched = tuple(pj if i == j else 0 for i in range(s.dim))
            rest = tuple(b for b in t.basis if b != prim)
            for r in range(pj // m):
                off = tuple(o + r * m if i == j else o
                            for i, o in enumerate(t.offset))
                nxt.append(LinearSet(off, rest + (stretched,)))
        terms = nxt
    return semilinear(s.dim, terms, all_free=True, consistent=True,
                      unambiguous=s.unambiguous)


# ---------------------------------------------------------------------------
# Certificates (bounded checks backing the tri-state flags)


def certify_all_free(s: SemilinearSet) -> bool:
    return all(is_free(t.basis) for t in s.terms)


def certify_unambiguous(s: SemilinearSet, radius: int = 10) -> bool:
    """Representation count over the box is everywhere at most one."""
    for sigma in box(s.dim, radius):
        count = sum(representation_count(t, sigma, 2) for t in s.terms)
        if count > 1:
            return False
    return True


def certify_consistent(s: SemilinearSet) -> bool:
    seen: dict[int, int] = {}
    for t in s.terms:
        for b in t.basis:
            j = primary_coordinate(b)
            if j is None:
                continue
            if seen.setdefault(j, b[j]) != b[j]:
                return False
    return True


def sets_equal_on_box(a: SemilinearSet, b: SemilinearSet,
                      radius: int = 10) -> bool:
    return all(member(sigma, a) == member(sigma, b)
               for sigma in box(a.dim, radius))
