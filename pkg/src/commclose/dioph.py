"""Exact solving of linear Diophantine systems over the naturals.

The central routine, :func:`solve_disjoint`, decomposes the solution set
{x in N^u : A x = b} into finitely many pieces ``offset + periods^*`` that are
pairwise disjoint and whose period lists are triangular (each period owns a
coordinate where all later periods vanish), so every element of a piece has a
unique coefficient vector.  This disjointness is what lets the semilinear
layer build unambiguous unions without a separate uniqueness pass.

Completeness of the bounded searches rests on two exact reductions:
Fourier-Motzkin elimination decides recession-cone triviality and yields true
per-variable bounds of the solution polytope, and the classical bound on
minimal solutions (Pottier) caps the search for recession directions.
Searches are node-capped; exceeding the cap raises SolverLimitError rather
than returning a silently incomplete answer.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SolverLimitError(RuntimeError):
    """Search exceeded its configured bound; result would be unreliable."""


@dataclass
class Limits:
    max_nodes: int = 20_000_000
    bound_scale: int = 1
    _spent: int = field(default=0, repr=False)

    def charge(self, n: int = 1):
        self._spent += n
        if self._spent > self.max_nodes:
            raise SolverLimitError(
                "Diophantine search exceeded %d nodes" % self.max_nodes)


Vec = tuple[int, ...]
Piece = tuple[Vec, tuple[Vec, ...]]  # (offset, periods)


def _row_norm(rows) -> int:
    return max((sum(abs(a) for a in row) for row in rows), default=0)


def _fm_eliminate(cons, nvars: int, keep: int | None):
    """Fourier-Motzkin elimination of all variables except `keep`.

    `cons` holds pairs (coeffs, const) meaning coeffs . x >= const; the
    nonnegativity constraints x_j >= 0 must already be included.  Constraints
    that are implied by nonnegativity alone are dropped along the way.
    """
    for j in range(nvars):
        if j == keep:
            continue
        pos, neg, passthrough = [], [], set()
        for coeffs, const in cons:
            c = coeffs[j]
            if c > 0:
                pos.append((coeffs, const))
            elif c < 0:
                neg.append((coeffs, const))
            else:
                passthrough.add((coeffs, const))
        new = passthrough
        for pc, pd in pos:
            for nc, nd in neg:
                mp, mn = -nc[j], pc[j]
                coeffs = tuple(mp * a + mn * b for a, b in zip(pc, nc))
                const = mp * pd + mn * nd
                if all(c >= 0 for c in coeffs) and const <= 0:
                    continue  # implied by the remaining x >= 0 constraints
                new.add((coeffs, const))
        cons = new
    return cons


def _base_constraints(rows, rhs, nvars: int):
    cons = set()
    for row, t in zip(rows, rhs):
        cons.add((tuple(row), t))
        cons.add((tuple(-a for a in row), -t))
    for j in range(nvars):
        e = [0] * nvars
        e[j] = 1
        cons.add((tuple(e), 0))
    return cons


def cone_is_trivial(rows, nvars: int) -> bool:
    """True iff A x = 0, x >= 0 has only the zero solution.

    Decided exactly by eliminating A x = 0, x >= 0, sum(x) >= 1; the cone is
    trivial iff that rational system is infeasible.
    """
    if nvars == 0:
        return True
    cons = _base_constraints(rows, [0] * len(rows), nvars)
    cons.add(((1,) * nvars, 1))
    cons = _fm_eliminate(cons, nvars, keep=None)
    return any(const > 0 for _, const in cons)


def polytope_var_bounds(rows, rhs, nvars: int) -> list[int] | None:
    """Exact per-variable upper bounds of {A x = b, x >= 0}, or None if empty.

    Projects onto each variable by Fourier-Motzkin; a variable with no upper
    constraint after projection is unbounded and reported as -1.
    """
    bounds = []
    base = _base_constraints(rows, rhs, nvars)
    for j in range(nvars):
        cons = _fm_eliminate(set(base), nvars, keep=j)
        hi = None
        lo = 0
        for coeffs, const in cons:
            c = coeffs[j]
            if c == 0:
                if const > 0:
                    return None  # infeasible system
                continue
            if c < 0:  # c * x_j >= const  ->  x_j <= floor(const / c)
                b = const // c
                hi = b if hi is None else min(hi, b)
            else:
                b = -((-const) // c)  # ceil(const / c)
                lo = max(lo, b)
        if hi is not None and hi < lo:
            return None
        bounds.append(-1 if hi is None else hi)
    return bounds


def _value_range(rows, need, j, caps):
    """Feasible range for x_j given row targets and caps on later variables.

    Bounds are conservative: they never exclude a genuine solution within the
    caps.  Returns (lo, hi), possibly empty (lo > hi).
    """
    lo_v, hi_v = 0, caps[j]
    for row, nd in zip(rows, need):
        a = row[j]
        lo = hi = 0
        for jj in range(j + 1, len(caps)):
            ar = row[jj]
            if ar > 0:
                hi += ar * caps[jj]
            elif ar < 0:
                lo += ar * caps[jj]
        if a == 0:
            if not (lo <= nd <= hi):
                return 1, 0
            continue
        # lo <= nd - a*v <= hi
        if a > 0:
            lo_j = -((hi - nd) // a)        # ceil((nd - hi)/a)
            hi_j = (nd - lo) // a
        else:
            lo_j = -((nd - lo) // -a)       # ceil((nd - lo)/a), a < 0
            hi_j = (hi - nd) // -a
        lo_v = max(lo_v, lo_j)
        hi_v = min(hi_v, hi_j)
        if lo_v > hi_v:
            return 1, 0
    return lo_v, hi_v


def _dfs_solutions(rows, rhs, nvars, caps, limits, budget=None,
                   first_only=False):
    """All x with A x = rhs, 0 <= x_j <= caps[j] (and sum == budget if set)."""
    out = []
    x = [0] * nvars

    def rec(j, need, remaining):
        limits.charge()
        if j == nvars:
            if all(n == 0 for n in need) and (remaining in (None, 0)):
                out.append(tuple(x))
                return first_only
            return False
        lo, hi = _value_range(rows, need, j, caps)
        if remaining is not None:
            hi = min(hi, remaining)
            if j == nvars - 1:
                lo, hi = max(lo, remaining), min(hi, remaining)
        for v in range(lo, hi + 1):
            x[j] = v
            nneed = [n - row[j] * v for n, row in zip(need, rows)]
            nrem = None if remaining is None else remaining - v
            if rec(j + 1, nneed, nrem):
                return True
        x[j] = 0
        return False

    rec(0, list(rhs), budget)
    return out


def find_recession(rows, nvars: int, limits: Limits) -> Vec | None:
    """A nonzero x >= 0 with A x = 0 of minimal total sum, or None.

    Triviality of the cone is decided first by exact rational elimination, so
    the iterative deepening below runs only when a solution is known to exist.
    """
    if nvars == 0 or cone_is_trivial(rows, nvars):
        return None
    norm = _row_norm(rows)
    sum_cap = ((1 + norm) ** max(1, len(rows))) * nvars * limits.bound_scale
    total = 1
    while total <= sum_cap:
        caps = [total] * nvars
        found = _dfs_solutions(rows, [0] * len(rows), nvars, caps, limits,
                               budget=total, first_only=True)
        if found:
            return found[0]
        total += 1
    raise SolverLimitError("no recession direction within bound %d" % sum_cap)


def enumerate_finite(rows, rhs, nvars: int, limits: Limits) -> list[Vec]:
    """All solutions of A x = b, x >= 0, assuming the cone is trivial.

    A trivial cone makes the solution polytope bounded, so the projected
    per-variable bounds are finite and the box search is complete.
    """
    if nvars == 0:
        return [()] if all(t == 0 for t in rhs) else []
    caps = polytope_var_bounds(rows, rhs, nvars)
    if caps is None:
        return []
    assert all(c >= 0 for c in caps), "trivial cone implies bounded polytope"
    return _dfs_solutions(rows, rhs, nvars, caps, limits)


def has_solution(rows, rhs, nvars: int, limits: Limits | None = None) -> bool:
    """Feasibility of A x = b, x >= 0.

    Every solution dominates a minimal one and minimal solutions lie in the
    Pottier box, so a search capped by the tighter of the projected bound and
    the Pottier bound decides feasibility exactly.
    """
    limits = limits or Limits()
    if nvars == 0:
        return all(t == 0 for t in rhs)
    caps = polytope_var_bounds(rows, rhs, nvars)
    if caps is None:
        return False
    norm = _row_norm(rows)
    bmax = max((abs(t) for t in rhs), default=0)
    pottier = ((2 + norm + bmax) ** max(1, len(rows))) * limits.bound_scale
    caps = [pottier if c < 0 else min(c, pottier) for c in caps]
    return bool(_dfs_solutions(rows, rhs, nvars, caps, limits,
                               first_only=True))


def solve_disjoint(rows, rhs, nvars: int, limits: Limits | None = None,
                   first_only: bool = False) -> list[Piece]:
    """Disjoint decomposition of {x in N^nvars : rows . x = rhs}.

    Returns pieces (offset, periods) whose union is the solution set, pairwise
    disjoint, with triangular period lists: every element of a piece equals
    offset + sum(c_i * period_i) for exactly one coefficient vector c, which
    also makes each period list a free basis.
    """
    limits = limits or Limits()
    rows = [tuple(r) for r in rows]
    rhs = list(rhs)
    return _solve(rows, rhs, nvars, limits, first_only)


def _solve(rows, rhs, nvars, limits, first_only) -> list[Piece]:
    limits.charge()
    if nvars == 0:
        return [((), ())] if all(t == 0 for t in rhs) else []
    for row, t in zip(rows, rhs):
        if all(a == 0 for a in row) and t != 0:
            return []
    h = find_recession(rows, nvars, limits)
    if h is None:
        sols = enumerate_finite(rows, rhs, nvars, limits)
        if first_only:
            sols = sols[:1]
        return [(s, ()) for s in sols]

    # S = disjoint union over y in S0 of y + h^*, where S0 are the solutions
    # with x_i < h_i at their first low coordinate i of supp(h); the maximal
    # number of h-subtractions is then unique, giving global disjointness.
    pieces: list[Piece] = []
    supp = [j for j in range(nvars) if h[j] > 0]
    for idx, i in enumerate(supp):
        for c in range(h[i]):
            shift = {j: h[j] for j in supp[:idx]}
            nrhs = list(rhs)
            for r, row in enumerate(rows):
                nrhs[r] -= row[i] * c
                for j, s in shift.items():
                    nrhs[r] -= row[j] * s
            nrows = [row[:i] + row[i + 1:] for row in rows]
            for off, periods in _solve(nrows, nrhs, nvars - 1, limits,
                                       first_only):
                lifted = list(off[:i]) + [c] + list(off[i:])
                for j, s in shift.items():
                    lifted[j] += s
                lifted_periods = tuple(p[:i] + (0,) + p[i:] for p in periods)
                pieces.append((tuple(lifted), (h,) + lifted_periods))
                if first_only:
                    return pieces
    return pieces
