"""Signed atomic descriptions of recognizable sets, built from a reduced P/Q.

Each monomial of the reduced numerator becomes an atomic term: an offset
plus, on every coordinate that carries a denominator factor (1 - x_j^p_j),
the shared period p_j.  A point sigma belongs to the denoted set exactly when
the signed coefficients of the atomic terms containing it sum to one; the
"good" membership patterns are those with sum one that some point realizes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .semilinear import Vec
from .series import FactoredDenominator, Polynomial


class SystemInvariantError(RuntimeError):
    """The polynomial data violates an upstream guarantee."""


@dataclass(frozen=True)
class AtomicResimple:
    """Per-coordinate constraints: a threshold-and-residue condition where a
    period is present, an exact point constraint where it is not."""
    offset: Vec
    periods: tuple[int | None, ...]

    def contains(self, sigma: Vec) -> bool:
        for s, d, p in zip(sigma, self.offset, self.periods):
            if p is None:
                if s != d:
                    return False
            elif s < d or (s - d) % p != 0:
                return False
        return True


@dataclass(frozen=True)
class ResimpleSystem:
    dim: int
    periods: tuple[int | None, ...]
    terms: tuple[tuple[int, AtomicResimple], ...]  # (signed weight, atom)
    good_classes: frozenset[frozenset[int]]

    def tails(self) -> tuple[int, ...]:
        """Per-coordinate maximum offset across terms."""
        return tuple(max((atom.offset[j] for _, atom in self.terms),
                         default=0) for j in range(self.dim))


def _coordinate_patterns(terms, j, period):
    """Achievable {h : coordinate j of sigma satisfies term h} sets.

    Conditions on a single coordinate are threshold-plus-residue (or exact
    points), so scanning values up to max offset + period covers every
    pattern that any value realizes.
    """
    offsets = [atom.offset[j] for _, atom in terms]
    top = max(offsets, default=0)
    limit = top + (period if period is not None else 1) + 1
    patterns = set()
    for v in range(limit + 1):
        pat = []
        for h, (_, atom) in enumerate(terms):
            d = atom.offset[j]
            if period is None:
                ok = v == d
            else:
                ok = v >= d and (v - d) % period == 0
            if ok:
                pat.append(h)
        patterns.add(frozenset(pat))
    return patterns


def build_system(p: Polynomial, q: FactoredDenominator,
                 max_terms: int = 20) -> ResimpleSystem:
    """Atomic terms and good membership classes for the reduced fraction.

    Requires q to hold only single-variable factors, at most one per
    coordinate; with an empty q the set is finite and every coefficient of p
    must be one.
    """
    dim = p.dim
    periods: list[int | None] = [None] * dim
    for beta in q.factors:
        support = [j for j, v in enumerate(beta) if v]
        if len(support) != 1:
            raise SystemInvariantError(
                "denominator factor %r has more than one variable" % (beta,))
        j = support[0]
        if periods[j] is not None:
            raise SystemInvariantError(
                "two denominator factors on coordinate %d" % j)
        periods[j] = beta[j]
    if not q.factors:
        bad = [c for _, c in p.items() if c != 1]
        if bad:
            raise SystemInvariantError(
                "finite case needs all coefficients 1, found %r" % bad)

    monomials = p.items()
    if len(monomials) > max_terms:
        raise SystemInvariantError(
            "numerator has %d terms, above the class-enumeration cap %d"
            % (len(monomials), max_terms))
    period_tuple = tuple(periods)
    terms = tuple((coeff, AtomicResimple(exp, period_tuple))
                  for exp, coeff in monomials)

    system = ResimpleSystem(dim, period_tuple, terms, frozenset())
    patterns = achievable_patterns(system)
    good = set()
    for pat in patterns:
        total = sum(terms[h][0] for h in pat)
        if total == 1:
            good.add(pat)
        elif total != 0:
            raise SystemInvariantError(
                "membership pattern %s sums to %d, outside {0, 1}"
                % (sorted(pat), total))
    return ResimpleSystem(dim, period_tuple, terms, frozenset(good))


def achievable_patterns(system: ResimpleSystem) -> set[frozenset[int]]:
    """All membership patterns {h : sigma in S_h} realized by some sigma,
    computed coordinatewise and intersected."""
    if system.dim == 0:
        return {frozenset(range(len(system.terms)))}
    acc = None
    for j in range(system.dim):
        layer = _coordinate_patterns(system.terms, j, system.periods[j])
        if acc is None:
            acc = layer
        else:
            acc = {a & b for a in acc for b in layer}
    return acc


def class_nonempty(system: ResimpleSystem, selector) -> bool:
    """Whether some sigma lies in exactly the terms named by `selector`."""
    return frozenset(selector) in achievable_patterns(system)


def member_system(sigma, system: ResimpleSystem) -> bool:
    """True when the signed weights of the containing terms sum to one."""
    sigma = tuple(sigma)
    total = sum(mu for mu, atom in system.terms if atom.contains(sigma))
    return total == 1


def format_system(system: ResimpleSystem) -> str:
    lines = []
    period_str = ",".join("-" if p is None else str(p)
                          for p in system.periods)
    lines.append("periods (%s)" % period_str)
    for h, (mu, atom) in enumerate(system.terms):
        off = ",".join(str(v) for v in atom.offset)
        lines.append("S%d: %+d at (%s)" % (h + 1, mu, off))
    for pat in sorted(system.good_classes,
                      key=lambda s: (len(s), sorted(s))):
        names = "{%s}" % ",".join("S%d" % (h + 1) for h in sorted(pat))
        lines.append("good class %s" % names)
    return "\n".join(lines)
