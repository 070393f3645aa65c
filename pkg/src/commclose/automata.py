"""Complete deterministic finite automata and the closure construction.

Automata are immutable transition tables; completeness (exactly one successor
per state and letter) is validated at construction, so every automaton that
exists has passed the determinism audit.  The DFA for a resimple system is a
grid of per-coordinate counters whose finals decode the signed membership
patterns; an equivalent boolean composition over the good classes exists as a
cross-check path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .resimple import ResimpleSystem


@dataclass(frozen=True)
class Dfa:
    """Complete DFA: transitions[state][letter_index] -> state."""
    alphabet: tuple[str, ...]
    transitions: tuple[tuple[int, ...], ...]
    initial: int
    finals: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "transitions",
                           tuple(tuple(row) for row in self.transitions))
        object.__setattr__(self, "finals", frozenset(self.finals))
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a complete DFA needs at least one state")
        for row in self.transitions:
            if len(row) != len(self.alphabet):
                raise ValueError("transition row width != alphabet size")
            for q in row:
                if not 0 <= q < n:
                    raise ValueError("transition target out of range")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if not all(0 <= q < n for q in self.finals):
            raise ValueError("final state out of range")

    @property
    def n_states(self) -> int:
        return len(self.transitions)

    def step(self, state: int, letter: str) -> int:
        try:
            j = self.alphabet.index(letter)
        except ValueError:
            raise KeyError("letter %r not in alphabet %r"
                           % (letter, "".join(self.alphabet))) from None
        return self.transitions[state][j]


def accepts(dfa: Dfa, word: str) -> bool:
    state = dfa.initial
    for ch in word:
        state = dfa.step(state, ch)
    return state in dfa.finals


@dataclass(frozen=True)
class CounterAutomaton:
    """Unary counter: tail states 0..tail-1 then a cycle of length period.

    The state of a count n is min(n, tail + ((n - tail) mod period)), so the
    state determines the count exactly below the tail and its residue beyond.
    """
    letter: str
    tail: int
    period: int
    accepting: frozenset[int]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be at least 1")
        if self.tail < 0:
            raise ValueError("tail must be nonnegative")

    @property
    def n_states(self) -> int:
        return self.tail + self.period

    def to_dfa(self) -> Dfa:
        n = self.n_states
        rows = tuple((s + 1 if s < n - 1 else self.tail,)
                     for s in range(n))
        return Dfa((self.letter,), rows, 0, frozenset(self.accepting))


def counter(letter: str, tail: int, period: int, accept) -> Dfa:
    """Single-letter DFA accepting the words whose length maps to an
    accepting counter state under `accept` (a predicate on states)."""
    n = tail + period
    finals = frozenset(s for s in range(n) if accept(s))
    return CounterAutomaton(letter, tail, period, finals).to_dfa()


def shuffle_product(dfas) -> Dfa:
    """Asynchronous product of automata over pairwise disjoint alphabets.

    Each letter advances exactly the component owning it; determinism and
    completeness carry over from the components.
    """
    dfas = list(dfas)
    if not dfas:
        return Dfa((), ((),), 0, frozenset({0}))
    if len(dfas) == 1:
        return canonical(dfas[0])
    owner: dict[str, int] = {}
    for i, d in enumerate(dfas):
        for a in d.alphabet:
            if a in owner:
                raise ValueError("alphabets overlap on %r" % a)
            owner[a] = i
    alphabet = tuple(sorted(owner))
    start = tuple(d.initial for d in dfas)
    index = {start: 0}
    order = [start]
    rows = []
    pos = 0
    while pos < len(order):
        state = order[pos]
        row = []
        for a in alphabet:
            i = owner[a]
            nxt = list(state)
            nxt[i] = dfas[i].step(state[i], a)
            nxt = tuple(nxt)
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
        pos += 1
    finals = frozenset(
        index[s] for s in order
        if all(s[i] in d.finals for i, d in enumerate(dfas)))
    return Dfa(alphabet, tuple(rows), 0, finals)


def _product(d1: Dfa, d2: Dfa, combine) -> Dfa:
    if d1.alphabet != d2.alphabet:
        raise ValueError("alphabet mismatch: %r vs %r"
                         % (d1.alphabet, d2.alphabet))
    start = (d1.initial, d2.initial)
    index = {start: 0}
    order = [start]
    rows = []
    pos = 0
    while pos < len(order):
        p, q = order[pos]
        row = []
        for j in range(len(d1.alphabet)):
            nxt = (d1.transitions[p][j], d2.transitions[q][j])
            if nxt not in index:
                index[nxt] = len(order)
                order.append(nxt)
            row.append(index[nxt])
        rows.append(tuple(row))
        pos += 1
    finals = frozenset(index[s] for s in order
                       if combine(s[0] in d1.finals, s[1] in d2.finals))
    return Dfa(d1.alphabet, tuple(rows), 0, finals)


def intersect(d1: Dfa, d2: Dfa) -> Dfa:
    return _product(d1, d2, lambda a, b: a and b)


def union(d1: Dfa, d2: Dfa) -> Dfa:
    return _product(d1, d2, lambda a, b: a or b)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.transitions, d.initial,
               frozenset(range(d.n_states)) - d.finals)


def canonical(dfa: Dfa) -> Dfa:
    """Renumber breadth-first from the initial state, letters in alphabet
    order; unreachable states are dropped.  Exports rely on this numbering."""
    index = {dfa.initial: 0}
    order = [dfa.initial]
    pos = 0
    while pos < len(order):
        s = order[pos]
        for q in dfa.transitions[s]:
            if q not in index:
                index[q] = len(order)
                order.append(q)
        pos += 1
    rows = tuple(tuple(index[q] for q in dfa.transitions[s]) for s in order)
    finals = frozenset(index[s] for s in order if s in dfa.finals)
    return Dfa(dfa.alphabet, rows, 0, finals)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part."""
    dfa = canonical(dfa)
    n = dfa.n_states
    block = [1 if s in dfa.finals else 0 for s in range(n)]
    while True:
        signatures = {}
        new = [0] * n
        for s in range(n):
            sig = (block[s], tuple(block[q] for q in dfa.transitions[s]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new[s] = signatures[sig]
        if new == block:
            break
        block = new
    reps: dict[int, int] = {}
    for s in range(n):
        reps.setdefault(block[s], s)
    ids = sorted(reps)
    remap = {b: i for i, b in enumerate(ids)}
    rows = tuple(
        tuple(remap[block[q]] for q in dfa.transitions[reps[b]])
        for b in ids)
    finals = frozenset(remap[b] for b in ids if reps[b] in dfa.finals)
    return canonical(Dfa(dfa.alphabet, rows, remap[block[dfa.initial]],
                         finals))


# ---------------------------------------------------------------------------
# Closure construction from a resimple system


def _coordinate_spec(system: ResimpleSystem):
    """Per coordinate: (tail, period, has_period) for the grid counters."""
    tails = system.tails()
    spec = []
    for j in range(system.dim):
        p = system.periods[j]
        if p is None:
            spec.append((tails[j] + 1, 1, False))
        else:
            spec.append((tails[j], p, True))
    return spec


def _coordinate_satisfies(state: int, offset: int, tail: int, period: int,
                          has_period: bool) -> bool:
    if has_period:
        return state >= offset and (state - offset) % period == 0
    # point coordinate: states 0..tail-1 count exactly, the last is a sink
    return state < tail and state == offset


def build_closure_dfa(system: ResimpleSystem, alphabet) -> Dfa:
    """Grid DFA accepting the words whose letter counts the system accepts.

    One counter per coordinate (tail = maximum offset, then the shared
    period; coordinates without a period get an exact counter plus sink); a
    grid state is final when the signed weights of the atomic terms its
    decoded counts satisfy sum to one.
    """
    alphabet = tuple(alphabet)
    if len(alphabet) != system.dim:
        raise ValueError("alphabet size differs from system dimension")
    if not system.terms:
        return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset())
    spec = _coordinate_spec(system)
    sizes = [tail + period for tail, period, _ in spec]

    def advance(s, j):
        tail, period, _ = spec[j]
        return s + 1 if s < sizes[j] - 1 else tail

    states = [()]
    for j in range(system.dim):
        states = [s + (v,) for s in states for v in range(sizes[j])]
    index = {s: i for i, s in enumerate(states)}
    rows = []
    for s in states:
        row = []
        for j in range(len(alphabet)):
            nxt = list(s)
            nxt[j] = advance(s[j], j)
            row.append(index[tuple(nxt)])
        rows.append(tuple(row))

    finals = set()
    for s in states:
        total = 0
        for mu, atom in system.terms:
            if all(_coordinate_satisfies(s[j], atom.offset[j], *spec[j])
                   for j in range(system.dim)):
                total += mu
        if total == 1:
            finals.add(index[s])
    return canonical(Dfa(alphabet, tuple(rows),
                         index[(0,) * system.dim] if system.dim else 0,
                         frozenset(finals)))


def atomic_term_dfa(system: ResimpleSystem, h: int, alphabet) -> Dfa:
    """Shuffle product of per-coordinate counters for one atomic term."""
    alphabet = tuple(alphabet)
    _, atom = system.terms[h]
    parts = []
    for j, letter in enumerate(alphabet):
        d = atom.offset[j]
        p = system.periods[j]
        if p is None:
            parts.append(counter(letter, d + 1, 1, lambda s, d=d: s == d))
        else:
            parts.append(counter(letter, d, p,
                                  lambda s, d=d, p=p: s >= d
                                  and (s - d) % p == 0))
    if not parts:
        final = frozenset({0}) if atom.contains(()) else frozenset()
        return Dfa((), ((),), 0, final)
    return shuffle_product(parts)


def boolean_closure_dfa(system: ResimpleSystem, alphabet) -> Dfa:
    """Union over good classes of intersections of term automata and their
    complements; language-equal to the grid construction."""
    alphabet = tuple(alphabet)
    if not system.terms:
        return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset())
    atoms = [atomic_term_dfa(system, h, alphabet)
             for h in range(len(system.terms))]
    result = None
    for pattern in sorted(system.good_classes,
                          key=lambda s: sorted(s)):
        cls = None
        for h, a in enumerate(atoms):
            piece = a if h in pattern else complement(a)
            cls = piece if cls is None else intersect(cls, piece)
        if cls is None:
            continue
        result = cls if result is None else union(result, cls)
    if result is None:
        return Dfa(alphabet, ((0,) * len(alphabet),), 0, frozenset())
    return canonical(result)


# ---------------------------------------------------------------------------
# Word-level shuffle (oracle for the product construction)


def shuffle_words(w: str, v: str) -> set[str]:
    if not w:
        return {v}
    if not v:
        return {w}
    return {w[0] + rest for rest in shuffle_words(w[1:], v)} \
        | {v[0] + rest for rest in shuffle_words(w, v[1:])}


# ---------------------------------------------------------------------------
# Exports and counting


def export_dot(dfa: Dfa) -> str:
    d = canonical(dfa)
    lines = ["digraph dfa {", "  rankdir=LR;",
             '  __start [shape=none, label=""];']
    for s in range(d.n_states):
        shape = "doublecircle" if s in d.finals else "circle"
        lines.append("  q%d [shape=%s];" % (s, shape))
    lines.append("  __start -> q%d;" % d.initial)
    for s in range(d.n_states):
        grouped: dict[int, list[str]] = {}
        first: dict[int, int] = {}
        for j, a in enumerate(d.alphabet):
            t = d.transitions[s][j]
            grouped.setdefault(t, []).append(a)
            first.setdefault(t, j)
        for t in sorted(grouped, key=lambda t: first[t]):
            lines.append('  q%d -> q%d [label="%s"];'
                         % (s, t, ",".join(grouped[t])))
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(dfa: Dfa) -> str:
    d = canonical(dfa)
    obj = {
        "alphabet": list(d.alphabet),
        "states": d.n_states,
        "initial": d.initial,
        "finals": sorted(d.finals),
        "transitions": [
            {"from": s, "letter": a, "to": d.transitions[s][j]}
            for s in range(d.n_states)
            for j, a in enumerate(d.alphabet)
        ],
    }
    return json.dumps(obj, indent=1) + "\n"


def word_count_by_length(dfa: Dfa, max_len: int) -> list[int]:
    """Number of accepted words per length, by dynamic programming."""
    counts = [0] * (max_len + 1)
    vec = [0] * dfa.n_states
    vec[dfa.initial] = 1
    counts[0] = int(dfa.initial in dfa.finals)
    for length in range(1, max_len + 1):
        nxt = [0] * dfa.n_states
        for s, c in enumerate(vec):
            if not c:
                continue
            for t in dfa.transitions[s]:
                nxt[t] += c
        vec = nxt
        counts[length] = sum(c for s, c in enumerate(vec)
                             if s in dfa.finals)
    return counts
