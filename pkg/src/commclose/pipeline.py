"""End-to-end pipeline: regex -> Parikh image -> series -> verdict -> DFA.

Stages run in a fixed order, each timed and tagged; a failure anywhere is
re-raised as StageError naming the stage.  The brute-force closure oracle and
the verifier live here too: they compare the constructed automaton against
direct enumeration, which is the contract the whole pipeline answers to.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from . import automata, regexes, resimple, semilinear, series

REGULAR = "REGULAR"
NOT_REGULAR = "NOT_REGULAR"


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: Exception):
        super().__init__("stage %s: %s" % (stage, cause))
        self.stage = stage
        self.cause = cause


@dataclass
class PipelineReport:
    regex: str
    alphabet: tuple[str, ...]
    verdict: str | None = None
    witness: tuple[int, ...] | None = None
    semilinear_set: semilinear.SemilinearSet | None = None
    consistent_set: semilinear.SemilinearSet | None = None
    raw_fraction: series.RationalFraction | None = None
    reduced: series.Recognizable | None = None
    system: resimple.ResimpleSystem | None = None
    dfa_raw: automata.Dfa | None = None
    dfa_min: automata.Dfa | None = None
    timings: list[tuple[str, float]] = field(default_factory=list)

    def to_json_obj(self) -> dict:
        obj: dict = {
            "regex": self.regex,
            "alphabet": "".join(self.alphabet),
            "verdict": self.verdict,
        }
        if self.semilinear_set is not None:
            obj["semilinear"] = semilinear.format_semilinear(
                self.semilinear_set)
        if self.consistent_set is not None:
            obj["consistent_semisimple"] = semilinear.format_semilinear(
                self.consistent_set)
        if self.raw_fraction is not None:
            obj["series"] = series.format_fraction(
                self.raw_fraction.numerator, self.raw_fraction.denominator)
        if self.verdict == NOT_REGULAR:
            obj["witness_factor"] = list(self.witness)
        if self.reduced is not None:
            obj["reduced_series"] = series.format_fraction(
                self.reduced.numerator, self.reduced.denominator)
        if self.system is not None:
            obj["resimple"] = resimple.format_system(self.system)
        if self.dfa_raw is not None:
            obj["states_raw"] = self.dfa_raw.n_states
        if self.dfa_min is not None:
            obj["states_minimized"] = self.dfa_min.n_states
        obj["timings"] = {name: round(sec, 6) for name, sec in self.timings}
        return obj

    def to_text(self, dump_semilinear=False, dump_resimple=False) -> str:
        lines = ["regex: %s" % self.regex,
                 "alphabet: %s" % "".join(self.alphabet)]
        if dump_semilinear and self.semilinear_set is not None:
            lines.append("semilinear: %s"
                         % semilinear.format_semilinear(self.semilinear_set))
            if self.consistent_set is not None:
                lines.append("consistent: %s" % semilinear.format_semilinear(
                    self.consistent_set))
        if self.raw_fraction is not None:
            lines.append("series: %s" % series.format_fraction(
                self.raw_fraction.numerator, self.raw_fraction.denominator))
        lines.append("verdict: %s" % self.verdict)
        if self.verdict == NOT_REGULAR:
            names = series.variable_names(len(self.alphabet))
            lines.append("witness factor: %s exponents %s"
                         % (series.format_factor(self.witness, names),
                            list(self.witness)))
        if self.reduced is not None:
            lines.append("reduced: %s" % series.format_fraction(
                self.reduced.numerator, self.reduced.denominator))
        if dump_resimple and self.system is not None:
            lines.append("resimple:")
            for line in resimple.format_system(self.system).splitlines():
                lines.append("  " + line)
        if self.dfa_raw is not None:
            lines.append("automaton: %d states raw, %d minimized"
                         % (self.dfa_raw.n_states, self.dfa_min.n_states))
        total = sum(sec for _, sec in self.timings)
        lines.append("elapsed: %.3fs" % total)
        return "\n".join(lines)


def run_pipeline(regex_text: str, alphabet=None,
                 limits: "semilinear.Limits | None" = None) -> PipelineReport:
    """Decide regularity of the commutative closure and build its DFA.

    Order: Parikh image, star-height reduction, basis freeing,
    disambiguation, consistency (then re-disambiguation, which is the
    identity when the union stayed disjoint), characteristic series,
    reduction and verdict, resimple system, grid DFA, minimization.
    """
    from .dioph import Limits
    limits = limits or Limits()
    report = PipelineReport(regex_text, ())

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            value = fn()
        except Exception as e:
            raise StageError(name, e) from e
        report.timings.append((name, time.perf_counter() - t0))
        return value

    rx = stage("parse", lambda: regexes.parse_regex(regex_text, alphabet))
    report.alphabet = rx.alphabet
    k = len(rx.alphabet)

    expr = stage("parikh", lambda: regexes.parikh_expression(rx))
    sl = stage("semilinear", lambda: semilinear.to_semilinear(expr, k))
    report.semilinear_set = sl
    freed = stage("make_free", lambda: semilinear.make_free(sl))
    disjoint = stage("disambiguate",
                     lambda: semilinear.disambiguate(freed, limits))
    consistent = stage("make_consistent",
                       lambda: semilinear.make_consistent(disjoint))
    consistent = stage("redisambiguate",
                       lambda: semilinear.disambiguate(consistent, limits))
    if consistent.consistent is not True:
        consistent = stage("reconsistent",
                           lambda: semilinear.make_consistent(consistent))
    report.consistent_set = consistent

    fraction = stage("char_series", lambda: series.char_series(consistent))
    report.raw_fraction = fraction
    verdict = stage("simplify", lambda: series.simplify_and_decide(fraction))
    if isinstance(verdict, series.NotRecognizable):
        report.verdict = NOT_REGULAR
        report.witness = verdict.witness
        return report

    report.verdict = REGULAR
    report.reduced = verdict
    system = stage("resimple", lambda: resimple.build_system(
        verdict.numerator, verdict.denominator))
    report.system = system
    dfa = stage("automaton", lambda: automata.build_closure_dfa(
        system, rx.alphabet))
    report.dfa_raw = dfa
    report.dfa_min = stage("minimize", lambda: automata.minimize(dfa))
    return report


def brute_closure(regex_text: str, max_len: int, alphabet=None,
                  cap: int = 10 ** 6) -> set[str]:
    """All words up to max_len whose letter counts match some language word.

    The commutative image preserves length, so enumerating language words to
    the same bound is complete.
    """
    rx = regexes.parse_regex(regex_text, alphabet)
    language = regexes.enumerate_language(rx, max_len, cap)
    images = {regexes.parikh_vector(w, rx.alphabet) for w in language}
    out = set()
    count = 0
    for length in range(max_len + 1):
        for tup in itertools.product(rx.alphabet, repeat=length):
            word = "".join(tup)
            if regexes.parikh_vector(word, rx.alphabet) in images:
                out.add(word)
                count += 1
                if count > cap:
                    raise regexes.WordLimitExceeded(
                        "closure enumeration exceeded %d words" % cap)
    return out


@dataclass
class VerifyReport:
    regex: str
    max_len: int
    checked: int
    counterexample: str | None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_text(self) -> str:
        if self.ok:
            return "verify %s: pass (%d words up to length %d)" \
                % (self.regex, self.checked, self.max_len)
        return "verify %s: FAIL at %r" % (self.regex, self.counterexample)


def verify(regex_text: str, max_len: int, alphabet=None,
           report: PipelineReport | None = None) -> VerifyReport:
    """Compare the constructed DFA with the brute-force closure oracle."""
    if report is None:
        report = run_pipeline(regex_text, alphabet)
    if report.verdict != REGULAR:
        raise ValueError("verify requires a REGULAR verdict, got %s"
                         % report.verdict)
    oracle = brute_closure(regex_text, max_len, alphabet)
    dfa = report.dfa_min
    checked = 0
    counterexample = None
    for length in range(max_len + 1):
        for tup in itertools.product(report.alphabet, repeat=length):
            word = "".join(tup)
            checked += 1
            if automata.accepts(dfa, word) != (word in oracle):
                counterexample = word
                return VerifyReport(regex_text, max_len, checked,
                                    counterexample)
    return VerifyReport(regex_text, max_len, checked, None)
