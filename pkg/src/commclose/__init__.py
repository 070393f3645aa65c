"""commclose: automata for regular commutative closures.

Given a regular expression, decide whether the commutative closure of its
language is regular and, when it is, construct a complete deterministic
finite automaton accepting it.
"""

from .automata import (Dfa, accepts, build_closure_dfa, complement,
                       export_dot, export_json, intersect, minimize,
                       shuffle_product, shuffle_words, union)
from .pipeline import (NOT_REGULAR, REGULAR, PipelineReport, StageError,
                       VerifyReport, brute_closure, run_pipeline, verify)
from .regexes import (Regex, RegexSyntaxError, enumerate_language,
                      parikh_expression, parikh_vector, parse_regex, pretty)
from .resimple import ResimpleSystem, build_system, class_nonempty, \
    member_system
from .semilinear import (LinearSet, SemilinearSet, disambiguate,
                         intersect_linear, is_free, make_consistent,
                         make_free, member, to_semilinear)
from .series import (FactoredDenominator, NotRecognizable, Polynomial,
                     RationalFraction, Recognizable, char_series,
                     expand_truncated, poly_divide_exact, simplify_and_decide)

__version__ = "0.1.0"

__all__ = [
    "Dfa", "accepts", "build_closure_dfa", "complement", "export_dot",
    "export_json", "intersect", "minimize", "shuffle_product",
    "shuffle_words", "union",
    "NOT_REGULAR", "REGULAR", "PipelineReport", "StageError", "VerifyReport",
    "brute_closure", "run_pipeline", "verify",
    "Regex", "RegexSyntaxError", "enumerate_language", "parikh_expression",
    "parikh_vector", "parse_regex", "pretty",
    "ResimpleSystem", "build_system", "class_nonempty", "member_system",
    "LinearSet", "SemilinearSet", "disambiguate", "intersect_linear",
    "is_free", "make_consistent", "make_free", "member", "to_semilinear",
    "FactoredDenominator", "NotRecognizable", "Polynomial",
    "RationalFraction", "Recognizable", "char_series", "expand_truncated",
    "poly_divide_exact", "simplify_and_decide",
    "__version__",
]
