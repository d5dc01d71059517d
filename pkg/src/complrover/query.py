"""Basic graph patterns, NOT EXISTS graph patterns and SELECT queries."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .model import Term, TriplePattern, sorted_triples

BGP = frozenset  # frozenset[TriplePattern]


def make_bgp(patterns: Iterable[TriplePattern] = ()) -> frozenset[TriplePattern]:
    return frozenset(patterns)


def vars_of(p: Iterable[TriplePattern]) -> set[str]:
    out: set[str] = set()
    for tp in p:
        out |= tp.variables()
    return out


def format_bgp(p: Iterable[TriplePattern]) -> str:
    return "{ " + " ".join(str(tp) for tp in sorted_triples(p)) + " }" if p else "{ }"


@dataclass(frozen=True)
class GraphPattern:
    """A positive BGP conjoined with zero or more NOT EXISTS BGPs.

    ``negatives`` keeps the order the user wrote; evaluation ignores it.
    """

    positive: frozenset[TriplePattern]
    negatives: tuple[frozenset[TriplePattern], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negatives", tuple(frozenset(n) for n in self.negatives))


@dataclass(frozen=True)
class Query:
    distinguished: frozenset[str]
    pattern: GraphPattern = field(default_factory=lambda: GraphPattern(frozenset()))

    def __post_init__(self):
        object.__setattr__(self, "distinguished", frozenset(v.lstrip("?") for v in self.distinguished))

    @property
    def is_positive(self) -> bool:
        return not self.pattern.negatives

    def __str__(self) -> str:
        head = " ".join(f"?{v}" for v in sorted(self.distinguished)) or "*"
        body = " ".join(str(tp) for tp in sorted_triples(self.pattern.positive))
        for neg in self.pattern.negatives:
            body += " FILTER NOT EXISTS " + format_bgp(neg)
        return f"SELECT {head} WHERE {{ {body} }}"


def validate_safety(q: Query) -> bool:
    return q.distinguished <= vars_of(q.pattern.positive)


def check_consistency(q: Query) -> bool:
    """Sound test that some graph gives ``q`` a non-empty answer.

    Freezes the positive part into a graph and checks that no negated BGP,
    instantiated with the freezing substitution, matches it. ``True`` means the
    frozen graph is a witness; ``False`` only means "possibly inconsistent".
    """
    from .completeness import freeze
    from .evaluator import has_match

    frozen = freeze(q.pattern.positive)
    mu0 = frozen.mapping()
    return not any(has_match(neg, frozen.graph, mu0) for neg in q.pattern.negatives)


def term_constants(q: Query) -> set[Term]:
    out: set[Term] = set()
    for p in (q.pattern.positive, *q.pattern.negatives):
        for tp in p:
            out.update(t for t in tp if not t.is_variable)
    return out
