"""Completeness statements, their satisfaction, and entailment between them.

A statement ``Compl(P1 | P2)`` says the stored graph holds every instance of
``P1`` whose match extends to ``P2`` in the real-world graph. Satisfaction is
checked by evaluating the associated CONSTRUCT query over the upper graph.

Entailment is decided by the classic canonical-database argument: freeze the
statement's pattern and condition into a prototypical graph, apply the
transfer operator of the premise set once, and check the CONSTRUCT output is
contained in what the premises force the lower graph to hold.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .errors import NotAnInterpretation
from .evaluator import apply_mapping, eval_construct, iter_matches
from .model import Term, Triple, TriplePattern, iri, SolutionMapping, sorted_triples
from .query import GraphPattern, format_bgp

FROZEN_PREFIX = "urn:frozen:"
FRESH_PREFIX = "urn:fresh:"
RESERVED_PREFIXES = (FROZEN_PREFIX, FRESH_PREFIX)


@dataclass(frozen=True)
class CompletenessStatement:
    pattern: frozenset[TriplePattern]
    condition: frozenset[TriplePattern] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pattern", frozenset(self.pattern))
        object.__setattr__(self, "condition", frozenset(self.condition))
        if not self.pattern:
            raise ValueError("a completeness statement needs a non-empty pattern")

    def sort_key(self) -> tuple:
        return (sorted_triples(self.pattern), sorted_triples(self.condition))

    def __lt__(self, other: CompletenessStatement) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        cond = format_bgp(self.condition) if self.condition else "true"
        return f"Compl({format_bgp(self.pattern)} | {cond})"


StatementSet = frozenset  # frozenset[CompletenessStatement]


def construct_query_of(c: CompletenessStatement) -> tuple[frozenset[TriplePattern], GraphPattern]:
    return c.pattern, GraphPattern(c.pattern | c.condition)


def _check_interpretation(g: frozenset[Triple], g_prime: frozenset[Triple]) -> None:
    if not g <= g_prime:
        extra = sorted_triples(g - g_prime)[0]
        raise NotAnInterpretation(f"lower graph is not contained in the upper graph, e.g. {extra}")


def _holds(g: frozenset[Triple], g_prime: frozenset[Triple], c: CompletenessStatement) -> bool:
    # Same as eval_construct(Q_C, g_prime) <= g, stopping at the first miss.
    template, where = construct_query_of(c)
    for mu in iter_matches(where.positive, g_prime):
        if not apply_mapping(mu, template) <= g:
            return False
    return True


def satisfies_pair(g: frozenset[Triple], g_prime: frozenset[Triple], c: CompletenessStatement) -> bool:
    _check_interpretation(g, g_prime)
    return _holds(g, g_prime, c)


def satisfies_pair_set(g: frozenset[Triple], g_prime: frozenset[Triple], cs: Iterable[CompletenessStatement]) -> bool:
    _check_interpretation(g, g_prime)
    return all(_holds(g, g_prime, c) for c in cs)


@dataclass(frozen=True)
class FrozenGraph:
    graph: frozenset[Triple]
    frozen_map: dict[str, Term]

    def mapping(self) -> SolutionMapping:
        return SolutionMapping(self.frozen_map)


def freeze(p: Iterable[TriplePattern]) -> FrozenGraph:
    """Replace each variable ``v`` by the reserved IRI ``urn:frozen:v``."""
    p = list(p)
    names = sorted({v for tp in p for v in tp.variables()})
    fmap = {v: iri(FROZEN_PREFIX + v) for v in names}
    graph = frozenset(
        Triple(*(fmap[t.lexical] if t.is_variable else t for t in tp)) for tp in p
    )
    return FrozenGraph(graph, fmap)


def transfer(cs: Iterable[CompletenessStatement], g: frozenset[Triple]) -> frozenset[Triple]:
    out: set[Triple] = set()
    for c in cs:
        out |= eval_construct(*construct_query_of(c), g)
    return frozenset(out)


@dataclass(frozen=True)
class EntailmentEvidence:
    """Everything the frozen test looked at, kept for reports."""

    target: CompletenessStatement
    entailed: bool
    frozen: FrozenGraph
    transferred: frozenset[Triple]
    required: frozenset[Triple]

    @property
    def missing(self) -> frozenset[Triple]:
        return self.required - self.transferred


def entailment_evidence(cs: Iterable[CompletenessStatement], c: CompletenessStatement) -> EntailmentEvidence:
    frozen = freeze(c.pattern | c.condition)
    transferred = transfer(cs, frozen.graph)
    required = eval_construct(*construct_query_of(c), frozen.graph)
    return EntailmentEvidence(c, required <= transferred, frozen, transferred, required)


def entails(cs: Iterable[CompletenessStatement], c: CompletenessStatement) -> bool:
    return entailment_evidence(cs, c).entailed


def entails_all(cs: Iterable[CompletenessStatement], targets: Iterable[CompletenessStatement]) -> bool:
    cs = list(cs)
    return all(entails(cs, c) for c in targets)


def statement_constants(cs: Iterable[CompletenessStatement]) -> set[Term]:
    out: set[Term] = set()
    for c in cs:
        for tp in c.pattern | c.condition:
            out.update(t for t in tp if not t.is_variable)
    return out
