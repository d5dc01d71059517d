"""Evaluation of BGPs, NOT EXISTS patterns, SELECT and CONSTRUCT queries.

Matching is a backtracking join that always extends the current mapping with
the pattern having the most already-bound positions. Negated BGPs are checked
per solution after the positive part, exactly as the set-builder definition
reads; no pushdown.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass

from .errors import IllFormedConstruct, UnsafeQuery
from .model import EMPTY_MAPPING, SolutionMapping, Term, Triple, TriplePattern, restrict
from .query import GraphPattern, Query, validate_safety, vars_of


@dataclass(frozen=True)
class AnswerSet:
    domain: frozenset[str]
    solutions: frozenset[SolutionMapping]

    def __post_init__(self):
        for mu in self.solutions:
            if not set(mu) <= self.domain:
                raise ValueError(f"solution {mu!r} binds variables outside {sorted(self.domain)}")

    def __len__(self) -> int:
        return len(self.solutions)

    def __iter__(self) -> Iterator[SolutionMapping]:
        return iter(self.sorted())

    def __contains__(self, mu) -> bool:
        return SolutionMapping(mu) in self.solutions

    def sorted(self) -> list[SolutionMapping]:
        return sorted(self.solutions, key=SolutionMapping.sort_key)


def _resolve(term: Term, mu: Mapping[str, Term]) -> Term:
    if term.is_variable:
        return mu.get(term.lexical, term)
    return term


def substitute(tp: TriplePattern, mu: Mapping[str, Term]) -> TriplePattern:
    s, p, o = (_resolve(t, mu) for t in tp)
    if s.is_variable or p.is_variable or o.is_variable:
        return TriplePattern(s, p, o)
    return Triple(s, p, o)


def apply_mapping(mu: Mapping[str, Term], p: Iterable[TriplePattern]) -> frozenset[TriplePattern]:
    return frozenset(substitute(tp, mu) for tp in p)


_Slots = tuple  # ((var name or None, constant or None) for s, p, o)


def _compile(tp: TriplePattern) -> _Slots:
    return tuple((t.lexical, None) if t.is_variable else (None, t) for t in tp)


def _match_one(slots: _Slots, triple: Triple, mu: dict[str, Term]) -> dict[str, Term] | None:
    bound = mu
    for (name, const), val in zip(slots, (triple.subject, triple.predicate, triple.object)):
        if name is None:
            if const != val:
                return None
            continue
        cur = bound.get(name)
        if cur is None:
            if bound is mu:
                bound = dict(mu)
            bound[name] = val
        elif cur != val:
            return None
    return bound


def _boundness(slots: _Slots, mu: Mapping[str, Term]) -> int:
    return sum(1 for name, _ in slots if name is None or name in mu)


def _solve(patterns: list[_Slots], g: frozenset[Triple], mu: dict[str, Term]) -> Iterator[dict[str, Term]]:
    if not patterns:
        yield mu
        return
    best = max(range(len(patterns)), key=lambda i: _boundness(patterns[i], mu))
    slots = patterns[best]
    rest = patterns[:best] + patterns[best + 1:]
    for triple in g:
        ext = _match_one(slots, triple, mu)
        if ext is not None:
            yield from _solve(rest, g, ext)


def iter_matches(p: Iterable[TriplePattern], g: frozenset[Triple], mu: Mapping[str, Term] = EMPTY_MAPPING) -> Iterator[dict[str, Term]]:
    """Yield every extension of ``mu`` that maps all of ``p`` into ``g``."""
    ordered = sorted(p, key=lambda t: (t.subject, t.predicate, t.object))
    return _solve([_compile(tp) for tp in ordered], g, dict(mu))


def has_match(p: Iterable[TriplePattern], g: frozenset[Triple], mu: Mapping[str, Term] = EMPTY_MAPPING) -> bool:
    """Whether ``mu(p)`` has a match in ``g``.

    Seeding the join with ``mu`` is equivalent to substituting first, and also
    copes with a literal bound by ``mu`` landing in subject position (no
    match, rather than an ill-formed pattern).
    """
    return next(iter_matches(p, g, mu), None) is not None


def eval_bgp(p: Iterable[TriplePattern], g: frozenset[Triple]) -> AnswerSet:
    p = frozenset(p)
    return AnswerSet(frozenset(vars_of(p)), frozenset(SolutionMapping(m) for m in iter_matches(p, g)))


def eval_pattern(p: GraphPattern, g: frozenset[Triple]) -> AnswerSet:
    positive = eval_bgp(p.positive, g)
    kept = frozenset(
        mu for mu in positive.solutions
        if not any(has_match(neg, g, mu) for neg in p.negatives)
    )
    return AnswerSet(positive.domain, kept)


def eval_query(q: Query, g: frozenset[Triple]) -> AnswerSet:
    if not validate_safety(q):
        raise UnsafeQuery(
            f"selected variables {sorted(q.distinguished - vars_of(q.pattern.positive))} "
            "do not occur in the positive part"
        )
    sols = eval_pattern(q.pattern, g).solutions
    return AnswerSet(q.distinguished, frozenset(restrict(mu, q.distinguished) for mu in sols))


def eval_construct(template: Iterable[TriplePattern], where: GraphPattern, g: frozenset[Triple]) -> frozenset[Triple]:
    template = frozenset(template)
    missing = vars_of(template) - vars_of(where.positive)
    if missing:
        raise IllFormedConstruct(f"template variables {sorted(missing)} are not bound by the WHERE part")
    out: set[Triple] = set()
    for mu in eval_pattern(where, g).solutions:
        out.update(apply_mapping(mu, template))
    return frozenset(out)
