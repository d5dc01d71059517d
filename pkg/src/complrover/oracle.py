"""Brute-force reference semantics over a finite universe.

Nothing here is clever on purpose. The oracle enumerates interpretations as
subsets of a candidate pool, evaluates queries by trying every function from
variables into constants, and looks for entailment counterexamples by
instantiating the target statement in every possible way. It is the ground
truth the property and acceptance tests compare the real code paths against.

Results are bounded: certain answers computed here over-approximate the true
certain answers and possible answers under-approximate the true ones.
"""

from __future__ import annotations

import itertools
import os
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass

import numpy as np

from .completeness import (
    FRESH_PREFIX,
    CompletenessStatement,
    satisfies_pair,
    satisfies_pair_set,
    statement_constants,
)
from .errors import UniverseTooLarge, UnsafeQuery
from .evaluator import AnswerSet, eval_query
from .model import SolutionMapping, Term, Triple, TriplePattern, graph_terms, iri, restrict, sorted_triples
from .query import Query, term_constants, validate_safety, vars_of

DEFAULT_CANDIDATE_CAP = 20
DEFAULT_FRESH_CONSTANTS = 1
SEED_ENV = "COMPLROVER_SEED"


def fresh_constant(i: int) -> Term:
    return iri(f"{FRESH_PREFIX}{i}")


def _work_order(items: list, seed: int | None):
    """Shuffle work order when a seed is configured. Results never depend on it."""
    if seed is None:
        raw = os.environ.get(SEED_ENV)
        seed = int(raw) if raw not in (None, "") else None
    if seed is not None:
        items = list(items)
        random.Random(seed).shuffle(items)
    return items


def _unifies(tp: TriplePattern, triple: Triple) -> bool:
    seen: dict[str, Term] = {}
    for pat, val in zip(tp, triple):
        if pat.is_variable:
            if seen.setdefault(pat.lexical, val) != val:
                return False
        elif pat != val:
            return False
    return True


@dataclass(frozen=True)
class Universe:
    base: frozenset[Triple]
    candidates: tuple[Triple, ...]
    fresh_constants: int = DEFAULT_FRESH_CONSTANTS

    def __post_init__(self):
        cands = tuple(sorted_triples(set(self.candidates) - self.base))
        object.__setattr__(self, "candidates", cands)

    @classmethod
    def build(
        cls,
        g: frozenset[Triple],
        cs: Iterable[CompletenessStatement],
        q: Query | None = None,
        fresh_constants: int = DEFAULT_FRESH_CONSTANTS,
        relevant_only: bool = True,
    ) -> Universe:
        """Pool every triple over the known constants plus fresh IRIs.

        Subjects and predicates are restricted to IRIs. With ``relevant_only``
        the pool keeps only triples that match some triple pattern of the query
        or of a statement; other triples can change neither answers nor
        validity, so dropping them leaves every bounded result unchanged.
        """
        cs = list(cs)
        consts = graph_terms(g) | statement_constants(cs)
        patterns: list[TriplePattern] = [tp for c in cs for tp in c.pattern | c.condition]
        if q is not None:
            consts |= term_constants(q)
            patterns += [tp for p in (q.pattern.positive, *q.pattern.negatives) for tp in p]
        consts |= {fresh_constant(i) for i in range(fresh_constants)}
        iris = sorted(t for t in consts if t.is_iri)
        objects = sorted(consts)
        pool = []
        for s, p, o in itertools.product(iris, iris, objects):
            t = Triple(s, p, o)
            if t in g:
                continue
            if relevant_only and not any(_unifies(tp, t) for tp in patterns):
                continue
            pool.append(t)
        return cls(g, tuple(pool), fresh_constants)

    def sample(self, size: int, rng: random.Random) -> Universe:
        if len(self.candidates) <= size:
            return self
        return Universe(self.base, tuple(rng.sample(self.candidates, size)), self.fresh_constants)


@dataclass(frozen=True)
class BoundedAnswers:
    certain: AnswerSet
    possible: AnswerSet
    interpretation_count: int
    candidate_count: int


def _check_universe(g: frozenset[Triple], u: Universe, cap: int) -> None:
    if u.base != g:
        raise ValueError("universe was built for a different base graph")
    if len(u.candidates) > cap:
        raise UniverseTooLarge(
            f"candidate pool has {len(u.candidates)} triples, cap is {cap} "
            f"(2^{len(u.candidates)} interpretations)"
        )


def valid_interpretations(
    g: frozenset[Triple],
    cs: Iterable[CompletenessStatement],
    u: Universe,
    cap: int = DEFAULT_CANDIDATE_CAP,
    seed: int | None = None,
) -> Iterator[frozenset[Triple]]:
    _check_universe(g, u, cap)
    cs = list(cs)
    items = _work_order(list(u.candidates), seed)
    # Include/exclude each candidate in turn. Once (g, g2) violates a
    # statement every superset of g2 does too, so that branch is cut.
    stack: list[tuple[int, frozenset[Triple]]] = [(0, g)]
    while stack:
        i, g2 = stack.pop()
        if i == len(items):
            yield g2
            continue
        stack.append((i + 1, g2))
        bigger = g2 | {items[i]}
        if satisfies_pair_set(g, bigger, cs):
            stack.append((i + 1, bigger))


def bounded_answers_by_enumeration(
    q: Query,
    g: frozenset[Triple],
    cs: Iterable[CompletenessStatement],
    u: Universe,
    cap: int = DEFAULT_CANDIDATE_CAP,
    seed: int | None = None,
) -> BoundedAnswers:
    """Evaluate ``q`` on every valid interpretation, one graph at a time."""
    if not validate_safety(q):
        raise UnsafeQuery("bounded answers need a safe query")
    certain: frozenset[SolutionMapping] | None = None
    possible: set[SolutionMapping] = set()
    count = 0
    for g2 in valid_interpretations(g, cs, u, cap=cap, seed=seed):
        ans = eval_query(q, g2).solutions
        certain = ans if certain is None else certain & ans
        possible |= ans
        count += 1
    dom = q.distinguished
    return BoundedAnswers(AnswerSet(dom, certain or frozenset()), AnswerSet(dom, frozenset(possible)), count, len(u.candidates))


_CHUNK = 1 << 16


def bounded_answers(
    q: Query,
    g: frozenset[Triple],
    cs: Iterable[CompletenessStatement],
    u: Universe,
    cap: int = DEFAULT_CANDIDATE_CAP,
    seed: int | None = None,
) -> BoundedAnswers:
    """Certain and possible answers over all valid interpretations in ``u``.

    Interpretations are the subsets of the candidate pool, encoded as
    bitmasks. Every match that could occur in some interpretation is a match
    over the whole universe, so all matches are enumerated once (naively)
    and recorded with the mask of candidate triples they need. An
    interpretation then violates a statement iff it contains the mask of a
    violating match, and yields an answer iff it contains a positive match
    but none of that match's negated matches. Gives the same result as
    :func:`bounded_answers_by_enumeration`, which the tests check.
    """
    if not validate_safety(q):
        raise UnsafeQuery("bounded answers need a safe query")
    _check_universe(g, u, cap)
    cs = list(cs)
    items = _work_order(list(u.candidates), seed)
    bit = {tuple(t): 1 << i for i, t in enumerate(items)}
    base = {tuple(t) for t in g}
    facts = base | set(bit)
    terms = sorted({x for f in facts for x in f})

    def need(triples) -> int:
        m = 0
        for t in triples:
            m |= bit.get(t, 0)
        return m

    violations: set[int] = set()
    for c in cs:
        body = list(c.pattern | c.condition)
        for nu in _naive_matches(body, facts, terms, {}):
            if any(_ground(tp, nu) not in base for tp in c.pattern):
                violations.add(need(_ground(tp, nu) for tp in body))

    rows: dict[SolutionMapping, list[tuple[int, list[int]]]] = {}
    positive = list(q.pattern.positive)
    for mu in _naive_matches(positive, facts, terms, {}):
        blockers = [
            need(_ground(tp, nu) for tp in neg)
            for neg in q.pattern.negatives
            for nu in _naive_matches(list(neg), facts, terms, mu)
        ]
        if 0 in blockers:
            continue  # blocked already in the base graph
        rows.setdefault(restrict(mu, q.distinguished), []).append((need(_ground(tp, mu) for tp in positive), blockers))

    n = len(items)
    count = 0
    seen_everywhere = {key: True for key in rows}
    seen_somewhere = {key: False for key in rows}
    for lo in range(0, 1 << n, _CHUNK):
        subsets = np.arange(lo, min(lo + _CHUNK, 1 << n), dtype=np.int64)
        valid = np.ones(len(subsets), dtype=bool)
        for v in violations:
            valid &= (subsets & v) != v
        subsets = subsets[valid]
        count += len(subsets)
        if not len(subsets):
            continue
        for key, matches in rows.items():
            present = np.zeros(len(subsets), dtype=bool)
            for pos_mask, blockers in matches:
                hit = (subsets & pos_mask) == pos_mask
                for b in blockers:
                    hit &= (subsets & b) != b
                present |= hit
            seen_everywhere[key] = seen_everywhere[key] and bool(present.all())
            seen_somewhere[key] = seen_somewhere[key] or bool(present.any())
    dom = q.distinguished
    certain = frozenset(k for k, v in seen_everywhere.items() if v) if count else frozenset()
    possible = frozenset(k for k, v in seen_somewhere.items() if v)
    return BoundedAnswers(AnswerSet(dom, certain), AnswerSet(dom, possible), count, n)


def _naive_matches(patterns: list[TriplePattern], facts: set[tuple], terms: list[Term], fixed: dict[str, Term]) -> Iterator[dict[str, Term]]:
    free = sorted(vars_of(patterns) - set(fixed))
    for values in itertools.product(terms, repeat=len(free)):
        mu = {**fixed, **dict(zip(free, values))}
        if all(_ground(tp, mu) in facts for tp in patterns):
            yield mu


def naive_eval_query(q: Query, g: frozenset[Triple]) -> AnswerSet:
    """Evaluate by enumerating every function from variables to graph terms.

    Shares no code with the join in :mod:`complrover.evaluator`.
    """
    terms = sorted(graph_terms(g))
    facts = {tuple(t) for t in g}
    pos = list(q.pattern.positive)
    pvars = sorted(vars_of(pos))
    out = set()
    for values in itertools.product(terms, repeat=len(pvars)):
        mu = dict(zip(pvars, values))
        if not all(_ground(tp, mu) in facts for tp in pos):
            continue
        if any(_naive_exists(neg, mu, terms, facts) for neg in q.pattern.negatives):
            continue
        out.add(restrict(mu, q.distinguished))
    return AnswerSet(q.distinguished, frozenset(out))


def _ground(tp: TriplePattern, mu: dict[str, Term]):
    return tuple(mu[t.lexical] if t.is_variable else t for t in tp)


def _naive_exists(neg: Iterable[TriplePattern], mu: dict[str, Term], terms: list[Term], facts: set[tuple]) -> bool:
    neg = list(neg)
    free = sorted(vars_of(neg) - set(mu))
    for values in itertools.product(terms, repeat=len(free)):
        nu = {**mu, **dict(zip(free, values))}
        if all(_ground(tp, nu) in facts for tp in neg):
            return True
    return False


def find_entailment_counterexample(
    cs: Iterable[CompletenessStatement],
    c: CompletenessStatement,
    fresh_constants: int = DEFAULT_FRESH_CONSTANTS,
) -> tuple[frozenset[Triple], frozenset[Triple]] | None:
    """Search for a pair satisfying ``cs`` but violating ``c``.

    A violation of ``c`` is witnessed by one instantiation of its pattern and
    condition, so the upper graph is taken to be such an instance and every
    subgraph of it is tried as the lower graph, smallest first. Fresh
    constants are tried before known ones.
    """
    cs = list(cs)
    body = c.pattern | c.condition
    names = sorted(vars_of(body))
    known = sorted(statement_constants(cs) | statement_constants([c]))
    domain = [fresh_constant(i) for i in range(fresh_constants)] + known
    for values in itertools.product(domain, repeat=len(names)):
        mu = dict(zip(names, values))
        try:
            upper = frozenset(Triple(*_ground(tp, mu)) for tp in body)
        except ValueError:
            continue  # a literal landed in subject or predicate position
        ordered = sorted_triples(upper)
        for size in range(len(ordered) + 1):
            for lower in itertools.combinations(ordered, size):
                lower = frozenset(lower)
                if satisfies_pair_set(lower, upper, cs) and not satisfies_pair(lower, upper, c):
                    return lower, upper
    return None
