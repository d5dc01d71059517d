"""Shorthands and random instance generators shared by the tests."""

from __future__ import annotations

import random

from complrover.completeness import CompletenessStatement
from complrover.model import Triple, TriplePattern, iri, lit, var
from complrover.query import GraphPattern, Query, vars_of


def ex(name: str):
    return iri(f"urn:ex:{name}")


def T(s, p, o) -> Triple:
    return Triple(*(_term(x) for x in (s, p, o)))


def P(s, p, o) -> TriplePattern:
    return TriplePattern(*(_term(x) for x in (s, p, o)))


def _term(x):
    if not isinstance(x, str):
        return x
    if x.startswith("?"):
        return var(x[1:])
    if x.startswith('"'):
        return lit(x.strip('"'))
    return ex(x)


def G(*triples) -> frozenset[Triple]:
    return frozenset(T(*t) for t in triples)


def B(*patterns) -> frozenset[TriplePattern]:
    return frozenset(P(*p) for p in patterns)


def Q(distinguished, positive, *negatives) -> Query:
    return Query(frozenset(distinguished), GraphPattern(B(*positive), tuple(B(*n) for n in negatives)))


def C(pattern, condition=()) -> CompletenessStatement:
    return CompletenessStatement(B(*pattern), B(*condition))


def sols(*bindings) -> frozenset:
    """``sols({'x': 'a'})`` -> answer solutions with IRI values."""
    from complrover.model import SolutionMapping

    return frozenset(SolutionMapping({k: _term(v) for k, v in b.items()}) for b in bindings)


# --- random instances -------------------------------------------------------


class RandomInstances:
    """Small random graphs, BGPs, queries and statement sets.

    The vocabulary is tiny on purpose so that joins, negation hits and
    entailments all happen often.
    """

    def __init__(self, rng: random.Random, constants=("a", "b", "c"), predicates=("p", "q"),
                 variables=("x", "y", "z"), literal_rate=0.1, literals=("u", "v")):
        self.rng = rng
        self.constants = [ex(c) for c in constants]
        self.predicates = [ex(p) for p in predicates]
        self.variables = [var(v) for v in variables]
        self.literal_rate = literal_rate
        self.literals = [lit(v) for v in literals]

    def triple(self) -> Triple:
        r = self.rng
        obj = r.choice(self.literals) if r.random() < self.literal_rate else r.choice(self.constants)
        return Triple(r.choice(self.constants), r.choice(self.predicates), obj)

    def graph(self, max_size=12) -> frozenset[Triple]:
        return frozenset(self.triple() for _ in range(self.rng.randint(0, max_size)))

    def pattern(self, var_rate=0.5, variables=None) -> TriplePattern:
        r = self.rng
        variables = variables or self.variables

        def pick(pool):
            return r.choice(variables) if r.random() < var_rate else r.choice(pool)

        pred = r.choice(variables) if r.random() < 0.1 else r.choice(self.predicates)
        objects = self.constants + (self.literals if self.literal_rate else [])
        return TriplePattern(pick(self.constants), pred, pick(objects))

    def bgp(self, lo=1, hi=3, **kw) -> frozenset[TriplePattern]:
        return frozenset(self.pattern(**kw) for _ in range(self.rng.randint(lo, hi)))

    def query(self, max_pos=3, max_neg=2, max_neg_size=2, negation=None) -> Query:
        r = self.rng
        pos = self.bgp(1, max_pos, var_rate=0.6)
        if negation is None:
            n_neg = r.randint(0, max_neg)
        elif negation:
            n_neg = r.randint(1, max_neg)
        else:
            n_neg = 0
        pvars = sorted(vars_of(pos))
        negs = []
        for _ in range(n_neg):
            # mostly reuse positive variables so negation actually correlates
            pool = [var(v) for v in pvars] + self.variables[-1:] if pvars else self.variables
            negs.append(self.bgp(1, max_neg_size, var_rate=0.6, variables=pool))
        w = frozenset(v for v in pvars if r.random() < 0.7)
        return Query(w, GraphPattern(pos, tuple(negs)))

    def statement(self, max_pattern=2, max_condition=1) -> CompletenessStatement:
        pattern = self.bgp(1, max_pattern, var_rate=0.6)
        condition = self.bgp(0, max_condition, var_rate=0.6) if max_condition else frozenset()
        return CompletenessStatement(pattern, condition)

    def statements(self, max_n=3, **kw) -> frozenset[CompletenessStatement]:
        return frozenset(self.statement(**kw) for _ in range(self.rng.randint(0, max_n)))
