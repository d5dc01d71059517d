"""Crucial statements of a query and the answer-semantics guarantees they give.

A query's positive crucial statement asks for completeness of its positive
part; its negative crucial statements ask, for each NOT EXISTS part, for
completeness of that part wherever the positive part matches.

* Entailing every negative crucial statement makes all returned answers
  certain (for a positive query this holds unconditionally).
* Entailing the positive crucial statement rules out possible answers beyond
  the returned ones. With negation this still holds: a match of the positive
  part in any valid interpretation is already in the stored graph, and the
  negated parts can only gain matches as the graph grows.

Both are sufficient conditions only. ``NO_GUARANTEE`` means no proof was
found, not that the answers are wrong.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable
from dataclasses import dataclass

from .completeness import CompletenessStatement, entailment_evidence
from .errors import UnsafeQuery
from .query import Query, validate_safety


class Label(str, enum.Enum):
    CERTAIN_AND_COMPLETE = "CERTAIN_AND_COMPLETE"
    CERTAIN_LOWER_BOUND = "CERTAIN_LOWER_BOUND"
    POSSIBLE_UPPER_BOUND = "POSSIBLE_UPPER_BOUND"
    NO_GUARANTEE = "NO_GUARANTEE"

    @classmethod
    def of(cls, certain: bool, possible: bool) -> Label:
        if certain:
            return cls.CERTAIN_AND_COMPLETE if possible else cls.CERTAIN_LOWER_BOUND
        return cls.POSSIBLE_UPPER_BOUND if possible else cls.NO_GUARANTEE


@dataclass(frozen=True)
class CrucialStatements:
    positive: CompletenessStatement
    negatives: tuple[CompletenessStatement, ...]


@dataclass(frozen=True)
class EntailmentFact:
    role: str  # "positive" or "negative"
    statement: CompletenessStatement
    entailed: bool


@dataclass(frozen=True)
class Classification:
    certain_guarantee: bool
    possible_bound_guarantee: bool
    rationale: tuple[EntailmentFact, ...] = ()

    @property
    def label(self) -> Label:
        return Label.of(self.certain_guarantee, self.possible_bound_guarantee)


def crucial_of(q: Query) -> CrucialStatements:
    if not validate_safety(q):
        raise UnsafeQuery("cannot build crucial statements for an unsafe query")
    positive = q.pattern.positive
    negatives = []
    for neg in q.pattern.negatives:
        c = CompletenessStatement(neg, positive)
        if c not in negatives:
            negatives.append(c)
    return CrucialStatements(CompletenessStatement(positive), tuple(negatives))


def classify(q: Query, cs: Iterable[CompletenessStatement]) -> Classification:
    cs = list(cs)
    crucial = crucial_of(q)
    facts = [EntailmentFact("positive", crucial.positive, entailment_evidence(cs, crucial.positive).entailed)]
    for c in crucial.negatives:
        facts.append(EntailmentFact("negative", c, entailment_evidence(cs, c).entailed))
    certain = q.is_positive or all(f.entailed for f in facts if f.role == "negative")
    return Classification(certain, facts[0].entailed, tuple(facts))
