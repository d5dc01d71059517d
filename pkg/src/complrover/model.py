"""RDF terms, triples, graphs and solution mappings.

Graphs are plain ``frozenset`` objects of :class:`Triple`; set semantics come
for free and every operation here is a pure function.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass


class Kind(enum.IntEnum):
    IRI = 0
    LITERAL = 1
    VARIABLE = 2


@dataclass(frozen=True, order=True, slots=True)
class Term:
    kind: Kind
    lexical: str

    def __post_init__(self):
        if not self.lexical:
            raise ValueError("term lexical form must be non-empty")

    @property
    def is_variable(self) -> bool:
        return self.kind is Kind.VARIABLE

    @property
    def is_iri(self) -> bool:
        return self.kind is Kind.IRI

    @property
    def is_literal(self) -> bool:
        return self.kind is Kind.LITERAL

    def __str__(self) -> str:
        if self.kind is Kind.IRI:
            return f"<{self.lexical}>"
        if self.kind is Kind.LITERAL:
            escaped = self.lexical.replace("\\", "\\\\").replace('"', '\\"')
            escaped = escaped.replace("\n", "\\n").replace("\r", "\\r")
            return f'"{escaped}"'
        return f"?{self.lexical}"


def iri(value: str) -> Term:
    return Term(Kind.IRI, value)


def lit(value: str) -> Term:
    return Term(Kind.LITERAL, value)


def var(name: str) -> Term:
    return Term(Kind.VARIABLE, name.lstrip("?"))


@dataclass(frozen=True, order=True, slots=True)
class TriplePattern:
    """A triple whose positions may hold variables.

    Subject and predicate are IRIs or variables; the object may also be a
    literal.
    """

    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if self.subject.is_literal:
            raise ValueError(f"literal in subject position: {self.subject}")
        if self.predicate.is_literal:
            raise ValueError(f"literal in predicate position: {self.predicate}")

    def __iter__(self) -> Iterator[Term]:
        yield self.subject
        yield self.predicate
        yield self.object

    def variables(self) -> set[str]:
        return {t.lexical for t in self if t.is_variable}

    @property
    def is_ground(self) -> bool:
        return not any(t.is_variable for t in self)

    def __str__(self) -> str:
        return f"{self.subject} {self.predicate} {self.object} ."


class Triple(TriplePattern):
    """A ground triple."""

    __slots__ = ()

    def __post_init__(self):
        super().__post_init__()
        if not self.is_ground:
            raise ValueError(f"triple is not ground: {TriplePattern.__str__(self)}")


Graph = frozenset  # frozenset[Triple]

EMPTY_GRAPH: frozenset[Triple] = frozenset()


def make_graph(triples: Iterable[Triple] = ()) -> frozenset[Triple]:
    return frozenset(triples)


def graph_union(g1: frozenset[Triple], g2: frozenset[Triple]) -> frozenset[Triple]:
    return g1 | g2


def is_subgraph(g1: frozenset[Triple], g2: frozenset[Triple]) -> bool:
    return g1 <= g2


def graph_terms(g: Iterable[TriplePattern]) -> set[Term]:
    return {t for triple in g for t in triple if not t.is_variable}


def sorted_triples(g: Iterable[TriplePattern]) -> list[TriplePattern]:
    return sorted(g, key=lambda t: (t.subject, t.predicate, t.object))


class SolutionMapping(Mapping):
    """Immutable, hashable map from variable names to ground terms."""

    __slots__ = ("_items", "_hash")

    def __init__(self, bindings: Mapping[str, Term] | Iterable[tuple[str, Term]] = ()):
        items = dict(bindings)
        for name, term in items.items():
            if term.is_variable:
                raise ValueError(f"variable {name} bound to variable {term}")
        self._items = items
        self._hash = hash(frozenset(items.items()))

    def __getitem__(self, name: str) -> Term:
        return self._items[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, SolutionMapping):
            return self._hash == other._hash and self._items == other._items
        if isinstance(other, Mapping):
            return self._items == dict(other)
        return NotImplemented

    def sort_key(self) -> tuple:
        return tuple(sorted(self._items.items()))

    def __lt__(self, other: SolutionMapping) -> bool:
        return self.sort_key() < other.sort_key()

    def extend(self, name: str, term: Term) -> SolutionMapping:
        return SolutionMapping({**self._items, name: term})

    def compatible(self, other: Mapping[str, Term]) -> bool:
        return all(other[k] == v for k, v in self._items.items() if k in other)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k}->{v}" for k, v in sorted(self._items.items()))
        return f"{{{inner}}}"


EMPTY_MAPPING = SolutionMapping()


def restrict(mu: Mapping[str, Term], names: Iterable[str]) -> SolutionMapping:
    keep = set(names)
    return SolutionMapping((k, v) for k, v in mu.items() if k in keep)
