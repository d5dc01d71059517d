"""Certain and possible answers for SPARQL with NOT EXISTS under completeness statements."""

from .classifier import Classification, CrucialStatements, Label, classify, crucial_of
from .completeness import (
    CompletenessStatement,
    FrozenGraph,
    construct_query_of,
    entails,
    entails_all,
    freeze,
    satisfies_pair,
    satisfies_pair_set,
    transfer,
)
from .errors import (
    BlankNodeRejected,
    ComplroverError,
    EmptyPattern,
    IllFormedConstruct,
    InputSyntaxError,
    NotAnInterpretation,
    ReservedNamespace,
    UniverseTooLarge,
    UnsafeQuery,
)
from .evaluator import AnswerSet, apply_mapping, eval_bgp, eval_construct, eval_pattern, eval_query
from .model import SolutionMapping, Term, Triple, TriplePattern, graph_union, iri, is_subgraph, lit, restrict, var
from .oracle import BoundedAnswers, Universe, bounded_answers, find_entailment_counterexample, valid_interpretations
from .parsing import parse_ntriples, parse_query, parse_statements, serialize_ntriples
from .query import GraphPattern, Query, check_consistency, validate_safety, vars_of

__version__ = "0.1.0"
