import random

import pytest

from complrover.errors import BlankNodeRejected, EmptyPattern, InputSyntaxError, ReservedNamespace, UnsafeQuery
from complrover.model import Triple, iri, lit
from complrover.parsing import (
    parse_ntriples, parse_query, parse_statement, parse_statements, serialize_ntriples, serialize_statements,
)
from helpers import C, RandomInstances


def test_ntriples_basic():
    assert parse_ntriples(b"") == frozenset()
    g = parse_ntriples(b"<urn:a> <urn:won> <urn:oscar> .\n")
    assert g == {Triple(iri("urn:a"), iri("urn:won"), iri("urn:oscar"))}
    g = parse_ntriples('# c\n\n<urn:a> <urn:name> "Al \\"A\\" \\u00e9" . # trailing\n'.encode())
    assert next(iter(g)).object == lit('Al "A" é')


@pytest.mark.parametrize("text, exc, line", [
    (b"_:b <urn:p> <urn:o> .", BlankNodeRejected, 1),
    (b"<urn:a> <urn:p> <urn:o> .\n<urn:s> <urn:p> _:x .", BlankNodeRejected, 2),
    (b"<urn:frozen:x> <urn:p> <urn:o> .", ReservedNamespace, 1),
    (b"\n\n<urn:a> <urn:p> <urn:fresh:0> .", ReservedNamespace, 3),
    (b"<urn:a> <urn:p> <urn:o>", InputSyntaxError, 1),
    (b'"lit" <urn:p> <urn:o> .', InputSyntaxError, 1),
    (b'<urn:a> <urn:p> "x"^^<urn:int> .', InputSyntaxError, 1),
    (b'<urn:a> <urn:p> "x"@en .', InputSyntaxError, 1),
    (b"<urn:a> <urn:p> <urn:o> .\n\xff", InputSyntaxError, 2),
])
def test_ntriples_errors_carry_line(text, exc, line):
    with pytest.raises(exc) as info:
        parse_ntriples(text, "g.nt")
    assert info.value.line == line
    assert str(info.value).startswith(f"g.nt:{line}: ")


def test_ntriples_round_trip_random():
    gen = RandomInstances(random.Random(3), literal_rate=0.3)
    for _ in range(50):
        g = gen.graph(10)
        assert parse_ntriples(serialize_ntriples(g).encode()) == g
    odd = frozenset({Triple(iri("urn:a"), iri("urn:p"), lit('tab\there "q" back\\slash\nnl sep'))})
    assert parse_ntriples(serialize_ntriples(odd).encode()) == odd


def test_parse_query():
    q = parse_query("SELECT ?x WHERE { ?x <urn:won> <urn:oscar> }")
    assert q.distinguished == {"x"} and q.is_positive
    q = parse_query(
        "SELECT ?x WHERE { ?x <urn:won> <urn:oscar> FILTER NOT EXISTS { ?x <urn:hasTattoo> ?t } }"
    )
    assert len(q.pattern.negatives) == 1
    assert q.pattern.negatives[0] == frozenset(parse_query("SELECT WHERE { ?x <urn:hasTattoo> ?t }").pattern.positive)
    with pytest.raises(UnsafeQuery):
        parse_query("SELECT ?t WHERE { ?x <urn:won> <urn:oscar> }")


def test_parse_query_multiple_negatives_and_keywords_case():
    q = parse_query("""
        select ?x ?y where {
          ?x <urn:p> ?y .
          ?y <urn:q> "lit" .
          filter not exists { ?x <urn:r> ?z }
          FILTER NOT EXISTS { ?y <urn:r> ?x . }
        }""")
    assert q.distinguished == {"x", "y"}
    assert len(q.pattern.positive) == 2 and len(q.pattern.negatives) == 2


@pytest.mark.parametrize("text, line", [
    ("SELECT ?x WHERE { ?x <urn:p> }", 1),
    ("SELECT ?x WHERE {\n ?x <urn:p> ?y FILTER NOT EXISTS { ?x <urn:q> ?y } ?x <urn:r> ?y }", 2),
    ("SELECT ?x WHERE { ?x <urn:p> ?y\n ?y <urn:p> ?z }", 2),
    ("SELECT ?x WHERE { }", 1),
    ("SELECT ?x WHERE { ?x <urn:p> ?y } extra", 1),
    ("SELECT ?x WHERE {\n\n ?x <urn:p> _:b }", 3),
    ("SELECT ?x WHERE { ?x <urn:frozen:p> ?y }", 1),
    ('SELECT ?x WHERE { "a" <urn:p> ?x }', 1),
    ("SELECT ?x WHERE { ?x <urn:p> ?y FILTER NOT EXISTS { } }", 1),
])
def test_parse_query_errors(text, line):
    with pytest.raises(InputSyntaxError) as info:
        parse_query(text)
    assert info.value.line == line


def test_parse_statements():
    cs = parse_statements("COMPLETE { ?x <urn:ex:won> <urn:ex:oscar> }")
    assert cs == {C([("?x", "won", "oscar")])}
    c = parse_statement("COMPLETE { ?x <urn:won> <urn:gg> } WHERE { ?x <urn:won> <urn:oscar> }")
    assert len(c.condition) == 1
    assert parse_statements("") == frozenset()
    assert parse_statements("# nothing\n") == frozenset()


def test_parse_statements_errors():
    with pytest.raises(EmptyPattern) as info:
        parse_statements("COMPLETE { ?x <urn:p> ?y }\nCOMPLETE { }")
    assert info.value.line == 2
    with pytest.raises(InputSyntaxError):
        parse_statements("COMPLETE { ?x <urn:p> ?y FILTER NOT EXISTS { ?x <urn:q> ?y } }")
    with pytest.raises(InputSyntaxError):
        parse_statements("WHERE { ?x <urn:p> ?y }")
    with pytest.raises(InputSyntaxError):
        parse_statement("COMPLETE { ?x <urn:p> ?y } COMPLETE { ?x <urn:q> ?y }")


def test_statement_round_trip():
    gen = RandomInstances(random.Random(5))
    for _ in range(30):
        cs = gen.statements(max_n=4)
        # the helper vocabulary is urn:ex:..., which the parser accepts
        assert parse_statements(serialize_statements(cs)) == cs
