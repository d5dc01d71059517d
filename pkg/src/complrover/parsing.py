"""Readers and writers for N-Triples, the query language and statement files.

Query files::

    SELECT ?x WHERE {
      ?x <urn:won> <urn:oscar> .
      FILTER NOT EXISTS { ?x <urn:hasTattoo> ?t }
    }

Statement files hold any number of blocks::

    COMPLETE { ?x <urn:won> <urn:gg> } WHERE { ?x <urn:won> <urn:oscar> }

Only absolute IRIs in angle brackets, plain string literals and ``?vars``
are understood. Blank nodes and the reserved ``urn:frozen:`` and
``urn:fresh:`` namespaces are rejected everywhere.
"""

from __future__ import annotations

import re
from collections.abc import Iterable
from dataclasses import dataclass

from .completeness import RESERVED_PREFIXES, CompletenessStatement
from .errors import BlankNodeRejected, EmptyPattern, InputSyntaxError, ReservedNamespace, UnsafeQuery
from .model import Term, Triple, TriplePattern, iri, lit, sorted_triples, var
from .query import GraphPattern, Query, validate_safety, vars_of

_ESCAPES = {"t": "\t", "b": "\b", "n": "\n", "r": "\r", "f": "\f", '"': '"', "'": "'", "\\": "\\"}
_ESCAPE_RE = re.compile(r"\\(?:u([0-9A-Fa-f]{4})|U([0-9A-Fa-f]{8})|(.))")


def _unescape(body: str, line: int, source: str | None) -> str:
    def repl(m: re.Match) -> str:
        if m.group(1) or m.group(2):
            return chr(int(m.group(1) or m.group(2), 16))
        ch = m.group(3)
        if ch not in _ESCAPES:
            raise InputSyntaxError(f"unknown escape \\{ch}", line, source)
        return _ESCAPES[ch]

    return _ESCAPE_RE.sub(repl, body)


def _check_iri(value: str, line: int, source: str | None) -> Term:
    if not value or any(c in value for c in ' <>"{}|^`\\'):
        raise InputSyntaxError(f"malformed IRI <{value}>", line, source)
    if value.startswith(RESERVED_PREFIXES):
        raise ReservedNamespace(f"IRI <{value}> uses a reserved namespace", line, source)
    return iri(value)


# ---------------------------------------------------------------------------
# Tokenizer shared by the two DSLs

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<iri><[^>\n]*>)
  | (?P<literal>"(?:[^"\\\n]|\\.)*")
  | (?P<var>[?$][A-Za-z_][A-Za-z0-9_]*)
  | (?P<bnode>_:[^\s]*)
  | (?P<punct>[{}.])
  | (?P<word>[A-Za-z]+)
    """,
    re.VERBOSE,
)

_KEYWORDS = {"SELECT", "WHERE", "FILTER", "NOT", "EXISTS", "COMPLETE"}


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int


def _tokenize(text: str, source: str | None) -> list[_Token]:
    tokens = []
    line = 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise InputSyntaxError(f"unexpected character {text[pos]!r}", line, source)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line += 1
        elif kind == "bnode":
            raise BlankNodeRejected(f"blank node {value} is not supported", line, source)
        elif kind == "word":
            if value.upper() not in _KEYWORDS:
                raise InputSyntaxError(f"unexpected word {value!r}", line, source)
            tokens.append(_Token("kw", value.upper(), line))
        elif kind not in ("ws", "comment"):
            tokens.append(_Token(kind, value, line))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, source: str | None):
        self.source = source
        self.tokens = _tokenize(text, source)
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def line(self) -> int:
        tok = self.peek()
        if tok is not None:
            return tok.line
        return self.tokens[-1].line if self.tokens else 1

    def error(self, reason: str) -> InputSyntaxError:
        return InputSyntaxError(reason, self.line(), self.source)

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind and (text is None or tok.text == text)

    def expect(self, kind: str, text: str | None = None) -> _Token:
        if not self.at(kind, text):
            tok = self.peek()
            found = repr(tok.text) if tok else "end of input"
            raise self.error(f"expected {text or kind}, found {found}")
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def term(self) -> tuple[Term, int]:
        tok = self.peek()
        if tok is None:
            raise self.error("expected a term, found end of input")
        self.i += 1
        if tok.kind == "iri":
            return _check_iri(tok.text[1:-1], tok.line, self.source), tok.line
        if tok.kind == "literal":
            if len(tok.text) == 2:
                raise InputSyntaxError("empty literals are not supported", tok.line, self.source)
            return lit(_unescape(tok.text[1:-1], tok.line, self.source)), tok.line
        if tok.kind == "var":
            return var(tok.text[1:]), tok.line
        self.i -= 1
        raise self.error(f"expected a term, found {tok.text!r}")

    def triple_pattern(self) -> TriplePattern:
        (s, line), (p, _), (o, _) = self.term(), self.term(), self.term()
        if s.is_literal or p.is_literal:
            raise InputSyntaxError("literals may only appear in object position", line, self.source)
        return TriplePattern(s, p, o)

    def block(self, allow_filters: bool = False) -> tuple[frozenset[TriplePattern], list[frozenset[TriplePattern]], int]:
        """Parse ``{ tp . tp ... }``; optionally with trailing NOT EXISTS parts."""
        start = self.expect("punct", "{").line
        patterns: list[TriplePattern] = []
        negatives: list[frozenset[TriplePattern]] = []
        while not self.at("punct", "}"):
            if self.at("kw", "FILTER"):
                if not allow_filters:
                    raise self.error("FILTER is not allowed here")
                self.i += 1
                self.expect("kw", "NOT")
                self.expect("kw", "EXISTS")
                neg, _, neg_line = self.block()
                if not neg:
                    raise InputSyntaxError("empty NOT EXISTS block", neg_line, self.source)
                negatives.append(neg)
            elif negatives:
                raise self.error("triple patterns must precede all FILTER NOT EXISTS blocks")
            else:
                patterns.append(self.triple_pattern())
                if self.at("punct", "."):
                    self.i += 1
                elif not (self.at("punct", "}") or self.at("kw", "FILTER")):
                    raise self.error("expected '.' or '}' after a triple pattern")
        self.expect("punct", "}")
        return frozenset(patterns), negatives, start


def parse_query(text: str, source: str | None = None) -> Query:
    p = _Parser(text, source)
    select_line = p.expect("kw", "SELECT").line
    names = []
    while p.at("var"):
        names.append(p.expect("var").text[1:])
    p.expect("kw", "WHERE")
    positive, negatives, where_line = p.block(allow_filters=True)
    if p.peek() is not None:
        raise p.error(f"unexpected {p.peek().text!r} after the query")
    if not positive:
        raise InputSyntaxError("the WHERE block needs at least one triple pattern", where_line, source)
    q = Query(frozenset(names), GraphPattern(positive, tuple(negatives)))
    if not validate_safety(q):
        unsafe = sorted(q.distinguished - vars_of(positive))
        raise UnsafeQuery(
            f"{source + ':' if source else 'line '}{select_line}: selected variables "
            + ", ".join(f"?{v}" for v in unsafe)
            + " do not occur outside FILTER NOT EXISTS"
        )
    return q


def parse_statements(text: str, source: str | None = None) -> frozenset[CompletenessStatement]:
    p = _Parser(text, source)
    out = []
    while p.peek() is not None:
        kw_line = p.expect("kw", "COMPLETE").line
        pattern, _, _ = p.block()
        if not pattern:
            raise EmptyPattern("COMPLETE block has no triple pattern", kw_line, source)
        condition: frozenset[TriplePattern] = frozenset()
        if p.at("kw", "WHERE"):
            p.i += 1
            condition, _, _ = p.block()
        out.append(CompletenessStatement(pattern, condition))
    return frozenset(out)


def parse_statement(text: str, source: str | None = None) -> CompletenessStatement:
    stmts = parse_statements(text, source)
    if len(stmts) != 1:
        raise InputSyntaxError(f"expected exactly one COMPLETE statement, found {len(stmts)}", 1, source)
    return next(iter(stmts))


# ---------------------------------------------------------------------------
# N-Triples

_NT_TERM = r'<[^>]*>|"(?:[^"\\]|\\.)*"(?:\^\^<[^>]*>|@[A-Za-z0-9-]+)?|_:\S+'
_NT_LINE = re.compile(rf"^\s*({_NT_TERM})\s+({_NT_TERM})\s+({_NT_TERM})\s*\.\s*(?:#.*)?$")


def _nt_term(token: str, line: int, source: str | None) -> Term:
    if token.startswith("_:"):
        raise BlankNodeRejected(f"blank node {token} is not supported", line, source)
    if token.startswith("<"):
        return _check_iri(token[1:-1], line, source)
    close = token.rindex('"')
    if close != len(token) - 1:
        raise InputSyntaxError("typed and language-tagged literals are not supported", line, source)
    if close == 1:
        raise InputSyntaxError("empty literals are not supported", line, source)
    return lit(_unescape(token[1:close], line, source))


def parse_ntriples(data: bytes | str, source: str | None = None) -> frozenset[Triple]:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputSyntaxError(f"input is not UTF-8: {exc.reason}", data[: exc.start].count(b"\n") + 1, source) from None
    triples = set()
    for lineno, raw in enumerate(data.split("\n"), start=1):
        raw = raw.rstrip("\r")
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "_:" in stripped and re.search(r"(^|\s)_:", stripped):
            raise BlankNodeRejected("blank nodes are not supported", lineno, source)
        m = _NT_LINE.match(raw)
        if m is None:
            raise InputSyntaxError("expected '<s> <p> <o> .' or '<s> <p> \"literal\" .'", lineno, source)
        s, p, o = (_nt_term(tok, lineno, source) for tok in m.groups())
        if not s.is_iri or not p.is_iri:
            raise InputSyntaxError("subject and predicate must be IRIs", lineno, source)
        triples.add(Triple(s, p, o))
    return frozenset(triples)


def serialize_ntriples(g: Iterable[Triple]) -> str:
    return "".join(f"{t}\n" for t in sorted_triples(g))


def format_statement(c: CompletenessStatement) -> str:
    head = "COMPLETE { " + " ".join(str(tp) for tp in sorted_triples(c.pattern)) + " }"
    if c.condition:
        head += " WHERE { " + " ".join(str(tp) for tp in sorted_triples(c.condition)) + " }"
    return head


def serialize_statements(cs: Iterable[CompletenessStatement]) -> str:
    return "".join(format_statement(c) + "\n" for c in sorted(cs, key=CompletenessStatement.sort_key))
