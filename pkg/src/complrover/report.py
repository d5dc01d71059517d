"""JSON-ready report documents and their plain-text rendering.

Every list is emitted in canonical term order so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping

from .classifier import Classification
from .completeness import EntailmentEvidence
from .evaluator import AnswerSet
from .model import Kind, Term, Triple, sorted_triples
from .oracle import BoundedAnswers, Universe

NO_GUARANTEE_NOTE = (
    "guarantees are sufficient conditions only; a false guarantee means no proof "
    "was found, not that answers are missing or uncertain"
)
BOUNDED_NOTE = (
    "oracle results are bounded by the candidate pool: certain answers may be "
    "over-approximated and possible answers under-approximated"
)

_KIND_NAMES = {Kind.IRI: "iri", Kind.LITERAL: "literal", Kind.VARIABLE: "variable"}


def term_json(t: Term) -> dict:
    return {"kind": _KIND_NAMES[t.kind], "value": t.lexical}


def triple_json(t: Triple) -> list[dict]:
    return [term_json(x) for x in t]


def answers_json(ans: AnswerSet) -> list[dict]:
    return [{name: term_json(mu[name]) for name in sorted(mu)} for mu in ans.sorted()]


def graph_json(g: Iterable[Triple]) -> list[str]:
    return [str(t) for t in sorted_triples(g)]


def classification_json(c: Classification) -> dict:
    return {
        "label": c.label.value,
        "certain_guarantee": c.certain_guarantee,
        "possible_bound_guarantee": c.possible_bound_guarantee,
        "rationale": [
            {"role": f.role, "statement": str(f.statement), "entailed": f.entailed}
            for f in c.rationale
        ],
        "note": NO_GUARANTEE_NOTE,
    }


def oracle_json(b: BoundedAnswers, u: Universe, cap: int, checks: list[dict]) -> dict:
    return {
        "universe": {
            "base_triples": len(u.base),
            "candidate_triples": len(u.candidates),
            "fresh_constants": u.fresh_constants,
            "candidate_cap": cap,
        },
        "interpretation_count": b.interpretation_count,
        "certain": answers_json(b.certain),
        "possible": answers_json(b.possible),
        "checks": checks,
        "note": BOUNDED_NOTE,
    }


def evidence_json(ev: EntailmentEvidence) -> dict:
    return {
        "entailed": ev.entailed,
        "target": str(ev.target),
        "frozen_map": {name: ev.frozen.frozen_map[name].lexical for name in sorted(ev.frozen.frozen_map)},
        "frozen_graph": graph_json(ev.frozen.graph),
        "required": graph_json(ev.required),
        "transferred": graph_json(ev.transferred),
        "missing": graph_json(ev.missing),
    }


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _fmt_solution(sol: Mapping[str, dict]) -> str:
    def fmt(t: dict) -> str:
        return f"<{t['value']}>" if t["kind"] == "iri" else json.dumps(t["value"], ensure_ascii=False)

    if not sol:
        return "  (empty mapping)"
    return "  " + "  ".join(f"?{k} = {fmt(v)}" for k, v in sol.items())


def render_text(doc: Mapping) -> str:
    lines: list[str] = []
    if "entailed" in doc:
        lines.append(f"target:   {doc['target']}")
        lines.append(f"entailed: {'yes' if doc['entailed'] else 'no'}")
        lines.append("frozen graph:")
        lines += [f"  {t}" for t in doc["frozen_graph"]]
        if doc["missing"]:
            lines.append("not forced by the statements:")
            lines += [f"  {t}" for t in doc["missing"]]
    else:
        lines.append(f"query: {doc['query']}")
        lines.append(f"solutions ({len(doc['solutions'])}):")
        lines += [_fmt_solution(s) for s in doc["solutions"]]
        cls = doc.get("classification")
        if cls:
            lines.append(f"classification: {cls['label']}")
            for f in cls["rationale"]:
                verdict = "entailed" if f["entailed"] else "not entailed"
                lines.append(f"  {f['role']:<8} {f['statement']}: {verdict}")
        orc = doc.get("oracle_summary")
        if orc:
            u = orc["universe"]
            lines.append(
                f"oracle: {orc['interpretation_count']} valid interpretations over "
                f"{u['candidate_triples']} candidate triples ({u['fresh_constants']} fresh constants)"
            )
            lines.append(f"  certain ({len(orc['certain'])}):")
            lines += ["  " + _fmt_solution(s) for s in orc["certain"]]
            lines.append(f"  possible ({len(orc['possible'])}):")
            lines += ["  " + _fmt_solution(s) for s in orc["possible"]]
            for chk in orc["checks"]:
                lines.append(f"  check {chk['guarantee']}: {'ok' if chk['holds'] else 'VIOLATED'}")
    return "\n".join(lines) + "\n"
