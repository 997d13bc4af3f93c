"""Context-aware highlighting tests, including the pre-registered golden
annotations for the two deliberately erroneous corpus domains."""

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mypddl.highlight import (
    Scope,
    emit_tokens_json,
    invalid_regions,
    render_html,
    tokenize,
)
from mypddl.sexpr import Span

from conftest import corpus_text, golden_json


def scopes_at(text, needle, occurrence=0):
    """Scopes of the token(s) covering the needle's span."""
    data = text.encode("utf-8")
    start = -1
    for _ in range(occurrence + 1):
        start = data.find(needle.encode("utf-8"), start + 1)
    assert start != -1, needle
    span = Span(start, start + len(needle.encode("utf-8")))
    return {t.scope for t in tokenize(text) if t.span.overlaps(span)}


def test_tokens_tile_minimal_domain():
    text = "(define (domain d))"
    tokens = tokenize(text)
    assert [t.text for t in tokens] == [
        "(", "define", " ", "(", "domain", " ", "d", ")", ")"]
    assert len(tokens) == 9
    assert Scope.UNSCOPED not in {t.scope for t in tokens}
    assert [t.scope for t in tokens if t.text == "define"] == [Scope.KEYWORD]
    assert [t.scope for t in tokens if t.text == "d"] == [Scope.NAME]


@pytest.mark.parametrize("name", [
    "splisus.pddl", "store.pddl", "logistics.pddl", "coffee.pddl",
    "garys_huge_problem.pddl", "gary_pizza_problem.pddl",
])
def test_tokens_tile_corpus(name):
    text = corpus_text(name)
    tokens = tokenize(text)
    pos = 0
    for token in tokens:
        assert token.span.start == pos
        pos = token.span.end
    assert pos == len(text.encode("utf-8"))


@given(st.text(alphabet="()ab ;:?-\n$_=", max_size=80))
@settings(max_examples=300)
def test_tokens_tile_any_text(text):
    tokens = tokenize(text)
    pos = 0
    for token in tokens:
        assert token.span.start == pos
        pos = token.span.end
    assert pos == len(text.encode("utf-8"))


def test_tokenize_is_deterministic():
    text = corpus_text("coffee.pddl")
    assert tokenize(text) == tokenize(text)


@pytest.mark.parametrize("name", [
    "splisus.pddl", "store.pddl",
    "garys_huge_problem.pddl", "gary_pizza_problem.pddl",
])
def test_valid_corpus_has_no_invalid_regions(name):
    text = corpus_text(name)
    assert invalid_regions(tokenize(text)) == []


def test_double_question_variable_is_unscoped():
    text = corpus_text("coffee.pddl")
    assert scopes_at(text, "??o") == {Scope.UNSCOPED}


def test_misplaced_block_keyword_is_unscoped():
    text = corpus_text("logistics.pddl")
    assert scopes_at(text, ":typing") == {Scope.UNSCOPED}
    # the block's content is still readable, only the head is flagged
    assert scopes_at(text, "motorboat") == {Scope.NAME}


def test_misspelled_name_stays_name():
    text = corpus_text("logistics.pddl")
    assert scopes_at(text, "incity") == {Scope.NAME}
    assert scopes_at(text, "ay ") == {Scope.NAME, Scope.PUNCTUATION}


def test_variable_positions():
    text = "(define (domain d) (:predicates (p ?x - t)))"
    assert scopes_at(text, "?x") == {Scope.VARIABLE}
    assert scopes_at(text, "t)") == {Scope.TYPE_NAME, Scope.PUNCTUATION}


def test_parameters_keyword_only_inside_action():
    inside = "(define (domain d) (:action a :parameters (?x - t) :effect (p ?x)))"
    assert scopes_at(inside, ":parameters") == {Scope.KEYWORD}
    outside = "(define (domain d) (:parameters (?x - t)))"
    assert scopes_at(outside, ":parameters") == {Scope.UNSCOPED}


def test_requirements_scoping():
    text = "(define (domain d) (:requirements :typing :strips))"
    assert scopes_at(text, ":typing") == {Scope.REQUIREMENT}
    bad = corpus_text("logistics.pddl")
    assert scopes_at(bad, ":types") == {Scope.UNSCOPED}


def test_invalid_regions_merge_across_whitespace():
    text = corpus_text("logistics.pddl")
    data = text.encode("utf-8")
    regions = invalid_regions(tokenize(text))
    texts = [data[r.start:r.end].decode("utf-8") for r in regions]
    assert "= true" in texts
    assert "?p ?v" in texts


def test_degenerate_parens_one_region():
    regions = invalid_regions(tokenize("((("))
    assert len(regions) == 1
    assert regions[0] == Span(0, 3)


@pytest.mark.parametrize("text", [
    "(" * 5000,
    "(define (domain d) (:action a :precondition "
    + "(and " * 2000 + "(p ?x)" + ")" * 2000 + " :effect (q)))",
])
def test_pathological_nesting_still_tiles(text):
    tokens = tokenize(text)
    pos = 0
    for token in tokens:
        assert token.span.start == pos
        pos = token.span.end
    assert pos == len(text.encode("utf-8"))


@pytest.mark.parametrize("name,golden_name", [
    ("logistics.pddl", "logistics_errors.json"),
    ("coffee.pddl", "coffee_errors.json"),
])
def test_golden_annotations(name, golden_name):
    text = corpus_text(name)
    golden = golden_json(golden_name)
    data = text.encode("utf-8")
    regions = invalid_regions(tokenize(text))
    assert len(regions) >= 12

    found = 0
    for entry in golden:
        span = Span(entry["start"], entry["end"])
        assert data[span.start:span.end] == entry["excerpt"].encode("utf-8")
        if any(span.overlaps(region) for region in regions):
            found += 1
    assert found / len(golden) >= 0.70
    # every annotation judged syntactic must be caught
    for entry in golden:
        if entry["kind"] == "syntactic":
            span = Span(entry["start"], entry["end"])
            assert any(span.overlaps(region) for region in regions), \
                entry["excerpt"]


def test_deleting_a_closer_creates_an_invalid_region():
    text = corpus_text("splisus.pddl")
    positions = [i for i, c in enumerate(text) if c == ")"]
    for pos in positions:
        mutated = text[:pos] + text[pos + 1:]
        assert invalid_regions(tokenize(mutated)), f"closer at {pos}"


def test_emit_tokens_json_bare_atom():
    records = json.loads(emit_tokens_json(tokenize("x"), "x"))
    assert records == [{"start": 0, "end": 1, "scope": "Unscoped", "text": "x"}]


def test_emit_tokens_json_empty_file():
    assert json.loads(emit_tokens_json(tokenize(""), "")) == []


def test_emit_tokens_json_minimal_domain():
    text = "(define (domain d))"
    records = json.loads(emit_tokens_json(tokenize(text), text))
    assert len(records) == 9
    assert records == sorted(records, key=lambda r: r["start"])
    assert "".join(r["text"] for r in records) == text


def test_render_html_empty():
    doc = render_html([], "")
    assert doc.startswith("<!DOCTYPE html>")
    assert "<pre>" in doc


def test_render_html_region_wrappers_match_regions():
    text = corpus_text("coffee.pddl")
    tokens = tokenize(text)
    doc = render_html(tokens, text)
    assert doc.count('class="invalid-region"') == len(invalid_regions(tokens))


def test_render_html_valid_domain_has_no_invalid_class(splisus_text):
    tokens = tokenize(splisus_text)
    doc = render_html(tokens, splisus_text)
    assert 'class="invalid-region"' not in doc
