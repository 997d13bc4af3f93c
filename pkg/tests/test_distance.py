"""Distance preprocessing: extraction, arithmetic, formatting, augmentation."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mypddl.distance import (
    DistanceError,
    augment_with_distances,
    distance_facts,
    euclidean,
    extract_locations,
    format_distance,
)
from mypddl.model import parse_problem
from mypddl.sexpr import Severity, serialize_node


def problem_with_init(facts: str) -> str:
    return (f"(define (problem p)\n  (:domain d)\n"
            f"  (:init {facts})\n  (:goal (g)))")


def test_extract_two_locations():
    text = problem_with_init("(location gary 4 2)\n         (location pizza 2 3)")
    facts, diagnostics = extract_locations(text)
    assert [(f.object_name, f.coords) for f in facts] == [
        ("gary", (4.0, 2.0)), ("pizza", (2.0, 3.0))]
    assert diagnostics == []


def test_extract_empty_init():
    facts, diagnostics = extract_locations(problem_with_init(""))
    assert facts == []
    assert diagnostics == []


def test_extract_one_dimensional():
    facts, _ = extract_locations(problem_with_init("(location a 1) (location b 4)"))
    assert [f.coords for f in facts] == [(1.0,), (4.0,)]


def test_extract_mixed_dimensions_names_both_facts():
    text = problem_with_init("(location a 1 2) (location b 3)")
    _, diagnostics = extract_locations(text)
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    assert len(errors) == 1
    assert "'a'" in errors[0].message and "'b'" in errors[0].message


def test_extract_non_numeric_coordinate():
    _, diagnostics = extract_locations(problem_with_init("(location a x 2)"))
    assert any(d.code == "bad-coordinate" for d in diagnostics)


def test_extract_duplicate_object():
    text = problem_with_init("(location a 1 2) (location a 1 2)")
    _, diagnostics = extract_locations(text)
    assert any(d.code == "duplicate-object" for d in diagnostics)


def test_extract_only_first_init_block():
    text = ("(define (problem p) (:init (location a 1))"
            " (:init (location b 2)))")
    facts, _ = extract_locations(text)
    assert [f.object_name for f in facts] == ["a"]


def test_euclidean_paper_pair():
    assert format_distance(euclidean((4, 2), (2, 3))) == "2.2361"


def test_euclidean_self_distance():
    assert euclidean((7.5, -1), (7.5, -1)) == 0.0


def test_euclidean_345_triple():
    # sqrt(1 + 4 + 4) = 3 by plain arithmetic
    assert euclidean((0, 0, 0), (1, 2, 2)) == 3.0


def test_euclidean_dimension_mismatch():
    with pytest.raises(DistanceError):
        euclidean((1, 2), (1, 2, 3))


@pytest.mark.parametrize("value,expected", [
    (2.2360679774997896, "2.2361"),
    (0.0, "0.0"),
    (2.5, "2.5"),
    (1.0, "1.0"),
    (0.00004, "0.0"),
    (0.00006, "0.0001"),
    # 0.03125 is exactly 2^-5, so this really exercises the half-UP tie rule
    (0.03125, "0.0313"),
    (10.12346, "10.1235"),
])
def test_format_distance(value, expected):
    assert format_distance(value) == expected


def test_augment_paper_example(gary_pizza_problem):
    text = gary_pizza_problem.read_text(encoding="utf-8")
    updated, diagnostics = augment_with_distances(text)
    assert [d for d in diagnostics if d.severity is Severity.ERROR] == []
    expected = ("(location pizza 2 3)\n"
                "         (distance gary gary 0.0)\n"
                "         (distance gary pizza 2.2361)\n"
                "         (distance pizza gary 2.2361)\n"
                "         (distance pizza pizza 0.0))")
    assert expected in updated


def test_augment_single_location():
    updated, _ = augment_with_distances(problem_with_init("(location a 1 2)"))
    assert "(distance a a 0.0)" in updated


def test_augment_no_locations_is_warning_noop():
    text = problem_with_init("(something else)")
    updated, diagnostics = augment_with_distances(text)
    assert updated == text
    assert any(d.code == "no-locations"
               and d.severity is Severity.WARNING for d in diagnostics)


def test_augment_errors_propagate():
    with pytest.raises(DistanceError):
        augment_with_distances(problem_with_init("(location a x)"))


def test_augment_reparses_with_n_squared_new_facts():
    rng = random.Random(7)
    names = ["a", "b", "c"]
    facts = " ".join(
        f"({'location'} {n} {rng.randint(0, 9)} {rng.randint(0, 9)})"
        for n in names)
    text = problem_with_init(facts)
    before, _ = parse_problem(text)
    updated, _ = augment_with_distances(text)
    after, diagnostics = parse_problem(updated)
    assert [d for d in diagnostics if d.severity is Severity.ERROR] == []
    assert len(after.init) == len(before.init) + len(names) ** 2
    rendered = [serialize_node(f) for f in after.init]
    assert rendered[-9:] == [
        f"(distance {x} {y} "
        f"{format_distance(euclidean(_coords(text, x), _coords(text, y)))})"
        for x in names for y in names]


def _coords(text, name):
    facts, _ = extract_locations(text)
    return next(f.coords for f in facts if f.object_name == name)


def test_distance_facts_symmetry_and_diagonal():
    facts, _ = extract_locations(problem_with_init(
        "(location a 0 0) (location b 3 4) (location c -1 7)"))
    table = {(d.from_object, d.to_object): d.value
             for d in distance_facts(facts)}
    assert len(table) == 9
    for x in "abc":
        assert table[(x, x)] == 0.0
        for y in "abc":
            assert table[(x, y)] == table[(y, x)]
    assert table[("a", "b")] == 5.0


coords = st.lists(st.floats(min_value=-1e6, max_value=1e6,
                            allow_nan=False, allow_infinity=False),
                  min_size=1, max_size=5)


@given(st.data())
@settings(max_examples=300)
def test_triangle_inequality(data):
    a = data.draw(coords)
    b = data.draw(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                                     allow_nan=False, allow_infinity=False),
                           min_size=len(a), max_size=len(a)))
    c = data.draw(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                                     allow_nan=False, allow_infinity=False),
                           min_size=len(a), max_size=len(a)))
    slack = 1e-7 * (1 + euclidean(a, b) + euclidean(b, c))
    assert euclidean(a, c) <= euclidean(a, b) + euclidean(b, c) + slack
