"""Euclidean distance preprocessing for problem files.

Location facts of any arity are harvested from the first (:init ...) block;
the full n-by-n table of pairwise distances (self-distances included) is
appended back into the same block of a copy of the problem. PDDL itself has
no square root, so precomputing these facts is what makes spatial domains
tractable for ordinary planners.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Optional, Sequence

from .construct import append_to_block, write_atomically
from .sexpr import (
    MyPddlError,
    NodeKind,
    ParseDiagnostic,
    Severity,
    Span,
    find_blocks,
    parse_sexpr,
)

DEFAULT_PREDICATE = "location"
DISTANCE_PREDICATE = "distance"

_DECIMAL_RE = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")


class DistanceError(MyPddlError):
    def __init__(self, message: str,
                 diagnostics: Sequence[ParseDiagnostic] = ()) -> None:
        super().__init__(message)
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class LocationFact:
    object_name: str
    coords: tuple[float, ...]
    span: Span


@dataclass(frozen=True)
class DistanceFact:
    from_object: str
    to_object: str
    value: float


def extract_locations(problem_text: str,
                      predicate_name: str = DEFAULT_PREDICATE,
                      ) -> tuple[list[LocationFact], list[ParseDiagnostic]]:
    """Collect coordinate facts from the first (:init ...) block.

    Every fact must name a distinct object and all facts must share one
    dimension; violations become Error diagnostics.
    """
    diagnostics: list[ParseDiagnostic] = []
    facts: list[LocationFact] = []
    forest, _ = parse_sexpr(problem_text)
    init_blocks = find_blocks(forest, ":init")
    if not init_blocks:
        diagnostics.append(ParseDiagnostic(
            Span(0, 0), Severity.WARNING,
            "problem has no (:init ...) block", "missing-init"))
        return facts, diagnostics

    wanted = predicate_name.lower()
    seen: dict[str, LocationFact] = {}
    first_dim: Optional[tuple[str, int]] = None
    for fact_node in init_blocks[0].values()[1:]:
        if fact_node.kind is not NodeKind.LIST:
            continue
        head = fact_node.head()
        if head is None or head.kind is not NodeKind.ATOM \
                or head.text.lower() != wanted:
            continue
        span = fact_node.span if fact_node.span is not None else Span(0, 0)
        args = fact_node.values()[1:]
        if not args or args[0].kind is not NodeKind.ATOM:
            diagnostics.append(ParseDiagnostic(
                span, Severity.ERROR,
                f"{predicate_name} fact has no object name", "bad-location"))
            continue
        name = args[0].text
        coords: list[float] = []
        bad = False
        for arg in args[1:]:
            if arg.kind is not NodeKind.ATOM \
                    or not _DECIMAL_RE.match(arg.text) \
                    or not math.isfinite(float(arg.text)):
                arg_span = arg.span if arg.span is not None else span
                shown = arg.text if arg.kind is NodeKind.ATOM else "(...)"
                diagnostics.append(ParseDiagnostic(
                    arg_span, Severity.ERROR,
                    f"coordinate {shown!r} of {name!r} is not a finite "
                    f"decimal number", "bad-coordinate"))
                bad = True
            else:
                coords.append(float(arg.text))
        if bad:
            continue
        if not coords:
            diagnostics.append(ParseDiagnostic(
                span, Severity.ERROR,
                f"{predicate_name} fact for {name!r} has no coordinates",
                "bad-location"))
            continue
        if name in seen:
            diagnostics.append(ParseDiagnostic(
                span, Severity.ERROR,
                f"duplicate {predicate_name} fact for object {name!r}",
                "duplicate-object"))
            continue
        if first_dim is None:
            first_dim = (name, len(coords))
        elif len(coords) != first_dim[1]:
            diagnostics.append(ParseDiagnostic(
                span, Severity.ERROR,
                f"{name!r} has {len(coords)} coordinates but "
                f"{first_dim[0]!r} has {first_dim[1]}", "mixed-dimensions"))
            continue
        fact = LocationFact(name, tuple(coords), span)
        seen[name] = fact
        facts.append(fact)
    return facts, diagnostics


def euclidean(a: Sequence[float], b: Sequence[float]) -> float:
    """Straight-line distance in double precision."""
    if len(a) != len(b):
        raise DistanceError(
            f"dimension mismatch: {len(a)} versus {len(b)} coordinates")
    return math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))


def format_distance(value: float) -> str:
    """Round half-up to 4 decimals, strip trailing zeros, keep >= 1 digit
    after the point: 2.2360679... -> "2.2361", 0 -> "0.0", 2.5 -> "2.5"."""
    quantized = Decimal(value).quantize(Decimal("0.0001"), rounding=ROUND_HALF_UP)
    text = f"{quantized:f}"
    whole, dot, frac = text.partition(".")
    frac = frac.rstrip("0") or "0"
    return f"{whole}.{frac}"


def distance_facts(facts: Sequence[LocationFact]) -> list[DistanceFact]:
    """All n*n pairs in (source index, target index) order."""
    return [DistanceFact(a.object_name, b.object_name,
                         euclidean(a.coords, b.coords))
            for a in facts for b in facts]


def augment_with_distances(problem_text: str,
                           predicate_name: str = DEFAULT_PREDICATE,
                           ) -> tuple[str, list[ParseDiagnostic]]:
    """Append the n*n distance facts to the first (:init ...) block.

    Location facts and all other bytes stay untouched. Errors during
    extraction abort with a DistanceError; zero locations is a warning
    no-op.
    """
    facts, diagnostics = extract_locations(problem_text, predicate_name)
    errors = [d for d in diagnostics if d.severity is Severity.ERROR]
    if errors:
        raise DistanceError(
            "; ".join(d.message for d in errors), diagnostics)
    if not facts:
        diagnostics.append(ParseDiagnostic(
            Span(0, 0), Severity.WARNING,
            f"no {predicate_name!r} facts found; nothing to do",
            "no-locations"))
        return problem_text, diagnostics

    forest, _ = parse_sexpr(problem_text)
    init_block = find_blocks(forest, ":init")[0]
    rendered = [
        f"({DISTANCE_PREDICATE} {d.from_object} {d.to_object} "
        f"{format_distance(d.value)})"
        for d in distance_facts(facts)
    ]
    return append_to_block(problem_text, init_block, rendered), diagnostics


def augment_file(problem_file: Path, output_file: Optional[Path] = None,
                 predicate_name: str = DEFAULT_PREDICATE,
                 ) -> tuple[Path, list[ParseDiagnostic]]:
    """Write the extended copy; defaults to ``<name>_dist.pddl`` beside the
    input. Pass the input path itself to rewrite in place."""
    problem_file = Path(problem_file)
    text = problem_file.read_text(encoding="utf-8")
    updated, diagnostics = augment_with_distances(text, predicate_name)
    if output_file is None:
        output_file = problem_file.with_name(
            problem_file.stem + "_dist" + problem_file.suffix)
    output_file = Path(output_file)
    write_atomically(output_file, updated)
    return output_file, diagnostics
