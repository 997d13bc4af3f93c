"""Type-hierarchy extraction, DOT emission, and diagram rendering.

Every type box carries the predicate signatures that mention the type at
least once as a parameter, written exactly as they appear in the source.
Arrows run from subtype to supertype. Each render stores a copy of the
domain, the DOT text, and (when a renderer is available) the image, all
three tagged with the same ascending revision number.
"""

from __future__ import annotations

import re
import shutil
import subprocess
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .model import DEFAULT_TYPE, PddlDomain, parse_domain
from .sexpr import MyPddlError, ParseDiagnostic, Severity, Span

# Built-in numeric type: lives outside the object hierarchy, never drawn.
_NUMBER = "number"


class RenderError(MyPddlError):
    pass


@dataclass
class TypeGraph:
    nodes: set[str] = field(default_factory=lambda: {DEFAULT_TYPE})
    edges: set[tuple[str, str]] = field(default_factory=set)
    predicates_by_type: dict[str, list[str]] = field(default_factory=dict)
    cycle_edges: set[tuple[str, str]] = field(default_factory=set)

    def parents(self, type_name: str) -> list[str]:
        return sorted(p for c, p in self.edges if c == type_name)

    def children(self, type_name: str) -> list[str]:
        return sorted(c for c, p in self.edges if p == type_name)


@dataclass(frozen=True)
class DiagramArtifacts:
    dot_path: Path
    image_path: Optional[Path]
    copied_domain_path: Path
    revision: int


def build_type_graph(domain: PddlDomain) -> tuple[TypeGraph, list[ParseDiagnostic]]:
    """Derive the subtype graph from a parsed domain.

    Types that only ever appear as supertypes (or only in predicate
    parameters) are materialized and implicitly rooted at "object". A type
    declared under several distinct parents keeps all its edges, plus a
    warning. Cycles are reported as errors and their back-edges marked.
    """
    graph = TypeGraph()
    diagnostics: list[ParseDiagnostic] = []

    def warn(message: str, code: str, severity: Severity = Severity.WARNING,
             span: Optional[Span] = None) -> None:
        diagnostics.append(ParseDiagnostic(span or Span(0, 0), severity,
                                           message, code))

    declared_parent: dict[str, set[str]] = {}
    for entry in domain.types.entries:
        parent = entry.type_name
        if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_-]*", parent):
            warn(f"cannot place {entry.name!r} under compound type {parent!r}",
                 "either-type", span=entry.type_span)
            graph.nodes.add(entry.name)
            continue
        graph.nodes.add(entry.name)
        graph.nodes.add(parent)
        graph.edges.add((entry.name, parent))
        declared_parent.setdefault(entry.name, set()).add(parent)

    for name, parents in declared_parent.items():
        if len(parents) > 1:
            warn(f"type {name!r} is declared under several parents: "
                 f"{', '.join(sorted(parents))}", "multi-parent")

    # Predicate signatures attach to every parameter type, once per box.
    for pred in domain.predicates:
        param_types = []
        for entry in pred.parameters.entries:
            if entry.type_name not in param_types:
                param_types.append(entry.type_name)
        for type_name in param_types:
            if type_name == _NUMBER:
                continue
            if not re.fullmatch(r"[A-Za-z][A-Za-z0-9_-]*", type_name):
                continue
            if type_name not in graph.nodes:
                warn(f"type {type_name!r} is used by {pred.name!r} but never "
                     f"declared", "undeclared-type")
                graph.nodes.add(type_name)
            box = graph.predicates_by_type.setdefault(type_name, [])
            if pred.signature_text not in box:
                box.append(pred.signature_text)

    # Implicit rooting: anything without a declared parent hangs off object.
    for node in sorted(graph.nodes):
        if node != DEFAULT_TYPE and node not in declared_parent:
            graph.edges.add((node, DEFAULT_TYPE))

    _mark_cycles(graph, diagnostics)
    return graph, diagnostics


def _mark_cycles(graph: TypeGraph, diagnostics: list[ParseDiagnostic]) -> None:
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {node: WHITE for node in graph.nodes}
    adjacency: dict[str, list[str]] = {node: [] for node in graph.nodes}
    for child, parent in sorted(graph.edges):
        adjacency[child].append(parent)

    def visit(node: str, stack: list[str]) -> None:
        color[node] = GRAY
        stack.append(node)
        for parent in adjacency[node]:
            if color[parent] == GRAY:
                graph.cycle_edges.add((node, parent))
                cycle = stack[stack.index(parent):] + [parent]
                diagnostics.append(ParseDiagnostic(
                    Span(0, 0), Severity.ERROR,
                    "type hierarchy contains a cycle: " + " -> ".join(cycle),
                    "type-cycle"))
            elif color[parent] == WHITE:
                visit(parent, stack)
        stack.pop()
        color[node] = BLACK

    for node in sorted(graph.nodes):
        if color[node] == WHITE:
            visit(node, [])

    # Upward reachability check: every node should end at object.
    reaches_object = {DEFAULT_TYPE}
    changed = True
    while changed:
        changed = False
        for child, parent in graph.edges:
            if parent in reaches_object and child not in reaches_object:
                reaches_object.add(child)
                changed = True
    for node in sorted(graph.nodes - reaches_object):
        diagnostics.append(ParseDiagnostic(
            Span(0, 0), Severity.WARNING,
            f"type {node!r} is not rooted at {DEFAULT_TYPE!r}", "orphan-type"))


def hierarchy_depth(graph: TypeGraph) -> int:
    """Longest root-to-leaf chain, counting "object" as layer 1.

    Cycle back-edges are ignored so the walk terminates on any input.
    """
    children: dict[str, list[str]] = {}
    for child, parent in sorted(graph.edges):
        if (child, parent) in graph.cycle_edges:
            continue
        children.setdefault(parent, []).append(child)

    seen: set[str] = set()

    def depth(node: str) -> int:
        if node in seen:
            return 0
        seen.add(node)
        best = 1 + max((depth(c) for c in children.get(node, [])), default=0)
        seen.discard(node)
        return best

    return depth(DEFAULT_TYPE)


_RECORD_ESCAPES = str.maketrans({c: f"\\{c}" for c in "{}|<>\"\\"})


def emit_dot(graph: TypeGraph) -> str:
    """Deterministic DOT text: nodes sorted by name, edges by (child, parent),
    one record-shaped box per type with its predicate signatures."""
    lines = [
        "digraph type_hierarchy {",
        "  rankdir=BT;",
        "  node [shape=record, fontname=\"Helvetica\"];",
    ]
    for node in sorted(graph.nodes):
        signatures = graph.predicates_by_type.get(node, [])
        body = "\\n".join(s.translate(_RECORD_ESCAPES) for s in signatures)
        lines.append(f"  \"{node}\" [label=\"{{{node}|{body}}}\"];")
    for child, parent in sorted(graph.edges):
        attrs = "arrowhead=empty"
        if (child, parent) in graph.cycle_edges:
            attrs += ", color=red, style=dashed"
        lines.append(f"  \"{child}\" -> \"{parent}\" [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_REVISION_RE = re.compile(r"_(\d+)\.[^.]+\Z")


def _next_revision(base: str, *dirs: Path) -> int:
    highest = 0
    for directory in dirs:
        if not directory.is_dir():
            continue
        for path in directory.iterdir():
            if not path.name.startswith(base + "_"):
                continue
            match = _REVISION_RE.search(path.name)
            if match:
                highest = max(highest, int(match.group(1)))
    return highest + 1


def render_diagram(domain_file: Path, output_root: Path,
                   renderer: Optional[str] = None,
                   ) -> tuple[DiagramArtifacts, list[ParseDiagnostic]]:
    """Copy the domain, write DOT, and (with a renderer) produce an image.

    ``renderer`` is an external command such as "dot"; when None, image
    generation is skipped with a warning. All three outputs share one
    revision number, one higher than anything already present.
    """
    domain_file = Path(domain_file)
    output_root = Path(output_root)
    text = domain_file.read_text(encoding="utf-8")
    domain, diagnostics = parse_domain(text)
    graph, graph_diags = build_type_graph(domain)
    diagnostics = list(diagnostics) + graph_diags

    domains_dir = output_root / "domains"
    dot_dir = output_root / "dot"
    diagrams_dir = output_root / "diagrams"
    for directory in (domains_dir, dot_dir, diagrams_dir):
        directory.mkdir(parents=True, exist_ok=True)

    base = domain_file.stem
    revision = _next_revision(base, domains_dir, dot_dir, diagrams_dir)

    copied = domains_dir / f"{base}_{revision}.pddl"
    shutil.copyfile(domain_file, copied)
    dot_path = dot_dir / f"{base}_{revision}.dot"
    dot_path.write_text(emit_dot(graph), encoding="utf-8")

    image_path: Optional[Path] = None
    if renderer is not None:
        image_path = diagrams_dir / f"{base}_{revision}.png"
        try:
            proc = subprocess.run(
                [renderer, "-Tpng", str(dot_path), "-o", str(image_path)],
                capture_output=True, text=True)
        except OSError as exc:
            raise RenderError(f"cannot run renderer {renderer!r}: {exc}") from exc
        if proc.returncode != 0:
            raise RenderError(
                f"renderer {renderer!r} exited with {proc.returncode}: "
                f"{proc.stderr.strip()}")
    else:
        diagnostics.append(ParseDiagnostic(
            Span(0, 0), Severity.WARNING,
            "no renderer configured; image generation skipped", "no-renderer"))

    artifacts = DiagramArtifacts(dot_path=dot_path, image_path=image_path,
                                 copied_domain_path=copied, revision=revision)
    return artifacts, diagnostics
