"""Lossless s-expression reading and writing.

The reader keeps every byte of the input: atoms, comments and whitespace all
become nodes with exact byte spans, so that serializing a parsed forest
reproduces the source text byte for byte. This holds for broken input too --
unbalanced parentheses never abort the parse, they only produce diagnostics.
All offsets are byte offsets into the UTF-8 encoding of the source.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence


class MyPddlError(Exception):
    """Base class for errors raised by this package."""


@dataclass(frozen=True)
class Span:
    """Half-open byte range [start, end) into the source text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end or self.start < 0:
            raise ValueError(f"invalid span {self.start}..{self.end}")

    def __len__(self) -> int:
        return self.end - self.start

    def overlaps(self, other: "Span") -> bool:
        return self.start < other.end and other.start < self.end


class Severity(enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class ParseDiagnostic:
    span: Span
    severity: Severity
    message: str
    code: str


class NodeKind(enum.Enum):
    ATOM = "atom"
    LIST = "list"
    COMMENT = "comment"
    WHITESPACE = "whitespace"


@dataclass(frozen=True)
class SExprNode:
    """One node of the lossless concrete-syntax tree.

    ``text`` is the verbatim source slice for atoms, comments and whitespace;
    lists carry their elements (including trivia) in ``children``. ``closed``
    is False for a list that was recovered at end of input, so serialization
    does not invent the missing parenthesis. Nodes built programmatically
    (for insertion) have ``span`` set to None.
    """

    kind: NodeKind
    text: str = ""
    children: tuple["SExprNode", ...] = ()
    span: Optional[Span] = None
    closed: bool = True

    @property
    def is_trivia(self) -> bool:
        return self.kind in (NodeKind.COMMENT, NodeKind.WHITESPACE)

    def walk(self) -> Iterator["SExprNode"]:
        """Yield this node and all descendants in document order.

        Iterative, so arbitrarily deep nesting cannot exhaust the stack.
        """
        stack: list[SExprNode] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))

    def head(self) -> Optional["SExprNode"]:
        """First non-trivia child of a list, or None."""
        for child in self.children:
            if not child.is_trivia:
                return child
        return None

    def values(self) -> list["SExprNode"]:
        """Non-trivia children."""
        return [c for c in self.children if not c.is_trivia]


_WHITESPACE = frozenset(b" \t\r\n\f\v")
_DELIMITERS = frozenset(b"();") | _WHITESPACE


def parse_sexpr(text: str) -> tuple[list[SExprNode], list[ParseDiagnostic]]:
    """Parse source text into a lossless forest.

    Never raises on malformed input: an unclosed list is closed at end of
    input and a stray ')' becomes an atom, each with an Error diagnostic.
    """
    data = text.encode("utf-8")
    n = len(data)
    diagnostics: list[ParseDiagnostic] = []
    # Stack of (open-paren offset, children collected so far); the bottom
    # entry is the top-level forest.
    stack: list[tuple[int, list[SExprNode]]] = [(-1, [])]

    def emit(node: SExprNode) -> None:
        stack[-1][1].append(node)

    i = 0
    while i < n:
        b = data[i]
        if b in _WHITESPACE:
            j = i + 1
            while j < n and data[j] in _WHITESPACE:
                j += 1
            emit(SExprNode(NodeKind.WHITESPACE, text=data[i:j].decode("utf-8"),
                           span=Span(i, j)))
            i = j
        elif b == 0x3B:  # ';'
            j = i + 1
            while j < n and data[j] != 0x0A:
                j += 1
            emit(SExprNode(NodeKind.COMMENT, text=data[i:j].decode("utf-8"),
                           span=Span(i, j)))
            i = j
        elif b == 0x28:  # '('
            stack.append((i, []))
            i += 1
        elif b == 0x29:  # ')'
            if len(stack) > 1:
                start, children = stack.pop()
                emit(SExprNode(NodeKind.LIST, children=tuple(children),
                               span=Span(start, i + 1)))
            else:
                diagnostics.append(ParseDiagnostic(
                    Span(i, i + 1), Severity.ERROR,
                    "unmatched ')'", "stray-closer"))
                emit(SExprNode(NodeKind.ATOM, text=")", span=Span(i, i + 1)))
            i += 1
        else:
            j = i + 1
            while j < n and data[j] not in _DELIMITERS:
                j += 1
            emit(SExprNode(NodeKind.ATOM, text=data[i:j].decode("utf-8"),
                           span=Span(i, j)))
            i = j

    # Close recovered lists innermost first, without inventing parentheses.
    while len(stack) > 1:
        start, children = stack.pop()
        diagnostics.append(ParseDiagnostic(
            Span(start, start + 1), Severity.ERROR,
            "'(' is never closed", "unclosed-list"))
        emit(SExprNode(NodeKind.LIST, children=tuple(children),
                       span=Span(start, n), closed=False))
    return stack[0][1], diagnostics


_CLOSE = object()


def serialize(forest: Sequence[SExprNode]) -> str:
    """Reassemble source text; byte-exact for parsed forests. Iterative, so
    deeply nested input round-trips without exhausting the stack."""
    parts: list[str] = []
    todo: list[object] = list(reversed(forest))
    while todo:
        node = todo.pop()
        if node is _CLOSE:
            parts.append(")")
        elif node.kind is NodeKind.LIST:
            parts.append("(")
            if node.closed:
                todo.append(_CLOSE)
            todo.extend(reversed(node.children))
        else:
            parts.append(node.text)
    return "".join(parts)


def serialize_node(node: SExprNode) -> str:
    return serialize([node])


def find_blocks(forest: Sequence[SExprNode], keyword: str) -> list[SExprNode]:
    """All list nodes whose head atom equals ``keyword`` (case-insensitive),
    in document order, nested matches included."""
    wanted = keyword.lower()
    found: list[SExprNode] = []
    for top in forest:
        for node in top.walk():
            if node.kind is not NodeKind.LIST:
                continue
            head = node.head()
            if head is not None and head.kind is NodeKind.ATOM \
                    and head.text.lower() == wanted:
                found.append(node)
    return found


def line_starts(data: bytes) -> list[int]:
    """Byte offsets at which each line begins (line 1 starts at 0)."""
    starts = [0]
    for i, b in enumerate(data):
        if b == 0x0A:
            starts.append(i + 1)
    return starts


def offset_to_line_col(data: bytes, offset: int) -> tuple[int, int]:
    """1-based (line, column); columns count bytes within the line."""
    import bisect

    starts = line_starts(data)
    line = bisect.bisect_right(starts, offset)
    return line, offset - starts[line - 1] + 1
