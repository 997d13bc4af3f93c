"""Programmatic read/add access to PDDL code blocks.

`read_construct` pulls blocks out by keyword; `add_construct` appends new
constructs to the first matching block while leaving every other byte of the
file untouched. Appending is a textual splice guided by the lossless tree,
so even files our grammar does not fully understand survive unharmed.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Sequence

from .sexpr import (
    MyPddlError,
    SExprNode,
    find_blocks,
    parse_sexpr,
    serialize,
)


class ConstructError(MyPddlError):
    pass


def read_construct(keyword: str, file: Path) -> list[SExprNode]:
    """All blocks headed by ``keyword`` in the file, in document order."""
    text = Path(file).read_text(encoding="utf-8")
    forest, _ = parse_sexpr(text)
    return find_blocks(forest, keyword)


def parse_constructs(text: str) -> list[SExprNode]:
    """Parse user-supplied construct text into nodes (trivia dropped).

    Malformed text is rejected outright: splicing unbalanced parentheses
    into a file must never be possible through this path.
    """
    forest, diagnostics = parse_sexpr(text)
    if diagnostics:
        raise ConstructError(
            f"construct text is not well formed: {diagnostics[0].message}")
    nodes = [n for n in forest if not n.is_trivia]
    if not nodes:
        raise ConstructError(f"no construct found in {text!r}")
    return nodes


def _insertion_state(text: str, block: SExprNode) -> tuple[int, str]:
    """Where to splice inside ``block`` and the line prefix to use.

    New entries go on their own line, indented to the column of the block's
    last existing entry; a block with no entries gets a single space instead.
    """
    assert block.span is not None
    data = text.encode("utf-8")
    insert_at = block.span.end - 1 if block.closed else block.span.end

    values = block.values()
    if len(values) > 1:
        last = values[-1]
        assert last.span is not None
        line_start = data.rfind(b"\n", 0, last.span.start) + 1
        column = last.span.start - line_start
        return insert_at, "\n" + " " * column
    return insert_at, " "


def append_to_block(text: str, block: SExprNode,
                    constructs: Sequence[SExprNode | str]) -> str:
    """Splice constructs into ``block``; pure, no file I/O. Each construct is
    either a node (serialized verbatim) or an already-rendered string."""
    if not constructs:
        return text
    insert_at, prefix = _insertion_state(text, block)
    pieces = "".join(
        prefix + (item if isinstance(item, str) else serialize([item]))
        for item in constructs)
    data = text.encode("utf-8")
    return (data[:insert_at] + pieces.encode("utf-8") + data[insert_at:]) \
        .decode("utf-8")


def insert_construct(text: str, keyword: str,
                     constructs: Sequence[SExprNode]) -> str:
    """Append constructs to the first block headed by ``keyword``."""
    forest, _ = parse_sexpr(text)
    if not [n for n in forest if not n.is_trivia]:
        raise ConstructError("file contains no s-expressions")
    blocks = find_blocks(forest, keyword)
    if not blocks:
        raise ConstructError(f"no block headed by {keyword!r} found")
    return append_to_block(text, blocks[0], constructs)


def write_atomically(path: Path, text: str) -> None:
    """Write via a temp file in the same directory plus rename."""
    path = Path(path)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise


def add_construct(file: Path, keyword: str,
                  constructs: Sequence[SExprNode]) -> str:
    """Append constructs to the first matching block and rewrite the file
    atomically. Returns the updated text."""
    path = Path(file)
    text = path.read_text(encoding="utf-8")
    updated = insert_construct(text, keyword, constructs)
    if updated != text:
        write_atomically(path, updated)
    return updated
