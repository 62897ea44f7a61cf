"""Plain-text group table files.

::

    # comments start with '#'
    order 3
    0 1 2
    1 2 0
    2 0 1

Row ``g`` lists ``g*h`` for ``h = 0..n-1``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import FileParseError, GroupAxiomError
from .groups import Group, group_from_table


def parse_group_table(text: str, *, path=None, name: str = "") -> Group:
    header = None
    rows: list[list[int]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        last_line = lineno
        if header is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "order":
                raise FileParseError("expected header 'order <n>'", path, lineno)
            try:
                header = int(parts[1])
            except ValueError:
                raise FileParseError(f"bad order {parts[1]!r}", path, lineno) from None
            if header < 1:
                raise FileParseError("order must be positive", path, lineno)
            continue
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise FileParseError(f"non-integer entry ({exc})", path, lineno) from None
        if len(row) != header:
            raise FileParseError(f"row has {len(row)} entries, expected {header}", path, lineno)
        if len(rows) == header:
            raise FileParseError(f"more than {header} table rows", path, lineno)
        rows.append(row)
    if header is None:
        raise FileParseError("empty table file", path, None)
    if len(rows) != header:
        raise FileParseError(f"found {len(rows)} table rows, expected {header}", path, last_line)
    try:
        return group_from_table(rows, name=name)
    except GroupAxiomError as exc:
        raise FileParseError(f"{type(exc).__name__}: {exc}", path, None) from exc


def read_group_table(path, name: str | None = None) -> Group:
    path = Path(path)
    return parse_group_table(path.read_text(), path=str(path), name=name or path.stem)


def format_group_table(G: Group, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines += [f"# {ln}" for ln in comment.splitlines()]
    lines.append(f"order {G.order}")
    lines += [" ".join(str(v) for v in row) for row in G.table_rows()]
    return "\n".join(lines) + "\n"


def write_group_table(G: Group, path, comment: str | None = None) -> None:
    Path(path).write_text(format_group_table(G, comment))
