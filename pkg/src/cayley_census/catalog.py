"""Built-in group catalog.

Entries are keyed by a stable ``group_id`` and rebuilt from a recipe on
demand.  Isomorphic groups reached by different recipes are kept as
separate entries.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .errors import FileParseError, UnknownGroup
from .groups import (
    Group,
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_direct_product,
    make_generalized_dicyclic,
    make_permutation_group,
)
from .io import read_group_table

FAMILIES = ("cyclic", "abelian", "dihedral", "generalized_dicyclic", "elementary_abelian_2", "custom")


@dataclass(frozen=True)
class CatalogEntry:
    group_id: str
    recipe: str
    order: int
    family: str
    builder: Callable[[], Group] = field(repr=False, compare=False)

    def build(self) -> Group:
        return self.builder()


# non-cyclic abelian groups by invariant factors, order <= 64
_ABELIAN = [
    [2, 2], [2, 4], [2, 2, 2], [3, 3], [2, 6], [2, 8], [4, 4], [2, 2, 4], [2, 2, 2, 2],
    [3, 6], [2, 10], [2, 2, 6], [2, 12], [4, 6], [5, 5], [3, 9], [2, 2, 2, 2, 2],
]

# abelian groups A (even order, exponent > 2) used for Dic(A, y, x)
_DICYCLIC_BASES = [[4], [6], [8], [2, 4], [10], [12], [2, 6], [14], [16], [2, 8], [4, 4], [2, 2, 4]]

_ALIASES = {"S3": "D3", "K4": "C2xC2", "V4": "C2xC2", "Q16": "Dic(C8)", "Dic3": "Dic(C6)", "Q8": "Q8"}


def _abelian_name(lengths) -> str:
    return "x".join(f"C{k}" for k in lengths)


def _dicyclic_entries(max_order: int) -> list[CatalogEntry]:
    out = []
    for lengths in _DICYCLIC_BASES:
        m = 1
        for k in lengths:
            m *= k
        if 2 * m > max_order:
            continue
        A = make_abelian(lengths)
        involutions = [int(e) for e in range(A.order) if A.elem_order[e] == 2]
        base = _abelian_name(lengths)
        for y in involutions:
            if len(involutions) == 1:
                gid = "Q8" if lengths == [4] else f"Dic({base})"
            else:
                gid = f"Dic({base};y={y})"

            def build(lengths=lengths, y=y, gid=gid):
                G, _ = make_generalized_dicyclic(make_abelian(lengths), y)
                object.__setattr__(G, "name", gid)
                return G

            out.append(CatalogEntry(gid, f"generalized_dicyclic({base}, y={y})", 2 * m,
                                    "generalized_dicyclic", build))
    return out


def _a4() -> Group:
    G = make_permutation_group([(1, 2, 0, 3), (0, 2, 3, 1)], name="A4")
    return G


def builtin_catalog(max_order: int) -> list[CatalogEntry]:
    entries: list[CatalogEntry] = []
    for n in range(1, max_order + 1):
        entries.append(CatalogEntry(f"C{n}", f"cyclic({n})", n, "cyclic",
                                    lambda n=n: make_cyclic(n)))
    for lengths in _ABELIAN:
        n = 1
        for k in lengths:
            n *= k
        if n > max_order:
            continue
        family = "elementary_abelian_2" if set(lengths) == {2} else "abelian"
        gid = _abelian_name(lengths)
        entries.append(CatalogEntry(gid, f"abelian({lengths})", n, family,
                                    lambda lengths=lengths: make_abelian(lengths)))
    for m in range(3, max_order // 2 + 1):
        entries.append(CatalogEntry(f"D{m}", f"dihedral({m})", 2 * m, "dihedral",
                                    lambda m=m: make_dihedral(m)))
    entries += _dicyclic_entries(max_order)
    if max_order >= 12:
        entries.append(CatalogEntry("A4", "permutations((0 1 2), (1 2 3))", 12, "custom", _a4))
        entries.append(CatalogEntry("D3xC2", "direct_product(dihedral(3), cyclic(2))", 12, "custom",
                                    lambda: make_direct_product(make_dihedral(3), make_cyclic(2), name="D3xC2")))
    if max_order >= 16:
        entries.append(CatalogEntry("D4xC2", "direct_product(dihedral(4), cyclic(2))", 16, "custom",
                                    lambda: make_direct_product(make_dihedral(4), make_cyclic(2), name="D4xC2")))
    return entries


def table_entries(tables_dir) -> list[CatalogEntry]:
    out = []
    for path in sorted(Path(tables_dir).iterdir()):
        if not path.is_file() or path.name.startswith("."):
            continue
        G = read_group_table(path)
        out.append(CatalogEntry(f"file:{path.stem}", str(path), G.order, "custom",
                                lambda path=path: read_group_table(path)))
    return out


def catalog(max_order: int, tables_dir=None) -> list[CatalogEntry]:
    """Every built-in group of order at most ``max_order``, plus table files.

    Sorted by order, then family, then id.  Raises :class:`FileParseError`
    for malformed table files.
    """
    entries = builtin_catalog(max_order)
    if tables_dir is not None:
        entries += [e for e in table_entries(tables_dir) if e.order <= max_order]
    seen: dict[str, CatalogEntry] = {}
    for e in entries:
        seen.setdefault(e.group_id, e)
    return sorted(seen.values(), key=lambda e: (e.order, FAMILIES.index(e.family), e.group_id))


def lookup(group_id: str, tables_dir=None, max_order: int = 64) -> CatalogEntry:
    gid = _ALIASES.get(group_id, group_id)
    for e in catalog(max_order, tables_dir):
        if e.group_id == gid:
            return e
    raise UnknownGroup(f"no catalog group with id {group_id!r}")


def get_group(group_id: str, tables_dir=None) -> Group:
    return lookup(group_id, tables_dir).build()


__all__ = ["CatalogEntry", "FileParseError", "builtin_catalog", "catalog", "get_group", "lookup"]
