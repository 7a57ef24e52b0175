"""Literature constants: irreducible reflection group types and ambient groups.

Irreducible types are identified by the pair (group order, number of
reflecting hyperplanes).  Imprimitive families are generated from the
G(m, p, n) formulas; only the exceptional types are typed in by hand.
"""
from __future__ import annotations

from math import factorial
from typing import NamedTuple


class TypeInfo(NamedTuple):
    name: str
    rank: int
    order: int
    lines: int


def imprimitive_pair(m: int, p: int, n: int) -> tuple[int, int]:
    """(order, line count) of G(m, p, n)."""
    order = m ** n * factorial(n) // p
    lines = m * n * (n - 1) // 2 + (n if p < m else 0)
    return order, lines


# Exceptional types: (rank, order, lines).
_EXCEPTIONAL = {
    "L1": (1, 3, 1),
    "L2": (2, 24, 4),
    "L3": (3, 648, 12),
    "M3": (3, 1296, 21),
    "J3(4)": (3, 336, 21),
    "J3(5)": (3, 2160, 45),
    "H3": (3, 120, 15),
    "F4": (4, 1152, 24),
    "N4": (4, 7680, 40),
    "H4": (4, 14400, 60),
    "O4": (4, 46080, 60),
    "L4": (4, 155520, 40),
    "K5": (5, 51840, 45),
    "K6": (6, 39191040, 126),
    "E6": (6, 51840, 36),
    "E7": (7, 2903040, 63),
    "E8": (8, 696729600, 120),
}


def _entries() -> list[TypeInfo]:
    # Order matters: on a shared (order, lines) pair the first name wins,
    # which gives B2 over D2(4), A2 over D2(3) and A3 over D3.
    out = []
    for k in range(1, 9):
        out.append(TypeInfo(f"A{k}", k, factorial(k + 1), k * (k + 1) // 2))
    for k in range(2, 9):
        out.append(TypeInfo(f"B{k}", k, *imprimitive_pair(2, 1, k)))
    for k in range(3, 9):
        out.append(TypeInfo(f"D{k}", k, *imprimitive_pair(2, 2, k)))
    for m in (3, 4, 5):
        out.append(TypeInfo(f"D2({m})", 2, *imprimitive_pair(m, m, 2)))
    # B_n^(4) is G(4,2,n); B_n^(3) is read as G(3,1,n), the only
    # imprimitive group of that rank with both order-2 and order-3 reflections.
    for n in (2, 3, 4):
        out.append(TypeInfo(f"B{n}(4)", n, *imprimitive_pair(4, 2, n)))
    for n in (2, 3):
        out.append(TypeInfo(f"B{n}(3)", n, *imprimitive_pair(3, 1, n)))
    for n in (3, 4, 5, 6):
        out.append(TypeInfo(f"D{n}(3)", n, *imprimitive_pair(3, 3, n)))
    for n in (3, 4):
        out.append(TypeInfo(f"D{n}(4)", n, *imprimitive_pair(4, 4, n)))
    for name, (rank, order, lines) in _EXCEPTIONAL.items():
        out.append(TypeInfo(name, rank, order, lines))
    return out


# Pairs that legitimately name the same group; the first name is used.
COINCIDENCES = {"D2(4)": "B2", "D2(3)": "A2", "D3": "A3"}


def _build() -> tuple[dict[tuple[int, int], TypeInfo], dict[str, TypeInfo]]:
    by_pair: dict[tuple[int, int], TypeInfo] = {}
    by_name: dict[str, TypeInfo] = {}
    for info in _entries():
        if info.name in by_name:
            raise AssertionError(f"duplicate type name {info.name}")
        by_name[info.name] = info
        key = (info.order, info.lines)
        if key in by_pair:
            if COINCIDENCES.get(info.name) != by_pair[key].name:
                raise AssertionError(
                    f"(order, lines) collision {key}: {by_pair[key].name} and {info.name}")
            continue
        by_pair[key] = info
    return by_pair, by_name


TYPE_TABLE, TYPES_BY_NAME = _build()


def lookup(order: int, lines: int) -> str | None:
    """Name of the irreducible type with this (order, line count), or None."""
    info = TYPE_TABLE.get((order, lines))
    return info.name if info else None


def type_rank(name: str) -> int:
    return TYPES_BY_NAME[name].rank


class AmbientInfo(NamedTuple):
    index: int
    name: str
    rank: int
    order: int
    reflections: int
    lines: int


# Shephard-Todd index -> Cohen name.  Reflection counts differ from line
# counts only for L3, M3 and L4, whose order-3 hyperplanes carry two reflections.
AMBIENT = {
    23: AmbientInfo(23, "H3", 3, 120, 15, 15),
    24: AmbientInfo(24, "J3(4)", 3, 336, 21, 21),
    25: AmbientInfo(25, "L3", 3, 648, 24, 12),
    26: AmbientInfo(26, "M3", 3, 1296, 33, 21),
    27: AmbientInfo(27, "J3(5)", 3, 2160, 45, 45),
    28: AmbientInfo(28, "F4", 4, 1152, 24, 24),
    29: AmbientInfo(29, "N4", 4, 7680, 40, 40),
    30: AmbientInfo(30, "H4", 4, 14400, 60, 60),
    31: AmbientInfo(31, "O4", 4, 46080, 60, 60),
    32: AmbientInfo(32, "L4", 4, 155520, 80, 40),
    33: AmbientInfo(33, "K5", 5, 51840, 45, 45),
    34: AmbientInfo(34, "K6", 6, 39191040, 126, 126),
    35: AmbientInfo(35, "E6", 6, 51840, 36, 36),
    36: AmbientInfo(36, "E7", 7, 2903040, 63, 63),
    37: AmbientInfo(37, "E8", 8, 696729600, 120, 120),
}

LARGE_GROUPS = (34, 36, 37)


def _check_ambient() -> None:
    for info in AMBIENT.values():
        t = TYPES_BY_NAME[info.name]
        if (t.rank, t.order, t.lines) != (info.rank, info.order, info.lines):
            raise AssertionError(f"ambient constants disagree with type table for {info.name}")


_check_ambient()
