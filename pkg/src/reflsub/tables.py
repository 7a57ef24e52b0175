"""Text renderings of a class atlas, their parsers, and table comparison.

Two formats are produced.  ``showtable`` is one line per class,

    P | A1 | [ A1A1, A2, D2(5) ]

with multiplicities written out and the full group included.  ``grid``
groups classes into rank blocks separated by rules, uses the ``kT+...``
labels, puts the parabolic closure first with a ``*`` when it is a simple
extension, and omits the full group.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .subsystems import ClassAtlas, SubgroupClass, component_key, showtable_label

PARABOLIC_MARK = "℘"
RULE = "---"


@dataclass(frozen=True)
class TableRow:
    parabolic: bool
    label: str
    extensions: tuple
    closure_first: bool = False
    rank: int = 0


@dataclass(frozen=True)
class RenderedTable:
    group: int
    name: str
    rows: tuple
    format: str


# ---------------------------------------------------------------------------
# labels

def showtable_name(cls: SubgroupClass) -> str:
    base = showtable_label(cls.rep.components)
    return base if cls.index is None else f"{base}.{cls.index}"


def label_sort_key(label: str) -> tuple:
    """Order labels by their components (letter, rank, superscript), then index."""
    base, _, idx = label.partition(".")
    parts = []
    for term in base.split("+"):
        m = re.match(r"(\d*)(.*)$", term)
        parts.append((component_key(m.group(2)), int(m.group(1) or 1)))
    return (tuple(parts), int(idx or 0))


def _class_key(c: SubgroupClass) -> tuple:
    return (c.rank, c.order, label_sort_key(c.label))


def _ordered_extensions(atlas: ClassAtlas, c: SubgroupClass) -> list[SubgroupClass]:
    exts = [atlas.classes[e] for e in c.extensions]
    first = [e for e in exts if c.closure_is_extension and e.id == c.closure]
    rest = sorted((e for e in exts if not first or e.id != c.closure),
                  key=lambda e: (not e.parabolic,) + _class_key(e))
    return first + rest


def table_rows(atlas: ClassAtlas, full: bool = True) -> list[TableRow]:
    top = atlas.full.id
    rows = []
    for c in atlas.classes:
        if not full and c.id == top:
            continue
        exts = _ordered_extensions(atlas, c)
        rows.append(TableRow(c.parabolic, c.label, tuple(e.label for e in exts),
                             c.closure_is_extension, c.rank))
    return rows


# ---------------------------------------------------------------------------
# showtable

def render_showtable(atlas: ClassAtlas) -> str:
    if not atlas.classes:
        return ""
    ordered = sorted(atlas.classes, key=lambda c: (not c.parabolic,) + _class_key(c))
    lines = []
    for c in ordered:
        exts = [showtable_name(e) for e in _ordered_extensions(atlas, c)]
        body = "[ " + ", ".join(exts) + " ]" if exts else "[]"
        lines.append(f"{'P' if c.parabolic else 'N'} | {showtable_name(c)} | {body}")
    return "\n".join(lines) + "\n"


_SHOW_ROW = re.compile(r"^\s*([PN])\s*\|\s*(\S+)\s*\|\s*\[(.*)\]\s*$")


def parse_showtable(text: str) -> dict:
    """label -> (parabolic, frozenset of extension labels)."""
    out = {}
    for raw in text.splitlines():
        if not raw.strip():
            continue
        m = _SHOW_ROW.match(raw)
        if not m:
            raise ValueError(f"not a showtable row: {raw!r}")
        exts = frozenset(x.strip() for x in m.group(3).split(",") if x.strip())
        out[m.group(2)] = (m.group(1) == "P", exts)
    return out


def atlas_showtable_map(atlas: ClassAtlas) -> dict:
    return {showtable_name(c): (c.parabolic,
                                frozenset(showtable_name(atlas.classes[e]) for e in c.extensions))
            for c in atlas.classes}


# ---------------------------------------------------------------------------
# grid

def render_grid(atlas: ClassAtlas, markdown: bool = False) -> str:
    rows = table_rows(atlas, full=False)
    rows.sort(key=lambda r: (r.rank, label_sort_key(r.label)))
    blocks: list[list[TableRow]] = []
    for r in rows:
        if not blocks or blocks[-1][0].rank != r.rank:
            blocks.append([])
        blocks[-1].append(r)
    title = f"Reflection subgroup classes of G{atlas.ambient} = {atlas.name}"
    if markdown:
        return _grid_markdown(title, blocks)
    width = max((len(r.label) for r in rows), default=0)
    out = [title]
    for i, block in enumerate(blocks):
        if i:
            out.append(RULE)
        for r in block:
            out.append(f"{PARABOLIC_MARK if r.parabolic else ' '} | {r.label:<{width}} | "
                       + ", ".join(_tag(r, j, e) for j, e in enumerate(r.extensions)))
    return "\n".join(out) + "\n"


def _tag(row: TableRow, j: int, label: str, bold: str = "*") -> str:
    if j == 0 and row.closure_first:
        return f"{bold}{label}{bold if bold != '*' else ''}"
    return label


def _grid_markdown(title: str, blocks) -> str:
    out = [f"**{title}**", "", "| | class | simple extensions |", "|---|---|---|"]
    for i, block in enumerate(blocks):
        if i:
            out.append("| | | |")
        for r in block:
            exts = ", ".join(_tag(r, j, e, bold="**") for j, e in enumerate(r.extensions))
            out.append(f"| {PARABOLIC_MARK if r.parabolic else ''} | {r.label} | {exts} |")
    return "\n".join(out) + "\n"


def parse_grid(text: str) -> dict:
    """label -> (parabolic, bold target or None, frozenset of extension labels).

    Accepts the rendered grid and the reference table files, whose marker
    column may also be written ``P``/``N``.
    """
    out = {}
    for raw in text.splitlines():
        line = raw.rstrip()
        if not line.strip() or line.strip() == RULE or "|" not in line:
            continue
        mark, label, exts = (x.strip() for x in line.split("|", 2))
        if mark not in ("", "N", "P", PARABOLIC_MARK):
            raise ValueError(f"bad marker in row: {raw!r}")
        bold = None
        items = set()
        for x in (e.strip() for e in exts.split(",")):
            if not x:
                continue
            if x.startswith("*"):
                x = x[1:]
                bold = x
            items.add(x)
        out[label] = (mark in ("P", PARABOLIC_MARK), bold, frozenset(items))
    return out


def atlas_grid_map(atlas: ClassAtlas) -> dict:
    top = atlas.full.id
    out = {}
    for c in atlas.classes:
        if c.id == top:
            continue
        bold = atlas.classes[c.closure].label if c.closure_is_extension else None
        out[c.label] = (c.parabolic, bold, frozenset(atlas.classes[e].label for e in c.extensions))
    return out


def render(atlas: ClassAtlas, fmt: str) -> str:
    if fmt == "showtable":
        return render_showtable(atlas)
    if fmt == "grid":
        return render_grid(atlas)
    if fmt == "markdown":
        return render_grid(atlas, markdown=True)
    raise ValueError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# comparison up to renaming of .i indices

def _split(label: str) -> tuple[str, str]:
    base, _, idx = label.partition(".")
    return base, idx


@dataclass
class TableMatch:
    ok: bool
    renaming: dict
    differences: list


def _apply(renaming: dict, label):
    return renaming.get(label, label) if label is not None else None


def _row_diff(label, row, reference: dict, renaming: dict) -> list[str]:
    par, bold, exts = row
    ref_label = _apply(renaming, label)
    ref = reference.get(ref_label)
    if ref is None:
        return [f"{label}: no row {ref_label} in reference"]
    rpar, rbold, rexts = ref
    diffs = []
    if par != rpar:
        diffs.append(f"{ref_label}: parabolic flag {par} vs {rpar}")
    if _apply(renaming, bold) != rbold:
        diffs.append(f"{ref_label}: closure extension {_apply(renaming, bold)} vs {rbold}")
    mapped = frozenset(_apply(renaming, e) for e in exts)
    if mapped != rexts:
        diffs.append(f"{ref_label}: extensions {sorted(mapped)} vs {sorted(rexts)}")
    return diffs


def _diff(computed: dict, reference: dict, renaming: dict) -> list[str]:
    diffs = []
    for label, row in computed.items():
        diffs += _row_diff(label, row, reference, renaming)
    images = {_apply(renaming, x) for x in computed}
    diffs += [f"{label}: reference row has no computed counterpart"
              for label in reference if label not in images]
    return diffs


def _refine(computed: dict, reference: dict) -> tuple[dict, dict]:
    """Colour refinement on both tables at once, ignoring bold marks."""
    sides = (computed, reference)
    colours = [{lab: (_split(lab)[0], row[0]) for lab, row in side.items()} for side in sides]
    while True:
        before = len(set(colours[0].values()) | set(colours[1].values()))
        new = []
        for side, col in zip(sides, colours):
            incoming: dict[str, list] = {lab: [] for lab in side}
            for lab, row in side.items():
                for e in row[2]:
                    if e in incoming:
                        incoming[e].append(col[lab])
            new.append({lab: (col[lab],
                              tuple(sorted(repr(col.get(e, e)) for e in row[2])),
                              tuple(sorted(map(repr, incoming[lab]))))
                        for lab, row in side.items()})
        palette = {c: i for i, c in enumerate(sorted({repr(c) for col in new for c in col.values()}))}
        colours = [{lab: palette[repr(c)] for lab, c in col.items()} for col in new]
        if len(palette) == before:
            return colours[0], colours[1]


def match_tables(computed: dict, reference: dict) -> TableMatch:
    """Search for a per-type renaming of ``.i`` indices making the tables equal.

    Both arguments map label -> (parabolic, bold target, extension set).  The
    renaming with the fewest differing rows is returned; ``ok`` means none.
    """
    def bases(table):
        out: dict[str, list[str]] = {}
        for label in table:
            base, idx = _split(label)
            if idx:
                out.setdefault(base, []).append(label)
        return {b: sorted(v) for b, v in out.items()}

    groups, ref_groups = bases(computed), bases(reference)
    if {b: len(v) for b, v in groups.items()} != {b: len(v) for b, v in ref_groups.items()}:
        return TableMatch(False, {}, _diff(computed, reference, {}) or ["disambiguated types differ"])
    col, ref_col = _refine(computed, reference)
    todo = sorted((lab for labs in groups.values() for lab in labs),
                  key=lambda lab: sum(ref_col[r] == col[lab] for r in ref_groups[_split(lab)[0]]))
    cands = {lab: [r for r in ref_groups[_split(lab)[0]] if ref_col[r] == col[lab]] or
             ref_groups[_split(lab)[0]] for lab in todo}

    # each row is checked once, as soon as every indexed label in it is renamed
    position = {lab: k for k, lab in enumerate(todo)}
    due: list[list[str]] = [[] for _ in range(len(todo) + 1)]
    for label, row in computed.items():
        labels = [x for x in (label, row[1], *row[2]) if x is not None]
        due[max((position[x] + 1 for x in labels if x in position), default=0)].append(label)

    def cost(labels, renaming):
        return sum(1 for x in labels if _row_diff(x, computed[x], reference, renaming))

    best: list = [None, None]
    renaming: dict = {}
    used: set = set()

    def search(k: int, spent: int) -> None:
        if best[1] is not None and spent >= best[1]:
            return
        if k == len(todo):
            best[0], best[1] = dict(renaming), spent
            return
        lab = todo[k]
        for r in cands[lab]:
            if r in used:
                continue
            renaming[lab] = r
            used.add(r)
            search(k + 1, spent + cost(due[k + 1], renaming))
            used.discard(r)
            del renaming[lab]
            if best[1] == 0:
                return

    search(0, cost(due[0], {}))
    final = best[0] if best[0] is not None else {}
    diffs = _diff(computed, reference, final)
    return TableMatch(not diffs, final, diffs)


def load_reference_tables(path) -> dict:
    """Parse a file of ``group N`` blocks in grid syntax into {N: row map}."""
    tables: dict[int, dict] = {}
    chunk: list[str] = []
    current = None
    with open(path) as fh:
        for line in fh:
            m = re.match(r"^group (\d+)\s*$", line)
            if m:
                if current is not None:
                    tables[current] = parse_grid("".join(chunk))
                current, chunk = int(m.group(1)), []
            else:
                chunk.append(line)
    if current is not None:
        tables[current] = parse_grid("".join(chunk))
    return tables


def inconsistent_bold_marks(table: dict) -> list[tuple[str, str]]:
    """(row, bold target) pairs whose target the same table marks non-parabolic.

    A parabolic closure is parabolic, so such a mark contradicts the table.
    """
    out = []
    for label, (_, bold, _) in table.items():
        if bold is not None and bold in table and not table[bold][0]:
            out.append((label, bold))
    return sorted(out)


def drop_bold_marks(table: dict, marks) -> dict:
    marks = set(marks)
    return {label: (par, None if (label, bold) in marks else bold, exts)
            for label, (par, bold, exts) in table.items()}
