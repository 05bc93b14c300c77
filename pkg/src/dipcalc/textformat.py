"""Line-oriented document format for categories, groupoids and friends.

A document looks like::

    # comment
    kind groupoid
    name Z2
    [objects]
    *
    [arrows]
    0 * *
    ...

Tokens are integers, bare words, or parenthesised tuples without spaces,
e.g. ``(0,(1,a))``.  Serialization is canonical: meta lines in a fixed
order, sections in a fixed order per kind, rows sorted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diptych import Prediptych
from .fincat import FinCategory
from .groupoid import FinGroupoid, GroupoidMorphism

KINDS = ("category", "diptych", "groupoid", "morphism", "action", "cover", "cocycle", "butterfly")
META_KEYS = ("name", "comment")

_CAT = ("objects", "arrows", "identity", "comp")
SECTION_ORDER = {
    "category": _CAT,
    "groupoid": _CAT + ("inverse",),
    "diptych": _CAT + ("good_monos", "good_epis"),
    "morphism": tuple(f"source:{s}" for s in _CAT + ("inverse",))
                + tuple(f"target:{s}" for s in _CAT + ("inverse",)) + ("f0", "f1"),
    "action": tuple(f"G:{s}" for s in _CAT + ("inverse",)) + ("E", "moment", "act"),
    "cover": ("B", "pieces"),
    "cocycle": ("B", "pieces") + tuple(f"target:{s}" for s in _CAT + ("inverse",)) + ("table",),
}
BUTTERFLY_NODES = ("R", "Rp", "K", "G", "Gp")
BUTTERFLY_EDGES = ("i", "ip", "q", "qp", "r", "rp")
SECTION_ORDER["butterfly"] = (("nodes", "edges", "flags")
                              + tuple(f"{n}:{s}" for n in BUTTERFLY_NODES for s in ("objects", "arrows"))
                              + tuple(f"{e}:{s}" for e in BUTTERFLY_EDGES for s in ("f0", "f1")))

_WORD = re.compile(r"[A-Za-z_*'][A-Za-z0-9_*'.+-]*\Z")
_INT = re.compile(r"-?[0-9]+\Z")


class ParseError(ValueError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"line {line}, col {col}: {message}" if line else message)
        self.message = message
        self.line = line
        self.col = col


class ConversionError(ValueError):
    pass


# ---------------------------------------------------------------- tokens

def encode(value) -> str:
    if isinstance(value, bool):
        raise ConversionError("booleans are not ids")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        if not _WORD.match(value):
            raise ConversionError(f"string id {value!r} is not a bare word")
        return value
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value, key=sort_key) if isinstance(value, (frozenset, set)) else value
        return "(" + ",".join(encode(v) for v in items) + ")"
    raise ConversionError(f"cannot encode {value!r}")


def decode(text: str, line: int = 0, col: int = 0):
    pos = 0

    def parse():
        nonlocal pos
        if pos < len(text) and text[pos] == "(":
            pos += 1
            items = []
            if pos < len(text) and text[pos] == ")":
                pos += 1
                return tuple(items)
            while True:
                items.append(parse())
                if pos >= len(text):
                    raise ParseError("unclosed tuple", line, col + pos)
                if text[pos] == ",":
                    pos += 1
                    continue
                if text[pos] == ")":
                    pos += 1
                    return tuple(items)
                raise ParseError(f"unexpected {text[pos]!r}", line, col + pos)
        start = pos
        while pos < len(text) and text[pos] not in ",()":
            pos += 1
        atom = text[start:pos]
        if _INT.match(atom):
            return int(atom)
        if _WORD.match(atom):
            return atom
        raise ParseError(f"bad token {atom!r}", line, col + start)

    value = parse()
    if pos != len(text):
        raise ParseError(f"trailing characters {text[pos:]!r}", line, col + pos)
    return value


def sort_key(value):
    """Total order on ids: integers, then words, then tuples (elementwise)."""
    if isinstance(value, int):
        return (0, value)
    if isinstance(value, str):
        return (1, value)
    return (2, tuple(sort_key(v) for v in value))


# ---------------------------------------------------------------- documents

@dataclass
class Document:
    kind: str
    sections: dict = field(default_factory=dict)    # name -> list of rows (tuples of values)
    meta: dict = field(default_factory=dict)
    lines: dict = field(default_factory=dict, compare=False)   # (section, row index) -> line number

    def rows(self, name) -> list:
        return self.sections.get(name, [])


def serialize(doc: Document) -> str:
    if doc.kind not in KINDS:
        raise ConversionError(f"unknown kind {doc.kind!r}")
    out = [f"kind {doc.kind}"]
    for key in META_KEYS:
        if doc.meta.get(key):
            out.append(f"{key} {doc.meta[key]}")
    order = SECTION_ORDER[doc.kind]
    for name in order:
        if name not in doc.sections:
            continue
        out.append(f"[{name}]")
        rows = sorted(doc.sections[name], key=lambda r: tuple(sort_key(v) for v in r))
        out.extend(" ".join(encode(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


_ROW_WIDTH = {"objects": 1, "arrows": 3, "identity": 2, "comp": 3, "inverse": 2, "good_monos": 1,
              "good_epis": 1, "f0": 2, "f1": 2, "E": 1, "moment": 2, "act": 3, "B": 1, "pieces": 2,
              "table": 4, "nodes": 3, "edges": 3, "flags": 2}


def parse(text: str) -> Document:
    kind = None
    meta, sections, lines = {}, {}, {}
    current = None
    for n, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        stripped = line.split("#", 1)[0].rstrip() if not line.lstrip().startswith(("comment ",)) else line.rstrip()
        if not stripped.strip():
            continue
        indent = len(stripped) - len(stripped.lstrip())
        stripped = stripped.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", n, indent + 1)
            current = stripped[1:-1]
            if kind is None:
                raise ParseError("section before kind line", n, indent + 1)
            if current not in SECTION_ORDER[kind]:
                raise ParseError(f"unknown section {current!r} for kind {kind}", n, indent + 2)
            if current in sections:
                raise ParseError(f"duplicate section {current!r}", n, indent + 2)
            sections[current] = []
            lines[(current, -1)] = n
            continue
        if current is None:
            key, _, value = stripped.partition(" ")
            if key == "kind":
                if value not in KINDS:
                    raise ParseError(f"unknown kind {value!r}", n, indent + 6)
                kind = value
            elif key in META_KEYS:
                if kind is None:
                    raise ParseError("meta line before kind line", n, indent + 1)
                meta[key] = value.strip()
            else:
                raise ParseError(f"unexpected line {stripped!r}", n, indent + 1)
            continue
        row, col = [], indent + 1
        for tok in stripped.split():
            at = line.index(tok, col - 1) + 1
            row.append(decode(tok, n, at))
            col = at + len(tok)
        base = current.split(":")[-1]
        width = _ROW_WIDTH.get(base)
        if width is not None and len(row) != width:
            raise ParseError(f"section {current!r} expects {width} fields, got {len(row)}", n, indent + 1)
        lines[(current, len(sections[current]))] = n
        sections[current].append(tuple(row))
    if kind is None:
        raise ParseError("missing kind line", 1, 1)
    doc = Document(kind, sections, meta, lines)
    _check_references(doc)
    return doc


def _where(doc, section, idx):
    return doc.lines.get((section, idx), 0)


def _check_category_tables(doc: Document, prefix: str = "", groupoid: bool = False):
    p = prefix
    objs = doc.rows(f"{p}objects")
    if not objs:
        raise ParseError(f"no objects{' in ' + p[:-1] if p else ''}", _where(doc, f"{p}objects", -1) or 1, 1)
    seen = set()
    for k, (o,) in enumerate(objs):
        if o in seen:
            raise ParseError(f"duplicate object id {encode(o)}", _where(doc, f"{p}objects", k), 1)
        seen.add(o)
    arrows = {}
    for k, (a, s, t) in enumerate(doc.rows(f"{p}arrows")):
        if a in arrows:
            raise ParseError(f"duplicate arrow id {encode(a)}", _where(doc, f"{p}arrows", k), 1)
        for v in (s, t):
            if v not in seen:
                raise ParseError(f"dangling object id {encode(v)}", _where(doc, f"{p}arrows", k), 1)
        arrows[a] = (s, t)
    for k, (o, a) in enumerate(doc.rows(f"{p}identity")):
        if o not in seen:
            raise ParseError(f"dangling object id {encode(o)}", _where(doc, f"{p}identity", k), 1)
        if a not in arrows:
            raise ParseError(f"dangling arrow id {encode(a)}", _where(doc, f"{p}identity", k), 1)
    sections = ["comp"] + (["inverse"] if groupoid else [])
    for sec in sections:
        for k, row in enumerate(doc.rows(f"{p}{sec}")):
            for a in row:
                if a not in arrows:
                    raise ParseError(f"dangling arrow id {encode(a)}", _where(doc, f"{p}{sec}", k), 1)
    return seen, arrows


def _check_ids(doc, section, columns, known, what):
    for k, row in enumerate(doc.rows(section)):
        for c in columns:
            if row[c] not in known:
                raise ParseError(f"dangling {what} id {encode(row[c])}", _where(doc, section, k), 1)


def _check_references(doc: Document):
    kind = doc.kind
    if kind in ("category", "diptych", "groupoid"):
        objs, arrows = _check_category_tables(doc, "", kind == "groupoid")
        if kind == "diptych":
            _check_ids(doc, "good_monos", (0,), arrows, "arrow")
            _check_ids(doc, "good_epis", (0,), arrows, "arrow")
    elif kind == "morphism":
        so, sa = _check_category_tables(doc, "source:", True)
        to, ta = _check_category_tables(doc, "target:", True)
        _check_ids(doc, "f0", (0,), so, "object")
        _check_ids(doc, "f0", (1,), to, "object")
        _check_ids(doc, "f1", (0,), sa, "arrow")
        _check_ids(doc, "f1", (1,), ta, "arrow")
    elif kind == "action":
        go, ga = _check_category_tables(doc, "G:", True)
        E = {r[0] for r in doc.rows("E")}
        _check_ids(doc, "moment", (0,), E, "point")
        _check_ids(doc, "moment", (1,), go, "object")
        _check_ids(doc, "act", (0,), ga, "arrow")
        _check_ids(doc, "act", (1, 2), E, "point")
    elif kind in ("cover", "cocycle"):
        B = {r[0] for r in doc.rows("B")}
        if not B:
            raise ParseError("no points in B", 1, 1)
        _check_ids(doc, "pieces", (1,), B, "point")
        if kind == "cocycle":
            _, ta = _check_category_tables(doc, "target:", True)
            _check_ids(doc, "table", (2,), B, "point")
            _check_ids(doc, "table", (3,), ta, "arrow")


# ---------------------------------------------------------------- converters

def _category_sections(c: FinCategory, prefix: str = "") -> dict:
    return {
        f"{prefix}objects": [(o,) for o in c.objects],
        f"{prefix}arrows": [(a, s, t) for a, (s, t) in c.arrows.items()],
        f"{prefix}identity": [(o, a) for o, a in c.identity.items()],
        f"{prefix}comp": [(g, f, h) for (g, f), h in c.comp.items()],
    }


def _groupoid_sections(g: FinGroupoid, prefix: str = "") -> dict:
    s = _category_sections(g.cat, prefix)
    s[f"{prefix}inverse"] = [(a, b) for a, b in g.inverse.items()]
    return s


def _category_from(doc: Document, prefix: str = "", name: str = "") -> FinCategory:
    objects = sorted((r[0] for r in doc.rows(f"{prefix}objects")), key=sort_key)
    arrows = {a: (s, t) for a, s, t in sorted(doc.rows(f"{prefix}arrows"), key=lambda r: sort_key(r[0]))}
    identity = {o: a for o, a in doc.rows(f"{prefix}identity")}
    comp = {(g, f): h for g, f, h in doc.rows(f"{prefix}comp")}
    return FinCategory(objects, arrows, identity, comp, name)


def _groupoid_from(doc: Document, prefix: str = "", name: str = "") -> FinGroupoid:
    cat = _category_from(doc, prefix, name)
    return FinGroupoid(cat, {a: b for a, b in doc.rows(f"{prefix}inverse")}, name)


def to_document(obj, name: str = "", comment: str = "") -> Document:
    from .butterfly import ButterflyDiagram
    from .conjugation import Cocycle, Cover
    from .diptych import Diptych
    from .morphism import ActionLaw
    meta = {"name": name or getattr(obj, "name", "") or "", "comment": comment}
    if isinstance(obj, FinGroupoid):
        return Document("groupoid", _groupoid_sections(obj), meta)
    if isinstance(obj, (Prediptych, Diptych)):
        pre = obj.pre if isinstance(obj, Diptych) else obj
        s = _category_sections(pre.cat)
        s["good_monos"] = [(a,) for a in pre.Di]
        s["good_epis"] = [(a,) for a in pre.Ds]
        return Document("diptych", s, meta)
    if isinstance(obj, FinCategory):
        return Document("category", _category_sections(obj), meta)
    if isinstance(obj, GroupoidMorphism):
        s = _groupoid_sections(obj.source, "source:")
        s.update(_groupoid_sections(obj.target, "target:"))
        s["f0"] = [(x, obj.f0[x]) for x in obj.source.objects]
        s["f1"] = [(a, obj.f1[a]) for a in obj.source.arrows]
        return Document("morphism", s, meta)
    if isinstance(obj, ActionLaw):
        s = _groupoid_sections(obj.G, "G:")
        s["E"] = [(x,) for x in obj.E]
        s["moment"] = [(x, obj.moment[x]) for x in obj.E]
        s["act"] = [(g, x, y) for (g, x), y in obj.lam.items()]
        return Document("action", s, meta)
    if isinstance(obj, Cover):
        return Document("cover", {"B": [(x,) for x in obj.B],
                                  "pieces": [(i, x) for i, p in enumerate(obj.pieces) for x in p]}, meta)
    if isinstance(obj, Cocycle):
        s = {"B": [(x,) for x in obj.cover.B],
             "pieces": [(i, x) for i, p in enumerate(obj.cover.pieces) for x in p]}
        s.update(_groupoid_sections(obj.target, "target:"))
        s["table"] = [(a[0][0], a[1][0], a[1][1], obj.g.f1[a]) for a in obj.g.source.arrows]
        return Document("cocycle", s, meta)
    if isinstance(obj, ButterflyDiagram):
        nodes, edges = obj.nodes(), obj.edges()
        node_of = {id(g): n for n, g in nodes.items()}
        s = {"nodes": [(n, len(g.objects), len(g.arrows)) for n, g in nodes.items()],
             "edges": [(e, node_of.get(id(m.source), "?"), node_of.get(id(m.target), "?"))
                       for e, m in edges.items()],
             "flags": [(k, "true" if v else "false") for k, v in obj.flags.items()
                       if isinstance(v, bool)]}
        for n, g in nodes.items():
            s[f"{n}:objects"] = [(o,) for o in g.objects]
            s[f"{n}:arrows"] = [(a, x, y) for a, (x, y) in g.arrows.items()]
        for e, m in edges.items():
            s[f"{e}:f0"] = [(x, m.f0[x]) for x in m.source.objects]
            s[f"{e}:f1"] = [(a, m.f1[a]) for a in m.source.arrows]
        return Document("butterfly", s, meta)
    raise ConversionError(f"cannot convert {type(obj).__name__}")


def from_document(doc: Document):
    from .conjugation import Cover, cocycle_from_table
    from .morphism import ActionLaw
    name = doc.meta.get("name", "")
    if doc.kind == "category":
        return _category_from(doc, "", name)
    if doc.kind == "groupoid":
        return _groupoid_from(doc, "", name)
    if doc.kind == "diptych":
        c = _category_from(doc, "", name)
        return Prediptych(c, {r[0] for r in doc.rows("good_monos")}, {r[0] for r in doc.rows("good_epis")}, name)
    if doc.kind == "morphism":
        src = _groupoid_from(doc, "source:", "source")
        tgt = _groupoid_from(doc, "target:", "target")
        return GroupoidMorphism(src, tgt, dict(doc.rows("f0")), dict(doc.rows("f1")), name)
    if doc.kind == "action":
        G = _groupoid_from(doc, "G:", "G")
        E = tuple(sorted((r[0] for r in doc.rows("E")), key=sort_key))
        return ActionLaw(G, E, dict(doc.rows("moment")), {(g, x): y for g, x, y in doc.rows("act")})
    if doc.kind in ("cover", "cocycle"):
        pieces = {}
        for i, x in doc.rows("pieces"):
            pieces.setdefault(i, []).append(x)
        B = sorted((r[0] for r in doc.rows("B")), key=sort_key)
        cover = Cover(B, [sorted(pieces[i], key=sort_key) for i in sorted(pieces, key=sort_key)])
        if doc.kind == "cover":
            return cover
        target = _groupoid_from(doc, "target:", "target")
        return cocycle_from_table(cover, target, {(j, i, x): g for j, i, x, g in doc.rows("table")})
    raise ConversionError(f"documents of kind {doc.kind!r} are write-only")
