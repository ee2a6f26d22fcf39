"""The ``.qpr`` presentation language and the text/JSON/DOT emitters.

A file looks like::

    quiver R {
      vertices: 1, 2;
      arrows:
        a11: 1 -> 1;
        a12: 1 -> 2;
        a21: 2 -> 1;
      relations:
        a11*a11*a11 - a12*a21;
        a11*a12;
        a21*a11;
    }
    extend (3, 2)
    staircase { 1: 1, 2, 2; 2: 1, 2; }

Labels that are not plain words are written in double quotes. An optional
``socle { 1: a11*a11*a11; }`` block pins the socle paths used by the
staircase construction. ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .block import BlockQuiver, BlockSpec
from .harada import StaircaseSpec
from .quiver import Path, PathCombination, Presentation, Quiver, QuiverError
from .scalars import QQ, Field, FieldMismatchError

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<arrow>->)
  | (?P<word>[A-Za-z0-9_]+)
  | (?P<punct>[{}();:,+\-*/])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str  # word, string, punct, eof
    text: str
    line: int
    col: int

    @property
    def value(self) -> str:
        if self.kind == "string":
            return re.sub(r"\\(.)", r"\1", self.text[1:-1])
        return self.text


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        col = pos - line_start + 1
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "arrow":
            out.append(Token("punct", "->", line, col))
        elif kind in ("word", "string", "punct"):
            out.append(Token(kind, m.group(), line, col))
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


@dataclass
class SourceFile:
    text: str
    presentation: Presentation
    block: BlockSpec | None = None
    staircase: StaircaseSpec | None = None
    socle_paths: dict[int, Path] | None = None
    spans: dict[str, tuple[int, int]] = field(default_factory=dict)


class _Parser:
    def __init__(self, text: str, F: Field):
        self.toks = tokenize(text)
        self.i = 0
        self.F = F
        self.spans: dict[str, tuple[int, int]] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(msg, tok.line, tok.col)

    def at(self, text: str) -> bool:
        return self.tok.kind in ("punct", "word") and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            self.error(f"expected '{text}', found '{shown}'")
        return self.next()

    def ident(self, what: str) -> str:
        if self.tok.kind not in ("word", "string"):
            self.error(f"expected {what}")
        t = self.next()
        return t.value

    def integer(self) -> int:
        if self.tok.kind != "word" or not self.tok.text.isdigit():
            self.error("expected an integer")
        return int(self.next().text)

    # -- grammar -----------------------------------------------------------
    def file(self, text: str) -> SourceFile:
        self.expect("quiver")
        name = self.ident("quiver name")
        self.expect("{")
        self.expect("vertices")
        self.expect(":")
        vertices = []
        while not self.at(";"):
            tok = self.tok
            v = self.ident("vertex label")
            if v in vertices:
                self.error(f"duplicate vertex {v!r}", tok)
            vertices.append(v)
            self.spans[f"vertex:{v}"] = (tok.line, tok.col)
            if self.at(","):
                self.next()
        self.expect(";")
        arrows = []
        if self.at("arrows"):
            self.next()
            self.expect(":")
            while self.tok.kind in ("word", "string") and not self.at("relations"):
                tok = self.tok
                label = self.ident("arrow label")
                self.expect(":")
                s_tok = self.tok
                s = self.ident("source vertex")
                self.expect("->")
                t_tok = self.tok
                t = self.ident("target vertex")
                self.expect(";")
                for v, vt in ((s, s_tok), (t, t_tok)):
                    if v not in vertices:
                        self.error(f"unknown vertex {v!r}", vt)
                if any(a[0] == label for a in arrows):
                    self.error(f"duplicate arrow {label!r}", tok)
                arrows.append((label, s, t))
                self.spans[f"arrow:{label}"] = (tok.line, tok.col)
        quiver = Quiver.from_labels(vertices, arrows)
        relations = []
        if self.at("relations"):
            self.next()
            self.expect(":")
            while not self.at("}"):
                tok = self.tok
                relations.append(self.relexpr(quiver))
                self.spans[f"relation:{len(relations)}"] = (tok.line, tok.col)
                self.expect(";")
        self.expect("}")
        pres = Presentation(quiver, tuple(relations), self.F, name)
        block = stair = socle = None
        while self.tok.kind != "eof":
            if self.at("extend"):
                self.next()
                self.expect("(")
                n = [self.integer()]
                while self.at(","):
                    self.next()
                    n.append(self.integer())
                self.expect(")")
                if len(n) != len(vertices):
                    self.error(f"extend needs {len(vertices)} sizes, got {len(n)}")
                if min(n) < 1:
                    self.error("block sizes must be positive")
                block = BlockSpec(tuple(n))
            elif self.at("staircase"):
                self.next()
                rows = self.keyed_block(vertices, self.int_list)
                missing = [v for v in vertices if v not in rows]
                if missing:
                    self.error(f"staircase misses vertices {missing}")
                stair = StaircaseSpec(tuple(tuple(rows[v]) for v in vertices))
            elif self.at("socle"):
                self.next()
                rows = self.keyed_block(vertices, lambda: self.path(quiver))
                socle = {vertices.index(v): p for v, p in rows.items()}
            else:
                self.error(f"unexpected '{self.tok.text}'")
        return SourceFile(text, pres, block, stair, socle, self.spans)

    def keyed_block(self, vertices, item):
        self.expect("{")
        out = {}
        while not self.at("}"):
            tok = self.tok
            v = self.ident("vertex label")
            if v not in vertices:
                self.error(f"unknown vertex {v!r}", tok)
            self.expect(":")
            out[v] = item()
            self.expect(";")
        self.expect("}")
        return out

    def int_list(self):
        out = [self.integer()]
        while self.at(","):
            self.next()
            out.append(self.integer())
        return out

    def arrow(self, quiver: Quiver) -> str:
        tok = self.tok
        label = self.ident("arrow label")
        if label not in {a.label for a in quiver.arrows}:
            self.error(f"unknown arrow {label!r}", tok)
        return label

    def path(self, quiver: Quiver) -> Path:
        tok = self.tok
        labels = [self.arrow(quiver)]
        while self.at("*"):
            self.next()
            labels.append(self.arrow(quiver))
        try:
            return quiver.path(*labels)
        except QuiverError as exc:
            self.error(str(exc), tok)

    def coefficient(self, quiver: Quiver):
        """Parse a literal if one starts here, else return None."""
        tok = self.tok
        if tok.kind != "word" or not tok.text.isdigit():
            return None
        labels = {a.label for a in quiver.arrows}
        nxt = self.toks[self.i + 1]
        if tok.text in labels and not (nxt.kind in ("punct", "word") and nxt.text in ("/", "mod")):
            return None
        text = self.next().text
        if self.at("/"):
            self.next()
            text += "/" + str(self.integer())
        elif self.at("mod"):
            self.next()
            text += " mod " + str(self.integer())
        try:
            value = self.F.parse(text)
        except (ValueError, ZeroDivisionError, FieldMismatchError) as exc:
            self.error(str(exc), tok)
        self.expect("*")
        return value

    def term(self, quiver: Quiver, sign) -> PathCombination:
        coeff = self.coefficient(quiver)
        coeff = self.F.one if coeff is None else coeff
        tok = self.tok
        labels = [self.arrow(quiver)]
        while self.at("*") or self.tok.kind in ("word", "string"):
            if self.at("*"):
                self.next()
            labels.append(self.arrow(quiver))
        try:
            p = quiver.path(*labels)
        except QuiverError as exc:
            self.error(str(exc), tok)
        return PathCombination.from_path(quiver, p, sign * coeff)

    def relexpr(self, quiver: Quiver) -> PathCombination:
        sign = self.F.one
        if self.at("-"):
            self.next()
            sign = -sign
        total = self.term(quiver, sign)
        while self.at("+") or self.at("-"):
            sign = self.F.one if self.next().text == "+" else -self.F.one
            total = total + self.term(quiver, sign)
        return total


def parse(text: str, field: Field = QQ) -> SourceFile:
    """Parse ``.qpr`` text. Semantic checks are left to ``validate_presentation``."""
    return _Parser(text, field).file(text)


def parse_file(path, field: Field = QQ) -> SourceFile:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read(), field)


# ---------------------------------------------------------------------------
# emitters
# ---------------------------------------------------------------------------

_KEYWORDS = {"quiver", "vertices", "arrows", "relations", "extend", "staircase", "socle", "mod"}


def quote(label: str) -> str:
    if re.fullmatch(r"[A-Za-z0-9_]+", label) and label not in _KEYWORDS:
        return label
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_path(quiver: Quiver, p: Path) -> str:
    return "*".join(quote(quiver.arrows[k].label) for k in p.arrows)


def format_combination(x: PathCombination, F: Field) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for n, (p, c) in enumerate(x.sorted_terms()):
        neg = F.characteristic == 0 and c < 0
        mag = -c if neg else c
        lit = "" if mag == F.one else F.format(mag) + "*"
        body = lit + format_path(x.quiver, p)
        if n == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def emit_canonical(pres: Presentation, block: BlockSpec | None = None,
                   staircase: StaircaseSpec | None = None, socle: dict[int, Path] | None = None) -> str:
    q = pres.quiver
    lines = [f"quiver {quote(pres.name)} {{"]
    lines.append("  vertices: " + ", ".join(quote(v) for v in q.vertices) + ";")
    if q.arrows:
        lines.append("  arrows:")
        for a in q.arrows:
            lines.append(f"    {quote(a.label)}: {quote(q.vertices[a.source])} -> {quote(q.vertices[a.target])};")
    if pres.relations:
        lines.append("  relations:")
        for r in pres.relations:
            lines.append(f"    {format_combination(r, pres.field)};")
    lines.append("}")
    if block is not None:
        lines.append("extend (" + ", ".join(map(str, block.n)) + ")")
    if staircase is not None:
        rows = " ".join(f"{quote(v)}: {', '.join(map(str, row))};" for v, row in zip(q.vertices, staircase.c))
        lines.append("staircase { " + rows + " }")
    if socle:
        rows = " ".join(f"{quote(q.vertices[i])}: {format_path(q, p)};" for i, p in sorted(socle.items()))
        lines.append("socle { " + rows + " }")
    return "\n".join(lines) + "\n"


def pretty_arrow(label: str) -> str:
    """Human-readable arrow name: ``d:1:2`` -> ``δ[1,2]``, ``b:a12`` -> ``β(a12)``."""
    if label.startswith("d:"):
        return "δ[" + ",".join(label[2:].split(":")) + "]"
    if label.startswith("b:"):
        return f"β({label[2:]})"
    return label


def pretty_combination(x: PathCombination, F: Field) -> str:
    if x.is_zero():
        return "0"
    out = []
    for n, (p, c) in enumerate(x.sorted_terms()):
        word = "·".join(pretty_arrow(x.quiver.arrows[k].label) for k in p.arrows)
        neg = F.characteristic == 0 and c < 0
        mag = -c if neg else c
        lit = "" if mag == F.one else F.format(mag) + "·"
        sep = ("-" if neg else "") if n == 0 else (" - " if neg else " + ")
        out.append(sep + lit + word)
    return "".join(out)


def _arrow_kind(bq: BlockQuiver | None, k: int) -> str:
    if bq is None:
        return "alpha"
    return bq.arrow_kind(k)


def presentation_to_dict(pres: Presentation, bq: BlockQuiver | None = None) -> dict:
    q = pres.quiver
    out = {
        "format_version": FORMAT_VERSION,
        "name": pres.name,
        "field": pres.field.name,
        "vertices": list(q.vertices),
        "vertex_index": {v: i for i, v in enumerate(q.vertices)},
        "arrows": [{"label": a.label, "src": q.vertices[a.source], "tgt": q.vertices[a.target],
                    "kind": _arrow_kind(bq, k)} for k, a in enumerate(q.arrows)],
        "relations": [[{"coeff": pres.field.format(c), "path": [q.arrows[k].label for k in p.arrows]}
                       for p, c in r.sorted_terms()] for r in pres.relations],
    }
    if bq is not None:
        src = bq.source.quiver
        out["extension_map"] = {q.arrows[bq.beta[a]].label: src.arrows[a].label for a in range(len(src.arrows))}
        out["blocks"] = {src.vertices[i]: n for i, n in enumerate(bq.spec.n)}
    return out


def emit_json(obj, **extra) -> str:
    """Serialise a presentation, a report (anything with ``to_dict``) or a plain dict."""
    if isinstance(obj, Presentation):
        data = presentation_to_dict(obj, extra.pop("block_quiver", None))
    elif hasattr(obj, "to_dict"):
        data = {"format_version": FORMAT_VERSION, **obj.to_dict()}
    else:
        data = {"format_version": FORMAT_VERSION, **obj}
    data.update(extra)
    return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=False) + "\n"


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(quiver: Quiver, name: str = "Q") -> str:
    lines = [f"digraph {_dot_id(name)} {{"]
    for v in sorted(quiver.vertices):
        lines.append(f"  {_dot_id(v)} [label={_dot_id(v)}];")
    edges = sorted((quiver.vertices[a.source], quiver.vertices[a.target], a.label) for a in quiver.arrows)
    for s, t, label in edges:
        lines.append(f"  {_dot_id(s)} -> {_dot_id(t)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
