"""Text format for graphs and ultragraphs.

    # comment
    ultragraph G {
      universe nat;
      vertices v0@0 v1;
      edge e: v0 -> cofinite { v0 };
      edge f: v1 -> { v0 v1 };
      infinite v1;
      frontier v1;
      sigma { v1 -> 10; }
      let x = star(s(e)) * s(e);
    }

Finite universes index vertices in declaration order.  In nat mode a vertex
takes its ``@index`` if given, else the least index not otherwise claimed, in
order of first appearance; ``_N`` names the unlabelled vertex N.  Edge order is
declaration order and matters downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .structures import ANON, GEdge, Graph, UEdge, Ultragraph
from .vertexsets import NAT, Universe, VertexSet

ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<arrow>->)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)"
    r"|(?P<sym>[{}();:@=*+\-,])"
)


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: str, message: str | None = None):
        self.line, self.col, self.expected = line, col, expected
        self.message = message or f"expected {expected}"
        super().__init__(f"line {line}, col {col}: {self.message}")


@dataclass(frozen=True)
class Token:
    kind: str  # id | int | sym | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list:
    out = []
    line, start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(line, pos - start + 1, "a token", f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "nl":
            line, start = line + 1, m.end()
        elif kind not in ("ws", "comment"):
            out.append(Token("sym" if kind == "arrow" else kind, m.group(), line, pos - start + 1))
        pos = m.end()
    out.append(Token("eof", "", line, pos - start + 1))
    return out


@dataclass
class Document:
    structures: list = field(default_factory=list)
    bindings: dict = field(default_factory=dict)  # structure name -> {binding name: expression text}

    def get(self, name: str | None = None):
        if name is None:
            if not self.structures:
                raise KeyError("document has no structures")
            return self.structures[0]
        for s in self.structures:
            if s.name == name:
                return s
        raise KeyError(f"no structure named {name!r}")

    def __eq__(self, other):
        return (
            isinstance(other, Document)
            and [s.key() for s in self.structures] == [s.key() for s in other.structures]
            and self.bindings == other.bindings
        )


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected, tok=None, message=None):
        tok = tok or self.peek()
        found = "end of input" if tok.kind == "eof" else repr(tok.text)
        raise ParseError(tok.line, tok.col, expected, message or f"expected {expected}, found {found}")

    def expect(self, text):
        t = self.peek()
        if t.text != text or t.kind == "eof":
            self.fail(repr(text))
        return self.next()

    def ident(self, what="identifier"):
        t = self.peek()
        if t.kind != "id":
            self.fail(what)
        return self.next()

    def at(self, text):
        t = self.peek()
        return t.kind != "eof" and t.text == text

    # grammar ------------------------------------------------------------------------------
    def document(self):
        doc = Document()
        names = set()
        while self.peek().kind != "eof":
            kw = self.peek()
            if kw.text not in ("graph", "ultragraph"):
                self.fail("'graph' or 'ultragraph'")
            s, lets = self.structure()
            if s.name in names:
                raise ParseError(kw.line, kw.col, "a fresh structure name", f"duplicate structure name {s.name}")
            names.add(s.name)
            doc.structures.append(s)
            if lets:
                doc.bindings[s.name] = lets
        return doc

    def structure(self):
        kind = self.next()
        name = self.ident("structure name").text
        self.expect("{")
        universe = None
        vertices = []  # (token, explicit index or None)
        edges = []  # (name token, source ref, target)
        infinite, frontier, sigma, lets = [], [], {}, {}
        while not self.at("}"):
            t = self.peek()
            if t.kind == "eof":
                self.fail("'}'")
            word = self.ident("declaration").text
            if word == "universe":
                u = self.ident("'finite' or 'nat'")
                if u.text not in ("finite", "nat"):
                    self.fail("'finite' or 'nat'", u)
                universe = u.text
                self.expect(";")
            elif word == "vertices":
                while not self.at(";"):
                    vertices.append(self.ref())
                self.expect(";")
            elif word == "edge":
                en = self.ident("edge name")
                self.expect(":")
                src = self.ref()
                self.expect("->")
                edges.append((en, src, self.target(kind.text == "graph")))
                self.expect(";")
            elif word in ("infinite", "frontier"):
                while not self.at(";"):
                    (infinite if word == "infinite" else frontier).append(self.ref())
                self.expect(";")
            elif word == "sigma":
                self.expect("{")
                while not self.at("}"):
                    v = self.ident("vertex")
                    self.expect("->")
                    bits = self.next()
                    if bits.kind != "int" or set(bits.text) - {"0", "1"}:
                        self.fail("a bit string", bits)
                    if v.text in sigma:
                        raise ParseError(v.line, v.col, "one word per vertex", f"sigma word for {v.text} given twice")
                    sigma[v.text] = bits.text
                    self.expect(";")
                self.expect("}")
            elif word == "let":
                b = self.ident("binding name")
                self.expect("=")
                body = []
                while not self.at(";"):
                    if self.peek().kind == "eof":
                        self.fail("';'")
                    body.append(self.next().text)
                self.expect(";")
                if not body:
                    self.fail("an expression")
                lets[b.text] = join_tokens(body)
            else:
                self.fail("declaration", t)
        self.expect("}")
        return self._assemble(kind, name, universe, vertices, edges, infinite, frontier, sigma), lets

    def ref(self):
        t = self.ident("vertex")
        idx = None
        if self.at("@"):
            self.next()
            n = self.next()
            if n.kind != "int":
                self.fail("vertex index", n)
            idx = int(n.text)
        return t, idx

    def target(self, single):
        if single:
            if self.at("{") or self.at("cofinite"):
                self.fail("a single target vertex")
            return ("one", [self.ref()])
        mode = "fin"
        if self.at("cofinite"):
            self.next()
            mode = "cof"
        elif self.peek().kind == "id":
            return ("fin", [self.ref()])
        brace = self.expect("{")
        items = []
        while not self.at("}"):
            if self.peek().kind == "eof":
                self.fail("'}'")
            items.append(self.ref())
        self.expect("}")
        if mode == "fin" and not items:
            raise ParseError(brace.line, brace.col, "a nonempty range", "empty range")
        return (mode, items)

    # semantic checks ---------------------------------------------------------------------
    def _assemble(self, kind, name, universe, vertices, edges, infinite, frontier, sigma):
        is_graph = kind.text == "graph"
        nat = universe == "nat"
        if is_graph and nat:
            raise ParseError(kind.line, kind.col, "a finite graph", "graphs live in a finite universe")
        label_idx = {}
        declared = []
        explicit = {}
        for tok, idx in vertices:
            if tok.text == "cofinite" or (nat and ANON.fullmatch(tok.text)):
                raise ParseError(tok.line, tok.col, "a vertex name", f"{tok.text} is reserved")
            if tok.text in declared:
                raise ParseError(tok.line, tok.col, "a fresh vertex", f"duplicate vertex {tok.text}")
            if idx is not None:
                if not nat:
                    raise ParseError(tok.line, tok.col, "';'", "vertex indices need universe nat")
                if idx in explicit.values():
                    raise ParseError(tok.line, tok.col, "a fresh index", f"index {idx} used twice")
                explicit[tok.text] = idx
            declared.append(tok.text)
        refs = [src for _, src, _ in edges] + [r for _, _, (_, items) in edges for r in items]
        refs += infinite + frontier
        anon = set()
        for tok, idx in refs:
            if tok.text in explicit or tok.text in declared:
                if idx is not None and explicit.get(tok.text) != idx:
                    raise ParseError(tok.line, tok.col, f"index {explicit.get(tok.text)}", f"conflicting index for {tok.text}")
                continue
            m = ANON.fullmatch(tok.text)
            if nat and m and idx is None:
                anon.add(int(m.group(1)))
                continue
            raise ParseError(tok.line, tok.col, "a declared vertex", f"unknown vertex {tok.text}")
        taken = set(explicit.values()) | anon
        if nat:
            nxt = 0
            for lab in declared:
                if lab in explicit:
                    label_idx[lab] = explicit[lab]
                    continue
                while nxt in taken:
                    nxt += 1
                label_idx[lab] = nxt
                taken.add(nxt)
            clash = anon & {label_idx[lab] for lab in declared}
            if clash:
                v = min(clash)
                raise ParseError(kind.line, kind.col, "distinct indices", f"_{v} names a labelled vertex")
        else:
            label_idx = {lab: i for i, lab in enumerate(declared)}
        u = NAT if nat else Universe(len(declared))

        def index(tok):
            return label_idx[tok.text] if tok.text in label_idx else int(tok.text[1:])

        seen = set()
        out = []
        for en, (stok, _), (mode, items) in edges:
            if en.text in seen:
                raise ParseError(en.line, en.col, "a fresh edge name", f"duplicate edge {en.text}")
            seen.add(en.text)
            idxs = [index(t) for t, _ in items]
            if is_graph:
                out.append(GEdge(en.text, index(stok), idxs[0]))
            elif mode == "cof":
                out.append(UEdge(en.text, index(stok), VertexSet.cofinite_set(u, idxs)))
            else:
                out.append(UEdge(en.text, index(stok), VertexSet.finite(u, idxs)))
        if not nat and not is_graph:
            for en, _, (mode, items) in edges:
                if mode == "cof" and len(set(t.text for t, _ in items)) == len(declared):
                    raise ParseError(en.line, en.col, "a nonempty range", "empty range")
        for lab in sigma:
            if lab not in label_idx and not (nat and ANON.fullmatch(lab)):
                raise ParseError(kind.line, kind.col, "a declared vertex", f"sigma names unknown vertex {lab}")
        if is_graph and sigma:
            raise ParseError(kind.line, kind.col, "an ultragraph", "sigma tables belong to ultragraphs")
        inf = [index(t) for t, _ in infinite]
        fr = [index(t) for t, _ in frontier]
        labels = {i: lab for lab, i in label_idx.items()}
        if is_graph:
            return Graph(name, declared, out, infinite=inf, frontier=fr)
        return Ultragraph(name, u, labels, out, infinite=inf, frontier=fr, sigma_table=sigma)


def join_tokens(parts) -> str:
    """Canonical spacing: blanks around binary operators only."""
    out = ""
    for i, t in enumerate(parts):
        if t in "*+" or (t == "-" and i > 0 and parts[i - 1] not in "(*+-"):
            out += f" {t} "
        elif i > 0 and ID.fullmatch(t) and ID.fullmatch(parts[i - 1]):
            out += " " + t
        else:
            out += t
    return out


def parse(text: str) -> Document:
    return _Parser(text).document()


def parse_structure(text: str):
    doc = parse(text)
    if len(doc.structures) != 1:
        raise ValueError(f"expected one structure, found {len(doc.structures)}")
    return doc.structures[0]


# printing --------------------------------------------------------------------------------------


def _name(g, v, nat):
    lab = g.labels.get(v)
    if lab is None:
        return f"_{v}"
    return f"{lab}@{v}" if nat else lab


def _set_text(g, A, nat):
    body = " ".join(_name(g, v, nat) for v in A.items)
    inner = f"{{ {body} }}" if body else "{ }"
    return f"cofinite {inner}" if A.cofinite else inner


def print_structure(g, bindings=None) -> str:
    nat = g.universe.size is None
    is_graph = isinstance(g, Graph)
    lines = [f"{g.kind} {g.name} {{"]
    if not is_graph:
        lines.append(f"  universe {'nat' if nat else 'finite'};")
    order = sorted(g.labels) if nat else list(range(g.universe.size))
    if order:
        lines.append("  vertices " + " ".join(_name(g, v, nat) for v in order) + ";")
    for e in g.edges:
        if is_graph:
            tgt = _name(g, e.target, nat)
        else:
            tgt = _set_text(g, e.range, nat)
        lines.append(f"  edge {e.name}: {_name(g, e.source, nat)} -> {tgt};")
    if g.infinite:
        lines.append("  infinite " + " ".join(_name(g, v, nat) for v in sorted(g.infinite)) + ";")
    if g.frontier:
        lines.append("  frontier " + " ".join(_name(g, v, nat) for v in sorted(g.frontier)) + ";")
    table = getattr(g, "sigma_table", None)
    if table:
        by_index = sorted(table.items(), key=lambda kv: (g.index(kv[0]), kv[0]))
        lines.append("  sigma { " + " ".join(f"{v} -> {w};" for v, w in by_index) + " }")
    for b, expr in (bindings or {}).items():
        lines.append(f"  let {b} = {expr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_document(doc: Document) -> str:
    return "\n".join(print_structure(s, doc.bindings.get(s.name)) for s in doc.structures)


def with_sigma(ug: Ultragraph, sigma: dict) -> Ultragraph:
    """Copy of ``ug`` carrying a sigma table given as vertex index -> word."""
    table = {ug.label(v): w for v, w in sigma.items()}
    return Ultragraph(
        ug.name, ug.universe, ug.labels, ug.edges, declared=ug.declared,
        infinite=ug.infinite, frontier=ug.frontier, sigma_table=table,
    )
