"""Line-oriented text formats: color sets, graphs, maps, plug manifests,
operads and presheaf directories.

Every plain token is read as a string.  A parenthesised token ``(a,b)`` is
read as a tuple, so atoms printed with :func:`atom_str` read back unchanged
as long as they contain no integers.
"""
from __future__ import annotations

import os
import re
from typing import Mapping

from .errors import ModGraphError, ParseError
from .etale import EmbeddingClass
from .graph import Graph, build_graph
from .graphical import EXTENDED, STRICT, GraphicalMap, make_graphical_map
from .involutive import InvolutiveSet, atom_str, make_involutive_set, skey
from .modops.concrete import GenusOperad, LinearRelationOperad, TerminalOperad
from .modops.free import FreeModularOperad
from .modops.tabulated import TabElem, TabulatedOperad, stabilizer


# -- tokens ------------------------------------------------------------------

def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_atom(tok: str, where=(None, None)):
    tok = tok.strip()
    if not tok:
        raise ParseError("empty identifier", *where)
    if tok[0] != "(":
        if any(ch in tok for ch in "(),{}"):
            raise ParseError(f"bad identifier {tok!r}", *where)
        return tok
    if tok[-1] != ")":
        raise ParseError(f"unbalanced parentheses in {tok!r}", *where)
    parts, depth, cur = [], 0, ""
    for ch in tok[1:-1]:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        if depth < 0:
            raise ParseError(f"unbalanced parentheses in {tok!r}", *where)
        cur += ch
    if depth:
        raise ParseError(f"unbalanced parentheses in {tok!r}", *where)
    parts.append(cur)
    return tuple(parse_atom(p, where) for p in parts)


def split_atoms(s: str, where=(None, None)) -> list:
    """Whitespace-separated atoms; parentheses may not contain spaces."""
    return [parse_atom(t, where) for t in s.split()]


def split_commas(s: str, where=(None, None)) -> list[str]:
    """Split on top-level commas."""
    out, depth, cur = [], 0, ""
    for ch in s:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += (ch in "({") - (ch in ")}")
        cur += ch
    if depth:
        raise ParseError("unbalanced brackets", *where)
    if cur.strip():
        out.append(cur.strip())
    return out


def _fmt(xs) -> str:
    return " ".join(atom_str(x) for x in xs)


# -- color sets --------------------------------------------------------------

def parse_colors(body: str, where=(None, None)) -> InvolutiveSet:
    """``c c* ; d``: semicolon-separated involution classes."""
    classes = [split_atoms(c, where) for c in body.split(";")]
    classes = [c for c in classes if c]
    elements = [x for c in classes for x in c]
    try:
        return make_involutive_set(elements, classes)
    except ModGraphError as exc:
        raise ParseError(str(exc), *where) from exc


def format_colors(C: InvolutiveSet) -> str:
    return "colors: " + " ; ".join(_fmt(c) for c in C.classes())


# -- graphs ------------------------------------------------------------------

class GraphData:
    """A parsed graph file before the axioms are checked."""

    def __init__(self, name, arcs, vertices, nbhd, boundary, colors, coloring, path):
        self.name, self.arcs, self.vertices = name, arcs, vertices
        self.nbhd, self.boundary = nbhd, boundary
        self.colors, self.coloring, self.path = colors, coloring, path

    def build(self) -> Graph:
        """Raises the specific graph error when an axiom fails."""
        inc = {}
        from .errors import DartAssignedTwice
        for v, ds in self.nbhd.items():
            for d in ds:
                if d in inc:
                    raise DartAssignedTwice(f"dart {d!r} is listed at {inc[d]!r} and {v!r}")
                inc[d] = v
        return build_graph(self.arcs, inc, vertices=self.vertices, boundary=self.boundary,
                           name=self.name)


def read_graph_data(text: str, path=None) -> GraphData:
    name, arcs, vertices, boundary = None, None, None, None
    nbhd, colors, coloring = {}, None, {}
    for n, line in _lines(text):
        w = (path, n)
        if line.startswith("graph"):
            rest = line[5:].strip()
            name = parse_atom(rest, w) if rest else None
        elif line.startswith("arcs:"):
            if arcs is not None:
                raise ParseError("second arcs line", *w)
            arcs = [tuple(split_atoms(c, w)) for c in line[5:].split(";") if c.strip()]
        elif line.startswith("vertices:"):
            vertices = split_atoms(line[9:], w)
        elif line.startswith("nbhd"):
            head, sep, body = line[4:].partition(":")
            if not sep:
                raise ParseError("nbhd line needs ':'", *w)
            v = parse_atom(head, w)
            if v in nbhd:
                raise ParseError(f"second nbhd line for {atom_str(v)}", *w)
            nbhd[v] = split_atoms(body, w)
        elif line.startswith("boundary:"):
            boundary = split_atoms(line[9:], w)
        elif line.startswith("colors:"):
            colors = parse_colors(line[7:], w)
        elif line.startswith("color "):
            lhs, sep, rhs = line[6:].partition("=")
            if not sep:
                raise ParseError("color line needs '='", *w)
            coloring[parse_atom(lhs, w)] = parse_atom(rhs, w)
        else:
            raise ParseError(f"unrecognised line {line!r}", *w)
    if arcs is None:
        raise ParseError("missing arcs line", path, None)
    if vertices is None:
        vertices = list(nbhd)
    for v in nbhd:
        if v not in vertices:
            raise ParseError(f"nbhd of undeclared vertex {atom_str(v)}", path, None)
    return GraphData(name, arcs, vertices, nbhd, boundary, colors, coloring or None, path)


def check_coloring(g: Graph, C: InvolutiveSet, zeta: Mapping, path=None):
    for a in g.arcs:
        if a not in zeta:
            raise ParseError(f"arc {atom_str(a)} has no color", path, None)
        if zeta[a] not in C:
            raise ParseError(f"color {atom_str(zeta[a])} is not declared", path, None)
        if zeta[g.i(a)] != C.dagger(zeta[a]):
            raise ParseError(f"coloring is not involutive at {atom_str(a)}", path, None)


def parse_graph(text: str, path=None) -> tuple[Graph, InvolutiveSet | None, dict | None]:
    """``(graph, colors, coloring)``; axiom failures raise their own errors."""
    data = read_graph_data(text, path)
    g = data.build()
    if data.coloring is not None:
        if data.colors is None:
            raise ParseError("color lines need a colors header", path, None)
        check_coloring(g, data.colors, data.coloring, path)
    return g, data.colors, data.coloring


def load_graph(path) -> Graph:
    with open(path) as fh:
        return parse_graph(fh.read(), path)[0]


def format_graph(g: Graph, name=None, colors: InvolutiveSet | None = None,
                 coloring: Mapping | None = None) -> str:
    name = name if name is not None else g.name
    lines = [f"graph {atom_str(name)}" if name is not None else "graph"]
    if colors is not None:
        lines.append(format_colors(colors))
    lines.append(g.summary())
    if coloring:
        lines += [f"color {atom_str(a)} = {atom_str(coloring[a])}" for a in g.arcs]
    return "\n".join(lines) + "\n"


# -- graphical maps -------------------------------------------------------------

_CLASS = re.compile(r"^W=\{(.*?)\}\s+B=\{(.*?)\}\s+bd=\{(.*?)\}$")


def parse_class(s: str, target: Graph, where=(None, None)) -> EmbeddingClass:
    m = _CLASS.match(s.strip())
    if not m:
        raise ParseError(f"bad embedding class {s!r}", *where)
    W, B, bd = ([parse_atom(t, where) for t in split_commas(part, where)] for part in m.groups())
    return EmbeddingClass(target, W, B, bd)


def _resolve_graph(tok: str, base_dir, where, graphs: Mapping | None):
    if graphs and tok in graphs:
        return graphs[tok]
    cands = [tok] if tok.endswith(".graph") else [tok + ".graph", tok]
    for c in cands:
        p = os.path.join(base_dir or ".", c)
        if os.path.isfile(p):
            return load_graph(p)
    raise ParseError(f"cannot find graph {tok!r}", *where)


def read_map(text: str, path=None, graphs: Mapping | None = None):
    """``(name, src_token, tgt_token, source, target, phi0, phi1 text, mode)``."""
    base_dir = os.path.dirname(path) if path else "."
    head, phi0, phi1, mode = None, None, {}, STRICT
    for n, line in _lines(text):
        w = (path, n)
        if line.startswith("map "):
            m = re.match(r"^map\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", line)
            if not m:
                raise ParseError("expected 'map f : G -> H'", *w)
            head = (m.group(1), m.group(2), m.group(3), w)
        elif line.startswith("mode:"):
            mode = line[5:].strip()
            if mode not in (STRICT, EXTENDED):
                raise ParseError(f"unknown mode {mode!r}", *w)
        elif line.startswith("phi0:"):
            phi0 = {}
            for item in split_commas(line[5:], w):
                a, sep, b = item.partition("->")
                if not sep:
                    raise ParseError(f"expected 'a -> x', got {item!r}", *w)
                a = parse_atom(a, w)
                if a in phi0:
                    raise ParseError(f"arc {atom_str(a)} mapped twice", *w)
                phi0[a] = parse_atom(b, w)
        elif line.startswith("phi1"):
            v, sep, body = line[4:].partition(":")
            if not sep:
                raise ParseError("phi1 line needs ':'", *w)
            phi1[parse_atom(v, w)] = (body.strip(), w)
        else:
            raise ParseError(f"unrecognised line {line!r}", *w)
    if head is None or phi0 is None:
        raise ParseError("map file needs a 'map' header and a phi0 line", path, None)
    name, s, t, w = head
    src = _resolve_graph(s, base_dir, w, graphs)
    tgt = _resolve_graph(t, base_dir, w, graphs)
    cls = {v: parse_class(body, tgt, wv) for v, (body, wv) in phi1.items()}
    return name, s, t, src, tgt, phi0, cls, mode


def parse_map(text: str, path=None, graphs: Mapping | None = None) -> GraphicalMap:
    """Parse and validate; axiom failures raise their own errors."""
    _, _, _, src, tgt, phi0, cls, mode = read_map(text, path, graphs)
    return make_graphical_map(src, tgt, phi0, cls, mode)


def load_map(path, graphs=None) -> GraphicalMap:
    with open(path) as fh:
        return parse_map(fh.read(), path, graphs)


def format_map(phi: GraphicalMap, name="f", src="G", tgt="H") -> str:
    text = phi.text(name, src, tgt)
    if phi.mode != STRICT:
        text += f"\nmode: {phi.mode}"
    return text + "\n"


# -- plug manifests ----------------------------------------------------------------

def parse_manifest(text: str, path=None) -> tuple[dict, dict]:
    """Lines ``v <- H.graph with m: a*->x, b*->y``; returns ``(plugs, ms)``."""
    base_dir = os.path.dirname(path) if path else "."
    plugs, ms = {}, {}
    for n, line in _lines(text):
        w = (path, n)
        m = re.match(r"^(\S+)\s*<-\s*(\S+)\s+with\s+m\s*:(.*)$", line)
        if not m:
            raise ParseError("expected 'v <- H.graph with m: a->x, ...'", *w)
        v = parse_atom(m.group(1), w)
        if v in plugs:
            raise ParseError(f"vertex {atom_str(v)} has two plugs", *w)
        plugs[v] = _resolve_graph(m.group(2), base_dir, w, None)
        ident = {}
        for item in split_commas(m.group(3), w):
            a, sep, b = item.partition("->")
            if not sep:
                raise ParseError(f"expected 'a->x', got {item!r}", *w)
            ident[parse_atom(a, w)] = parse_atom(b, w)
        ms[v] = ident
    return plugs, ms


# -- operads ------------------------------------------------------------------------

_ELEM = re.compile(r"^(\S+?)\((.*)\)$")


def _legs_with_colors(body: str, C, where) -> list[tuple]:
    out = []
    for item in split_commas(body, where):
        leg, sep, c = item.partition(":")
        if not sep:
            raise ParseError(f"expected 'leg:color', got {item!r}", *where)
        c = parse_atom(c, where)
        if c not in C:
            raise ParseError(f"color {atom_str(c)} is not declared", *where)
        out.append((parse_atom(leg, where), c))
    return out


def _profile_of_legs(legs, where) -> tuple:
    prof = tuple(c for _, c in legs)
    if list(prof) != sorted(prof, key=skey):
        raise ParseError("legs must be listed in sorted color order", *where)
    names = [l for l, _ in legs]
    if len(set(names)) != len(names):
        raise ParseError("repeated leg name", *where)
    return prof


class _GammaVertex:
    def __init__(self, name, legs, prof):
        self.name, self.legs, self.prof = name, legs, prof


def _parse_vertices(s: str, C, names, where) -> list[_GammaVertex]:
    out = []
    for m in re.finditer(r"(\S+?)\(([^()]*(?:\([^()]*\)[^()]*)*)\)", s):
        legs = _legs_with_colors(m.group(2), C, where) if m.group(2).strip() else []
        prof = _profile_of_legs(legs, where)
        nm = parse_atom(m.group(1), where)
        if prof not in names or nm not in names[prof]:
            raise ParseError(f"{atom_str(nm)} is not an element of the fiber over {prof!r}", *where)
        out.append(_GammaVertex(nm, [l for l, _ in legs], prof))
    return out


def _parse_result(s: str, where) -> tuple:
    m = _ELEM.match(s.strip())
    if not m:
        raise ParseError(f"expected 'name(leg, ...)', got {s!r}", *where)
    legs = [parse_atom(t, where) for t in split_commas(m.group(2), where)]
    return parse_atom(m.group(1), where), legs


def _gamma_entry(T: TabulatedOperad, body: str, where):
    """Store one elementary ``gamma`` literal in the biased tables of ``T``."""
    C = T.colors
    lhs, sep, rhs = body.partition("=")
    if not sep:
        raise ParseError("gamma line needs '='", *where)
    lhs = lhs.strip()
    rname, rlegs = _parse_result(rhs, where)

    def result(legmap):
        try:
            pos = tuple(legmap[l] for l in rlegs)
        except KeyError as exc:
            raise ParseError(f"result leg {exc.args[0]!r} is not a boundary leg", *where) from None
        if sorted(map(skey, pos)) != sorted(map(skey, legmap.values())):
            raise ParseError("result must list every boundary leg once", *where)
        prof = tuple(colour[l] for l in rlegs)
        if list(prof) != sorted(prof, key=skey):
            raise ParseError("result legs must be listed in sorted color order", *where)
        if prof not in T.names or rname not in T.names[prof]:
            raise ParseError(f"{atom_str(rname)} is not an element over {prof!r}", *where)
        return TabElem(prof, rname, pos)

    m = re.match(r"^loop\((\S+)\)$", lhs)
    if m:
        c = parse_atom(m.group(1), where)
        colour: dict = {}
        if rlegs:
            raise ParseError("a closed loop has no boundary legs", *where)
        if () not in T.names or rname not in T.names[()]:
            raise ParseError(f"{atom_str(rname)} is not an element over ()", *where)
        T.loop_table[min(c, C.dagger(c), key=skey)] = TabElem((), rname, ())
        return
    m = re.match(r"^edge\((.*)\)$", lhs)
    if m:
        legs = _legs_with_colors(m.group(1), C, where)
        if len(legs) != 2 or legs[1][1] != C.dagger(legs[0][1]):
            raise ParseError("edge(...) takes two legs of dual colors", *where)
        colour = {legs[0][0]: legs[0][1], legs[1][0]: legs[1][1]}
        rlegs_ok = result({legs[0][0]: 0, legs[1][0]: 1})
        T.unit_table[legs[0][1]] = rlegs_ok
        return
    join = None
    jm = re.search(r"\bjoin\s+(\S+)\s*-\s*(\S+)\s*$", lhs)
    if not jm:
        raise ParseError("expected 'loop(c)', 'edge(...)' or vertices with 'join a-b'", *where)
    join = (parse_atom(jm.group(1), where), parse_atom(jm.group(2), where))
    verts = _parse_vertices(lhs[:jm.start()], C, T.names, where)
    colour = {}
    legmap = {}
    tags = ["x", "y"]
    if len(verts) not in (1, 2):
        raise ParseError("gamma entries have one or two vertices", *where)
    where_leg = {}
    for t, vx in zip(tags, verts):
        for j, (l, c) in enumerate(zip(vx.legs, vx.prof)):
            if l in where_leg:
                raise ParseError(f"leg {atom_str(l)} appears twice", *where)
            where_leg[l] = (t, j)
            colour[l] = c
    a, b = join
    if a not in where_leg or b not in where_leg:
        raise ParseError("joined legs must be legs of the vertices", *where)
    if colour[b] != C.dagger(colour[a]):
        raise ParseError("joined legs must have dual colors", *where)
    for l, tj in where_leg.items():
        if l not in join:
            legmap[l] = tj
    (ta, ka), (tb, kb) = where_leg[a], where_leg[b]
    if len(verts) == 1:
        x = verts[0]
        T.contract_table[(x.prof, x.name, ka, kb)] = result(legmap)
    else:
        if ta == tb:
            raise ParseError("join of two vertices must connect them", *where)
        if ta == "y":
            (ta, ka), (tb, kb) = (tb, kb), (ta, ka)
        x, y = verts
        T.compose_table[(x.prof, x.name, ka, y.prof, y.name, kb)] = result(legmap)


def _builtin(args, C, where):
    kind, *rest = args
    try:
        opts = dict(r.split("=", 1) for r in rest)
    except ValueError:
        raise ParseError("builtin options are key=value", *where) from None
    if kind == "genus":
        return GenusOperad(int(opts.get("m", 2)), C, int(opts.get("g", 1)))
    if kind == "linrel":
        return LinearRelationOperad(C, int(opts.get("arity", 4)))
    if kind == "terminal":
        return TerminalOperad(C)
    raise ParseError(f"unknown builtin operad {kind!r}", *where)


def parse_operad(text: str, path=None, vertex_bound: int | None = None):
    """An operad file: tabulated fibers and gamma literals, ``free-on``, or ``builtin``."""
    base_dir = os.path.dirname(path) if path else "."
    C, name, arity = None, None, None
    fibers, acts, gammas, special = {}, [], [], None
    for n, line in _lines(text):
        w = (path, n)
        if line.startswith("operad"):
            name = line[6:].strip() or None
        elif line.startswith("colors:"):
            C = parse_colors(line[7:], w)
        elif line.startswith("arity:"):
            try:
                arity = int(line[6:])
            except ValueError:
                raise ParseError("arity must be an integer", *w) from None
        elif line.startswith("free-on"):
            g = _resolve_graph(line[7:].strip(), base_dir, w, None)
            if vertex_bound is None:
                raise ParseError("free-on operads need --vertex-bound", *w)
            special = FreeModularOperad(g, vertex_bound)
        elif line.startswith("builtin"):
            if C is None:
                raise ParseError("colors header must come first", *w)
            special = _builtin(line[7:].split(), C, w)
        elif line.startswith("fiber"):
            if C is None:
                raise ParseError("colors header must come first", *w)
            m = re.match(r"^fiber\s*\((.*)\)\s*:(.*)$", line)
            if not m:
                raise ParseError("expected 'fiber (s1:c1, ...): e1 e2'", *w)
            legs = _legs_with_colors(m.group(1), C, w) if m.group(1).strip() else []
            prof = _profile_of_legs(legs, w)
            if prof in fibers:
                raise ParseError(f"second fiber line over {prof!r}", *w)
            els = split_atoms(m.group(2), w)
            if len(set(els)) != len(els):
                raise ParseError("repeated element name", *w)
            fibers[prof] = els
        elif line.startswith("act"):
            acts.append((line, w))
        elif line.startswith("gamma"):
            gammas.append((line[5:].strip(), w))
        else:
            raise ParseError(f"unrecognised line {line!r}", *w)
    if special is not None:
        if fibers or gammas:
            raise ParseError("free-on/builtin operads take no fiber or gamma lines", path, None)
        if name:
            special.name = name
        return special
    if C is None:
        raise ParseError("missing colors header", path, None)
    arity = arity if arity is not None else max((len(p) for p in fibers), default=0)
    act = {p: {s: {e: e for e in els} for s in stabilizer(p)} for p, els in fibers.items()}
    for line, w in acts:
        _act_entry(act, fibers, line, w)
    T = TabulatedOperad(C, arity, fibers, act, name=name or "tabulated")
    for body, w in gammas:
        _gamma_entry(T, body, w)
    return T


def _act_entry(act, fibers, line, w):
    """``act (s1:c, s2:c) [1 0]: x -> y, y -> x``: the permutation sends position k to sigma[k]."""
    m = re.match(r"^act\s*\((.*)\)\s*\[([\d\s]*)\]\s*:(.*)$", line)
    if not m:
        raise ParseError("expected 'act (legs) [sigma]: e -> e2, ...'", *w)
    prof = tuple(c for _, c in (x.split(":") for x in split_commas(m.group(1), w)))
    prof = tuple(parse_atom(c, w) for c in prof)
    sigma = tuple(int(x) for x in m.group(2).split())
    if prof not in fibers or sigma not in act[prof]:
        raise ParseError("act line needs a declared fiber and a color-preserving permutation", *w)
    for item in split_commas(m.group(3), w):
        a, sep, b = item.partition("->")
        a, b = parse_atom(a, w), parse_atom(b, w)
        if not sep or a not in fibers[prof] or b not in fibers[prof]:
            raise ParseError(f"bad act entry {item!r}", *w)
        act[prof][sigma][a] = b


def load_operad(path, vertex_bound=None):
    with open(path) as fh:
        return parse_operad(fh.read(), path, vertex_bound)


def format_operad(T: TabulatedOperad) -> str:
    """Fibers, non-trivial actions and the biased tables of a tabulated operad."""
    C = T.colors
    lines = [f"operad {T.name}", format_colors(C), f"arity: {T.max_arity}"]

    def legs(p, tag="s"):
        return ", ".join(f"{tag}{k}:{atom_str(c)}" for k, c in enumerate(p))

    for p, els in T.fibers():
        lines.append(f"fiber ({legs(p)}): {_fmt(els)}")
    for p, els in T.fibers():
        for sigma, tab in sorted(T.act.get(p, {}).items()):
            moved = [e for e in els if tab[e] != e]
            if moved:
                lines.append(f"act ({legs(p)}) [{' '.join(map(str, sigma))}]: "
                             + ", ".join(f"{atom_str(e)} -> {atom_str(tab[e])}" for e in els))

    def res(r, ren):
        return f"{atom_str(r.name)}({', '.join(ren[l] for l in r.pos)})"

    for c, r in sorted(T.unit_table.items(), key=lambda kv: skey(kv[0])):
        lines.append(f"gamma edge(a:{atom_str(c)}, b:{atom_str(C.dagger(c))}) = "
                     + res(r, {0: "a", 1: "b"}))
    for c, r in sorted(T.loop_table.items(), key=lambda kv: skey(kv[0])):
        lines.append(f"gamma loop({atom_str(c)}) = {atom_str(r.name)}()")
    for (p1, n1, k1, p2, n2, k2), r in sorted(T.compose_table.items(), key=lambda kv: skey(kv[0])):
        ren = {("x", j): f"x{j}" for j in range(len(p1))}
        ren.update({("y", j): f"y{j}" for j in range(len(p2))})
        lines.append(f"gamma {atom_str(n1)}({legs(p1, 'x')}) {atom_str(n2)}({legs(p2, 'y')}) "
                     f"join x{k1}-y{k2} = {res(r, ren)}")
    for (p, n1, k1, k2), r in sorted(T.contract_table.items(), key=lambda kv: skey(kv[0])):
        ren = {("x", j): f"x{j}" for j in range(len(p))}
        lines.append(f"gamma {atom_str(n1)}({legs(p, 'x')}) join x{k1}-x{k2} = {res(r, ren)}")
    return "\n".join(lines) + "\n"


# -- presheaf directories ----------------------------------------------------------

def _read(path):
    with open(path) as fh:
        return fh.read()


def load_site(directory):
    """The site spanned by the ``.graph`` files of a directory (``site`` file optional)."""
    from .nerve.site import JK, U, TruncatedSite
    mode, bound, order = U, None, None
    sp = os.path.join(directory, "site")
    if os.path.isfile(sp):
        for n, line in _lines(_read(sp)):
            w = (sp, n)
            key, sep, val = line.partition(":")
            if not sep:
                raise ParseError("expected 'key: value'", *w)
            key, val = key.strip(), val.strip()
            if key == "mode":
                if val not in (U, JK):
                    raise ParseError(f"unknown site mode {val!r}", *w)
                mode = val
            elif key == "vertex-bound":
                try:
                    bound = int(val)
                except ValueError:
                    raise ParseError("vertex-bound must be an integer", *w) from None
            elif key == "objects":
                order = val.split()
            else:
                raise ParseError(f"unknown site key {key!r}", *w)
    found = sorted(f[:-6] for f in os.listdir(directory) if f.endswith(".graph"))
    names = order or found
    objs = {}
    for nm in names:
        p = os.path.join(directory, nm + ".graph")
        if not os.path.isfile(p):
            raise ParseError(f"object {nm} has no graph file", sp, None)
        objs[nm] = load_graph(p).with_name(nm)
    if not objs:
        raise ParseError("no object graphs in directory", directory, None)
    if mode == JK and bound is None:
        raise ParseError("a JK site needs 'vertex-bound:'", sp, None)
    return TruncatedSite(objs, mode, bound)


def save_site(site, directory):
    os.makedirs(directory, exist_ok=True)
    lines = [f"mode: {site.mode}", "objects: " + " ".join(site.names)]
    if site.vertex_bound is not None:
        lines.append(f"vertex-bound: {site.vertex_bound}")
    with open(os.path.join(directory, "site"), "w") as fh:
        fh.write("\n".join(lines) + "\n")
    for n in site.names:
        with open(os.path.join(directory, n + ".graph"), "w") as fh:
            fh.write(format_graph(site.objects[n], n))


def map_file_name(site, m) -> str:
    a, b = site.ends(m)
    k = [site.key(x) for x in site.hom[(a, b)]].index(site.key(m))
    return f"{a}--{b}--{k}"


def save_presheaf(X, directory):
    """Write ``X`` as a presheaf directory; values are written with :func:`atom_str`."""
    S = X.site
    save_site(S, directory)
    for n in S.names:
        with open(os.path.join(directory, n + ".set"), "w") as fh:
            fh.write("".join(atom_str(x) + "\n" for x in X.values[n]))
    for m in S.morphisms():
        a, b = S.ends(m)
        k = map_file_name(S, m).rsplit("--", 1)[1]
        lines = [f"fn {a} -> {b} index {k}"]
        if S.mode == "U":
            lines += m.text("m", a, b).splitlines()[1:]
        else:
            lines += ["# " + t for t in m.text().splitlines()]
        lines.append("table:")
        t = X.act(m)
        lines += [f"{atom_str(x)} -> {atom_str(t[x])}" for x in X.values[b]]
        with open(os.path.join(directory, map_file_name(S, m) + ".fn"), "w") as fh:
            fh.write("\n".join(lines) + "\n")


def load_presheaf(directory):
    """Read a presheaf directory; the action must be given on every site morphism."""
    from .nerve.presheaf import Presheaf
    S = load_site(directory)
    values = {}
    for n in S.names:
        p = os.path.join(directory, n + ".set")
        if not os.path.isfile(p):
            raise ParseError(f"object {n} has no values file", p, None)
        vals = [parse_atom(line, (p, k)) for k, line in _lines(_read(p))]
        if len(set(vals)) != len(vals):
            raise ParseError("repeated value", p, None)
        values[n] = vals
    action = {}
    for f in sorted(os.listdir(directory)):
        if not f.endswith(".fn"):
            continue
        p = os.path.join(directory, f)
        key, table = _read_fn(S, p, values)
        if key in action:
            raise ParseError("second action table for the same map", p, None)
        action[key] = table
    for m in S.morphisms():
        if S.key(m) not in action:
            raise ParseError(f"missing action table {map_file_name(S, m)}.fn", directory, None)
    return Presheaf(S, values, action, name=os.path.basename(os.path.normpath(directory)))


def _read_fn(S, p, values):
    head, map_lines, table, in_table = None, [], {}, False
    for n, line in _lines(_read(p)):
        w = (p, n)
        if head is None:
            m = re.match(r"^fn\s+(\S+)\s*->\s*(\S+)\s+index\s+(\d+)$", line)
            if not m:
                raise ParseError("expected 'fn SRC -> TGT index K'", *w)
            head = (m.group(1), m.group(2), int(m.group(3)), w)
        elif line == "table:":
            in_table = True
        elif in_table:
            x, sep, y = line.partition("->")
            if not sep:
                raise ParseError("expected 'x -> y'", *w)
            x, y = parse_atom(x, w), parse_atom(y, w)
            if x in table:
                raise ParseError(f"value {atom_str(x)} mapped twice", *w)
            table[x] = y
        else:
            map_lines.append(line)
    if head is None:
        raise ParseError("empty action file", p, None)
    a, b, k, w = head
    if a not in S.objects or b not in S.objects:
        raise ParseError("unknown site object", *w)
    ms = S.hom[(a, b)]
    if k >= len(ms):
        raise ParseError(f"hom({a}, {b}) has only {len(ms)} maps", *w)
    m = ms[k]
    if map_lines and S.mode == "U":
        txt = "\n".join([f"map m : {a} -> {b}"] + map_lines)
        stated = parse_map(txt, p, S.objects)
        if stated.key() != m.key():
            raise ParseError(f"stated map is not map {k} of hom({a}, {b})", *w)
    if set(table) != set(values[b]) or not set(table.values()) <= set(values[a]):
        raise ParseError(f"table is not a function {b}.set -> {a}.set", *w)
    return S.key(m), table


__all__ = [
    "GraphData", "parse_atom", "parse_colors", "format_colors", "read_graph_data",
    "parse_graph", "load_graph", "format_graph", "parse_class", "parse_map", "load_map",
    "format_map", "parse_manifest", "parse_operad", "load_operad", "format_operad",
    "load_site", "save_site", "save_presheaf", "load_presheaf",
]
