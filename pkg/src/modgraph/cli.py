"""Command-line front door.

Exit status: 0 when the operation succeeds or the property holds, 1 when a
checked property fails (a witness is printed), 2 on unreadable input.
"""
from __future__ import annotations

import argparse
import sys

from . import io
from .canon import isomorphisms
from .errors import ModGraphError, ParseError
from .etale import enumerate_embeddings
from .graphical import EXTENDED, STRICT, compose, factorize, homset, is_active
from .involutive import atom_str, sort_atoms
from .substitution import substitute


class Failure(Exception):
    """A checked property does not hold; the message is the witness."""


class Out:
    def __init__(self, verb, fmt):
        self.verb, self.fmt, self.lines = verb, fmt, []

    def __call__(self, text=""):
        for line in str(text).splitlines() or [""]:
            self.lines.append(line)

    def flush(self, stream):
        for line in self.lines:
            stream.write((f"{self.verb}\t{line}" if self.fmt == "lines" else line) + "\n")


def _positive(s):
    try:
        n = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
    if n < 1:
        raise argparse.ArgumentTypeError("bounds must be positive")
    return n


# -- graphs and maps -------------------------------------------------------------

def cmd_validate(a, out):
    with open(a.graph) as fh:
        text = fh.read()
    data = io.read_graph_data(text, a.graph)
    try:
        g, colors, zeta = io.parse_graph(text, a.graph)
    except ParseError:
        raise
    except ModGraphError as exc:
        raise Failure(f"{type(exc).__name__}: {exc}") from None
    out(f"valid: |V|={len(g.vertices)} |A|={len(g.arcs)} |bd|={len(g.boundary)} "
        f"connected={int(g.is_connected())} safe={int(g.is_safe())}"
        + (" colored" if data.coloring else ""))


def cmd_iso(a, out):
    g, h = io.load_graph(a.g), io.load_graph(a.h)
    isos = isomorphisms(g, h)
    if not isos:
        raise Failure("not isomorphic")
    lines = []
    for iso in isos:
        arcs = ", ".join(f"{atom_str(x)} -> {atom_str(iso.arcs[x])}" for x in g.arcs)
        verts = ", ".join(f"{atom_str(v)} -> {atom_str(iso.vertices[v])}" for v in g.vertices)
        lines.append(f"arcs: {arcs} | vertices: {verts}")
    out(f"isomorphisms {len(isos)}")
    for line in sorted(lines):
        out(line)


def cmd_embeddings(a, out):
    g = io.load_graph(a.graph)
    for line in sorted(c.text() for c in enumerate_embeddings(g)):
        out(line)


def cmd_substitute(a, out):
    g = io.load_graph(a.base)
    with open(a.manifest) as fh:
        plugs, ms = io.parse_manifest(fh.read(), a.manifest)
    missing = [v for v in g.vertices if v not in plugs]
    if missing:
        raise ParseError(f"no plug for vertex {atom_str(missing[0])}", a.manifest)
    res = substitute(g, plugs, ms)
    out(io.format_graph(res.graph, "substituted").rstrip("\n"))


def _map_with_names(path):
    with open(path) as fh:
        text = fh.read()
    name, s, t, src, tgt, phi0, cls, mode = io.read_map(text, path)
    return io.parse_map(text, path), name, s, t


def cmd_compose(a, out):
    f, fn, fs, ft = _map_with_names(a.f)
    g, gn, gs, gt = _map_with_names(a.g)
    if f.target != g.source:
        raise ParseError("the target of the first map is not the source of the second", a.g)
    out(io.format_map(compose(g, f), f"{gn}.{fn}", fs, gt).rstrip("\n"))


def cmd_factorize(a, out):
    f, fn, fs, ft = _map_with_names(a.f)
    fac = factorize(f)
    out(io.format_graph(fac.middle, "middle").rstrip("\n"))
    out(io.format_map(fac.active, f"{fn}.active", fs, "middle").rstrip("\n"))
    out(io.format_map(fac.embedding, f"{fn}.embedding", "middle", ft).rstrip("\n"))


def cmd_validate_map(a, out):
    with open(a.f) as fh:
        text = fh.read()
    io.read_map(text, a.f)
    try:
        phi = io.parse_map(text, a.f)
    except ParseError:
        raise
    except ModGraphError as exc:
        raise Failure(f"{type(exc).__name__}: {exc}") from None
    out(f"valid: active={int(is_active(phi))}")


def cmd_homset(a, out):
    g, h = io.load_graph(a.g), io.load_graph(a.h)
    mode = EXTENDED if a.extended else STRICT
    ms = homset(g, h, mode)
    out(f"maps {len(ms)}")
    for k, m in enumerate(ms):
        out(io.format_map(m, f"m{k}", a.g, a.h).rstrip("\n"))


# -- operads ---------------------------------------------------------------------

def cmd_free_elements(a, out):
    from .modops.free import FreeModularOperad, free_elements
    g = io.load_graph(a.graph)
    if a.profile is not None:
        arcs = [io.parse_atom(t) for t in a.profile.split(",") if t.strip()]
        for x in arcs:
            if x not in g.inv:
                raise ParseError(f"{atom_str(x)} is not an arc of the graph")
    else:
        arcs = sort_atoms(g.boundary)
    xi = {f"s{k}": x for k, x in enumerate(arcs)}
    F = FreeModularOperad(g, a.vertex_bound)
    els = free_elements(F, xi, a.vertex_bound)
    out(f"elements {len(els)}")
    for d in sorted(els, key=lambda d: d.text()):
        out(d.text())


def cmd_jk_hom(a, out):
    from .modops.maps import jk_homset
    h, g = io.load_graph(a.h), io.load_graph(a.g)
    ms = jk_homset(h, g, a.vertex_bound)
    out(f"maps {len(ms)}")
    for k, m in enumerate(ms):
        out(f"map m{k}")
        out(m.text())


def cmd_laws(a, out):
    from .modops.laws import check_algebra_laws
    P = io.load_operad(a.operad, a.vertex_bound)
    rep = check_algebra_laws(P, a.arity_bound, size_bound=a.size_bound, samples=a.samples,
                             seed=a.seed)
    if not rep.ok:
        raise Failure(rep.witness)
    out(f"laws hold: {rep.checked} checks")


# -- presheaves --------------------------------------------------------------------

def cmd_nerve(a, out):
    from .nerve.nerve import nerve, nerve_presheaf
    P = io.load_operad(a.operad, a.vertex_bound)
    if a.graph is None and a.site is None:
        raise ParseError("nerve needs a graph or --site")
    if a.graph is not None:
        g = io.load_graph(a.graph)
        els = nerve(P, g)
        out(f"elements {len(els)}")
        for k, y in enumerate(els):
            out(f"element {k}")
            out(y.text())
    if a.site is not None:
        site = io.load_site(a.site)
        NP = nerve_presheaf(P, site)
        bad = NP.check()
        for n in site.names:
            out(f"{n}: {len(NP.values[n])}")
        if a.out:
            io.save_presheaf(NP, a.out)
            out(f"written {a.out}")
        if bad:
            raise Failure(bad[0])


def cmd_segal_check(a, out):
    from .nerve.segal import segal_check
    X = io.load_presheaf(a.dir)
    bad = X.check()
    if bad:
        raise Failure(f"not a presheaf: {bad[0]}")
    fails = []
    for n in X.site.names:
        r = segal_check(X, n)
        out(f"{n}: {'segal' if r.ok else 'fails'} |X|={len(X.values[n])} |core|={r.core_size}")
        if not r.ok:
            fails.append(r.witness)
    if fails:
        raise Failure(fails[0])


def cmd_roundtrip(a, out):
    from .nerve.construct import roundtrip_operad, roundtrip_presheaf
    X = io.load_presheaf(a.dir)
    P = io.load_operad(a.operad, a.vertex_bound)
    ra = roundtrip_presheaf(X)
    out(f"presheaf roundtrip: {'ok' if ra.ok else 'fails'} ({ra.checked} checks)")
    rb = roundtrip_operad(P, X.site, samples=a.samples)
    out(f"operad roundtrip: {'ok' if rb.ok else 'fails'} ({rb.checked} checks)")
    if not ra.ok or not rb.ok:
        raise Failure(ra.witness if not ra.ok else rb.witness)


def cmd_jk_check(a, out):
    from .nerve.checks import jk_checks
    from .nerve.site import JK, U, TruncatedSite
    X = io.load_presheaf(a.dir)
    if X.site.mode != JK:
        raise ParseError("jk-check needs a presheaf on a JK site", a.dir)
    usite = TruncatedSite(X.site.objects, U)
    reps = jk_checks(X, usite)
    for r in reps:
        out(f"{'ok' if r.ok else 'fails'}: {r.detail}")
    bad = [r for r in reps if not r.ok]
    if bad:
        raise Failure(bad[0].detail)


# -- driver -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modgraph", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["text", "lines"], default="text",
                   help="'lines' prefixes every output line with the verb and a tab")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, *args, **kw):
        sp = sub.add_parser(name, help=kw.pop("help", None))
        for a in args:
            sp.add_argument(a)
        sp.set_defaults(fn=fn)
        return sp

    verb("validate", cmd_validate, "graph", help="check the graph axioms")
    verb("iso", cmd_iso, "g", "h", help="list isomorphisms")
    verb("embeddings", cmd_embeddings, "graph", help="list embedding classes")
    verb("substitute", cmd_substitute, "base", "manifest", help="graph substitution")
    verb("compose", cmd_compose, "f", "g", help="print g after f")
    verb("factorize", cmd_factorize, "f", help="active/embedding factorization")
    verb("validate-map", cmd_validate_map, "f", help="check a graphical map")
    sp = verb("homset", cmd_homset, "g", "h", help="all graphical maps g -> h")
    sp.add_argument("--extended", action="store_true", help="admit nodeless loops")
    sp = verb("free-elements", cmd_free_elements, "graph", help="elements of the free operad")
    sp.add_argument("--vertex-bound", type=_positive, required=True)
    sp.add_argument("--profile", help="comma-separated arcs (default: the boundary)")
    sp = verb("jk-hom", cmd_jk_hom, "h", "g", help="maps of free operads M(h) -> M(g)")
    sp.add_argument("--vertex-bound", type=_positive, required=True)
    sp = verb("nerve", cmd_nerve, "operad", help="nerve at a graph or on a site")
    sp.add_argument("graph", nargs="?")
    sp.add_argument("--site")
    sp.add_argument("--out", help="write the nerve presheaf to this directory")
    sp.add_argument("--vertex-bound", type=_positive, help="needed for free-on operads")
    verb("segal-check", cmd_segal_check, "dir", help="Segal condition at every object")
    sp = verb("roundtrip", cmd_roundtrip, "dir", "operad", help="both nerve roundtrips")
    sp.add_argument("--vertex-bound", type=_positive, help="needed for free-on operads")
    sp.add_argument("--samples", type=_positive, default=30)
    verb("jk-check", cmd_jk_check, "dir", help="Segal transfer, counit and bijectivity checks")
    sp = verb("laws", cmd_laws, "operad", help="unit law and heart square")
    sp.add_argument("--arity-bound", type=_positive, required=True)
    sp.add_argument("--vertex-bound", type=_positive, help="needed for free-on operads")
    sp.add_argument("--size-bound", type=_positive, default=3)
    sp.add_argument("--samples", type=_positive, default=40)
    sp.add_argument("--seed", type=int, default=0)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    out = Out(a.verb, a.format)
    code = 0
    try:
        a.fn(a, out)
    except Failure as exc:
        out(f"FAIL: {exc}")
        code = 1
    except (ModGraphError, OSError) as exc:
        out.flush(sys.stdout)
        sys.stderr.write(f"modgraph {a.verb}: {type(exc).__name__}: {exc}\n")
        return 2
    out.flush(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
