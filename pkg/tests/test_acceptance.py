"""Acceptance criteria 1-11.

Each test prints one ``criterion N: PASS|FAIL`` line.  Every comparison is
exact (set equality, integer counts, ``decorated_equal``); no tolerances.
"""
import random
from itertools import combinations_with_replacement, islice, product

import pytest

from helpers import (CONSTRUCTED, INVALID, connected_safe_graphs, factor_through,
                     iter_local_maps, local_maps, two_colors)
from modgraph import errors as E
from modgraph.etale import EtaleMap, embedding_class, enumerate_embeddings, representative
from modgraph.graph import (cycle_graph, exceptional_edge, cover_base, double_cover,
                            double_cover_map, linear_graph, loop_graph, star, validate)
from modgraph.graphical import (compatible_isos, compose, factorize, homset, identity,
                                is_active, make_graphical_map)
from modgraph.etale import vertex_class
from modgraph.involutive import make_involutive_set
from modgraph.modops import (FreeModularOperad, GenusOperad, TabElem, TerminalOperad,
                             biased_gamma, check_heart_square, check_monad_laws,
                             enumerate_decorated, free_elements, jk_homset,
                             random_decorated, tabulate)
from modgraph.nerve import (OperadMorphism, bijective_transfer, comparison_element,
                            counit_check, delete_orbit, duplicate_orbit, fullyfaithful_check,
                            induced_transformation, nerve, nerve_equalizer,
                            nerve_presheaf, operad_from_segal, relabel_values, restrict_to_u,
                            roundtrip_operad, roundtrip_presheaf, segal_check, segal_transfer)
from modgraph.modops.maps import OperadMap


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        assert ok, f"criterion {n}: {detail}"
    return emit


# -- 1 ---------------------------------------------------------------------------

def test_c01_graph_axioms(report):
    bad = []
    for g in CONSTRUCTED:
        try:
            validate(g)
        except E.ModGraphError as exc:
            bad.append(f"{g.name}: {exc}")
    raised = 0
    for name, make, err in INVALID:
        try:
            make()
            bad.append(f"{name}: accepted")
        except err:
            raised += 1
        except E.ModGraphError as exc:
            bad.append(f"{name}: raised {type(exc).__name__}, expected {err.__name__}")
    ok = not bad and len(INVALID) == 12 and raised == 12
    report(1, ok, f"{len(CONSTRUCTED)} constructors valid, {raised}/12 invalid inputs raise "
                  f"their error {bad[:1]}")


# -- 2 ---------------------------------------------------------------------------

MAPS_PER_SOURCE = 300


def _is_local_map(K, G, am, vm):
    """Involution-preserving, vertex-injective, bijective on every neighbourhood."""
    if set(am) != set(K.arcs) or any(am[K.i(a)] != G.i(am[a]) for a in K.arcs):
        return False
    if len(set(vm.values())) != len(vm):
        return False
    for v in K.vertices:
        img = [am[d] for d in K.nbhd(v)]
        if sorted(img, key=repr) != sorted(G.nbhd(vm[v]), key=repr):
            return False
    return True


def test_c02_embedding_class_oracle(report):
    gs = connected_safe_graphs(3, 10)
    checked, bad = 0, []
    for G in gs:
        reps = {}
        for c in enumerate_embeddings(G):
            K, am, vm = representative(c)
            # the representative must itself be a brute-force local map
            if not _is_local_map(K, G, am, vm):
                bad.append(f"representative of {c.text()} is not a local map")
            reps[c.record()] = (K, (am, vm))
        sources = [K for K in gs if len(K.vertices) <= len(G.vertices)]
        sources += [K for K, _ in reps.values()]
        for K in sources:
            for am, vm in islice(iter_local_maps(K, G), MAPS_PER_SOURCE):
                checked += 1
                rec = embedding_class(EtaleMap(K, G, am, vm)).record()
                if rec not in reps:
                    bad.append(f"record of a map {K!r} -> {G!r} is not enumerated")
                    continue
                Kh, h = reps[rec]
                if factor_through((am, vm), K, h, Kh) is None:
                    bad.append(f"same record but no z for {K!r} -> {G!r}")
        items = list(reps.values())
        for i, (Ki, hi) in enumerate(items):
            for j, (Kj, hj) in enumerate(items):
                if i != j and factor_through(hi, Ki, hj, Kj) is not None:
                    bad.append(f"distinct records related by z in {G!r}")
    report(2, not bad, f"{len(gs)} graphs, {checked} maps, {len(bad)} discrepancies "
                       f"{bad[:1]}")


# -- 3 ---------------------------------------------------------------------------

def _brute_emb_count(G, max_vertices):
    """Embeddings into G up to source isomorphism, from brute-force local maps."""
    sources = [K for K in connected_safe_graphs(max_vertices, len(G.arcs))
               if len(K.vertices) <= len(G.vertices)]
    classes = []
    for K in sources:
        for f in local_maps(K, G):
            if not any(factor_through(f, K, h, Kh) for Kh, h in classes):
                classes.append((K, f))
    return len(classes)


def test_c03_embedding_counts(report):
    rows, ok = [], True
    for n in range(5):
        G = star(n)
        brute, lib = _brute_emb_count(G, 1), len(enumerate_embeddings(G))
        rows.append(f"star{n}:{brute}/{lib}")
        ok = ok and brute == lib == n + 1
    e = exceptional_edge()
    brute, lib = _brute_emb_count(e, 0), len(enumerate_embeddings(e))
    rows.append(f"edge:{brute}/{lib}")
    ok = ok and brute == lib == 1
    report(3, ok, " ".join(rows))


# -- 4 ---------------------------------------------------------------------------

CATALOG = [exceptional_edge(), star(0), star(1), star(2), star(3), linear_graph(2),
           loop_graph(), loop_graph(1), cycle_graph(2), cover_base()]


def test_c04_category_laws(report):
    n = len(CATALOG)
    H = {(i, j): homset(CATALOG[i], CATALOG[j]) for i in range(n) for j in range(n)}
    where = {m: (i, j, k) for (i, j), ms in H.items() for k, m in enumerate(ms)}
    bad = []
    for (i, j), ms in H.items():
        for f in ms:
            if compose(identity(CATALOG[j]), f) != f or compose(f, identity(CATALOG[i])) != f:
                bad.append("identity law")
    comp = {}
    for i, j, k in product(range(n), repeat=3):
        for a, f in enumerate(H[(i, j)]):
            for b, g in enumerate(H[(j, k)]):
                c = compose(g, f)
                if c not in where:
                    bad.append("composite outside the hom-set")
                    continue
                comp[(i, j, k, a, b)] = where[c][2]
    triples = 0
    for i, j, k, l in product(range(n), repeat=4):
        for a in range(len(H[(i, j)])):
            for b in range(len(H[(j, k)])):
                gf = comp.get((i, j, k, a, b))
                for c in range(len(H[(k, l)])):
                    triples += 1
                    hg = comp.get((j, k, l, b, c))
                    if gf is None or hg is None or \
                            comp.get((i, k, l, gf, c)) != comp.get((i, j, l, a, hg)):
                        bad.append("associativity")
    # fuzzed triples through graphs with up to three vertices: random walks on nonempty hom-sets
    rng = random.Random(2024)
    gs = connected_safe_graphs(3, 8)
    out = {a: [(b, ms) for b in range(len(gs)) for ms in [homset(gs[a], gs[b])] if ms]
           for a in range(len(gs))}
    starts = [a for a in out if out[a]]
    fuzzed = 0
    while fuzzed < 200:
        walk, maps = [rng.choice(starts)], []
        while len(maps) < 3 and out[walk[-1]]:
            b, ms = rng.choice(out[walk[-1]])
            walk.append(b)
            maps.append(rng.choice(ms))
        if len(maps) < 3:
            continue
        f, g, h = maps
        fuzzed += 1
        if compose(h, compose(g, f)) != compose(compose(h, g), f):
            bad.append("fuzzed associativity")
        if compose(identity(gs[walk[1]]), f) != f or compose(f, identity(gs[walk[0]])) != f:
            bad.append("fuzzed identity")
    factored = 0
    for ms in H.values():
        for phi in ms:
            fac = factorize(phi)
            factored += 1
            if not is_active(fac.active) or compose(fac.embedding, fac.active) != phi:
                bad.append("factorization")
            elif len(compatible_isos(fac, fac)) != 1:
                bad.append("middle isomorphism not unique")
    report(4, not bad, f"{sum(map(len, H.values()))} catalog maps, {triples} triples, "
                       f"{fuzzed} fuzzed triples, {factored} factorizations {bad[:1]}")


# -- 5 ---------------------------------------------------------------------------

def test_c05_monad_laws(report):
    C = make_involutive_set(["a", "a*", "b", "c"], [["a", "a*"], ["b"], ["c"]])
    P = GenusOperad(2, C)
    types = [(1, ("p",), {"p": "a"}, 1), (0, ("p",), {"p": "b"}, 1),
             (0, ("p", "q"), {"p": "a", "q": "a*"}, 1), (1, ("p", "q"), {"p": "b", "q": "c"}, 1),
             (1, ("p", "q", "r"), {"p": "a", "q": "c", "r": "b"}, 1),
             (0, ("p", "q", "r"), {"p": "a*", "q": "a*", "r": "c"}, 1)]
    els = []
    for xi in [{}, {"s": "a"}, {"s": "a", "t": "a*"}, {"s": "b", "t": "c"}]:
        els += enumerate_decorated(types, xi, 5, P)
    for g in (star(1), star(2), loop_graph(), cycle_graph(2), loop_graph(1)):
        F = FreeModularOperad(g)
        for ar in range(3):
            for prof in combinations_with_replacement(list(g.arcs), ar):
                els += free_elements(F, {k: c for k, c in enumerate(prof)}, 5)
    big = max(len(d.shape.vertices) for d in els)
    laws = check_monad_laws(els)
    heart = check_heart_square(P, [d for d in els if d.coll is P])
    ok = laws.ok and heart.ok and big == 5
    report(5, ok, f"{len(els)} decorated graphs (max |V|={big}), monad laws "
                  f"{'hold' if laws.ok else 'fail'}; algebra square on {heart.checked} "
                  f"nestings {laws.witness or ''}")


# -- 6 ---------------------------------------------------------------------------

def test_c06_fiber_counts(report, ops):
    F = FreeModularOperad(exceptional_edge())
    bad = []
    n = 0
    for k in range(5):
        for pick in product(["e", "e*"], repeat=k):
            xi = {f"s{j}": c for j, c in enumerate(pick)}
            want = 1 if k == 0 or (k == 2 and set(pick) == {"e", "e*"}) else 0
            got = len(free_elements(F, xi, 4))
            n += 1
            if got != want:
                bad.append(f"M(edge) over {pick}: {got} != {want}")
    point = len(free_elements(FreeModularOperad(star(0)), {}, 4))
    if point != 1:
        bad.append(f"M(star0)(empty) has {point} elements")
    for name in ("genus2", "linrel", "genus2-2col"):
        P = ops[name]
        ys = nerve(P, exceptional_edge())
        if sorted(y.f0["e"] for y in ys) != sorted(P.colors.elements):
            bad.append(f"csm(M(edge), {name}) is not the color set")
    report(6, not bad, f"{n} fibers of M(edge), M(star0)(empty)={point}, 3 edge nerves "
                       f"{bad[:1]}")


# -- 7 ---------------------------------------------------------------------------

def test_c07_not_full(report):
    cov, base = double_cover(), cover_base()
    arcs, vm = double_cover_map()
    jk = jk_homset(cov, base, 1)
    hit = [m for m in jk if m.f0 == arcs]
    try:
        make_graphical_map(cov, base, arcs, {v: vertex_class(base, vm[v]) for v in cov.vertices})
        rejected = False
    except E.VertexDoubleCover:
        rejected = True
    u_cover = [m for m in homset(cov, base) if m.phi0 == arcs]
    s0 = jk_homset(star(0), exceptional_edge(), 2)
    u0 = homset(star(0), exceptional_edge())
    ok = bool(hit) and rejected and not u_cover and bool(s0) and not u0
    report(7, ok, f"double cover in jk_homset: {len(hit)}, U validation raises "
                  f"VertexDoubleCover: {rejected}, |jk(star0, edge)|={len(s0)}, "
                  f"|U(star0, edge)|={len(u0)}")


# -- 8 ---------------------------------------------------------------------------

def test_c08_nerve_equalizer(report, ops, usite):
    bad, n = [], 0
    for name in ("genus2", "linrel", "free-star2"):
        for obj, g in usite.objects.items():
            n += 1
            if {y.key() for y in nerve(ops[name], g)} != \
                    {y.key() for y in nerve_equalizer(ops[name], g)}:
                bad.append(f"{name} at {obj}")
    has_loop = any(g.vertices and any(g.t[a] == g.t[b] for a, b in g.internal_edges())
                   for g in usite.objects.values())
    report(8, not bad and n == 30 and has_loop, f"{n} (operad, object) pairs equal {bad[:1]}")


# -- 9 ---------------------------------------------------------------------------

def test_c09_nerve_segal_roundtrips(report, ops, usite, unerves):
    bad = []
    names = ("genus2", "free-star2", "genus2-2col")
    for name in names:
        X = unerves(name)
        for obj in usite.names:
            if not segal_check(X, obj).ok:
                bad.append(f"N({name}) not Segal at {obj}")
        r = roundtrip_operad(ops[name], usite)
        if not r.ok:
            bad.append(f"L(N({name})) != {name}: {r.witness}")
    X = unerves("genus2")
    relabeled = relabel_values(X, {n: {x: f"x{n}.{x}" for x in X.values[n]} for n in usite.names})
    for Y in (unerves("free-star2"), unerves("genus2-2col"), relabeled):
        r = roundtrip_presheaf(Y, operad_from_segal(Y))
        if not r.ok:
            bad.append(f"N(L({Y.name})) != {Y.name}: {r.witness}")
    counts = []
    for p, q, want in (("free-edge", "free-edge", (2, 2)), ("free-star0", "genus3", (3, 3)),
                       ("genus2", "genus2", (32, 32))):
        r = fullyfaithful_check(unerves(p), unerves(q))
        counts.append(f"{p}->{q}:{r.counts[0]}/{r.counts[1]}")
        if not r.ok or r.counts != want:
            bad.append(f"fullyfaithful {p}->{q}: {r.detail}")
    report(9, not bad, "segal and roundtrips for 3 operads and 3 presheaves; "
                       + " ".join(counts) + f" {bad[:1]}")


# -- 10 --------------------------------------------------------------------------

def _color_swap(P):
    sw = {"a": "b", "b": "a"}
    f1 = {}
    for p, ns in P.names.items():
        for n in ns:
            f1[(p, n)] = P.fiber({j: sw[c] for j, c in enumerate(p)})[n]
    return OperadMorphism(sw, f1)


def _pointwise(P, Q, pick):
    return OperadMorphism({c: c for c in P.colors.elements},
                          {(p, n): pick(Q.fiber({j: c for j, c in enumerate(p)}), n)
                           for p, ns in P.names.items() for n in ns})


def _comparison(L, X, NL):
    site = NL.site
    alpha = {}
    for n in site.names:
        t = {}
        for x in X.values[n]:
            y = comparison_element(L, n, x)
            t[x] = NL.index_of(OperadMap(site.objects[n], L, y.f0, y.f1))
        alpha[n] = t
    return alpha


def test_c10_jk_transfer(report, ops, usite, jksite, jknerves):
    bad, rows = [], []
    X = jknerves("genus2")
    presheaves = [jknerves("genus2"), jknerves("free-star2"), jknerves("genus2-2col"),
                  delete_orbit(X, "h", 0), duplicate_orbit(X, "h", 1),
                  duplicate_orbit(X, "linear2", 1)]
    for k, Y in enumerate(presheaves):
        if Y.check():
            bad.append(f"presheaf {k} is not a functor")
        r = segal_transfer(Y, usite)
        rows.append("".join("1" if s else "0" for s in r.counts))
        if not r.ok or r.counts[0] != (k < 3):
            bad.append(f"Segal transfer on presheaf {k}: {r.detail}")
    counit = 0
    for K in ("edge", "star0", "star1", "star2", "star3", "star4"):
        for name in ("genus2", "free-star2"):
            r = counit_check(jknerves(name), usite, K)
            counit += 1
            if not r.ok:
                bad.append(f"counit {name} at {r.detail}")
    morphs = []
    G30 = ops["genus3-g0"]
    X3 = jknerves("genus3-g0")
    morphs.append((X3, X3, induced_transformation(_pointwise(G30, G30, lambda f, n: f[(-n) % 3]),
                                                  X3, X3)))
    morphs.append((X3, X3, induced_transformation(_pointwise(G30, G30, lambda f, n: f[n]),
                                                  X3, X3)))
    XC = jknerves("genus2-2col")
    morphs.append((XC, XC, induced_transformation(_color_swap(ops["genus2-2col"]), XC, XC)))
    for name in ("free-star2", "genus2"):
        XF = jknerves(name)
        L = operad_from_segal(restrict_to_u(XF, usite))
        NL = nerve_presheaf(L, jksite)
        morphs.append((XF, NL, _comparison(L, XF, NL)))
    bij = 0
    for k, (A, B, alpha) in enumerate(morphs):
        r = bijective_transfer(A, B, alpha)
        bij += r.ok and r.counts == (1,)
        if not r.ok or r.counts != (1,):
            bad.append(f"morphism {k}: {r.detail}")
    T1 = tabulate(TerminalOperad(), 4, biased=False)
    NT = nerve_presheaf(T1, jksite)
    ctl = bijective_transfer(X, NT, induced_transformation(
        _pointwise(ops["genus2"], T1, lambda f, n: f[0]), X, NT))
    if not ctl.ok or ctl.counts != (0,):
        bad.append("terminal control should fail the premise")
    report(10, not bad, f"Segal(X) vs Segal(i*X): {' '.join(rows)}; {counit} counit checks; "
                        f"{bij}/5 morphisms bijective everywhere {bad[:1]}")


# -- 11 --------------------------------------------------------------------------

def _random_evaluable(T, rng, n, want):
    out = []
    while len(out) < want:
        d = random_decorated(rng, T, rng.randint(1, n), max_valence=3, max_boundary=2,
                             extra_edges=2)
        if d is None or not d.shape.internal_edges():
            continue
        try:
            biased_gamma(T, d)
        except E.ArityBoundExceeded:
            continue
        out.append(d)
    return out


def test_c11_biased_order_independence(report):
    bad, checked = [], 0
    C = make_involutive_set(["a", "b"], [["a", "b"]])
    tables = [tabulate(GenusOperad(3, C), 4), tabulate(GenusOperad(2, two_colors()), 4)]
    for T in tables:
        rng = random.Random(11)
        for d in _random_evaluable(T, rng, 4, 50):
            checked += 1
            legs = sorted(d.f)
            try:
                b = biased_gamma(T, d, all_orders=True)
            except E.OrderDependence as exc:
                bad.append(str(exc))
                continue
            if T.key(b, legs) != T.key(T.gamma_fn(d), legs):
                bad.append("biased value differs from the structure map")
    # an incoherent table: flip one composition entry
    T = tabulate(GenusOperad(2), 4)
    key = next(k for k in sorted(T.compose_table, key=repr) if len(k[0]) == 3 and len(k[3]) == 3)
    r = T.compose_table[key]
    T.compose_table[key] = TabElem(r.profile, 1 - r.name, r.pos)
    rng = random.Random(5)
    detected = 0
    for d in _random_evaluable(T, rng, 4, 200):
        try:
            biased_gamma(T, d, all_orders=True)
        except E.OrderDependence:
            detected += 1
    ok = not bad and checked == 100 and detected > 0
    report(11, ok, f"{checked} random shapes order-independent; corrupted table flagged on "
                   f"{detected} shapes {bad[:1]}")
