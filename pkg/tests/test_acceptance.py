"""Acceptance criteria 1-8.

Each test appends one PASS/FAIL line to the session report, printed in the
terminal summary, and then asserts. Certificates produced by criteria 1-3
are kept so that criterion 8 can rerun them and compare bytes.
"""
import random
import time

import pytest

from pathcert.certificates import color_bound, dumps, verify_certificate
from pathcert.creature import extend_coloring, is_creature
from pathcert.dichotomy import bounds, spider_dichotomy, tree_dichotomy
from pathcert.embed import Embedding, find_path_induced, verify_path_induced
from pathcert.errors import CreatureViolated, PaletteTooSmall, PartNotStable
from pathcert.families import (
    brute_force_path_induced,
    chromatic_number_exact,
    clique_number_exact,
    complete,
    complete_bipartite,
    cycle,
    grotzsch,
    kneser,
    mycielskian,
    petersen,
    random_graph,
)
from pathcert.graph import compact_coloring, is_proper_coloring, members, popcount
from pathcert.refine import is_level_stable, is_type_uniform, refine_embedding
from pathcert.tree import RootedTree, path_tree, spider

from literal import all_path_induced_maps, literal_level_stable, literal_type_uniform

pytestmark = pytest.mark.acceptance

_first_run: dict[int, list[str]] = {}
_traces: list = []


def _record(report, number, title, ok, detail):
    report.append(f"criterion {number} [PRIMARY] {title}: {'PASS' if ok else 'FAIL'} ({detail})")


# -- criterion 1 -------------------------------------------------------------

def _run_knn():
    P4 = path_tree(4)
    certs, problems = [], []
    for n in range(2, 9):
        G = complete_bipartite(n, n)
        if brute_force_path_induced(G, P4) is not None:
            problems.append(f"brute force found P_4 in K_{n},{n}")
        if find_path_induced(G, P4) is not None:
            problems.append(f"search found P_4 in K_{n},{n}")
        res = tree_dichotomy(G, P4, 3)
        cert = res.to_dict()
        certs.append(dumps(cert))
        if res.kind != "coloring":
            problems.append(f"K_{n},{n}: expected a colouring")
            continue
        col = res.coloring.coloring
        if not is_proper_coloring(G, col) or col.palette > bounds(2, 3, 3).bound:
            problems.append(f"K_{n},{n}: colouring improper or over B(3,2,3)")
        chi, _ = chromatic_number_exact(G)
        if compact_coloring(G, col).used != 2 or chi != 2:
            problems.append(f"K_{n},{n}: compacted usage {compact_coloring(G, col).used}, exact chi {chi}")
        if not verify_certificate(G, cert):
            problems.append(f"K_{n},{n}: certificate rejected")
    return certs, problems


def test_criterion_1_knn_reproduction(report):
    start = time.perf_counter()
    certs, problems = _run_knn()
    elapsed = time.perf_counter() - start
    _first_run[1] = certs
    ok = not problems and elapsed < 10
    _record(report, 1, "K_{n,n} reproduction", ok,
            f"n=2..8, bound {bounds(2, 3, 3).bound}, compacted to 2 colours, {elapsed:.2f}s"
            + (f"; {problems[:3]}" if problems else ""))
    assert ok, problems


# -- criterion 2 and 5 ---------------------------------------------------------

PAIRS = ((2, 1), (2, 2), (3, 2))


def _sweep_graphs():
    out = []
    for seed in range(210):
        n = 5 + (seed * 7) % 36
        p = (0.1, 0.3, 0.5)[seed % 3]
        out.append((f"G({n},{p},{seed})", random_graph(n, p, seed)))
    G = complete(2)
    for level in range(1, 4):
        out.append((f"mycielski{level}", G))
        G = mycielskian(G)
    out.append(("kneser(5,2)", kneser(5, 2)[0]))
    return out


def _run_sweep(audit=None):
    """Run every (graph, spider) pair; creature records go to ``audit`` if given."""
    certs, problems = [], []
    for name, G in _sweep_graphs():
        t = clique_number_exact(G) + 1
        for d, k in PAIRS:
            trace = [] if audit is not None else None
            res = spider_dichotomy(G, d, k, t, trace=trace)
            if audit is not None:
                audit.extend((G, d, k, t, rec) for rec in trace)
            cert = res.to_dict()
            certs.append(dumps(cert))
            verdict = verify_certificate(G, cert)
            if not verdict:
                problems.append(f"{name} d={d} k={k}: {verdict.message}")
            elif res.kind == "embedding":
                if not verify_path_induced(G, res.embedding) or cert["anchor"] != res.embedding.map[0]:
                    problems.append(f"{name} d={d} k={k}: embedding or anchor mismatch")
            elif res.coloring.coloring.palette > color_bound(d, k, t):
                problems.append(f"{name} d={d} k={k}: palette over bound")
    return certs, problems


def test_criterion_2_soundness_sweep(report):
    start = time.perf_counter()
    _traces.clear()
    certs, problems = _run_sweep(_traces)
    elapsed = time.perf_counter() - start
    _first_run[2] = certs
    embeddings = sum('"kind": "embedding"' in c for c in certs)
    ok = not problems and elapsed < 300 and len(certs) >= 600
    _record(report, 2, "dichotomy soundness sweep", ok,
            f"{len(_sweep_graphs())} graphs x {len(PAIRS)} spiders, {embeddings} embeddings, "
            f"{len(certs) - embeddings} colourings, {elapsed:.1f}s"
            + (f"; {problems[:3]}" if problems else ""))
    assert ok, problems


def test_criterion_5_creature_assertions(report):
    if not _traces:
        _run_sweep(_traces)
    problems = []
    for G, d, k, t, rec in _traces:
        table = bounds(d, k, t)
        if rec.c != table.c[rec.j]:
            problems.append(f"c mismatch at level {rec.level}, j={rec.j}")
        if rec.X - set(members(rec.within)) or not is_creature(G, rec.X, rec.c, rec.within):
            problems.append(f"not a {rec.c}-creature at level {rec.level}, j={rec.j}")
        if rec.v not in rec.X:
            problems.append("anchor vertex outside X")
        if rec.witness.palette > table.f_by_level[rec.level][rec.j] or \
                not is_proper_coloring(G, rec.witness, rec.X):
            problems.append("witness improper or over f")
        if rec.w_size > d ** rec.j - 1:
            problems.append(f"|W|={rec.w_size} > d^j-1")
    ok = not problems and len(_traces) > 0
    _record(report, 5, "creature runtime assertions", ok,
            f"{len(_traces)} creature records audited" + (f"; {problems[:3]}" if problems else ""))
    assert ok, problems


# -- criterion 3 -------------------------------------------------------------

def _spiders_up_to(n):
    out = []
    for d in range(2, n):
        for k in range(1, 5):
            T = spider(d, k)
            if T.m > n:
                break
            out.append(T)
    return out


def _run_oracle_equivalence():
    certs, disagreements, checked = [], [], 0
    for seed in range(520):
        n = 3 + seed % 10
        p = (0.2, 0.35, 0.5, 0.7)[seed % 4]
        G = random_graph(n, p, 10_000 + seed)
        for T in _spiders_up_to(n):
            fast = find_path_induced(G, T)
            slow = brute_force_path_induced(G, T)
            checked += 1
            if (fast is None) != (slow is None) or (fast is not None and not verify_path_induced(G, fast)):
                disagreements.append(f"seed {seed}, spider m={T.m}")
            certs.append(dumps(fast.to_dict()) if fast is not None else "none\n")
    return certs, disagreements, checked


def test_criterion_3_oracle_equivalence(report):
    certs, disagreements, checked = _run_oracle_equivalence()
    _first_run[3] = certs
    found = sum(c != "none\n" for c in certs)
    ok = not disagreements and checked >= 500
    _record(report, 3, "oracle equivalence", ok,
            f"520 graphs, {checked} (graph, spider) pairs, {found} copies, {len(disagreements)} disagreements")
    assert ok, disagreements[:5]


# -- criterion 4 -------------------------------------------------------------

def _random_instance(rng):
    n = rng.randint(2, 16)
    G = random_graph(n, rng.choice((0.2, 0.4, 0.6)), rng.randrange(1 << 30))
    X = [v for v in range(n) if rng.random() < 0.5] or [0]
    parts: list[list[int]] = []
    for v in rng.sample(X, len(X)):
        fits = [q for q in parts if not any(G.adj[v] >> u & 1 for u in q)]
        (rng.choice(fits) if fits else (parts.append([]) or parts[-1])).append(v)
    xmask = sum(1 << v for v in X)
    rest = [v for v in range(n) if not xmask >> v & 1]
    c = max((popcount(G.adj[v] & ~xmask) for v in X), default=0) + 1 + rng.randint(0, 2)
    max_deg = max((G.degree(v) for v in range(n)), default=0)
    p = max(len(parts) * c, max_deg + 1) + rng.randint(0, 3)
    kappa: dict[int, int] = {}
    for v in rng.sample(rest, len(rest)):
        taken = {kappa[u] for u in members(G.adj[v]) if u in kappa}
        kappa[v] = rng.choice([col for col in range(1, p + 1) if col not in taken])
    return G, X, parts, kappa, p, c


def test_criterion_4_extension(report):
    rng = random.Random(2024)
    problems, instances = [], 0
    for _ in range(600):
        G, X, parts, kappa, p, c = _random_instance(rng)
        out = extend_coloring(G, X, parts, kappa, p, c)
        instances += 1
        if not is_proper_coloring(G, out):
            problems.append("improper result")
        if any(out.assignment[v] != col for v, col in kappa.items()):
            problems.append("kappa changed off X")
        for i, part in enumerate(parts, 1):
            if any(not (i - 1) * c < out.assignment[v] <= i * c for v in part):
                problems.append(f"part {i} left its block")
    # deliberately violated preconditions
    G = cycle(5)
    errors = []
    for exc, args in (
        (PaletteTooSmall, (G, [0, 2], [[0, 2]], {1: 1, 3: 2, 4: 3}, 2, 3)),
        (PartNotStable, (G, [0, 1], [[0, 1]], {2: 1, 3: 2, 4: 3}, 6, 2)),
        (CreatureViolated, (G, [0], [[0]], {1: 1, 2: 2, 3: 1, 4: 2}, 3, 2)),
    ):
        try:
            extend_coloring(*args)
            errors.append(f"{exc.__name__} not raised")
        except exc:
            pass
    ok = not problems and not errors and instances >= 500
    _record(report, 4, "creature colouring extension", ok,
            f"{instances} random instances, 3 error cases" + (f"; {(problems + errors)[:3]}" if not ok else ""))
    assert ok, problems[:5] + errors


# -- criterion 6 -------------------------------------------------------------

def test_criterion_6_family_sanity(report):
    start = time.perf_counter()
    problems = []
    expected_chi = {"C_5": (cycle(5), 3), "Grotzsch": (grotzsch(), 4), "Petersen": (petersen(), 3),
                    "K_5,5": (complete_bipartite(5, 5), 2)}
    for name, (G, chi) in expected_chi.items():
        got, witness = chromatic_number_exact(G)
        if got != chi or not is_proper_coloring(G, witness) or witness.used != chi:
            problems.append(f"chi({name}) = {got}, expected {chi}")
    if clique_number_exact(grotzsch()) != 2:
        problems.append("omega(Grotzsch) != 2")
    chain = [complete(2)]
    for _ in range(2):
        chain.append(mycielskian(chain[-1]))
    if [(G.n, G.m) for G in chain] != [(2, 1), (5, 5), (11, 20)]:
        problems.append(f"chain counts {[(G.n, G.m) for G in chain]}")
    if any(clique_number_exact(G) != 2 for G in chain):
        problems.append("chain not triangle-free")
    chis = [chromatic_number_exact(G)[0] for G in chain]
    if chis != [2, 3, 4]:
        problems.append(f"chain chromatic numbers {chis}")
    if sorted(chain[1].degree(v) for v in range(5)) != [2] * 5:
        problems.append("second iterate is not 2-regular")
    if chain[2].to_dict() != grotzsch().to_dict():
        problems.append("third iterate differs from the Grotzsch generator")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    _record(report, 6, "family sanity", ok, f"chi/omega values and K_2 -> C_5 -> Grotzsch chain, {elapsed:.2f}s"
            + (f"; {problems}" if problems else ""))
    assert ok, problems


# -- criterion 7 -------------------------------------------------------------

def _small_trees():
    lopsided = RootedTree.from_parents([None, 0, 0, 1, 1, 2])
    return [spider(2, 1), spider(3, 1), path_tree(3), RootedTree.from_parents([None, 0, 0, 1]), lopsided]


def test_criterion_7_refinement_predicates(report):
    problems, enumerated = [], 0
    for seed in range(40):
        n = 6 + seed % 3
        G = random_graph(n, (0.25, 0.4, 0.55)[seed % 3], 500 + seed)
        for T in _small_trees():
            for i, phi in enumerate(all_path_induced_maps(G, T)):
                if i >= 6:
                    break
                emb = Embedding(T, tuple(phi))
                enumerated += 1
                if is_level_stable(G, emb) != literal_level_stable(G, T, phi):
                    problems.append(f"level-stable mismatch, seed {seed}, {phi}")
                if is_type_uniform(G, emb) != literal_type_uniform(G, T, phi):
                    problems.append(f"type-uniform mismatch, seed {seed}, {phi}")

    refined = 0
    for D, k, n, p, budget in ((4, 1, 30, 0.3, 200_000), (4, 2, 40, 0.3, 500_000)):
        for seed in range(3):
            G = random_graph(n, p, seed)
            emb = find_path_induced(G, spider(D, k))
            if emb is None:
                continue
            for goals in (["level_stable"], ["type_uniform"], ["level_stable", "type_uniform"]):
                out = refine_embedding(G, emb, 2, goals, budget=budget)
                if out is None:
                    continue
                refined += 1
                if out.tree != spider(2, k) or not verify_path_induced(G, out):
                    problems.append(f"refined copy invalid (D={D}, k={k}, seed {seed})")
                if "level_stable" in goals and not literal_level_stable(G, out.tree, out.map):
                    problems.append("refined copy not level-stable")
                if "type_uniform" in goals and not literal_type_uniform(G, out.tree, out.map):
                    problems.append("refined copy not type-uniform")
    ok = not problems and enumerated >= 100 and refined > 0
    _record(report, 7, "level-stable and type-uniform predicates", ok,
            f"{enumerated} enumerated embeddings, {refined} refined copies" + (f"; {problems[:3]}" if problems else ""))
    assert ok, problems[:5]


# -- criterion 8 -------------------------------------------------------------

def test_criterion_8_determinism(report):
    if 1 not in _first_run:
        _first_run[1] = _run_knn()[0]
    if 2 not in _first_run:
        _first_run[2] = _run_sweep()[0]
    if 3 not in _first_run:
        _first_run[3] = _run_oracle_equivalence()[0]
    again = {1: _run_knn()[0], 2: _run_sweep()[0], 3: _run_oracle_equivalence()[0]}
    differing = [i for i in (1, 2, 3) if again[i] != _first_run[i]]
    total = sum(len(v) for v in again.values())
    ok = not differing
    _record(report, 8, "determinism", ok, f"{total} certificates from criteria 1-3 rerun, "
            + ("byte-identical" if ok else f"criteria {differing} differ"))
    assert ok
