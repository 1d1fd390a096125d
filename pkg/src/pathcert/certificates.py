"""Certificate JSON: serialisation, parsing and stand-alone verification.

The verifier uses only adjacency queries and the creature test. It never
calls the search or the engine, and it recomputes the colour bound from the
declared (d, k, t) instead of trusting the number written in the file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from .creature import is_creature
from .embed import Embedding, verify_path_induced
from .errors import GraphFormatError, InvalidEmbedding
from .graph import Coloring, Graph, is_proper_coloring, mask_of
from .tree import RootedTree, spider_cover


def dumps(cert: dict) -> str:
    return json.dumps(cert, sort_keys=True, indent=1) + "\n"


def embedding_from_dict(data: dict, source: str = "<cert>") -> Embedding:
    tree = RootedTree.from_dict(data.get("tree", {}), source)
    try:
        raw = {int(x): int(g) for x, g in data["map"].items()}
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise GraphFormatError(f"malformed map: {exc}", source) from None
    missing = [x for x in range(tree.m) if x not in raw]
    if missing or len(raw) != tree.m:
        raise InvalidEmbedding(f"map does not cover exactly the tree vertices (missing {missing[:5]})")
    return Embedding(tree, tuple(raw[x] for x in range(tree.m)))


def color_bound(d: int, k: int, t: int) -> int:
    """Independent recomputation of the colour bound B(t) for spider(d, k)."""
    if t <= 1:
        return 0
    bound = 1
    creature_param = sum(d ** j for j in range(1, k + 1))
    for _ in range(3, t + 1):
        f, c = 1, d
        for j in range(2, k + 1):
            f = f * c + bound
            c += d ** j
        bound = creature_param * f
    return bound


@dataclass(frozen=True)
class Verdict:
    ok: bool
    message: str

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(G: Graph, cert: dict) -> Verdict:
    kind = cert.get("kind")
    params = cert.get("params")
    if kind == "embedding":
        try:
            emb = embedding_from_dict(cert)
            ok = verify_path_induced(G, emb)
        except (InvalidEmbedding, GraphFormatError) as exc:
            return Verdict(False, f"malformed embedding: {exc}")
        if not ok:
            return Verdict(False, "map is not a path-induced copy")
        if "anchor" in cert and cert["anchor"] != emb.anchor:
            return Verdict(False, f"root maps to {emb.anchor}, certificate declares anchor {cert['anchor']}")
        if params is not None:
            cover = spider_cover(emb.tree)
            if (cover.d, cover.k) != (params.get("d"), params.get("k")):
                return Verdict(False, f"tree is covered by spider({cover.d}, {cover.k}), params say "
                                      f"spider({params.get('d')}, {params.get('k')})")
        return Verdict(True, f"path-induced copy of a {emb.tree.m}-vertex tree rooted at {emb.anchor}")

    if kind == "coloring":
        try:
            palette = int(cert["palette"])
            assignment = {int(v): int(c) for v, c in cert["assignment"].items()}
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            return Verdict(False, f"malformed colouring: {exc}")
        if set(assignment) != set(range(G.n)):
            return Verdict(False, "assignment does not cover exactly the graph's vertices")
        if not is_proper_coloring(G, Coloring(assignment, palette)):
            return Verdict(False, "colouring is improper or leaves the palette")
        if params is not None:
            bound = color_bound(int(params["d"]), int(params["k"]), int(params["t"]))
            if params.get("bound") != bound:
                return Verdict(False, f"declared bound {params.get('bound')} differs from recomputed {bound}")
            if palette > bound:
                return Verdict(False, f"palette {palette} exceeds the bound {bound}")
        peels = cert.get("peels")
        if peels is not None:
            residual = G.vertex_mask
            try:
                for i, peel in enumerate(peels):
                    X = mask_of(int(v) for v in peel["X"])
                    if X & ~residual or not X:
                        return Verdict(False, f"peel {i} is empty or reuses removed vertices")
                    if not is_creature(G, X, int(peel["c"]), residual):
                        return Verdict(False, f"peel {i} is not a {peel['c']}-creature of the residual graph")
                    if int(peel["a"]) * int(peel["c"]) > palette:
                        return Verdict(False, f"peel {i} needs {peel['a']}x{peel['c']} colours, palette is {palette}")
                    residual &= ~X
            except (KeyError, TypeError, ValueError) as exc:
                return Verdict(False, f"malformed peel record: {exc}")
            if residual:
                return Verdict(False, "peels do not exhaust the graph")
        used = len(set(assignment.values()))
        return Verdict(True, f"proper colouring, palette {palette}, {used} colours used")

    return Verdict(False, f"unknown certificate kind {kind!r}")
