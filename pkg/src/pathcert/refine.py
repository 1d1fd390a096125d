"""Level-stable and type-uniform structure on path-induced copies.

``refine_embedding`` thins a copy of spider(D, k) down to spider(d, k) by
choosing d of the D children below every kept vertex, subject to the
requested predicates. It is an exact backtracking search with no promise
about how large D must be; when no selection works it says so.
"""
from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .embed import Embedding, verify_path_induced
from .errors import BudgetExceeded, InvalidEmbedding
from .graph import Graph
from .tree import RootedTree, comparable, pair_type, spider

GOALS = ("level_stable", "type_uniform")


def _require_valid(G: Graph, emb: Embedding) -> None:
    if not verify_path_induced(G, emb):
        raise InvalidEmbedding("embedding is not a path-induced copy")


def is_level_stable(G: Graph, emb: Embedding) -> bool:
    """Each depth class of the tree maps to a stable set of G."""
    _require_valid(G, emb)
    T = emb.tree
    by_depth: dict[int, list[int]] = {}
    for x in range(T.m):
        by_depth.setdefault(T.depths[x], []).append(emb.map[x])
    return all(not G.has_edge(g, h) for layer in by_depth.values() for g, h in combinations(layer, 2))


def is_type_uniform(G: Graph, emb: Embedding) -> bool:
    """Adjacency of incomparable image pairs depends only on the pair type."""
    _require_valid(G, emb)
    T = emb.tree
    seen: dict = {}
    for x, y in combinations(range(T.m), 2):
        if comparable(T, x, y):
            continue
        adjacent = G.has_edge(emb.map[x], emb.map[y])
        if seen.setdefault(pair_type(T, x, y), adjacent) != adjacent:
            return False
    return True


def _spider_shape(T: RootedTree) -> tuple[int, int]:
    D, k = len(T.order[T.root]), T.height
    if D < 2 or k < 1 or T != spider(D, k):
        raise ValueError("refinement expects an embedding of a spider numbered level by level")
    return D, k


def refine_embedding(
    G: Graph,
    emb: Embedding,
    d: int,
    goals: Iterable[str] = GOALS,
    *,
    budget: int | None = 1_000_000,
) -> Embedding | None:
    """Sub-copy of spider(d, k) inside a copy of spider(D, k) meeting ``goals``.

    Kept vertices are processed in level order (so pairs are fixed in order
    of the depth of their join, then by branch); below each, d-subsets of
    the available children are tried in lexicographic order, keeping the
    original child order. Returns None when no selection satisfies the goals
    ("insufficient branching"); raises BudgetExceeded past ``budget`` nodes.
    """
    goals = set(goals)
    unknown = goals - set(GOALS)
    if unknown:
        raise ValueError(f"unknown goals {sorted(unknown)}; choose from {GOALS}")
    _require_valid(G, emb)
    D, k = _spider_shape(emb.tree)
    if not 2 <= d <= D:
        raise ValueError(f"target branching must satisfy 2 <= d <= D={D}, got {d}")
    target = spider(d, k)
    source = emb.tree
    stable = "level_stable" in goals
    uniform = "type_uniform" in goals
    internal = [y for y in target.level_order if target.order[y]]

    src = [-1] * target.m  # target vertex -> source vertex
    src[0] = 0
    placed = [0]
    types: dict = {}
    nodes = [0]

    def admissible(z: int) -> list | None:
        """Constraints for newly placed target vertex z; returns type keys it introduced."""
        g = emb.map[src[z]]
        added = []
        for w in placed:
            h = emb.map[src[w]]
            if stable and target.depths[w] == target.depths[z] and G.has_edge(g, h):
                break
            if uniform and not comparable(target, z, w):
                key = pair_type(target, z, w)
                adjacent = G.has_edge(g, h)
                if key not in types:
                    types[key] = adjacent
                    added.append(key)
                elif types[key] != adjacent:
                    break
        else:
            return added
        for key in added:
            del types[key]
        return None

    def place_group(i: int) -> bool:
        if i == len(internal):
            return True
        y = internal[i]
        kids = target.order[y]
        for chosen in combinations(source.order[src[y]], d):
            nodes[0] += 1
            if budget is not None and nodes[0] > budget:
                raise BudgetExceeded(f"refinement exceeded {budget} nodes")
            undo: list = []
            ok = True
            for z, s in zip(kids, chosen):
                src[z] = s
                added = admissible(z)
                if added is None:
                    ok = False
                    break
                placed.append(z)
                undo.append(added)
            if ok and place_group(i + 1):
                return True
            for added in undo:
                placed.pop()
                for key in added:
                    del types[key]
        return False

    if not place_group(0):
        return None
    out = Embedding(target, tuple(emb.map[src[z]] for z in range(target.m)))
    if not verify_path_induced(G, out):
        raise AssertionError("refinement produced an invalid copy")
    return out
