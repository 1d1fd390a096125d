"""Path-induced copies of rooted trees: verification and backtracking search.

A map phi from a rooted tree (T, r) into G is a path-induced copy when it
is injective, sends tree edges to graph edges, and sends every pair
(ancestor, descendant) at tree distance >= 2 to a non-adjacent pair.
Incomparable tree vertices are unconstrained.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import BudgetExceeded, InvalidEmbedding
from .graph import Graph, members, popcount
from .tree import RootedTree, SpiderCover


@dataclass(frozen=True)
class Embedding:
    tree: RootedTree
    map: tuple[int, ...]  # tree vertex -> graph vertex

    @property
    def anchor(self) -> int:
        return self.map[self.tree.root]

    @property
    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def to_dict(self) -> dict:
        return {
            "kind": "embedding",
            "tree": self.tree.to_dict(),
            "map": {str(x): g for x, g in enumerate(self.map)},
        }


def _as_tuple(T: RootedTree, phi: Mapping[int, int] | Sequence[int]) -> tuple[int, ...]:
    if isinstance(phi, Mapping):
        missing = [x for x in range(T.m) if x not in phi]
        if missing:
            raise InvalidEmbedding(f"map is partial: tree vertices {missing[:5]} unmapped")
        extra = [x for x in phi if not 0 <= x < T.m]
        if extra:
            raise InvalidEmbedding(f"map has entries for non-tree vertices {extra[:5]}")
        return tuple(phi[x] for x in range(T.m))
    if len(phi) != T.m:
        raise InvalidEmbedding(f"map has {len(phi)} entries for a tree on {T.m} vertices")
    return tuple(phi)


def verify_path_induced(G: Graph, emb: Embedding | tuple[RootedTree, Mapping[int, int]]) -> bool:
    """Check the comparable-pair characterisation of a path-induced copy.

    Raises InvalidEmbedding for a partial, out-of-range or non-injective map;
    returns False when the map is well-formed but not a path-induced copy.
    """
    if isinstance(emb, Embedding):
        T, phi = emb.tree, _as_tuple(emb.tree, emb.map)
    else:
        T, raw = emb
        phi = _as_tuple(T, raw)
    if any(not isinstance(g, int) or not 0 <= g < G.n for g in phi):
        raise InvalidEmbedding("map sends a tree vertex outside the graph")
    if len(set(phi)) != len(phi):
        raise InvalidEmbedding("map is not injective")
    for x in range(T.m):
        p = T.parent[x]
        if p is None:
            continue
        if not G.adj[phi[x]] >> phi[p] & 1:
            return False
        for a in T.ancestors(p):
            if G.adj[phi[x]] >> phi[a] & 1:
                return False
    return True


class _Search:
    def __init__(self, G: Graph, T: RootedTree, within: int, budget: int | None, symmetry_breaking: bool):
        self.G = G
        self.T = T
        self.within = within
        self.budget = budget
        self.symmetry_breaking = symmetry_breaking
        self.expansions = 0
        self.order = T.level_order
        self._pos = {x: i for i, x in enumerate(self.order)}
        self.phi = [-1] * T.m
        # closed[x]: union of neighbourhoods of the images on the root path to x
        self.closed = [0] * T.m
        self.pending = [len(T.order[x]) for x in range(T.m)]
        self.prev_sibling = [None] * T.m
        for v in range(T.m):
            kids = T.order[v]
            for a, b in zip(kids, kids[1:]):
                self.prev_sibling[b] = a

    def _tick(self):
        self.expansions += 1
        if self.budget is not None and self.expansions > self.budget:
            raise BudgetExceeded(f"path-induced search exceeded {self.budget} node expansions")

    def _pool(self, x: int, used: int) -> int:
        """Graph vertices still able to host a child of tree vertex x."""
        p = self.T.parent[x]
        blocked = self.closed[p] if p is not None else 0
        return self.G.adj[self.phi[x]] & self.within & ~used & ~blocked

    def _feasible(self, i: int, used: int) -> bool:
        """Every placed vertex among order[:i] can still receive its missing children."""
        union = 0
        need = 0
        for y in self.order[:i]:
            if self.pending[y]:
                pool = self._pool(y, used)
                if popcount(pool) < self.pending[y]:
                    return False
                union |= pool
                need += self.pending[y]
        return popcount(union) >= need

    def _place(self, x: int, g: int, used: int) -> bool:
        self.phi[x] = g
        p = self.T.parent[x]
        self.closed[x] = self.G.adj[g] | (self.closed[p] if p is not None else 0)
        used |= 1 << g
        i = self._pos[x] + 1
        if p is not None:
            self.pending[p] -= 1
        ok = self._feasible(i, used) and self._extend(i, used)
        if p is not None:
            self.pending[p] += 1
        return ok

    def _extend(self, i: int, used: int) -> bool:
        if i == self.T.m:
            return True
        x = self.order[i]
        p = self.T.parent[x]
        cand = self._pool(p, used)
        if self.symmetry_breaking and self.prev_sibling[x] is not None:
            cand &= ~((1 << (self.phi[self.prev_sibling[x]] + 1)) - 1)
        for g in members(cand):
            self._tick()
            if self._place(x, g, used):
                return True
        self.phi[x] = -1
        return False

    def run(self, root_image: int) -> tuple[int, ...] | None:
        self._tick()
        if self._place(self.T.root, root_image, 0):
            return tuple(self.phi)
        return None


def find_path_induced(
    G: Graph,
    T: RootedTree,
    anchor: int | None = None,
    *,
    within: int | None = None,
    budget: int | None = None,
    symmetry_breaking: bool = False,
) -> Embedding | None:
    """Depth-first search for a path-induced copy of ``T``.

    Tree vertices are placed in level order and graph candidates tried in
    ascending id, so the witness returned is deterministic. ``within``
    restricts the image to a vertex mask (the search then runs in the
    induced subgraph without re-indexing). Returns None only when the
    search is exhaustive; raises BudgetExceeded if ``budget`` node
    expansions do not settle the question.
    """
    if within is None:
        within = G.vertex_mask
    if anchor is not None:
        G._check(anchor)
        roots = [anchor] if within >> anchor & 1 else []
    else:
        roots = list(members(within))
    search = _Search(G, T, within, budget, symmetry_breaking)
    for r in roots:
        phi = search.run(r)
        if phi is not None:
            return Embedding(T, phi)
    return None


def _anchored(args):
    G, T, r, symmetry_breaking = args
    return find_path_induced(G, T, r, symmetry_breaking=symmetry_breaking)


def find_path_induced_parallel(G: Graph, T: RootedTree, workers: int, symmetry_breaking: bool = False) -> Embedding | None:
    """Unanchored search fanned out over root images.

    Returns the same witness as the sequential search: the successful anchor
    with the smallest id wins.
    """
    if workers <= 1:
        return find_path_induced(G, T, symmetry_breaking=symmetry_breaking)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for result in pool.map(_anchored, [(G, T, r, symmetry_breaking) for r in range(G.n)]):
            if result is not None:
                return result
    return None


def restrict_embedding(emb: Embedding, cover: SpiderCover, T: RootedTree) -> Embedding:
    """Compose a spider embedding with the inclusion of T into that spider."""
    S = cover.spider
    if emb.tree.m != S.m or emb.tree.parent != S.parent:
        raise ValueError(f"embedding is not of spider({cover.d}, {cover.k})")
    if len(cover.inclusion) != T.m or cover.inclusion[T.root] != S.root:
        raise ValueError("inclusion does not match the tree or is not root-preserving")
    for x in range(T.m):
        p = T.parent[x]
        if p is not None and S.parent[cover.inclusion[x]] != cover.inclusion[p]:
            raise ValueError(f"inclusion does not preserve the parent of tree vertex {x}")
    return Embedding(T, tuple(emb.map[cover.inclusion[x]] for x in range(T.m)))
