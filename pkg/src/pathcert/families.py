"""Graph families and exact (slow, independent) oracles.

The oracles here deliberately avoid the bitset machinery used by the search
and the dichotomy engine: they work on plain Python sets built from the edge
list, so a bug in one path cannot hide behind the same bug in the other.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .embed import Embedding
from .errors import BudgetExceeded
from .graph import Coloring, Graph
from .tree import RootedTree

# Knuth's MMIX constants
LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
LCG_MODULUS = 1 << 64


class Lcg64:
    """64-bit linear congruential generator; uniform() uses the top 53 bits."""

    def __init__(self, seed: int):
        self.state = seed % LCG_MODULUS

    def next(self) -> int:
        self.state = (LCG_MULTIPLIER * self.state + LCG_INCREMENT) % LCG_MODULUS
        return self.state

    def uniform(self) -> float:
        return (self.next() >> 11) / float(1 << 53)


def path(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Graph.from_edges(n, combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph.from_edges(n, [])


def complete_bipartite(m: int, n: int) -> Graph:
    """K_{m,n} with parts 0..m-1 and m..m+n-1."""
    if m < 0 or n < 0:
        raise ValueError("part sizes must be nonnegative")
    return Graph.from_edges(m + n, [(i, m + j) for i in range(m) for j in range(n)])


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) driven by Lcg64: one draw per pair (i, j), i < j, in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    rng = Lcg64(seed)
    return Graph.from_edges(n, [(i, j) for i, j in combinations(range(n), 2) if rng.uniform() < p])


def mycielskian(G: Graph) -> Graph:
    """Vertices 0..n-1 copy G, n..2n-1 are shadows, 2n is the apex."""
    n = G.n
    edges = list(G.edges())
    for u, v in G.edges():
        edges.append((u, n + v))
        edges.append((v, n + u))
    edges.extend((n + i, 2 * n) for i in range(n))
    return Graph.from_edges(2 * n + 1, edges)


def kneser(n: int, s: int) -> tuple[Graph, list[tuple[int, ...]]]:
    """Kneser graph K(n, s) and the s-subsets of {1..n} labelling its vertices."""
    if s < 1 or n < 2 * s:
        raise ValueError(f"kneser needs n >= 2s >= 2, got n={n}, s={s}")
    subsets = list(combinations(range(1, n + 1), s))
    edges = [(i, j) for i, j in combinations(range(len(subsets)), 2)
             if not set(subsets[i]) & set(subsets[j])]
    return Graph.from_edges(len(subsets), edges), subsets


def grotzsch() -> Graph:
    return mycielskian(mycielskian(complete(2)))


def petersen() -> Graph:
    return kneser(5, 2)[0]


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict = field(default_factory=dict)
    seed: int = 0

    def build(self) -> Graph:
        p = self.params
        f = self.family
        if f == "path":
            return path(int(p["n"]))
        if f == "cycle":
            return cycle(int(p["n"]))
        if f == "complete":
            return complete(int(p["n"]))
        if f == "edgeless":
            return edgeless(int(p["n"]))
        if f == "complete_bipartite":
            return complete_bipartite(int(p["m"]), int(p["n"]))
        if f == "random":
            return random_graph(int(p["n"]), float(p["p"]), self.seed)
        if f == "kneser":
            return kneser(int(p["n"]), int(p["s"]))[0]
        if f == "mycielski":
            # iterates of the Mycielskian starting from K_2; level 2 is C_5
            G = complete(2)
            for _ in range(int(p.get("level", 1)) - 1):
                G = mycielskian(G)
            return G
        raise ValueError(f"unknown family {f!r}")


FAMILIES = ("path", "cycle", "complete", "edgeless", "complete_bipartite", "random", "kneser", "mycielski")


# -- oracles ----------------------------------------------------------------

def _adjacency_sets(G: Graph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(G.n)]
    for u, v in G.edges():
        adj[u].add(v)
        adj[v].add(u)
    return adj


def chromatic_number_exact(G: Graph, *, max_vertices: int = 24, budget: int = 2_000_000) -> tuple[int, Coloring]:
    """Exact chromatic number by DSATUR branch and bound, with an optimal colouring."""
    if G.n > max_vertices:
        raise BudgetExceeded(f"graph too large for the exact colouring oracle ({G.n} > {max_vertices})")
    if G.n == 0:
        return 0, Coloring({}, 0)
    adj = _adjacency_sets(G)

    # greedy upper bound in descending degree order
    greedy: dict[int, int] = {}
    for v in sorted(range(G.n), key=lambda v: -len(adj[v])):
        taken = {greedy[u] for u in adj[v] if u in greedy}
        greedy[v] = next(c for c in range(1, G.n + 2) if c not in taken)
    best = [max(greedy.values()), dict(greedy)]

    colour: dict[int, int] = {}
    nodes = [0]

    def pick() -> int:
        def key(v):
            sat = len({colour[u] for u in adj[v] if u in colour})
            return (sat, len(adj[v]), -v)
        return max((v for v in range(G.n) if v not in colour), key=key)

    def search(used: int) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"colouring oracle exceeded {budget} nodes")
        if used >= best[0]:
            return
        if len(colour) == G.n:
            best[0], best[1] = used, dict(colour)
            return
        v = pick()
        taken = {colour[u] for u in adj[v] if u in colour}
        for c in range(1, used + 1):
            if c not in taken:
                colour[v] = c
                search(used)
                del colour[v]
        if used + 1 < best[0]:
            colour[v] = used + 1
            search(used + 1)
            del colour[v]

    search(0)
    return best[0], Coloring(best[1], best[0])


def clique_number_exact(G: Graph, *, max_vertices: int = 64, budget: int = 5_000_000) -> int:
    """Exact clique number by Bron-Kerbosch with pivoting."""
    if G.n > max_vertices:
        raise BudgetExceeded(f"graph too large for the clique oracle ({G.n} > {max_vertices})")
    adj = _adjacency_sets(G)
    best = [0]
    nodes = [0]

    def expand(r: int, p: set[int], x: set[int]) -> None:
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceeded(f"clique oracle exceeded {budget} nodes")
        if not p and not x:
            best[0] = max(best[0], r)
            return
        if r + len(p) <= best[0]:
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            expand(r + 1, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand(0, set(range(G.n)), set())
    return best[0]


def is_induced_path(adj: list[set[int]], seq: list[int]) -> bool:
    """Distinct vertices, consecutive ones adjacent, all others non-adjacent."""
    if len(set(seq)) != len(seq):
        return False
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if (seq[j] in adj[seq[i]]) != (j == i + 1):
                return False
    return True


def brute_force_path_induced(G: Graph, T: RootedTree, anchor: int | None = None) -> Embedding | None:
    """Exhaustive search that checks every root path literally.

    Maps are enumerated in lexicographic order of the images listed in level
    order; a prefix is abandoned once some fully-mapped root path fails to be
    an induced path. Sibling images are enumerated in increasing order: any
    witness can be made so by permuting sibling subtrees, and the
    lexicographically first witness already is, so the result is unchanged.
    """
    adj = _adjacency_sets(G)
    order = T.level_order
    prev_sibling: dict[int, int] = {}
    for v in range(T.m):
        for a, b in zip(T.order[v], T.order[v][1:]):
            prev_sibling[b] = a
    phi: dict[int, int] = {}

    def assign(i: int) -> bool:
        if i == T.m:
            return True
        x = order[i]
        lo = phi[prev_sibling[x]] + 1 if x in prev_sibling else 0
        choices = [anchor] if (i == 0 and anchor is not None) else range(lo, G.n)
        for g in choices:
            if g in phi.values():
                continue
            phi[x] = g
            if is_induced_path(adj, [phi[y] for y in T.root_path(x)]) and assign(i + 1):
                return True
            del phi[x]
        return False

    if anchor is not None and not 0 <= anchor < G.n:
        raise IndexError(f"anchor {anchor} out of range")
    if assign(0):
        return Embedding(T, tuple(phi[x] for x in range(T.m)))
    return None


def kneser_degree(n: int, s: int) -> int:
    return comb(n - s, s)
