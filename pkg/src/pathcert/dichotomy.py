"""Embedding-or-colouring engine for spiders and general rooted trees.

Given G, a spider (complete d-ary tree of height k) and a clique bound t,
the engine returns exactly one certificate: a path-induced copy of the
spider, or a proper colouring of G with at most ``bounds(d, k, t).B[t]``
colours. The colouring is built by repeatedly peeling a creature off the
residual graph and colouring back in reverse; each creature comes from
``creature_or_embedding``, whose neighbourhood colourings are supplied by
the same engine one clique level down.

Creature parameters use c(1) = d, c(j) = c(j-1) + d**j. With these values
every creature and colour-count claim the recursion relies on holds
literally, and the engine re-checks each of them at runtime.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .creature import Creature, PeelAborted, PeelColoring, extend_coloring, is_creature, peel_coloring
from .embed import Embedding, find_path_induced, restrict_embedding, verify_path_induced
from .errors import BaseLevelViolation, BudgetExceeded, ExtensionError, InvariantViolation
from .graph import Coloring, Graph, is_proper_coloring, mask_of, members, popcount
from .tree import RootedTree, spider, spider_cover

MAX_T = 6
MAX_K = 4


@dataclass(frozen=True)
class BoundTable:
    d: int
    k: int
    t: int
    c: dict[int, int]  # j -> c(j)
    tau: dict[int, int]  # level -> colours allowed on a neighbourhood
    f_by_level: dict[int, dict[int, int]]  # level -> (j -> f(j)), levels >= 3
    B: dict[int, int]  # level -> global colour bound

    @property
    def bound(self) -> int:
        return self.B[self.t]

    @property
    def f(self) -> dict[int, int]:
        return self.f_by_level.get(self.t, {})

    def to_dict(self) -> dict:
        return {
            "c": {str(j): v for j, v in self.c.items()},
            "tau": {str(s): v for s, v in self.tau.items()},
            "f": {str(s): {str(j): v for j, v in fs.items()} for s, fs in self.f_by_level.items()},
            "B": {str(s): v for s, v in self.B.items()},
        }


def bounds(d: int, k: int, t: int) -> BoundTable:
    if d < 2 or k < 1 or t < 1:
        raise ValueError(f"need d >= 2, k >= 1, t >= 1 (got d={d}, k={k}, t={t})")
    c = {1: d}
    for j in range(2, k + 1):
        c[j] = c[j - 1] + d ** j
    B = {1: 0}
    if t >= 2:
        B[2] = 1
    tau: dict[int, int] = {}
    f_by_level: dict[int, dict[int, int]] = {}
    for level in range(3, t + 1):
        tau[level] = B[level - 1]
        f = {1: 1}
        for j in range(2, k + 1):
            f[j] = f[j - 1] * c[j - 1] + tau[level]
        f_by_level[level] = f
        B[level] = c[k] * f[k]
    return BoundTable(d, k, t, c, tau, f_by_level, B)


class EmbeddingFound(PeelAborted):
    """Unwinds the recursion as soon as a spider copy turns up anywhere."""

    def __init__(self, embedding: Embedding):
        self.embedding = embedding
        super().__init__(embedding)


@dataclass(frozen=True)
class CreatureRecord:
    """One creature produced inside the recursion, kept for auditing."""

    level: int
    j: int
    v: int
    within: int
    X: frozenset[int]
    c: int
    f: int
    witness: Coloring
    A: tuple[int, ...]
    W: int

    @property
    def w_size(self) -> int:
        return popcount(self.W)


def _graft(d: int, j: int, v: int, subs: list[Embedding]) -> Embedding:
    """Spider(d, j) copy rooted at v from d copies of spider(d, j-1)."""
    big = spider(d, j)
    phi = [-1] * big.m
    phi[0] = v
    small = subs[0].tree
    for i, sub in enumerate(subs):
        pos = [0] * small.m
        pos[0] = i + 1
        for y in small.level_order:
            for r, child in enumerate(small.order[y]):
                pos[child] = d * pos[y] + 1 + r
        for y in range(small.m):
            phi[pos[y]] = sub.map[y]
    return Embedding(big, tuple(phi))


NeighbourhoodColorer = Callable[[int], "Coloring | Embedding"]


class _CreatureEngine:
    """creature_or_embedding for fixed G, d, k and neighbourhood bound tau."""

    def __init__(self, G: Graph, d: int, k: int, tau: int, colorer: NeighbourhoodColorer,
                 level: int = 0, trace: list | None = None):
        self.G, self.d, self.k, self.tau = G, d, k, tau
        self.colorer = colorer
        self.level = level
        self.trace = trace
        self.c = {1: d}
        self.f = {1: 1}
        for j in range(2, k + 1):
            self.c[j] = self.c[j - 1] + d ** j
            self.f[j] = self.f[j - 1] * self.c[j - 1] + tau
        self.full = spider(d, k)
        self.spiders = {j: spider(d, j) for j in range(1, k + 1)}

    def _color_neighbourhood(self, N: int) -> Coloring:
        result = self.colorer(N)
        if isinstance(result, Embedding):
            if result.tree != self.full or not verify_path_induced(self.G, result):
                raise InvariantViolation("neighbourhood colourer returned an invalid embedding")
            raise EmbeddingFound(result)
        verts = list(members(N))
        if not is_proper_coloring(self.G, result.assignment, verts) or \
                any(result.assignment[u] > self.tau for u in verts):
            raise InvariantViolation(f"neighbourhood colouring is improper or uses more than {self.tau} colours")
        return result

    def run(self, S: int, v: int, j: int) -> Creature | Embedding:
        G, d = self.G, self.d
        N = G.adj[v] & S
        if j == 1:
            if popcount(N) >= d:
                return Embedding(self.spiders[1], (v, *list(members(N))[:d]))
            return self._record(S, v, 1, Creature(frozenset([v]), d, Coloring({v: 1}, 1)), (), 0)

        M = S & ~N & ~(1 << v)
        A: list[int] = []
        subs: list[Embedding] = []
        W = 0
        for u in members(N):
            sub = find_path_induced(G, self.spiders[j - 1], u, within=(M & ~W) | 1 << u)
            if sub is not None:
                A.append(u)
                subs.append(sub)
                W |= mask_of(sub.map)
                if len(A) == d:
                    return _graft(d, j, v, subs)
        if popcount(W) > d ** j - 1:
            raise InvariantViolation(f"|W| = {popcount(W)} exceeds d^j - 1 = {d ** j - 1}")

        rest = N & ~mask_of(A)
        pieces: list[tuple[int, Creature]] = []
        for u in members(rest):
            sub = self.run((M & ~W) | 1 << u, u, j - 1)
            if isinstance(sub, Embedding):
                raise InvariantViolation(f"vertex {u} hosts a spider({d}, {j - 1}) copy but was left out of A")
            pieces.append((u, sub))

        nbhd = self._color_neighbourhood(N)

        # colour the union of X_u - {u} creature by creature
        inner = self.f[j - 1] * self.c[j - 1]
        Y = 0
        kappa: dict[int, int] = {}
        for u, cr in pieces:
            Z = mask_of(cr.X) & ~(1 << u)
            Y |= Z
            parts = [part - {u} for part in cr.parts]
            try:
                kappa = dict(extend_coloring(G, Z, parts, kappa, inner, self.c[j - 1], within=Y).assignment)
            except ExtensionError as exc:
                raise InvariantViolation(f"creature extension failed inside the recursion: {exc}") from exc

        witness = dict(kappa)
        for u in members(rest):
            witness[u] = inner + nbhd.assignment[u]
        taken = {witness[u] for u in members(rest)}
        witness[v] = next(col for col in range(1, inner + self.tau + 2) if col not in taken)
        X = frozenset(witness)
        cr = Creature(X, self.c[j], Coloring(witness, self.f[j]))
        return self._record(S, v, j, cr, tuple(A), W)

    def _record(self, S: int, v: int, j: int, cr: Creature, A: tuple[int, ...], W: int) -> Creature:
        if v not in cr.X or not is_creature(self.G, cr.X, cr.c, S):
            raise InvariantViolation(f"claimed {cr.c}-creature at vertex {v} (j={j}) is not one")
        if cr.witness.max_color > self.f[j] or not is_proper_coloring(self.G, cr.witness.assignment, cr.X):
            raise InvariantViolation(f"creature witness at vertex {v} (j={j}) is improper or exceeds f={self.f[j]}")
        if self.trace is not None:
            self.trace.append(CreatureRecord(self.level, j, v, S, cr.X, cr.c, self.f[j], cr.witness, A, W))
        return cr


def creature_or_embedding(
    G: Graph,
    v: int,
    d: int,
    k: int,
    nbhd_colorer: Callable[[frozenset[int]], Coloring | Embedding],
    tau: int,
    within: frozenset[int] | None = None,
) -> Creature | Embedding:
    """Either a path-induced spider(d, k) copy anchored at v, or a c(k)-creature
    containing v with a proper witness colouring using at most f(k) colours.

    ``nbhd_colorer`` receives a vertex set of G and must return a proper
    colouring of it with at most ``tau`` colours, or a path-induced copy of
    spider(d, k) in G (which is then returned as is).
    """
    if d < 2 or k < 1 or tau < 0:
        raise ValueError(f"need d >= 2, k >= 1, tau >= 0 (got d={d}, k={k}, tau={tau})")
    G._check(v)
    S = G.vertex_mask if within is None else mask_of(within)
    if not S >> v & 1:
        raise ValueError(f"vertex {v} is not in the working vertex set")
    engine = _CreatureEngine(G, d, k, tau, lambda N: nbhd_colorer(frozenset(members(N))))
    try:
        return engine.run(S, v, k)
    except EmbeddingFound as found:
        return found.embedding


@dataclass(frozen=True)
class DichotomyResult:
    d: int
    k: int
    t: int
    table: BoundTable
    embedding: Embedding | None = None
    coloring: PeelColoring | None = None

    def __post_init__(self):
        if (self.embedding is None) == (self.coloring is None):
            raise ValueError("exactly one of embedding and coloring must be present")

    @property
    def kind(self) -> str:
        return "embedding" if self.embedding is not None else "coloring"

    @property
    def bound(self) -> int:
        return self.table.bound

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "params": {"d": self.d, "k": self.k, "t": self.t, "bound": self.bound},
            "bounds": self.table.to_dict(),
        }
        if self.embedding is not None:
            payload = self.embedding.to_dict()
            out["tree"] = payload["tree"]
            out["map"] = payload["map"]
            out["anchor"] = self.embedding.anchor
        else:
            payload = self.coloring.to_dict()
            out["palette"] = payload["palette"]
            out["assignment"] = payload["assignment"]
            out["peels"] = payload["peels"]
        return out


class _Dichotomy:
    def __init__(self, G: Graph, d: int, k: int, t: int, trace: list | None):
        self.G, self.d, self.k, self.t = G, d, k, t
        self.table = bounds(d, k, t)
        self.trace = trace
        self.cache: dict[tuple[int, int], Coloring] = {}
        self.engines = {
            level: _CreatureEngine(G, d, k, self.table.tau[level], self._colorer(level), level, trace)
            for level in range(3, t + 1)
        }

    def _colorer(self, level: int) -> NeighbourhoodColorer:
        def color(N: int) -> Coloring:
            key = (N, level - 1)
            if key not in self.cache:
                self.cache[key] = self.level(N, level - 1).coloring
            return self.cache[key]
        return color

    def level(self, S: int, t: int) -> PeelColoring:
        G = self.G
        if t <= 2:
            has_edge = any(G.adj[v] & S for v in members(S))
            if t == 1 and S:
                raise BaseLevelViolation("precondition omega < t violated at base: t = 1 but the graph is nonempty")
            if has_edge:
                raise BaseLevelViolation("precondition omega < t violated at base: t = 2 but the graph has an edge")
            return peel_coloring(G, lambda R, v: Creature(frozenset([v]), 1, Coloring({v: 1}, 1)),
                                 within=S, palette=self.table.B[t])

        engine = self.engines[t]

        def provider(R: int, v: int) -> Creature:
            out = engine.run(R, v, self.k)
            if isinstance(out, Embedding):
                raise EmbeddingFound(out)
            return out

        return peel_coloring(G, provider, within=S, palette=self.table.B[t])


def spider_dichotomy(G: Graph, d: int, k: int, t: int, *, trace: list | None = None) -> DichotomyResult:
    """Path-induced spider(d, k) copy, or a colouring with at most B(t) colours.

    The colouring branch is unconditional. If omega(G) >= t the recursion may
    reach a neighbourhood with an edge at level 2 and raise BaseLevelViolation.
    """
    if d < 2 or k < 1 or t < 1:
        raise ValueError(f"need d >= 2, k >= 1, t >= 1 (got d={d}, k={k}, t={t})")
    engine = _Dichotomy(G, d, k, t, trace)
    try:
        result = DichotomyResult(d, k, t, engine.table, coloring=engine.level(G.vertex_mask, t))
    except EmbeddingFound as found:
        result = DichotomyResult(d, k, t, engine.table, embedding=found.embedding)
    _check_result(G, result, spider(d, k))
    return result


def _check_result(G: Graph, result: DichotomyResult, tree: RootedTree) -> None:
    if result.embedding is not None:
        if result.embedding.tree != tree or not verify_path_induced(G, result.embedding):
            raise InvariantViolation("engine produced an invalid embedding")
    else:
        col = result.coloring.coloring
        if col.palette > result.bound or not is_proper_coloring(G, col):
            raise InvariantViolation("engine produced an improper colouring or exceeded the bound")


def tree_dichotomy(G: Graph, T: RootedTree, t: int, *, trace: list | None = None,
                   fast_path_budget: int | None = 200_000) -> DichotomyResult:
    """Dichotomy for an arbitrary rooted tree via the smallest covering spider.

    A direct search for T is tried first; if it exhausts its budget the
    engine runs as if the fast path had failed.
    """
    cover = spider_cover(T)
    table = bounds(cover.d, cover.k, t)
    try:
        direct = find_path_induced(G, T, budget=fast_path_budget)
    except BudgetExceeded:
        direct = None
    if direct is not None:
        return DichotomyResult(cover.d, cover.k, t, table, embedding=direct)
    result = spider_dichotomy(G, cover.d, cover.k, t, trace=trace)
    if result.embedding is not None:
        emb = restrict_embedding(result.embedding, cover, T)
        result = DichotomyResult(cover.d, cover.k, t, table, embedding=emb)
        _check_result(G, result, T)
    return result
