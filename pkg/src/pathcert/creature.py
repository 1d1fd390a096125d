"""Creatures, colouring extension across a creature, and peel-and-rebuild colouring.

A c-creature of G is a vertex set X in which every vertex has fewer than c
neighbours outside X. If X has a proper colouring with a colours and the
rest of G is already coloured from a palette of at least a*c colours, the
colouring extends to X without enlarging the palette: colour class i of X
draws from its own block of c colours, and each vertex has fewer than c
outside neighbours to avoid.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .errors import CreatureViolated, ImproperColoring, InvariantViolation, PaletteTooSmall, PartNotStable
from .graph import Coloring, Graph, is_proper_coloring, mask_of, members, popcount


def _mask(G: Graph, S: Iterable[int] | int | None) -> int:
    if S is None:
        return G.vertex_mask
    return S if isinstance(S, int) else mask_of(S)


def is_creature(G: Graph, X: Iterable[int] | int, c: int, within: Iterable[int] | int | None = None) -> bool:
    """Every vertex of X has fewer than c neighbours in ``within`` minus X."""
    x = _mask(G, X)
    outside = _mask(G, within) & ~x
    return all(popcount(G.adj[v] & outside) < c for v in members(x))


@dataclass(frozen=True)
class Creature:
    X: frozenset[int]
    c: int
    witness: Coloring  # proper colouring of G[X]

    @property
    def a(self) -> int:
        return self.witness.max_color

    @property
    def parts(self) -> list[frozenset[int]]:
        return self.witness.classes()


def extend_coloring(
    G: Graph,
    X: Iterable[int],
    parts: Sequence[Iterable[int]],
    kappa: Mapping[int, int],
    p: int,
    c: int,
    within: Iterable[int] | int | None = None,
) -> Coloring:
    """Extend a proper colouring of ``within`` minus X to all of ``within``.

    Vertices of the i-th part (1-based) receive the smallest colour in
    ((i-1)c, ic] not used by their already-coloured neighbours.
    """
    S = _mask(G, within)
    xmask = _mask(G, X)
    parts = [mask_of(part) for part in parts]
    a = len(parts)
    if p < a * c:
        raise PaletteTooSmall(f"palette {p} is smaller than {a} parts x c={c}")
    union = 0
    for i, part in enumerate(parts, 1):
        if part & union:
            raise ValueError(f"part {i} overlaps an earlier part")
        union |= part
        for v in members(part):
            if G.adj[v] & part:
                raise PartNotStable(f"part {i} contains an edge at vertex {v}")
    if union != xmask:
        raise ValueError("parts do not partition X")
    if xmask & ~S:
        raise ValueError("X is not contained in the vertex set being coloured")
    outside = S & ~xmask
    for v in members(xmask):
        if popcount(G.adj[v] & outside) >= c:
            raise CreatureViolated(f"vertex {v} has at least {c} neighbours outside X")
    rest = list(members(outside))
    if any(v not in kappa for v in rest):
        raise ImproperColoring("kappa does not colour every vertex outside X")
    if not is_proper_coloring(G, Coloring(kappa, p), rest):
        raise ImproperColoring("kappa is not a proper colouring outside X within the palette")

    out = {v: kappa[v] for v in rest}
    for i, part in enumerate(parts, 1):
        block = range((i - 1) * c + 1, i * c + 1)
        for v in members(part):
            taken = {kappa[u] for u in members(G.adj[v] & outside)}
            out[v] = next(col for col in block if col not in taken)
    return Coloring(out, p)


class PeelAborted(Exception):
    """Raised by a creature provider to stop peeling; carries the reason."""

    def __init__(self, payload=None):
        self.payload = payload
        super().__init__(payload)


@dataclass(frozen=True)
class PeelColoring:
    coloring: Coloring
    peels: tuple[Creature, ...]

    def to_dict(self) -> dict:
        out = {"kind": "coloring", **self.coloring.to_dict()}
        out["peels"] = [{"X": sorted(cr.X), "c": cr.c, "a": cr.a} for cr in self.peels]
        return out


Provider = Callable[[int, int], Creature]


def peel_coloring(
    G: Graph,
    provider: Provider,
    within: Iterable[int] | int | None = None,
    palette: int | None = None,
) -> PeelColoring:
    """Peel creatures off until nothing is left, then colour back in reverse.

    ``provider(residual_mask, v)`` must return a creature of the residual
    graph containing v (the smallest remaining vertex), or raise PeelAborted.
    The palette defaults to the largest a*c over the peels.
    """
    S = _mask(G, within)
    residuals = []
    peels: list[Creature] = []
    while S:
        v = (S & -S).bit_length() - 1
        cr = provider(S, v)
        xmask = mask_of(cr.X)
        if v not in cr.X or xmask & ~S:
            raise InvariantViolation(f"provider returned a set not containing {v} or outside the residual")
        if not is_creature(G, xmask, cr.c, S):
            raise InvariantViolation(f"provider returned a set that is not a {cr.c}-creature")
        if not is_proper_coloring(G, cr.witness, cr.X):
            raise InvariantViolation("provider witness is not a proper colouring of the creature")
        residuals.append(S)
        peels.append(cr)
        S &= ~xmask

    if palette is None:
        palette = max((cr.a * cr.c for cr in peels), default=0)
    kappa: dict[int, int] = {}
    for S, cr in zip(reversed(residuals), reversed(peels)):
        kappa = dict(extend_coloring(G, cr.X, cr.parts, kappa, palette, cr.c, within=S).assignment)
    return PeelColoring(Coloring(kappa, palette), tuple(peels))
