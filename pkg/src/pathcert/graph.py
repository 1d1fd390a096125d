"""Immutable simple graphs on vertices 0..n-1, backed by integer bitsets.

Vertex sets are passed around either as ``frozenset`` (public API) or as
Python ints used as bitmasks (hot paths). ``mask_of`` and ``members``
convert between the two.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import GraphFormatError


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> Iterator[int]:
    """Yield set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has a neighbour out of range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in members(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, strict: bool = True) -> Graph:
        """Build a graph; with ``strict`` duplicate edges are an error."""
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if rows[u] >> v & 1:
                if strict:
                    raise GraphFormatError(f"duplicate edge ({u}, {v})")
                continue
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range for n={self.n}")

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        self._check(v)
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in members(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def m(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [[u, v] for u, v in self.edges()]}


def neighbors(G: Graph, v: int) -> frozenset[int]:
    G._check(v)
    return frozenset(members(G.adj[v]))


def non_neighborhood(G: Graph, v: int) -> frozenset[int]:
    """All vertices other than ``v`` that are not adjacent to it."""
    G._check(v)
    return frozenset(members(G.vertex_mask & ~G.adj[v] & ~(1 << v)))


def _as_mask(G: Graph, S: Iterable[int] | int) -> int:
    if isinstance(S, int):
        if S & ~G.vertex_mask:
            raise IndexError("vertex set has members out of range")
        return S
    mask = 0
    for v in S:
        G._check(v)
        mask |= 1 << v
    return mask


def is_stable(G: Graph, S: Iterable[int] | int) -> bool:
    mask = _as_mask(G, S)
    return all(not G.adj[v] & mask for v in members(mask))


def induced_subgraph(G: Graph, S: Iterable[int] | int) -> tuple[Graph, dict[int, int]]:
    """Return ``G[S]`` and the old-to-new index map (order preserving)."""
    order = list(members(_as_mask(G, S)))
    index = {old: new for new, old in enumerate(order)}
    rows = []
    for old in order:
        row = 0
        for u in members(G.adj[old]):
            j = index.get(u)
            if j is not None:
                row |= 1 << j
        rows.append(row)
    return Graph(len(order), tuple(rows)), index


@dataclass(frozen=True)
class Coloring:
    """Colour assignment with colours drawn from 1..palette."""

    assignment: Mapping[int, int]
    palette: int

    @property
    def used(self) -> int:
        return len(set(self.assignment.values()))

    @property
    def max_color(self) -> int:
        return max(self.assignment.values(), default=0)

    def classes(self) -> list[frozenset[int]]:
        """Colour classes indexed by colour - 1, up to the largest colour used."""
        parts: list[set[int]] = [set() for _ in range(self.max_color)]
        for v, c in self.assignment.items():
            parts[c - 1].add(v)
        return [frozenset(p) for p in parts]

    def to_dict(self) -> dict:
        return {
            "palette": self.palette,
            "assignment": {str(v): c for v, c in sorted(self.assignment.items())},
        }


def is_proper_coloring(G: Graph, coloring: Coloring | Mapping[int, int], vertices: Iterable[int] | None = None) -> bool:
    """Check that no edge inside ``vertices`` (default: all of G) is monochromatic.

    Raises ``ValueError`` if some vertex lacks a colour. A colour outside
    1..palette makes the colouring improper.
    """
    if isinstance(coloring, Coloring):
        assignment, palette = coloring.assignment, coloring.palette
    else:
        assignment, palette = coloring, None
    verts = list(range(G.n)) if vertices is None else sorted(vertices)
    missing = [v for v in verts if v not in assignment]
    if missing:
        raise ValueError(f"partial colouring: vertices {missing[:5]} have no colour")
    for v in verts:
        c = assignment[v]
        if not isinstance(c, int) or c < 1 or (palette is not None and c > palette):
            return False
    inside = set(verts)
    for v in verts:
        for u in members(G.adj[v]):
            if u > v and u in inside and assignment[u] == assignment[v]:
                return False
    return True


def compact_coloring(G: Graph, coloring: Coloring) -> Coloring:
    """One greedy pass over the colour classes in colour order.

    Each vertex takes the smallest colour unused by its already recoloured
    neighbours. The result is proper and never uses more colours than the
    input; the palette shrinks to the colours actually used.
    """
    out: dict[int, int] = {}
    for v in sorted(coloring.assignment, key=lambda v: (coloring.assignment[v], v)):
        taken = {out[u] for u in members(G.adj[v]) if u in out}
        out[v] = next(c for c in range(1, len(taken) + 2) if c not in taken)
    return Coloring(out, max(out.values(), default=0))


# -- serialisation ----------------------------------------------------------

def read_dimacs(text: str, source: str = "<dimacs>") -> Graph:
    n = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        loc = f"{source}:{lineno}"
        if parts[0] == "p":
            if n is not None:
                raise GraphFormatError("second problem line", loc)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphFormatError(f"expected 'p edge <n> <m>', got {line!r}", loc)
            try:
                n, declared_m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"non-integer counts in {line!r}", loc) from None
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError("edge before problem line", loc)
            if len(parts) != 3:
                raise GraphFormatError(f"expected 'e <u> <v>', got {line!r}", loc)
            try:
                u, v = int(parts[1]) - 1, int(parts[2]) - 1
            except ValueError:
                raise GraphFormatError(f"non-integer endpoint in {line!r}", loc) from None
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"endpoint out of range 1..{n}", loc)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u + 1}", loc)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge {u + 1}-{v + 1}", loc)
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"unknown line type {parts[0]!r}", loc)
    if n is None:
        raise GraphFormatError("missing 'p edge' line", source)
    if declared_m != len(edges):
        raise GraphFormatError(f"problem line declares {declared_m} edges, found {len(edges)}", source)
    return Graph.from_edges(n, edges)


def write_dimacs(G: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in G.edges())
    return "\n".join(lines) + "\n"


def graph_from_json(data: dict, source: str = "<json>") -> Graph:
    try:
        n = data["n"]
        edges = [tuple(e) for e in data["edges"]]
    except (KeyError, TypeError) as exc:
        raise GraphFormatError(f"expected {{'n': int, 'edges': [[u, v], ...]}} ({exc})", source) from None
    if not isinstance(n, int) or any(len(e) != 2 or not all(isinstance(x, int) for x in e) for e in edges):
        raise GraphFormatError("vertex count and endpoints must be integers", source)
    try:
        return Graph.from_edges(n, edges)
    except GraphFormatError as exc:
        raise GraphFormatError(str(exc), source) from None


def load_graph(path: str | Path) -> Graph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}", str(path)) from None
        return graph_from_json(data, str(path))
    return read_dimacs(text, str(path))


def save_graph(G: Graph, path: str | Path, comment: str | None = None) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(json.dumps(G.to_dict()) + "\n")
    else:
        path.write_text(write_dimacs(G, comment))
