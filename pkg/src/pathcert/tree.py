"""Rooted trees with ordered children, spiders, pair types and the spider cover."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, NamedTuple

from .errors import GraphFormatError


class PairType(NamedTuple):
    a: int  # depth of the earlier vertex
    b: int  # depth of the later vertex
    c: int  # depth of the join


@dataclass(frozen=True)
class RootedTree:
    """Tree on 0..m-1 with a root and a linear order on each child list.

    ``parent[root]`` is None. ``order[v]`` lists the children of v.
    """

    m: int
    root: int
    parent: tuple[int | None, ...]
    order: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("a rooted tree needs at least one vertex")
        if not 0 <= self.root < self.m:
            raise ValueError(f"root {self.root} out of range")
        if len(self.parent) != self.m or len(self.order) != self.m:
            raise ValueError("parent/order length does not match m")
        for v, p in enumerate(self.parent):
            if (p is None) != (v == self.root):
                raise ValueError(f"vertex {v}: only the root may lack a parent")
            if p is not None and not 0 <= p < self.m:
                raise ValueError(f"vertex {v}: parent {p} out of range")
        kids: list[list[int]] = [[] for _ in range(self.m)]
        for c, p in enumerate(self.parent):
            if p is not None:
                kids[p].append(c)
        for v in range(self.m):
            if sorted(self.order[v]) != kids[v]:
                raise ValueError(f"order of vertex {v} is not a permutation of its children")
        if len(self.level_order) != self.m:
            raise ValueError("parent links do not form a tree rooted at root")

    @classmethod
    def from_parents(cls, parent: Mapping[int, int] | list, root: int = 0,
                     order: Mapping[int, list[int]] | None = None) -> RootedTree:
        if isinstance(parent, Mapping):
            m = max([root, *parent.keys(), *parent.values()], default=root) + 1
            par = [parent.get(v) for v in range(m)]
        else:
            par = list(parent)
            m = len(par)
        par[root] = None
        kids: list[list[int]] = [[] for _ in range(m)]
        for v, p in enumerate(par):
            if p is not None and 0 <= p < m:
                kids[p].append(v)
        if order is not None:
            for v, seq in order.items():
                kids[v] = list(seq)
        return cls(m, root, tuple(par), tuple(tuple(k) for k in kids))

    # -- derived structure ----------------------------------------------------

    @cached_property
    def level_order(self) -> tuple[int, ...]:
        out = [self.root]
        seen = {self.root}
        i = 0
        while i < len(out):
            for c in self.order[out[i]]:
                if c in seen:
                    break
                seen.add(c)
                out.append(c)
            i += 1
        return tuple(out)

    @cached_property
    def depths(self) -> tuple[int, ...]:
        dep = [0] * self.m
        for v in self.level_order[1:]:
            dep[v] = dep[self.parent[v]] + 1
        return tuple(dep)

    @property
    def height(self) -> int:
        return max(self.depths)

    def children(self, v: int) -> tuple[int, ...]:
        return self.order[v]

    def root_path(self, v: int) -> list[int]:
        """Vertices from the root down to ``v``."""
        path = [v]
        while self.parent[path[-1]] is not None:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def ancestors(self, v: int) -> list[int]:
        """Strict ancestors of v, nearest first."""
        return self.root_path(v)[-2::-1]

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "root": self.root,
            "parent": {str(v): p for v, p in enumerate(self.parent) if p is not None},
            "order": {str(v): list(self.order[v]) for v in range(self.m) if self.order[v]},
        }

    @classmethod
    def from_dict(cls, data: dict, source: str = "<tree>") -> RootedTree:
        try:
            m, root = int(data["m"]), int(data["root"])
            parent = {int(c): int(p) for c, p in data.get("parent", {}).items()}
            order = {int(v): [int(c) for c in cs] for v, cs in data.get("order", {}).items()}
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError(f"malformed tree: {exc}", source) from None
        par: list[int | None] = [None] * m
        for c, p in parent.items():
            if not 0 <= c < m:
                raise GraphFormatError(f"tree vertex {c} out of range", source)
            par[c] = p
        try:
            return cls.from_parents(par, root, order or None)
        except (ValueError, IndexError) as exc:
            raise GraphFormatError(str(exc), source) from None


def spider(d: int, k: int) -> RootedTree:
    """Complete d-ary tree of height k, numbered level by level.

    The children of vertex i are d*i+1, ..., d*i+d.
    """
    if d < 2 or k < 1:
        raise ValueError(f"spider needs d >= 2 and k >= 1, got d={d}, k={k}")
    m = sum(d ** j for j in range(k + 1))
    internal = m - d ** k
    parent = [None] + [(v - 1) // d for v in range(1, m)]
    order = tuple(tuple(range(d * v + 1, d * v + d + 1)) if v < internal else () for v in range(m))
    return RootedTree(m, 0, tuple(parent), order)


def path_tree(m: int) -> RootedTree:
    """Path on m vertices rooted at one end (vertex 0)."""
    return RootedTree.from_parents([None] + list(range(m - 1)), 0)


def single_vertex() -> RootedTree:
    return RootedTree(1, 0, (None,), ((),))


def depth(T: RootedTree, v: int) -> int:
    return T.depths[v]


def is_ancestor(T: RootedTree, u: int, v: int) -> bool:
    """True if u lies on the path from the root to v (u == v included)."""
    du = T.depths[u]
    while T.depths[v] > du:
        v = T.parent[v]
    return u == v


def comparable(T: RootedTree, u: int, v: int) -> bool:
    return is_ancestor(T, u, v) or is_ancestor(T, v, u)


def join(T: RootedTree, u: int, v: int) -> int:
    """Deepest common ancestor of u and v."""
    while T.depths[u] > T.depths[v]:
        u = T.parent[u]
    while T.depths[v] > T.depths[u]:
        v = T.parent[v]
    while u != v:
        u, v = T.parent[u], T.parent[v]
    return u


def _child_toward(T: RootedTree, w: int, x: int) -> int:
    while T.parent[x] != w:
        x = T.parent[x]
    return x


def earlier_later(T: RootedTree, u: int, v: int) -> tuple[int, int]:
    """Order an incomparable pair by the child order at their join."""
    if comparable(T, u, v):
        raise ValueError(f"tree vertices {u} and {v} are comparable")
    w = join(T, u, v)
    siblings = T.order[w]
    if siblings.index(_child_toward(T, w, u)) < siblings.index(_child_toward(T, w, v)):
        return u, v
    return v, u


def pair_type(T: RootedTree, u: int, v: int) -> PairType:
    first, second = earlier_later(T, u, v)
    return PairType(T.depths[first], T.depths[second], T.depths[join(T, u, v)])


@dataclass(frozen=True)
class SpiderCover:
    d: int
    k: int
    inclusion: tuple[int, ...]  # tree vertex -> spider vertex

    @property
    def spider(self) -> RootedTree:
        return spider(self.d, self.k)


def spider_cover(T: RootedTree) -> SpiderCover:
    """Smallest spider containing T as a root-preserving rooted subtree."""
    d = max(2, max(len(c) for c in T.order))
    k = max(1, T.height)
    inclusion = [0] * T.m
    inclusion[T.root] = 0
    for v in T.level_order:
        for i, c in enumerate(T.order[v]):
            inclusion[c] = d * inclusion[v] + 1 + i
    return SpiderCover(d, k, tuple(inclusion))
