"""Stallings subgroup graphs.

A finitely generated subgroup H of a free group is represented by its
folded core graph.  Membership is path tracing from the base vertex, the
rank is E - V + 1, and a spanning tree gives a free basis.

Graphs are stored in a canonical numbering: vertices and edges are numbered
in breadth-first discovery order from the base, scanning the edges at a
vertex by label (ascending), forward before backward.  Two graphs of the
same subgroup therefore compare equal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from . import oracle, words
from .words import Word

Edge = tuple[int, int, int]  # (origin, terminus, positive label)


class NotAMemberError(ValueError):
    pass


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class StallingsGraph:
    ambient_rank: int
    num_vertices: int
    edges: tuple[Edge, ...]
    base: int = 0

    @cached_property
    def transitions(self) -> dict[tuple[int, int], tuple[int, int, int]]:
        """(vertex, signed letter) -> (next vertex, edge index, +1/-1)."""
        out = {}
        for idx, (u, v, label) in enumerate(self.edges):
            out[(u, label)] = (v, idx, 1)
            out[(v, -label)] = (u, idx, -1)
        return out

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for u, w, _ in self.edges)

    def is_folded(self) -> bool:
        seen = set()
        for u, v, label in self.edges:
            if (u, label) in seen or (v, -label) in seen:
                return False
            seen.add((u, label))
            seen.add((v, -label))
        return True

    def is_core(self) -> bool:
        return all(
            v == self.base or self.degree(v) >= 2 for v in range(self.num_vertices)
        )

    def is_connected(self) -> bool:
        return len(_bfs(self.num_vertices, self.edges, self.base)[0]) == self.num_vertices

    def dump(self, names: Sequence[str] | None = None) -> str:
        """One ``v_i --label--> v_j`` line per edge, after a base line."""
        if names is None:
            names = words.letter_names(self.ambient_rank)
        lines = [f"base v{self.base}"]
        lines += [f"v{u} --{names[label - 1]}--> v{v}" for u, v, label in self.edges]
        return "\n".join(lines)


@dataclass(frozen=True)
class SubgroupBasis:
    graph: StallingsGraph
    tree: frozenset[int]
    basis: tuple[Word, ...]
    # non-tree edge index -> position in basis
    letter_of_edge: dict[int, int]

    def __len__(self):
        return len(self.basis)


def _incident_order(num_vertices: int, edges: Sequence[Edge]):
    incident: list[list[tuple[tuple[int, int], int, int, int]]] = [
        [] for _ in range(num_vertices)
    ]
    for idx, (u, v, label) in enumerate(edges):
        incident[u].append(((label, 0), idx, v, label))
        incident[v].append(((label, 1), idx, u, -label))
    for lst in incident:
        lst.sort(key=lambda item: (item[0], item[1]))
    return incident


def _bfs(num_vertices: int, edges: Sequence[Edge], base: int):
    """Deterministic breadth-first search.

    Returns (vertex order, edge discovery order, tree edge set, tree paths).
    """
    incident = _incident_order(num_vertices, edges)
    order = [base]
    paths = {base: words.EMPTY}
    edge_order: list[int] = []
    seen_edges: set[int] = set()
    tree: set[int] = set()
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for _, idx, w, letter in incident[v]:
            if idx in seen_edges:
                continue
            seen_edges.add(idx)
            edge_order.append(idx)
            if w not in paths:
                paths[w] = paths[v] + (letter,)
                tree.add(idx)
                order.append(w)
                queue.append(w)
    return order, edge_order, tree, paths


def _fold(num_vertices: int, edges: list[Edge]) -> tuple[_UnionFind, set[Edge]]:
    uf = _UnionFind(num_vertices)
    changed = True
    current = set(edges)
    while changed:
        changed = False
        current = {(uf.find(u), uf.find(v), label) for u, v, label in current}
        out: dict[tuple[int, int], int] = {}
        inc: dict[tuple[int, int], int] = {}
        for u, v, label in current:
            prev = out.setdefault((u, label), v)
            if prev != v and uf.union(prev, v):
                changed = True
            prev = inc.setdefault((v, label), u)
            if prev != u and uf.union(prev, u):
                changed = True
    return uf, current


def _trim(base: int, edges: set[Edge]) -> set[Edge]:
    edges = set(edges)
    while True:
        degree: dict[int, int] = {}
        for u, v, _ in edges:
            degree[u] = degree.get(u, 0) + 1
            degree[v] = degree.get(v, 0) + 1
        leaves = {v for v, d in degree.items() if d == 1 and v != base}
        if not leaves:
            return edges
        edges = {e for e in edges if e[0] not in leaves and e[1] not in leaves}


def _canonical(ambient_rank: int, base: int, edges: set[Edge]) -> StallingsGraph:
    verts = sorted({base} | {u for u, _, _ in edges} | {v for _, v, _ in edges})
    index = {v: i for i, v in enumerate(verts)}
    elist = sorted((index[u], index[v], label) for u, v, label in edges)
    order, edge_order, _, _ = _bfs(len(verts), elist, index[base])
    relabel = {v: i for i, v in enumerate(order)}
    new_edges = tuple(
        (relabel[elist[i][0]], relabel[elist[i][1]], elist[i][2]) for i in edge_order
    )
    return StallingsGraph(ambient_rank, len(order), new_edges, 0)


def build(generators: Sequence[Sequence[int]], ambient_rank: int) -> StallingsGraph:
    """Folded core graph of the subgroup generated by ``generators``."""
    edges: list[Edge] = []
    n = 1
    for g in generators:
        g = words.reduce(g, ambient_rank)
        cur = 0
        for pos, x in enumerate(g):
            if pos == len(g) - 1:
                nxt = 0
            else:
                nxt, n = n, n + 1
            edges.append((cur, nxt, x) if x > 0 else (nxt, cur, -x))
            cur = nxt
    uf, folded = _fold(n, edges)
    core = _trim(uf.find(0), folded)
    return _canonical(ambient_rank, uf.find(0), core)


def rank(g: StallingsGraph) -> int:
    return len(g.edges) - g.num_vertices + 1


def trace(g: StallingsGraph, w: Sequence[int]) -> int | None:
    """End vertex of the path from the base reading w, or None if stuck."""
    v = g.base
    moves = g.transitions
    for x in w:
        step = moves.get((v, x))
        if step is None:
            return None
        v = step[0]
    return v


def contains(g: StallingsGraph, w: Sequence[int]) -> bool:
    return trace(g, w) == g.base


def extract_basis(g: StallingsGraph) -> SubgroupBasis:
    """Free basis read off a breadth-first spanning tree.

    Each non-tree edge u --x--> v gives path(u) x path(v)^-1, in the order
    the search meets those edges.
    """
    _, edge_order, tree, paths = _bfs(g.num_vertices, g.edges, g.base)
    basis = []
    letter_of_edge = {}
    for idx in edge_order:
        if idx in tree:
            continue
        u, v, label = g.edges[idx]
        letter_of_edge[idx] = len(basis)
        basis.append(words.concat(paths[u], (label,), words.invert(paths[v])))
    return SubgroupBasis(g, frozenset(tree), tuple(basis), letter_of_edge)


def rewrite_in_basis(b: SubgroupBasis, w: Sequence[int]) -> Word:
    """Express a member of the subgroup as a word in the basis letters."""
    v = b.graph.base
    moves = b.graph.transitions
    out: list[int] = []
    for x in w:
        step = moves.get((v, x))
        if step is None:
            raise NotAMemberError(f"{words.format_word(w)} is not in the subgroup")
        v, idx, direction = step
        j = b.letter_of_edge.get(idx)
        if j is not None:
            out.append(direction * (j + 1))
    if v != b.graph.base:
        raise NotAMemberError(f"{words.format_word(w)} is not in the subgroup")
    return words.reduce(out)


def express_in_generators(
    generators: Sequence[Sequence[int]],
    target: Sequence[int],
    ambient_rank: int | None = None,
    budget: int | None = None,
    max_factors: int = oracle.DEFAULT_MAX_FACTORS,
) -> Word | None:
    """Word over generator symbols (i for generators[i - 1]) evaluating to
    target, or None when both search strategies give up.

    The generators are first rewritten in a graph basis of the subgroup they
    generate.  Nielsen-reducing those rewritten words yields the basis
    letters themselves, and replaying the recorded moves on the symbols
    expresses each basis letter over the generators.  ``budget`` caps the
    Nielsen moves; past it a breadth-first product search is tried.
    """
    gens = [tuple(g) for g in generators]
    target = tuple(target)
    if ambient_rank is None:
        ambient_rank = max((abs(x) for w in gens + [target] for x in w), default=0)
    b = extract_basis(build(gens, ambient_rank))
    target_in_basis = rewrite_in_basis(b, target)
    if not target_in_basis:
        return words.EMPTY

    in_basis = [rewrite_in_basis(b, g) for g in gens]
    history = oracle.nielsen_reduce(in_basis, max_moves=budget)
    if history is not None:
        symbolic = oracle.replay(history.moves, [(i,) for i in range(1, len(gens) + 1)])
        table: dict[int, Word] = {}
        for entry, expr in zip(history.reduced_tuple, symbolic):
            if len(entry) == 1:
                x = entry[0]
                table[abs(x)] = expr if x > 0 else words.invert(expr)
        if len(table) == len(b):
            return words.substitute(target_in_basis, [table[j] for j in range(1, len(b) + 1)])

    return oracle.enum_membership(gens, target, max_factors)
