"""Canonical k-uniform hypergraphs and exact pattern search.

Vertices are the integers 0..n-1.  Edges are k-element subsets stored as
sorted tuples, and the edge list itself is sorted lexicographically, so
equal hypergraphs compare equal and every search iterates in a fixed,
reproducible order.

Uniformity k = 2 (plain graphs) is accepted for plumbing; everything of
substance in the other modules requires k >= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Iterator, Optional, Sequence

Edge = tuple[int, ...]
Face = tuple[int, ...]  # (k-1)-subsets covered by an edge


class HypergraphParseError(ValueError):
    """Malformed HYG input; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Hypergraph:
    """Immutable k-uniform hypergraph in canonical storage.

    The constructor validates canonical form strictly; use ``from_edges``
    to build from unsorted or duplicated input.
    """

    k: int
    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"uniformity must be >= 2, got {self.k}")
        if self.n < 0:
            raise ValueError(f"vertex count must be >= 0, got {self.n}")
        prev = None
        for e in self.edges:
            if len(e) != self.k:
                raise ValueError(f"edge {e} does not have {self.k} vertices")
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError(f"edge {e} has a vertex outside [0, {self.n})")
            if any(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                raise ValueError(f"edge {e} is not strictly increasing")
            if prev is not None and e <= prev:
                raise ValueError("edge list is not in canonical sorted order")
            prev = e

    @classmethod
    def from_edges(cls, k: int, n: int, edges: Iterable[Sequence[int]]) -> "Hypergraph":
        canon = sorted({tuple(sorted(e)) for e in edges})
        return cls(k, n, tuple(canon))

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def _edges_by_vertex(self) -> tuple[tuple[Edge, ...], ...]:
        buckets: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for v in e:
                buckets[v].append(e)
        return tuple(tuple(b) for b in buckets)

    def degree(self, v: int) -> int:
        return len(self._edges_by_vertex[v])

    def edges_containing(self, v: int) -> tuple[Edge, ...]:
        return self._edges_by_vertex[v]

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class VertexMap:
    """Edge-preserving map from pattern vertices to host vertices."""

    mapping: dict[int, int]
    injective: bool


def parse_hypergraph(text: str) -> Hypergraph:
    """Parse HYG text: header ``k n m``, then m edge lines of k indices.

    Lines starting with ``#`` and blank lines are skipped.  Vertices within
    an edge line may appear in any order and are canonicalized; repeated
    vertices and duplicate edges are errors.
    """
    k = n = m = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if k is None:
            if len(parts) != 3:
                raise HypergraphParseError("header must be 'k n m'", lineno)
            try:
                k, n, m = (int(p) for p in parts)
            except ValueError:
                raise HypergraphParseError("header fields must be integers", lineno)
            if k < 2 or n < 0 or m < 0:
                raise HypergraphParseError("header out of range (need k>=2, n>=0, m>=0)", lineno)
            continue
        if len(edges) == m:
            raise HypergraphParseError(f"more than {m} edge lines", lineno)
        if len(parts) != k:
            raise HypergraphParseError(f"expected {k} vertex indices", lineno)
        try:
            vs = [int(p) for p in parts]
        except ValueError:
            raise HypergraphParseError("vertex indices must be integers", lineno)
        for v in vs:
            if v < 0 or v >= n:
                raise HypergraphParseError(f"vertex index {v} out of range [0, {n})", lineno)
        if len(set(vs)) != k:
            raise HypergraphParseError("repeated vertex within an edge", lineno)
        e = tuple(sorted(vs))
        if e in seen:
            raise HypergraphParseError(f"duplicate edge {' '.join(map(str, e))}", lineno)
        seen.add(e)
        edges.append(e)
    if k is None:
        raise HypergraphParseError("missing header line")
    if len(edges) != m:
        raise HypergraphParseError(f"expected {m} edges, found {len(edges)}")
    return Hypergraph.from_edges(k, n, edges)


def serialize_hypergraph(h: Hypergraph) -> str:
    lines = [f"{h.k} {h.n} {len(h.edges)}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def shadow(h: Hypergraph) -> frozenset[Face]:
    """All (k-1)-subsets covered by at least one edge."""
    faces: set[Face] = set()
    for e in h.edges:
        for i in range(h.k):
            faces.add(e[:i] + e[i + 1:])
    return frozenset(faces)


def induced_edge_count(h: Hypergraph, vertices: Iterable[int]) -> int:
    """Number of edges entirely inside the given vertex set."""
    vs = set(vertices)
    if any(v < 0 or v >= h.n for v in vs):
        raise ValueError("vertex outside [0, n)")
    return sum(1 for e in h.edges if vs.issuperset(e))


def complete_hypergraph(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, tuple(combinations(range(n), k)))


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply a vertex permutation (perm[v] = new label of v)."""
    return Hypergraph.from_edges(h.k, h.n, (tuple(perm[v] for v in e) for e in h.edges))


def _completion_index(host: Hypergraph) -> dict[Face, tuple[int, ...]]:
    """Map each host face to the sorted vertices completing it to an edge."""
    idx: dict[Face, list[int]] = {}
    for e in host.edges:
        for i in range(host.k):
            idx.setdefault(e[:i] + e[i + 1:], []).append(e[i])
    return {f: tuple(sorted(c)) for f, c in idx.items()}


def _search_order(pattern: Hypergraph) -> list[int]:
    # Descending degree puts constrained vertices early; ties by index.
    return sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))


def _closing_edges(pattern: Hypergraph, order: Sequence[int]) -> list[list[tuple[int, ...]]]:
    """For each search position, the edges completed there, as their other vertices."""
    pos = {v: i for i, v in enumerate(order)}
    closing: list[list[tuple[int, ...]]] = [[] for _ in order]
    for e in pattern.edges:
        last = max(e, key=lambda v: pos[v])
        closing[pos[last]].append(tuple(v for v in e if v != last))
    return closing


def contains_copy(pattern: Hypergraph, host: Hypergraph) -> Optional[VertexMap]:
    """Injective edge-preserving map from pattern into host, or None.

    Complete backtracking; the returned witness is deterministic for fixed
    inputs.  Candidates for each vertex are pruned through an index of host
    faces to their completing vertices.
    """
    if pattern.k != host.k:
        raise ValueError(f"uniformity mismatch: {pattern.k} vs {host.k}")
    if pattern.n > host.n:
        return None
    if pattern.n == 0:
        return VertexMap({}, True)
    order = _search_order(pattern)
    pos = {v: i for i, v in enumerate(order)}
    closing = _closing_edges(pattern, order)
    completions = _completion_index(host)
    images: list[int] = []
    used: set[int] = set()

    def candidates(i: int) -> list[int]:
        pools = []
        for others in closing[i]:
            key = tuple(sorted(images[pos[v]] for v in others))
            opts = completions.get(key)
            if not opts:
                return []
            pools.append(opts)
        if not pools:
            return [w for w in range(host.n) if w not in used]
        cand = set(pools[0])
        for p in pools[1:]:
            cand.intersection_update(p)
        cand.difference_update(used)
        return sorted(cand)

    def dfs(i: int) -> bool:
        if i == len(order):
            return True
        for w in candidates(i):
            images.append(w)
            used.add(w)
            if dfs(i + 1):
                return True
            used.discard(w)
            images.pop()
        return False

    if not dfs(0):
        return None
    return VertexMap({v: images[pos[v]] for v in range(pattern.n)}, True)


def is_embedding(pattern: Hypergraph, host: Hypergraph, mapping: dict[int, int]) -> bool:
    """Independent re-check of a containment witness."""
    if pattern.k != host.k:
        return False
    if set(mapping) != set(range(pattern.n)):
        return False
    values = list(mapping.values())
    if len(set(values)) != len(values):
        return False
    if any(w < 0 or w >= host.n for w in values):
        return False
    return all(tuple(sorted(mapping[v] for v in e)) in host.edge_set for e in pattern.edges)


def count_embeddings(pattern: Hypergraph, host: Hypergraph) -> int:
    """Exact number of injective edge-preserving maps (enumeration variant)."""
    return _count_maps(pattern, host, injective=True)


def count_homomorphisms(pattern: Hypergraph, host: Hypergraph) -> int:
    """Exact number of (not necessarily injective) edge-preserving maps.

    Python integers, so counts never overflow.  Isolated pattern vertices
    are folded into a single n**f factor at the end of the search order.
    """
    return _count_maps(pattern, host, injective=False)


def _count_maps(pattern: Hypergraph, host: Hypergraph, injective: bool) -> int:
    if pattern.k != host.k:
        raise ValueError(f"uniformity mismatch: {pattern.k} vs {host.k}")
    if injective and pattern.n > host.n:
        return 0
    order = _search_order(pattern)
    first_free = len(order)
    if not injective:
        while first_free > 0 and pattern.degree(order[first_free - 1]) == 0:
            first_free -= 1
    pos = {v: i for i, v in enumerate(order)}
    closing = _closing_edges(pattern, order)
    completions = _completion_index(host)
    images: list[int] = []
    used: set[int] = set()

    def candidates(i: int) -> list[int]:
        pools = []
        for others in closing[i]:
            key = tuple(sorted(images[pos[v]] for v in others))
            opts = completions.get(key)
            if not opts:
                return []
            pools.append(opts)
        if not pools:
            if injective:
                return [w for w in range(host.n) if w not in used]
            return list(range(host.n))
        cand = set(pools[0])
        for p in pools[1:]:
            cand.intersection_update(p)
        if injective:
            cand.difference_update(used)
        return sorted(cand)

    def rec(i: int) -> int:
        if i == first_free:
            return host.n ** (len(order) - first_free)
        total = 0
        for w in candidates(i):
            images.append(w)
            if injective:
                used.add(w)
            total += rec(i + 1)
            if injective:
                used.discard(w)
            images.pop()
        return total

    return rec(0)


def enumerate_hypergraphs(k: int, f: int) -> Iterator[Hypergraph]:
    """All labeled k-uniform hypergraphs on f vertices, in edge-bitmask order."""
    total = comb(f, k)
    if total > 25:
        raise ValueError(f"C({f},{k}) = {total} > 25: stream of 2**{total} hypergraphs refused")
    all_edges = list(combinations(range(f), k))
    for mask in range(1 << total):
        sel = tuple(e for i, e in enumerate(all_edges) if mask >> i & 1)
        yield Hypergraph(k, f, sel)


def naive_contains_copy(pattern: Hypergraph, host: Hypergraph) -> bool:
    """Oracle: try every injective map.  Only sensible for tiny hosts."""
    if pattern.k != host.k:
        raise ValueError("uniformity mismatch")
    if pattern.n > host.n:
        return False
    for img in permutations(range(host.n), pattern.n):
        if all(tuple(sorted(img[v] for v in e)) in host.edge_set for e in pattern.edges):
            return True
    return False
