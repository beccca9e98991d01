"""Ordered rainbow colourings of the shadow, and the pair-pattern host.

A colouring certificate consists of a vertex ordering together with a
k-colouring of the shadow faces such that for every edge, read in ordering
position, the face obtained by deleting the edge's ell-th vertex carries
colour ell.  Deleting the earliest vertex leaves the latest face; for k = 3
the conventional names are therefore

    1 = green  (the two position-latest vertices of an edge),
    2 = blue   (earliest and latest),
    3 = red    (the two position-earliest vertices).

The dual construction goes the other way: given a total colouring of the
(k-1)-subsets of [n], the pattern host has exactly those k-sets as edges
whose faces carry this position pattern under the natural order of [n].
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional, Sequence, Union

from .hypergraphs import Face, Hypergraph, shadow
from .seeding import derive_rng

COLOUR_NAMES = {1: "green", 2: "blue", 3: "red"}


def colour_name(colour: int, k: int) -> str:
    if k == 3:
        return COLOUR_NAMES[colour]
    return str(colour)


@dataclass(frozen=True)
class ShadowColouring:
    """A vertex ordering plus a total colouring of the shadow.

    ``order[p]`` is the vertex at position p (0-based); ``colours`` maps
    each shadow face to a colour in 1..k and is defined nowhere else.
    """

    order: tuple[int, ...]
    colours: dict[Face, int]


@dataclass(frozen=True)
class Conflict:
    """Two edges demand different colours for the same shadow face."""

    face: Face
    colour_a: int
    colour_b: int


@dataclass(frozen=True)
class PairColouring:
    """Total colouring of all (k-1)-subsets of [0, n) with colours 1..k."""

    k: int
    n: int
    colours: dict[Face, int]

    def __post_init__(self):
        want = comb(self.n, self.k - 1)
        if len(self.colours) != want:
            raise ValueError(f"colouring is not total: {len(self.colours)} of {want} subsets")
        for face, c in self.colours.items():
            if tuple(sorted(face)) != face or len(face) != self.k - 1:
                raise ValueError(f"bad subset key {face}")
            if any(v < 0 or v >= self.n for v in face):
                raise ValueError(f"subset {face} out of range")
            if c < 1 or c > self.k:
                raise ValueError(f"colour {c} outside 1..{self.k}")


def _face_dropping(edge: tuple[int, ...], v: int) -> Face:
    return tuple(x for x in edge if x != v)


def forced_colouring(pattern: Hypergraph, order: Sequence[int]) -> Union[ShadowColouring, Conflict]:
    """The unique colouring forced by a fixed ordering, or the first Conflict.

    Edges are processed in canonical order, so which conflict is reported
    is deterministic.  Every shadow face lies in some edge, hence receives
    a forced colour; there is nothing left to extend.
    """
    if sorted(order) != list(range(pattern.n)):
        raise ValueError("order must be a permutation of the vertex set")
    pos = {v: i for i, v in enumerate(order)}
    colours: dict[Face, int] = {}
    for e in pattern.edges:
        vs = sorted(e, key=lambda v: pos[v])
        for ell, u in enumerate(vs, start=1):
            face = _face_dropping(e, u)
            got = colours.get(face)
            if got is None:
                colours[face] = ell
            elif got != ell:
                return Conflict(face, got, ell)
    return ShadowColouring(tuple(order), colours)


def find_rainbow_ordering(pattern: Hypergraph) -> Optional[ShadowColouring]:
    """Search all vertex orderings for a conflict-free forced colouring.

    Incremental backtracking over ordering prefixes: an edge's colour
    demands are known as soon as its last vertex is placed, so conflicts
    prune whole prefix subtrees.  Vertices are tried in ascending index,
    which makes the returned ordering the lexicographically least witness.
    """
    if pattern.k < 3:
        raise ValueError("requires uniformity k >= 3")
    n = pattern.n
    if n == 0:
        return ShadowColouring((), {})
    edges = pattern.edges
    edge_ids_of = [[] for _ in range(n)]
    for i, e in enumerate(edges):
        for v in e:
            edge_ids_of[v].append(i)
    remaining = [pattern.k] * len(edges)
    pos: list[Optional[int]] = [None] * n
    seq: list[int] = []
    colours: dict[Face, int] = {}

    def dfs() -> bool:
        if len(seq) == n:
            return True
        for v in range(n):
            if pos[v] is not None:
                continue
            pos[v] = len(seq)
            seq.append(v)
            for ei in edge_ids_of[v]:
                remaining[ei] -= 1
            new_faces: list[Face] = []
            ok = True
            for ei in edge_ids_of[v]:
                if remaining[ei] != 0 or not ok:
                    continue
                e = edges[ei]
                vs = sorted(e, key=lambda x: pos[x])
                for ell, u in enumerate(vs, start=1):
                    face = _face_dropping(e, u)
                    got = colours.get(face)
                    if got is None:
                        colours[face] = ell
                        new_faces.append(face)
                    elif got != ell:
                        ok = False
                        break
            if ok and dfs():
                return True
            for face in new_faces:
                del colours[face]
            for ei in edge_ids_of[v]:
                remaining[ei] += 1
            seq.pop()
            pos[v] = None
        return False

    if not dfs():
        return None
    return ShadowColouring(tuple(seq), dict(colours))


def verify_rainbow_colouring(pattern: Hypergraph, witness: ShadowColouring) -> bool:
    """Pure re-check, independent of the search path."""
    if sorted(witness.order) != list(range(pattern.n)):
        return False
    if set(witness.colours) != set(shadow(pattern)):
        return False
    if any(c < 1 or c > pattern.k for c in witness.colours.values()):
        return False
    pos = {v: i for i, v in enumerate(witness.order)}
    for e in pattern.edges:
        vs = sorted(e, key=lambda v: pos[v])
        for ell, u in enumerate(vs, start=1):
            if witness.colours[_face_dropping(e, u)] != ell:
                return False
    return True


def build_pattern_host(phi: PairColouring) -> Hypergraph:
    """Host whose edges are the k-sets matching the position pattern.

    A k-set with sorted vertices u_1 < ... < u_k is an edge iff the face
    omitting u_ell has colour ell for every ell.  For k = 3 this reads:
    earliest pair red, outer pair blue, latest pair green.
    """
    edges = []
    for e in combinations(range(phi.n), phi.k):
        if all(phi.colours[_face_dropping(e, e[ell - 1])] == ell for ell in range(1, phi.k + 1)):
            edges.append(e)
    return Hypergraph(phi.k, phi.n, tuple(edges))


def random_pair_colouring(n: int, k: int, seed: int) -> PairColouring:
    """Uniform independent colours on all (k-1)-subsets; fixed by the seed."""
    if n < k - 1:
        raise ValueError(f"need n >= k-1, got n={n}, k={k}")
    rng = derive_rng(seed, f"pair-colouring/{k}/{n}")
    colours = {face: rng.randint(1, k) for face in combinations(range(n), k - 1)}
    return PairColouring(k, n, colours)


def witness_to_dict(witness: ShadowColouring, k: int) -> dict:
    return {
        "ordering": list(witness.order),
        "colours": [
            {"tuple": list(face), "colour": colour_name(c, k) if k == 3 else c}
            for face, c in sorted(witness.colours.items())
        ],
    }


def parse_pair_colouring(text: str) -> PairColouring:
    """Parse the pair-colouring format: header ``k n``, then one line per
    (k-1)-subset followed by its colour index."""
    k = n = None
    colours: dict[Face, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if k is None:
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: header must be 'k n'")
            k, n = int(parts[0]), int(parts[1])
            if k < 2 or n < 0:
                raise ValueError(f"line {lineno}: header out of range")
            continue
        if len(parts) != k:
            raise ValueError(f"line {lineno}: expected {k - 1} vertices and a colour")
        vs = [int(p) for p in parts[:-1]]
        face = tuple(sorted(vs))
        if face in colours:
            raise ValueError(f"line {lineno}: duplicate subset")
        colours[face] = int(parts[-1])
    if k is None:
        raise ValueError("missing header line")
    return PairColouring(k, n, colours)


def serialize_pair_colouring(phi: PairColouring) -> str:
    lines = [f"{phi.k} {phi.n}"]
    for face in sorted(phi.colours):
        lines.append(" ".join(map(str, face)) + f" {phi.colours[face]}")
    return "\n".join(lines) + "\n"
