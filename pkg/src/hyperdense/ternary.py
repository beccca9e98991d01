"""k-ary hypergraphs on digit strings, and the frequency decider.

The depth-n host on base k has vertex set {0..k-1}^n; a k-set of distinct
strings is an edge iff at the first coordinate where they are not all
equal, their values are exactly {0..k-1}.  A pattern occurs inside some
such host iff its vertex set splits into k parts (at least two nonempty)
with every edge either inside one part or meeting each part exactly once,
and each part recursively splitting the same way.  That recursive search,
with memoization on vertex subsets, is complete and yields a witness of
coordinate length at most v(F).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Optional, Sequence

from .hypergraphs import Hypergraph

KaryVector = tuple[int, ...]

DEFAULT_VERTEX_LIMIT = 256


@dataclass(frozen=True)
class EmbeddingWitness:
    """Injective map from pattern vertices to equal-length digit strings."""

    k: int
    length: int
    mapping: dict[int, KaryVector]


def kary_edge(k: int, vectors: Sequence[KaryVector]) -> bool:
    """Edge rule: first not-all-equal coordinate shows every value 0..k-1."""
    vecs = [tuple(v) for v in vectors]
    if len(vecs) != k:
        raise ValueError(f"expected {k} vectors, got {len(vecs)}")
    length = len(vecs[0])
    if any(len(v) != length for v in vecs):
        raise ValueError("vectors have unequal lengths")
    if len(set(vecs)) != k:
        raise ValueError("duplicate vectors")
    if any(c < 0 or c >= k for v in vecs for c in v):
        raise ValueError("coordinate outside base range")
    for i in range(length):
        values = {v[i] for v in vecs}
        if len(values) == 1:
            continue
        return values == set(range(k))
    raise AssertionError("distinct vectors must differ somewhere")


def vector_of(index: int, k: int, length: int) -> KaryVector:
    """Base-k digits of a vertex index, most significant first."""
    digits = []
    for _ in range(length):
        digits.append(index % k)
        index //= k
    return tuple(reversed(digits))


def index_of(vector: KaryVector, k: int) -> int:
    index = 0
    for d in vector:
        index = index * k + d
    return index


def build_kary(k: int, n: int, max_vertices: int = DEFAULT_VERTEX_LIMIT) -> Hypergraph:
    """Explicit depth-n host on k**n vertices (vertex = digit-string index).

    Built recursively: k shifted copies of depth n-1 plus all transversal
    k-sets taking one vertex per first-coordinate block.
    """
    if k < 2:
        raise ValueError("base must be >= 2")
    if n < 0:
        raise ValueError("depth must be >= 0")
    size = k ** n
    if size > max_vertices:
        raise ValueError(f"{k}**{n} = {size} exceeds the explicit-size limit {max_vertices}")
    if n == 0:
        return Hypergraph(k, 1, ())
    prev = build_kary(k, n - 1, max_vertices)
    block = k ** (n - 1)
    edges: list[tuple[int, ...]] = []
    for c in range(k):
        off = c * block
        edges.extend(tuple(off + v for v in e) for e in prev.edges)
    for residues in product(range(block), repeat=k):
        edges.append(tuple(c * block + residues[c] for c in range(k)))
    return Hypergraph.from_edges(k, size, edges)


def kary_edge_count(k: int, n: int) -> int:
    """Closed form (k**(kn) - k**n) / (k**k - k); exact integers."""
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    return (k ** (k * n) - k ** n) // (k ** k - k)


def _label_assignments(count: int, k: int) -> Iterator[tuple[int, ...]]:
    """Canonical part labels (first occurrences in increasing order), at
    least two distinct labels, at most k.  Quotients out part-label
    symmetry without losing completeness."""

    def rec(prefix: list[int], used: int) -> Iterator[tuple[int, ...]]:
        if len(prefix) == count:
            if used >= 2:
                yield tuple(prefix)
            return
        for lab in range(min(used + 1, k)):
            prefix.append(lab)
            yield from rec(prefix, max(used, lab + 1))
            prefix.pop()

    if count >= 2:
        yield from rec([0], 1)


def find_kary_embedding(pattern: Hypergraph) -> Optional[EmbeddingWitness]:
    """Complete recursive partition search for an embedding witness.

    Returns a witness of uniform coordinate length < v(F) (parts are
    padded with trailing zeros), or None when no labelled partition tree
    exists.  Memoized on vertex subsets of the pattern.
    """
    if pattern.k < 3:
        raise ValueError("requires uniformity k >= 3")
    k = pattern.k
    memo: dict[frozenset[int], Optional[dict[int, KaryVector]]] = {}

    def solve(vs: tuple[int, ...]) -> Optional[dict[int, KaryVector]]:
        if len(vs) <= 1:
            return {v: () for v in vs}
        key = frozenset(vs)
        if key in memo:
            return memo[key]
        vset = set(vs)
        edges = [e for e in pattern.edges if vset.issuperset(e)]
        found: Optional[dict[int, KaryVector]] = None
        for labels in _label_assignments(len(vs), k):
            label_of = dict(zip(vs, labels))
            ok = True
            for e in edges:
                labs = sorted(label_of[v] for v in e)
                if labs[0] == labs[-1]:
                    continue  # internal to one part
                if labs == list(range(k)):
                    continue  # transversal
                ok = False
                break
            if not ok:
                continue
            parts: list[list[int]] = [[] for _ in range(k)]
            for v, lab in zip(vs, labels):
                parts[lab].append(v)
            subs: list[dict[int, KaryVector]] = []
            for part in parts:
                sub = solve(tuple(part))
                if sub is None:
                    ok = False
                    break
                subs.append(sub)
            if not ok:
                continue
            depth = max((len(next(iter(s.values()))) if s else 0) for s in subs)
            mapping: dict[int, KaryVector] = {}
            for lab, sub in enumerate(subs):
                for v, tail in sub.items():
                    mapping[v] = (lab,) + tail + (0,) * (depth - len(tail))
            found = mapping
            break
        memo[key] = found
        return found

    top = solve(tuple(range(pattern.n)))
    if top is None:
        return None
    length = len(next(iter(top.values()))) if top else 0
    assert length <= pattern.n
    return EmbeddingWitness(k=k, length=length, mapping=top)


def verify_kary_embedding(pattern: Hypergraph, witness: EmbeddingWitness) -> bool:
    """True iff the witness is injective and every edge passes the edge rule."""
    if witness.k != pattern.k:
        return False
    if set(witness.mapping) != set(range(pattern.n)):
        return False
    vecs = list(witness.mapping.values())
    if any(len(v) != witness.length for v in vecs):
        return False
    if any(c < 0 or c >= witness.k for v in vecs for c in v):
        return False
    if len(set(vecs)) != len(vecs):
        return False
    return all(kary_edge(witness.k, [witness.mapping[v] for v in e]) for e in pattern.edges)


def is_frequent(pattern: Hypergraph) -> bool:
    """Whether the pattern embeds into some digit-string host."""
    return find_kary_embedding(pattern) is not None


def embedding_to_dict(witness: EmbeddingWitness) -> dict:
    def digits(vec: KaryVector) -> str:
        if witness.k <= 10:
            return "".join(map(str, vec))
        return ",".join(map(str, vec))

    return {
        "length": witness.length,
        "map": {str(v): digits(vec) for v, vec in sorted(witness.mapping.items())},
    }
