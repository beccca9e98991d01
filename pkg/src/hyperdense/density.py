"""Density auditors with independently checkable certificates.

Three notions are audited:

* vertex:  every subset U must satisfy
           |edges inside U| >= d * C(|U|, k) - eta * n**k;
* triple:  every X, Y, Z must satisfy (k = 3)
           #{(x,y,z) in X*Y*Z : xyz an edge} >= d|X||Y||Z| - eta * n**3;
* profile: per eta, the minimum of |edges inside U| / C(|U|, 3) over
           subsets with |U| >= ceil(eta * n).

Exact mode enumerates subsets (Gray-code incremental counting); heuristic
mode uses seeded multi-start local search (vertex/profile) or alternating
closed-form coordinate descent (triple).  A "violated" verdict always
carries a certificate that re-verifies with negative slack; heuristic mode
never claims "satisfied", only "unresolved".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from math import ceil, comb, inf
from typing import Iterable, Optional, Sequence

from .hypergraphs import Hypergraph, induced_edge_count
from .seeding import derive_rng

VERTEX_EXACT_LIMIT = 24
TRIPLE_EXACT_LIMIT = 10

# guard against float artifacts in ceil(eta * n), e.g. (2/3)*9 -> 6.000000000000001
_CEIL_GUARD = 1e-9


@dataclass
class DensityQuery:
    """Audit parameters; restarts and budget only matter in heuristic mode."""

    d: float
    eta: float
    mode: str = "exact"
    budget: int = 1000
    restarts: int = 64
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.d <= 1.0:
            raise ValueError(f"d must lie in [0, 1], got {self.d}")
        if self.eta <= 0.0:
            raise ValueError(f"eta must be positive, got {self.eta}")
        if self.budget < 1:
            raise ValueError("budget must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.mode not in ("exact", "heuristic"):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class DensityReport:
    notion: str
    verdict: str  # satisfied | violated | unresolved
    d: float
    eta: float
    certificate: Optional[dict]
    slack: Optional[float]
    stats: dict

    def to_dict(self) -> dict:
        return {
            "notion": self.notion,
            "verdict": self.verdict,
            "d": self.d,
            "eta": self.eta,
            "certificate": self.certificate,
            "slack": self.slack,
            "stats": self.stats,
        }


@dataclass
class ProfileEntry:
    eta: float
    size_floor: int
    density: Optional[float]
    subset: Optional[tuple[int, ...]]


@dataclass
class ProfileReport:
    entries: list[ProfileEntry]
    mode: str
    stats: dict = field(default_factory=dict)

    def as_map(self) -> dict[float, Optional[float]]:
        return {e.eta: e.density for e in self.entries}

    def to_dict(self) -> dict:
        return {
            "notion": "profile",
            "mode": self.mode,
            "entries": [
                {
                    "eta": e.eta,
                    "size_floor": e.size_floor,
                    "density": e.density,
                    "certificate": None if e.subset is None else {"U": list(e.subset)},
                }
                for e in self.entries
            ],
            "stats": self.stats,
        }


def _edge_masks_without(h: Hypergraph) -> list[list[int]]:
    """Per vertex v, bitmasks of (edge minus v) for every edge through v."""
    out: list[list[int]] = [[] for _ in range(h.n)]
    for e in h.edges:
        mask = 0
        for v in e:
            mask |= 1 << v
        for v in e:
            out[v].append(mask & ~(1 << v))
    return out


def _decode(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def size_floor(eta: float, n: int, k: int) -> int:
    """Smallest admissible |U|: ceil(eta*n), but never below k."""
    return max(ceil(eta * n - _CEIL_GUARD), k)


# ---------------------------------------------------------------------------
# vertex notion


def vertex_density_check(h: Hypergraph, query: DensityQuery) -> DensityReport:
    if query.mode == "exact":
        if h.n > VERTEX_EXACT_LIMIT:
            raise ValueError(f"exact mode limited to n <= {VERTEX_EXACT_LIMIT}, got n = {h.n}")
        report = _vertex_exact(h, query)
    else:
        report = _vertex_heuristic(h, query)
    if report.verdict == "violated":
        recomputed = verify_density_certificate(h, report)
        assert recomputed < 0 and abs(recomputed - report.slack) < 1e-9
    return report


def _vertex_slack(h: Hypergraph, query: DensityQuery, mask: int, size: int, inside: int) -> float:
    return inside - query.d * comb(size, h.k) + query.eta * h.n ** h.k


def _vertex_exact(h: Hypergraph, query: DensityQuery) -> DensityReport:
    n = h.n
    penalty = query.eta * n ** h.k
    binom = [comb(s, h.k) for s in range(n + 1)]
    others = _edge_masks_without(h)
    best_slack = penalty  # empty subset
    best_mask = 0
    mask = size = inside = 0
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        bit = 1 << v
        if mask & bit:
            inside -= sum(1 for om in others[v] if om & mask == om)
            mask ^= bit
            size -= 1
        else:
            mask |= bit
            size += 1
            inside += sum(1 for om in others[v] if om & mask == om)
        slack = inside - query.d * binom[size] + penalty
        if slack < best_slack or (slack == best_slack and _decode(mask, n) < _decode(best_mask, n)):
            best_slack = slack
            best_mask = mask
    subset = _decode(best_mask, n)
    violated = best_slack < 0
    return DensityReport(
        notion="vertex",
        verdict="violated" if violated else "satisfied",
        d=query.d,
        eta=query.eta,
        certificate={"U": list(subset)} if violated else None,
        slack=best_slack,
        stats={
            "mode": "exact",
            "subsets_examined": 1 << n,
            "argmin": list(subset),
            "uniformity": h.k,
        },
    )


def _vertex_heuristic(h: Hypergraph, query: DensityQuery) -> DensityReport:
    n = h.n
    binom = [comb(s, h.k) for s in range(n + 1)]
    penalty = query.eta * n ** h.k
    others = _edge_masks_without(h)
    best_slack = inf
    best_mask = 0
    steps_total = 0
    for r in range(query.restarts):
        rng = derive_rng(query.seed, f"vertex/{r}")
        mask = rng.getrandbits(n) if n else 0
        size = bin(mask).count("1")
        # each inside edge is seen once per contained vertex, hence the // k
        inside = sum(
            1 for v in range(n) if mask >> v & 1 for om in others[v] if om & mask == om
        ) // h.k
        slack = inside - query.d * binom[size] + penalty
        if slack < best_slack:
            best_slack, best_mask = slack, mask
        for _ in range(query.budget):
            steps_total += 1
            chosen_v = -1
            chosen_delta = 0.0
            chosen_di = 0
            for v in range(n):
                bit = 1 << v
                if mask & bit:
                    di = -sum(1 for om in others[v] if om & mask == om)
                    ns = size - 1
                else:
                    di = sum(1 for om in others[v] if om & (mask | bit) == om)
                    ns = size + 1
                delta = di - query.d * (binom[ns] - binom[size])
                if delta < chosen_delta - 1e-12:
                    chosen_v, chosen_delta, chosen_di = v, delta, di
            if chosen_v < 0:
                break
            mask ^= 1 << chosen_v
            size = size + 1 if mask >> chosen_v & 1 else size - 1
            inside += chosen_di
            slack = inside - query.d * binom[size] + penalty
            if slack < best_slack:
                best_slack, best_mask = slack, mask
    subset = _decode(best_mask, n)
    violated = best_slack < 0
    return DensityReport(
        notion="vertex",
        verdict="violated" if violated else "unresolved",
        d=query.d,
        eta=query.eta,
        certificate={"U": list(subset)} if violated else None,
        slack=best_slack if violated else None,
        stats={
            "mode": "heuristic",
            "restarts": query.restarts,
            "steps": steps_total,
            "best_slack": best_slack,
            "seed": query.seed,
        },
    )


# ---------------------------------------------------------------------------
# triple notion


def ordered_triple_count(h: Hypergraph, xs: Iterable[int], ys: Iterable[int], zs: Iterable[int]) -> int:
    """#{(x,y,z) in X*Y*Z : {x,y,z} an edge}; the sets may overlap."""
    if h.k != 3:
        raise ValueError("three-set counting requires uniformity 3")
    X, Y, Z = set(xs), set(ys), set(zs)
    count = 0
    for e in h.edges:
        for p in permutations(e):
            if p[0] in X and p[1] in Y and p[2] in Z:
                count += 1
    return count


def _codegrees(h: Hypergraph, first: set[int], second: set[int]) -> list[int]:
    """Per vertex w: #{(a,b) in first*second : {a,b,w} an edge}."""
    c = [0] * h.n
    for x, y, z in h.edges:
        c[z] += (x in first) * (y in second) + (y in first) * (x in second)
        c[y] += (x in first) * (z in second) + (z in first) * (x in second)
        c[x] += (y in first) * (z in second) + (z in first) * (y in second)
    return c


def _triple_objective(h: Hypergraph, X: set, Y: set, Z: set, d: float, eta: float) -> float:
    c = _codegrees(h, X, Y)
    count = sum(c[z] for z in Z)
    return count - d * len(X) * len(Y) * len(Z) + eta * h.n ** 3


def triple_density_check(h: Hypergraph, query: DensityQuery) -> DensityReport:
    if h.k != 3:
        raise ValueError("three-set audit requires uniformity 3")
    if query.mode == "exact":
        if h.n > TRIPLE_EXACT_LIMIT:
            raise ValueError(f"exact mode limited to n <= {TRIPLE_EXACT_LIMIT}, got n = {h.n}")
        report = _triple_exact(h, query)
    else:
        report = _triple_heuristic(h, query)
    if report.verdict == "violated":
        recomputed = verify_density_certificate(h, report)
        assert recomputed < 0 and abs(recomputed - report.slack) < 1e-9
    return report


def _triple_exact(h: Hypergraph, query: DensityQuery) -> DensityReport:
    """Enumerate (X, Y) pairs; for fixed X, Y the optimal Z has a closed
    form (take every vertex whose codegree is below d|X||Y|), so this
    equals the full minimum over all 8**n triples."""
    n = h.n
    penalty = query.eta * n ** 3
    pair_others: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for x, y, z in h.edges:
        pair_others[x].append((y, z))
        pair_others[y].append((x, z))
        pair_others[z].append((x, y))
    best = penalty  # X = Y = Z = empty
    best_cert = ((), (), ())
    for xmask in range(1 << n):
        xbit = [(xmask >> w) & 1 for w in range(n)]
        xsize = sum(xbit)
        c = [0] * n
        ymask = 0
        ysize = 0
        for j in range(1, 1 << n):
            u = (j & -j).bit_length() - 1
            s = -1 if ymask >> u & 1 else 1
            for a, b in pair_others[u]:
                c[b] += s * xbit[a]
                c[a] += s * xbit[b]
            ymask ^= 1 << u
            ysize += s
            t = query.d * xsize * ysize
            total = 0.0
            for cz in c:
                gap = cz - t
                if gap < 0:
                    total += gap
            obj = total + penalty
            if obj < best:
                best = obj
                zs = tuple(w for w in range(n) if c[w] - t < 0)
                best_cert = (_decode(xmask, n), _decode(ymask, n), zs)
    violated = best < 0
    X, Y, Z = best_cert
    return DensityReport(
        notion="triple",
        verdict="violated" if violated else "satisfied",
        d=query.d,
        eta=query.eta,
        certificate={"X": list(X), "Y": list(Y), "Z": list(Z)} if violated else None,
        slack=best,
        stats={"mode": "exact", "pairs_examined": 1 << (2 * n), "argmin": [list(X), list(Y), list(Z)]},
    )


def _triple_heuristic(h: Hypergraph, query: DensityQuery) -> DensityReport:
    n = h.n
    best = inf
    best_cert: Optional[tuple] = None
    traces: list[list[float]] = []
    for r in range(query.restarts):
        rng = derive_rng(query.seed, f"triple/{r}")
        sets = [
            {v for v in range(n) if rng.random() < 0.5},
            {v for v in range(n) if rng.random() < 0.5},
            {v for v in range(n) if rng.random() < 0.5},
        ]
        obj = _triple_objective(h, sets[0], sets[1], sets[2], query.d, query.eta)
        trace = [obj]
        for _ in range(query.budget):
            changed = False
            for role in (2, 0, 1):
                a, b = (role + 1) % 3, (role + 2) % 3
                c = _codegrees(h, sets[a], sets[b])
                threshold = query.d * len(sets[a]) * len(sets[b])
                replacement = {v for v in range(n) if c[v] < threshold}
                if replacement != sets[role]:
                    sets[role] = replacement
                    changed = True
                new_obj = _triple_objective(h, sets[0], sets[1], sets[2], query.d, query.eta)
                assert new_obj <= obj + 1e-9, "descent step increased the objective"
                obj = new_obj
                trace.append(obj)
            if not changed:
                break
        traces.append(trace)
        if obj < best:
            best = obj
            best_cert = (tuple(sorted(sets[0])), tuple(sorted(sets[1])), tuple(sorted(sets[2])))
    violated = best < 0
    X, Y, Z = best_cert if best_cert else ((), (), ())
    return DensityReport(
        notion="triple",
        verdict="violated" if violated else "unresolved",
        d=query.d,
        eta=query.eta,
        certificate={"X": list(X), "Y": list(Y), "Z": list(Z)} if violated else None,
        slack=best if violated else None,
        stats={
            "mode": "heuristic",
            "restarts": query.restarts,
            "seed": query.seed,
            "best_objective": best,
            "objective_traces": traces,
        },
    )


# ---------------------------------------------------------------------------
# profile notion


def density_profile(
    h: Hypergraph,
    eta_grid: Sequence[float],
    mode: str = "exact",
    budget: int = 1000,
    restarts: int = 64,
    seed: int = 0,
) -> ProfileReport:
    """Per eta, the minimum relative density over subsets of size at least
    ceil(eta * n), with the minimizing subset as certificate."""
    if not eta_grid:
        raise ValueError("empty eta grid")
    for eta in eta_grid:
        if not 0.0 < eta <= 1.0:
            raise ValueError(f"eta values must lie in (0, 1], got {eta}")
    if mode == "exact":
        if h.n > VERTEX_EXACT_LIMIT:
            raise ValueError(f"exact mode limited to n <= {VERTEX_EXACT_LIMIT}")
        return _profile_exact(h, eta_grid)
    if mode == "heuristic":
        return _profile_heuristic(h, eta_grid, budget, restarts, seed)
    raise ValueError(f"unknown mode {mode!r}")


def _profile_exact(h: Hypergraph, eta_grid: Sequence[float]) -> ProfileReport:
    n, k = h.n, h.k
    binom = [comb(s, k) for s in range(n + 1)]
    others = _edge_masks_without(h)
    per_size: list[tuple[float, int]] = [(inf, 0)] * (n + 1)  # (ratio, mask)
    mask = size = inside = 0
    for i in range(1, 1 << n):
        v = (i & -i).bit_length() - 1
        bit = 1 << v
        if mask & bit:
            inside -= sum(1 for om in others[v] if om & mask == om)
            mask ^= bit
            size -= 1
        else:
            mask |= bit
            size += 1
            inside += sum(1 for om in others[v] if om & mask == om)
        if size >= k:
            ratio = inside / binom[size]
            if ratio < per_size[size][0]:
                per_size[size] = (ratio, mask)
    entries = []
    for eta in eta_grid:
        floor = size_floor(eta, n, k)
        best: tuple[float, int] | None = None
        for s in range(floor, n + 1):
            if per_size[s][0] < inf and (best is None or per_size[s][0] < best[0]):
                best = per_size[s]
        if best is None:
            entries.append(ProfileEntry(eta, floor, None, None))
        else:
            entries.append(ProfileEntry(eta, floor, best[0], _decode(best[1], n)))
    return ProfileReport(entries, "exact", {"subsets_examined": 1 << n})


def _profile_heuristic(
    h: Hypergraph, eta_grid: Sequence[float], budget: int, restarts: int, seed: int
) -> ProfileReport:
    n, k = h.n, h.k
    binom = [comb(s, k) for s in range(n + 1)]
    others = _edge_masks_without(h)
    entries = []
    for eta in eta_grid:
        floor = size_floor(eta, n, k)
        if floor > n:
            entries.append(ProfileEntry(eta, floor, None, None))
            continue
        best_ratio = inf
        best_mask = 0
        for r in range(restarts):
            rng = derive_rng(seed, f"profile/{eta}/{r}")
            chosen = rng.sample(range(n), rng.randint(floor, n))
            mask = 0
            for v in chosen:
                mask |= 1 << v
            size = len(chosen)
            inside = sum(
                1 for v in chosen for om in others[v] if om & mask == om
            ) // k
            ratio = inside / binom[size]
            if ratio < best_ratio:
                best_ratio, best_mask = ratio, mask
            for _ in range(budget):
                move_v = -1
                move_ratio = ratio
                for v in range(n):
                    bit = 1 << v
                    if mask & bit:
                        if size - 1 < floor:
                            continue
                        di = -sum(1 for om in others[v] if om & mask == om)
                        ns = size - 1
                    else:
                        di = sum(1 for om in others[v] if om & (mask | bit) == om)
                        ns = size + 1
                    cand = (inside + di) / binom[ns]
                    if cand < move_ratio - 1e-12:
                        move_v, move_ratio = v, cand
                if move_v < 0:
                    break
                bit = 1 << move_v
                if mask & bit:
                    inside -= sum(1 for om in others[move_v] if om & mask == om)
                    mask ^= bit
                    size -= 1
                else:
                    mask |= bit
                    size += 1
                    inside += sum(1 for om in others[move_v] if om & mask == om)
                ratio = inside / binom[size]
                if ratio < best_ratio:
                    best_ratio, best_mask = ratio, mask
        entries.append(ProfileEntry(eta, floor, best_ratio, _decode(best_mask, n)))
    return ProfileReport(entries, "heuristic", {"restarts": restarts, "seed": seed})


# ---------------------------------------------------------------------------
# certificates


def verify_density_certificate(h: Hypergraph, report: DensityReport) -> float:
    """Recompute a report's slack from scratch (reference code path)."""
    if report.certificate is None:
        raise ValueError("report carries no certificate")
    if report.notion == "vertex":
        U = list(report.certificate["U"])
        if any(v < 0 or v >= h.n for v in U):
            raise ValueError("certificate vertex out of range")
        if len(set(U)) != len(U):
            raise ValueError("certificate subset has repeated vertices")
        inside = induced_edge_count(h, U)
        return inside - report.d * comb(len(U), h.k) + report.eta * h.n ** h.k
    if report.notion == "triple":
        parts = []
        for key in ("X", "Y", "Z"):
            part = list(report.certificate[key])
            if any(v < 0 or v >= h.n for v in part):
                raise ValueError("certificate vertex out of range")
            parts.append(part)
        X, Y, Z = parts
        count = ordered_triple_count(h, X, Y, Z)
        return count - report.d * len(X) * len(Y) * len(Z) + report.eta * h.n ** 3
    raise ValueError(f"unsupported notion {report.notion!r}")


def subset_relative_density(h: Hypergraph, vertices: Iterable[int]) -> float:
    """|edges inside U| / C(|U|, k); reference path for profile entries."""
    vs = sorted(set(vertices))
    if any(v < 0 or v >= h.n for v in vs):
        raise ValueError("vertex out of range")
    denom = comb(len(vs), h.k)
    if denom == 0:
        raise ValueError(f"subset must have at least {h.k} vertices")
    return induced_edge_count(h, vs) / denom
