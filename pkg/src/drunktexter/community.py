"""User graphs (profile similarity, shared friends/followers) and Louvain communities."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .temporal import PeakProfile

__all__ = [
    "EmptyGraph",
    "Graph",
    "Partition",
    "interest_graph",
    "bond_graph",
    "modularity",
    "louvain",
    "degree_loglog_slope",
    "planted_profile_blocks",
]


class EmptyGraph(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph without self-loops or parallel edges."""

    nodes: tuple
    edges: tuple  # ((u, v, weight), ...) with u before v in node order

    def __post_init__(self):
        nodes = tuple(self.nodes)
        if len(set(nodes)) != len(nodes):
            raise ValueError("duplicate node ids")
        pos = {n: i for i, n in enumerate(nodes)}
        seen = set()
        edges = []
        for u, v, w in self.edges:
            if u == v:
                raise ValueError(f"self-loop on {u!r}")
            if not w > 0:
                raise ValueError(f"edge ({u!r}, {v!r}) has non-positive weight")
            if pos[u] > pos[v]:
                u, v = v, u
            if (u, v) in seen:
                raise ValueError(f"parallel edge ({u!r}, {v!r})")
            seen.add((u, v))
            edges.append((u, v, float(w)))
        edges.sort(key=lambda e: (pos[e[0]], pos[e[1]]))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def total_weight(self):
        return math.fsum(w for _, _, w in self.edges)

    def weight(self, u, v):
        for a, b, w in self.edges:
            if {a, b} == {u, v}:
                return w
        return 0.0

    def adjacency(self):
        adj = {n: {} for n in self.nodes}
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def degrees(self, weighted=True):
        deg = dict.fromkeys(self.nodes, 0.0)
        for u, v, w in self.edges:
            x = w if weighted else 1.0
            deg[u] += x
            deg[v] += x
        return deg


@dataclass(frozen=True)
class Partition:
    nodes: tuple
    communities: tuple       # community id per node, aligned with ``nodes``
    modularity: float
    history: tuple = field(default=())  # modularity after each Louvain level

    def as_dict(self):
        return dict(zip(self.nodes, self.communities))

    @property
    def n_communities(self):
        return len(set(self.communities))

    def sizes(self):
        """Community sizes, largest first."""
        return sorted(Counter(self.communities).values(), reverse=True)


def interest_graph(profiles, threshold=0.2, standardize=False):
    """Join users whose peak-profile vectors have cosine similarity above ``threshold``.

    Absent statistics count as 0; all-zero vectors get no edges.  With
    ``standardize=True`` columns are z-scored first.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    ids = [p.user_id for p in profiles]
    if not ids:
        return Graph((), ())
    V = np.vstack([p.vector() for p in profiles])
    if standardize:
        sd = V.std(axis=0)
        V = (V - V.mean(axis=0)) / np.where(sd > 0, sd, 1.0)
    norms = np.linalg.norm(V, axis=1)
    ok = norms > 0
    U = np.zeros_like(V)
    U[ok] = V[ok] / norms[ok, None]
    S = U @ U.T
    iu, ju = np.triu_indices(len(ids), k=1)
    keep = (S[iu, ju] > threshold) & ok[iu] & ok[ju]
    edges = [(ids[i], ids[j], float(min(1.0, S[i, j]))) for i, j in zip(iu[keep], ju[keep])]
    return Graph(tuple(ids), tuple(edges))


def bond_graph(users, relation="friends", min_common=1):
    """Join users sharing at least ``min_common`` friends (or followers); weight = shared count."""
    if relation not in ("friends", "followers"):
        raise ValueError("relation must be 'friends' or 'followers'")
    if min_common < 1:
        raise ValueError("min_common must be >= 1")
    ids = [u.user_id for u in users]
    order = {uid: i for i, uid in enumerate(ids)}
    by_neighbor = defaultdict(list)
    for u in users:
        for nb in getattr(u, relation):
            by_neighbor[nb].append(order[u.user_id])
    common = Counter()
    for members in by_neighbor.values():
        members.sort()
        common.update(combinations(members, 2))
    edges = [(ids[i], ids[j], float(c)) for (i, j), c in sorted(common.items()) if c >= min_common]
    return Graph(tuple(ids), tuple(edges))


def _as_labels(graph, partition):
    if isinstance(partition, Partition):
        return partition.as_dict()
    if isinstance(partition, dict):
        return partition
    return dict(zip(graph.nodes, partition))


def modularity(graph, partition, resolution=1.0):
    """Newman modularity of a flat partition (node -> community) on a weighted graph."""
    m = graph.total_weight
    if not graph.edges or m <= 0:
        raise EmptyGraph("modularity needs at least one edge")
    label = _as_labels(graph, partition)
    inside = defaultdict(float)
    tot = defaultdict(float)
    for u, v, w in graph.edges:
        tot[label[u]] += w
        tot[label[v]] += w
        if label[u] == label[v]:
            inside[label[u]] += 2 * w
    return math.fsum(inside[c] / (2 * m) - resolution * (tot[c] / (2 * m)) ** 2 for c in tot)


# -- Louvain ------------------------------------------------------------------

def _move_nodes(adj, m, rng, resolution):
    """Local moving phase on an aggregated graph.

    ``adj[i]`` maps neighbor -> weight; ``adj[i][i]`` is twice the self-loop
    weight, so ``sum(adj[i].values())`` is the weighted degree.
    """
    n = len(adj)
    k = [math.fsum(a.values()) for a in adj]
    comm = list(range(n))
    tot = k[:]
    improved = False
    moved = True
    while moved:
        moved = False
        for i in rng.permutation(n):
            i = int(i)
            ci = comm[i]
            links = defaultdict(float)
            for j, w in adj[i].items():
                if j != i:
                    links[comm[j]] += w
            tot[ci] -= k[i]
            scale = resolution * k[i] / (2 * m)
            stay = links.get(ci, 0.0) - tot[ci] * scale
            best, best_gain = ci, stay
            for c in sorted(links):
                if c == ci:
                    continue
                gain = links[c] - tot[c] * scale
                if gain > best_gain + 1e-12 or (best != ci and abs(gain - best_gain) <= 1e-12 and c < best):
                    best, best_gain = c, gain
            tot[best] += k[i]
            if best != ci:
                comm[i] = best
                moved = improved = True
    return comm, improved


def _aggregate(adj, comm):
    ids = sorted(set(comm))
    remap = {c: r for r, c in enumerate(ids)}
    new = [defaultdict(float) for _ in ids]
    for i, a in enumerate(adj):
        ci = remap[comm[i]]
        for j, w in a.items():
            new[ci][remap[comm[j]]] += w
    return [dict(sorted(d.items())) for d in new], [remap[c] for c in comm]


def louvain(graph, seed=0, resolution=1.0):
    """Two-phase Louvain: local moves by best positive modularity gain, then aggregation.

    Nodes are visited in a fresh seeded random order on every pass; equal
    gains go to the lowest community id.  Isolated nodes stay singletons.
    """
    if not graph.nodes:
        raise EmptyGraph("graph has no nodes")
    n = len(graph.nodes)
    m = graph.total_weight
    if m <= 0:
        return Partition(graph.nodes, tuple(range(n)), 0.0, (0.0,))
    pos = {v: i for i, v in enumerate(graph.nodes)}
    adj = [dict() for _ in range(n)]
    for u, v, w in graph.edges:
        adj[pos[u]][pos[v]] = w
        adj[pos[v]][pos[u]] = w
    rng = np.random.default_rng(seed)
    member = list(range(n))
    history = [modularity(graph, member, resolution)]
    while True:
        comm, improved = _move_nodes(adj, m, rng, resolution)
        if not improved:
            break
        adj, remap = _aggregate(adj, comm)
        member = [remap[c] for c in member]
        history.append(modularity(graph, member, resolution))
        if len(adj) == 1:
            break
    # number communities by first appearance in node order
    first = {}
    labels = tuple(first.setdefault(c, len(first)) for c in member)
    return Partition(graph.nodes, labels, history[-1], tuple(history))


def degree_loglog_slope(graph):
    """Least-squares slope of log(count) against log(degree) over nodes with degree >= 1.

    Descriptive only; returns None with fewer than two distinct degrees.
    """
    deg = Counter(int(d) for d in graph.degrees(weighted=False).values() if d >= 1)
    if len(deg) < 2:
        return None
    x = np.log(np.array(sorted(deg), dtype=float))
    y = np.log(np.array([deg[d] for d in sorted(deg)], dtype=float))
    return float(np.polyfit(x, y, 1)[0])


_BLOCK_PROTOTYPES = (
    # n_peaks, mean_height, se_height, max_height, mean_interval, se_interval
    (20.0, 0.30, 0.02, 0.50, 3.0, 0.5),    # frequent, shallow, closely spaced
    (8.0, 0.40, 0.05, 0.60, 10.0, 9.0),    # moderate and irregular
    (2.0, 0.50, 0.05, 0.55, 60.0, 0.0),    # rare, widely spaced
)


def planted_profile_blocks(sizes=(276, 193, 312), seed=0, noise=0.05):
    """Peak profiles drawn around three distinct prototypes, block by block.

    User ids are ``blk<b>-<i>``; each component gets multiplicative
    log-normal noise of scale ``noise``.
    """
    rng = np.random.default_rng(seed)
    out = []
    for b, size in enumerate(sizes):
        proto = np.array(_BLOCK_PROTOTYPES[b % len(_BLOCK_PROTOTYPES)])
        for i in range(size):
            v = proto * rng.lognormal(0.0, noise, size=proto.size)
            n_peaks = max(2, int(round(v[0])))
            out.append(PeakProfile(f"blk{b}-{i:04d}", n_peaks, float(v[1]), float(v[2]),
                                   float(max(v[3], v[1])), float(v[4]), float(v[5])))
    return out
