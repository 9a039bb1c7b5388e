"""The four pairing-network topologies used by the disorder experiments.

Node labels carry meaning: lattice nodes are enumerated along the lattice,
preferential-attachment nodes from oldest to newest, and small-world nodes
in ring order.  The true ratings of the experiment harness increase with
the node index, so these conventions fix which links are "long range" in
rating space.

All generators are pure functions of their explicit rng, and every sample
is a simple graph.  ``sample`` derives a per-sample rng stream from the
spec so that independent samples can be drawn concurrently in any order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import float_bits, make_rng, stream_id
from .simplicial import Graph

__all__ = [
    "MODELS",
    "MODEL_CODES",
    "NetworkSpec",
    "lattice1d",
    "erdos_renyi",
    "barabasi_albert",
    "watts_strogatz",
    "generate",
    "sample",
    "sample_stream",
]

MODELS = ("lattice1d", "erdos_renyi", "barabasi_albert", "watts_strogatz")

# stable codes feeding rng stream derivation; never renumber
MODEL_CODES = {"lattice1d": 1, "erdos_renyi": 2, "barabasi_albert": 3, "watts_strogatz": 4}

WS_HALF_NEIGHBORS = 2  # ring degree 4, fixed by the experiment design
_WS_REWIRE_ATTEMPTS = 1000


@dataclass(frozen=True)
class NetworkSpec:
    """One sampling law: model name, node count, model parameter, base seed.

    theta means: neighbors per node z (lattice1d), mean degree (erdos_renyi),
    links per new node q (barabasi_albert), rewiring probability p
    (watts_strogatz).
    """

    model: str
    n: int
    theta: float
    seed: int

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 2:
            raise ValueError("need at least two nodes")
        t = self.theta
        if not np.isfinite(t):
            raise ValueError("theta must be finite")
        if self.model == "lattice1d":
            z = int(t)
            if z != t or z < 2 or z % 2:
                raise ValueError("lattice neighbor count must be a positive even integer")
            if z >= self.n and not (self.n == 2 and z == 2):
                raise ValueError("lattice neighbor count must be smaller than n")
        elif self.model == "erdos_renyi":
            if not 0.0 < t <= self.n - 1:
                raise ValueError("mean degree must lie in (0, n-1]")
        elif self.model == "barabasi_albert":
            q = int(t)
            if q != t or q < 1 or q + 1 > self.n:
                raise ValueError("links per new node must be an integer in [1, n-1]")
        else:
            if not 0.0 <= t <= 1.0:
                raise ValueError("rewiring probability must lie in [0, 1]")
            if self.n < 2 * WS_HALF_NEIGHBORS + 1:
                raise ValueError("ring construction needs at least 5 nodes")


def lattice1d(n: int, z: int) -> Graph:
    """Non-periodic 1-D lattice: link {i, j} iff 0 < |i - j| <= z/2."""
    half = z // 2
    chunks = [np.stack([np.arange(n - d), np.arange(d, n)], axis=1)
              for d in range(1, half + 1) if d < n]
    edges = np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)
    return Graph.from_edges(n, edges)


def erdos_renyi(n: int, mean_degree: float, rng: np.random.Generator) -> Graph:
    """Each unordered pair drawn independently with p = mean_degree/(n-1)."""
    p_edge = mean_degree / (n - 1)
    rows, cols = np.triu_indices(n, k=1)
    mask = rng.random(rows.shape[0]) < p_edge
    edges = np.stack([rows[mask], cols[mask]], axis=1)
    return Graph.from_edges(n, edges)


def barabasi_albert(n: int, q: int, rng: np.random.Generator) -> Graph:
    """Growth with linear preferential attachment from a complete seed.

    Nodes 0..q form a clique; each later node attaches q distinct links to
    earlier nodes picked proportionally to their degree, degrees held fixed
    while one node picks.  Total edge count is q(q+1)/2 + q(n-q-1).
    """
    seed_rows, seed_cols = np.triu_indices(q + 1, k=1)
    edges = [np.stack([seed_rows, seed_cols], axis=1)]
    degree = np.zeros(n, dtype=np.int64)
    degree[: q + 1] = q
    for new in range(q + 1, n):
        weights = np.cumsum(degree[:new], dtype=np.float64)
        total = weights[-1]
        picked: set[int] = set()
        while len(picked) < q:
            target = int(np.searchsorted(weights, rng.random() * total, side="right"))
            picked.add(target)
        targets = np.fromiter(picked, dtype=np.int64, count=q)
        degree[targets] += 1
        degree[new] = q
        edges.append(np.stack([targets, np.full(q, new, dtype=np.int64)], axis=1))
    return Graph.from_edges(n, np.concatenate(edges))


def watts_strogatz(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Ring of degree 4 with each original link rewired with probability p.

    Original links are visited in a fixed order (distance-1 ring edges by
    node, then distance-2); a rewired link keeps its near endpoint and moves
    the far one to a uniform node, redrawing on self-loops and duplicates.
    The link count 2n is preserved exactly: a link whose redraws all fail
    stays in place.
    """
    present = set()
    for d in range(1, WS_HALF_NEIGHBORS + 1):
        for i in range(n):
            a, b = i, (i + d) % n
            present.add((min(a, b), max(a, b)))
    for d in range(1, WS_HALF_NEIGHBORS + 1):
        for i in range(n):
            if rng.random() >= p:
                continue
            old = (min(i, (i + d) % n), max(i, (i + d) % n))
            for _ in range(_WS_REWIRE_ATTEMPTS):
                t = int(rng.integers(n))
                if t == i:
                    continue
                new = (min(i, t), max(i, t))
                if new in present:
                    continue
                present.remove(old)
                present.add(new)
                break
    edges = np.array(sorted(present), dtype=np.int64)
    return Graph.from_edges(n, edges)


def generate(model: str, n: int, theta: float, rng: np.random.Generator) -> Graph:
    """Dispatch to the model named by `model`; theta as in NetworkSpec."""
    if model == "lattice1d":
        return lattice1d(n, int(theta))
    if model == "erdos_renyi":
        return erdos_renyi(n, theta, rng)
    if model == "barabasi_albert":
        return barabasi_albert(n, int(theta), rng)
    if model == "watts_strogatz":
        return watts_strogatz(n, theta, rng)
    raise ValueError(f"unknown model {model!r}")


def sample_stream(spec: NetworkSpec, sample_index: int) -> int:
    """The rng stream id of one sample: mixes model, n, theta bits, index."""
    return stream_id(MODEL_CODES[spec.model], spec.n, float_bits(float(spec.theta)), sample_index)


def sample(spec: NetworkSpec, sample_index: int) -> Graph:
    """Draw sample number `sample_index` of the spec, schedule-independent."""
    rng = make_rng(spec.seed, sample_stream(spec, sample_index))
    return generate(spec.model, spec.n, spec.theta, rng)
