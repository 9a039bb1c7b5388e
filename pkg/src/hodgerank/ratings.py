"""From win/draw/loss counts to link flows, and back to ranks and metrics.

Outcome counts for a pair are turned into smoothed probability estimates
(add-one prior), the no-draw win probability v is mapped through the
logistic link f = ln(1/v - 1), and the resulting flow lives on the stored
link orientation (i, j) with i < j.  Positive rating difference w_i - w_j
corresponds to f_ij < 0, i.e. the stronger item sits at the tail of a
negative flow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._validation import check_finite_vector
from .simplicial import CliqueComplex

__all__ = [
    "ProbabilityTriple",
    "ComparisonCounts",
    "map_estimate",
    "comparisons_to_cochain",
    "rank_from_ratings",
    "tau",
    "rho",
]


@dataclass(frozen=True)
class ProbabilityTriple:
    """Smoothed win/draw/loss probabilities and the no-draw win probability."""

    p: float
    q: float
    r: float
    v: float


def map_estimate(x: int, y: int, z: int) -> ProbabilityTriple:
    """Posterior-mode estimates from x wins, y draws, z losses.

    p = (x+1)/(x+y+z+3), q = (y+1)/(x+y+z+3), r = (z+1)/(x+y+z+3) and
    v = (x+1)/(x+z+2) = p/(1-q).  With no data everything is uniform.
    """
    if x < 0 or y < 0 or z < 0:
        raise ValueError("counts must be nonnegative")
    total = x + y + z + 3
    return ProbabilityTriple(
        p=(x + 1) / total,
        q=(y + 1) / total,
        r=(z + 1) / total,
        v=(x + 1) / (x + z + 2),
    )


@dataclass(frozen=True)
class ComparisonCounts:
    """Aggregated outcome counts per unordered pair, stored on i < j.

    counts[k] = (x, y, z): wins, draws, losses of pairs[k][0] against
    pairs[k][1].  The reversed orientation is implied by swapping x and z.
    """

    n_items: int
    pairs: np.ndarray
    counts: np.ndarray

    def __post_init__(self):
        pairs = np.asarray(self.pairs, dtype=np.int64)
        counts = np.asarray(self.counts, dtype=np.int64)
        if pairs.ndim != 2 or pairs.shape[1] != 2 or counts.shape != (pairs.shape[0], 3):
            raise ValueError("pairs must be (M, 2) and counts (M, 3)")
        if pairs.shape[0] == 0 or not np.any(counts.sum(axis=1) > 0):
            raise ValueError("need at least one compared pair")
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        if np.any(pairs[:, 0] >= pairs[:, 1]) or np.any(pairs < 0) or np.any(pairs >= self.n_items):
            raise ValueError("pairs must satisfy 0 <= i < j < n_items")
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "counts", counts)

    @classmethod
    def from_records(cls, records: Iterable[Sequence[int]],
                     n_items: int | None = None) -> "ComparisonCounts":
        """Accumulate (i, j, x, y, z) records; i > j rows are reoriented."""
        acc: dict[tuple[int, int], list[int]] = {}
        top = -1
        for rec in records:
            i, j, x, y, z = (int(v) for v in rec)
            if i == j:
                raise ValueError(f"self-comparison on item {i}")
            if i > j:
                i, j, x, z = j, i, z, x
            top = max(top, j)
            cell = acc.setdefault((i, j), [0, 0, 0])
            cell[0] += x
            cell[1] += y
            cell[2] += z
        if not acc:
            raise ValueError("no comparison records")
        if n_items is None:
            n_items = top + 1
        keys = sorted(acc)
        pairs = np.array(keys, dtype=np.int64).reshape(-1, 2)
        counts = np.array([acc[k] for k in keys], dtype=np.int64)
        return cls(n_items=n_items, pairs=pairs, counts=counts)


def comparisons_to_cochain(c: CliqueComplex, counts: ComparisonCounts) -> np.ndarray:
    """Link flow f with f_ij = ln(1/v_ij - 1) on every counted pair.

    Pairs of the complex that were never compared carry zero flow, which is
    exactly the no-data value of the link.  Counted pairs that are not
    links of the complex raise KeyError.
    """
    rows = c.link_rows(counts.pairs)
    x = counts.counts[:, 0].astype(float)
    z = counts.counts[:, 2].astype(float)
    v = (x + 1.0) / (x + z + 2.0)
    f = np.zeros(c.links.shape[0])
    f[rows] = np.log(1.0 / v - 1.0)
    return f


def rank_from_ratings(w) -> np.ndarray:
    """Ascending ranks: r_i counts the items (w_j, j) lexicographically below i.

    Ties in rating are broken by node index, so ranks are a permutation.
    """
    w = check_finite_vector(w, name="w")
    n = w.shape[0]
    order = np.lexsort((np.arange(n), w))
    ranks = np.empty(n, dtype=np.int64)
    ranks[order] = np.arange(n)
    return ranks


def tau(w_true, w_inferred) -> float:
    """Mean absolute rating difference."""
    w_true = check_finite_vector(w_true, name="w_true")
    w_inferred = check_finite_vector(w_inferred, length=w_true.shape[0], name="w_inferred")
    if w_true.size == 0:
        raise ValueError("empty rating vectors")
    return float(np.mean(np.abs(w_true - w_inferred)))


def rho(r_true, r_inferred) -> float:
    """Mean absolute rank difference."""
    r_true = np.asarray(r_true, dtype=np.int64)
    r_inferred = np.asarray(r_inferred, dtype=np.int64)
    if r_true.shape != r_inferred.shape or r_true.ndim != 1 or r_true.size == 0:
        raise ValueError("rank vectors must be equal-length, nonempty, 1-D")
    return float(np.mean(np.abs(r_true - r_inferred)))
