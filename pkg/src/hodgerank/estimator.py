"""Scikit-learn style estimator wrapping the comparison-to-rating pipeline."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .decomposition import rating_from_cochain
from .ratings import ComparisonCounts, comparisons_to_cochain, rank_from_ratings
from .simplicial import Graph, build_clique_complex
from .solver import SolverConfig

__all__ = ["HodgeRanker"]


class HodgeRanker(BaseEstimator):
    """Rate and rank items from pairwise win/draw/loss records.

    Each training row is (i, j, wins, draws, losses) for the ordered pair
    i over j; repeated and reversed rows accumulate.  Fitting builds the
    comparison network, maps counts to a link flow through the logistic
    link, and solves for the rating potential, exposing the full flow
    decomposition alongside the ratings.

    Attributes after fit: ratings_ (min 0), ranks_ (ascending, ties by
    index), decomposition_, complex_, n_items_.
    """

    def __init__(self, n_items: int | None = None, atol: float = 1e-10,
                 btol: float = 1e-10, max_iter: int | None = None):
        self.n_items = n_items
        self.atol = atol
        self.btol = btol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        records = np.asarray(X)
        if records.ndim != 2 or records.shape[1] != 5:
            raise ValueError("X must be (n_records, 5): i, j, wins, draws, losses")
        counts = ComparisonCounts.from_records(records.astype(np.int64),
                                               n_items=self.n_items)
        g = Graph.from_edges(counts.n_items, counts.pairs)
        c = build_clique_complex(g)
        f = comparisons_to_cochain(c, counts)
        cfg = SolverConfig(atol=self.atol, btol=self.btol, max_iter=self.max_iter)
        ratings, dec = rating_from_cochain(c, f, cfg)
        self.n_items_ = counts.n_items
        self.complex_ = c
        self.decomposition_ = dec
        self.ratings_ = ratings
        self.ranks_ = rank_from_ratings(ratings)
        return self

    def predict_proba(self, pairs) -> np.ndarray:
        """P(i beats j | no draw) for each row (i, j), from fitted ratings."""
        check_is_fitted(self, "ratings_")
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if np.any(pairs < 0) or np.any(pairs >= self.n_items_):
            raise ValueError("item index out of range")
        diff = self.ratings_[pairs[:, 1]] - self.ratings_[pairs[:, 0]]
        return 1.0 / (1.0 + np.exp(diff))

    def predict(self, pairs) -> np.ndarray:
        """Predicted winner per pair; exact rating ties go to the higher rank."""
        check_is_fitted(self, "ratings_")
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        proba = self.predict_proba(pairs)
        winners = np.where(proba > 0.5, pairs[:, 0], pairs[:, 1])
        ties = proba == 0.5
        if np.any(ties):
            ranks = self.ranks_
            winners[ties] = np.where(
                ranks[pairs[ties, 0]] > ranks[pairs[ties, 1]],
                pairs[ties, 0], pairs[ties, 1])
        return winners
