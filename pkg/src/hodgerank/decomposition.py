"""Hodge decomposition of link flows and the rating solve built on it.

A 1-cochain f on a 3-clique complex splits uniquely into

    f = g + s + h

with g = A1 @ w (gradient of a node potential), s = A2.T @ u (curl of a
triangle potential), and h harmonic (curl-free and divergence-free).  Both
potentials are taken as minimum-norm least-squares solutions, so the split
is well defined even on complexes with nontrivial homology.  Ratings are
the gradient potential w shifted so its minimum is zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_finite_vector
from .simplicial import CliqueComplex, incidence_1, incidence_2
from .solver import ConvergenceError, SolverConfig, SolveReport, min_norm_lsq

__all__ = [
    "HodgeDecomposition",
    "hodge_decompose",
    "rating_from_cochain",
    "graph_laplacian_apply",
    "helmholtzian_apply",
]


@dataclass(frozen=True)
class HodgeDecomposition:
    """Components of a link flow and the potentials that generate them.

    curl_residual = ||A2 @ harmonic|| and div_residual = ||A1.T @ harmonic||
    measure how harmonic the leftover really is; both stay near zero when
    the solves converged.
    """

    gradient: np.ndarray
    solenoidal: np.ndarray
    harmonic: np.ndarray
    potential: np.ndarray
    curl_potential: np.ndarray
    norm_f: float
    norm_g: float
    norm_s: float
    norm_h: float
    curl_residual: float
    div_residual: float
    grad_report: SolveReport
    curl_report: SolveReport

    @property
    def orthogonality_defect(self) -> float:
        """|  ||f||^2 - (||g||^2 + ||s||^2 + ||h||^2)  | / ||f||^2, 0 for f = 0."""
        total = self.norm_f**2
        if total == 0.0:
            return 0.0
        parts = self.norm_g**2 + self.norm_s**2 + self.norm_h**2
        return abs(total - parts) / total


def hodge_decompose(c: CliqueComplex, f, config: SolverConfig | None = None) -> HodgeDecomposition:
    """Split the link flow f into gradient, solenoidal, and harmonic parts.

    Raises ConvergenceError (with the offending report attached) if either
    potential solve exhausts its iteration budget.
    """
    if config is None:
        config = SolverConfig()
    kappa1 = c.links.shape[0]
    f = check_finite_vector(f, length=kappa1, name="f")
    a1 = incidence_1(c)
    a2 = incidence_2(c)

    w, grad_report = min_norm_lsq(a1, f, atol=config.atol, btol=config.btol,
                                  max_iter=config.iteration_cap(a1.shape))
    if not grad_report.converged:
        raise ConvergenceError("gradient potential solve hit the iteration cap", grad_report)
    a2t = a2.T
    u, curl_report = min_norm_lsq(a2t, f, atol=config.atol, btol=config.btol,
                                  max_iter=config.iteration_cap((kappa1, a2.shape[0])))
    if not curl_report.converged:
        raise ConvergenceError("curl potential solve hit the iteration cap", curl_report)

    g = a1 @ w
    s = a2t @ u
    h = f - g - s
    return HodgeDecomposition(
        gradient=g,
        solenoidal=s,
        harmonic=h,
        potential=w,
        curl_potential=u,
        norm_f=float(np.linalg.norm(f)),
        norm_g=float(np.linalg.norm(g)),
        norm_s=float(np.linalg.norm(s)),
        norm_h=float(np.linalg.norm(h)),
        curl_residual=float(np.linalg.norm(a2 @ h)),
        div_residual=float(np.linalg.norm(a1.T @ h)),
        grad_report=grad_report,
        curl_report=curl_report,
    )


def rating_from_cochain(c: CliqueComplex, f, config: SolverConfig | None = None,
                        ) -> tuple[np.ndarray, HodgeDecomposition]:
    """Ratings from a link flow: the gradient potential, shifted to min 0."""
    dec = hodge_decompose(c, f, config)
    w = dec.potential
    if w.size:
        w = w - w.min()
    return w, dec


def graph_laplacian_apply(c: CliqueComplex, w) -> np.ndarray:
    """Apply the graph Laplacian A1.T @ A1 without forming the product."""
    w = check_finite_vector(w, length=c.n_nodes, name="w")
    a1 = incidence_1(c)
    return a1.T @ (a1 @ w)


def helmholtzian_apply(c: CliqueComplex, f) -> np.ndarray:
    """Apply the graph Helmholtzian A1 @ A1.T + A2.T @ A2 without forming it."""
    f = check_finite_vector(f, length=c.links.shape[0], name="f")
    a1 = incidence_1(c)
    a2 = incidence_2(c)
    return a1 @ (a1.T @ f) + a2.T @ (a2 @ f)
