"""Minimum-norm least squares for sparse rectangular systems.

``min_norm_lsq`` returns, among all minimizers of ||Ax - b||, the one of
smallest Euclidean norm (the pseudoinverse solution).  It is backed by
Golub-Kahan bidiagonalization (LSMR), whose iterates stay in the row space
of A, so the limit carries no kernel component even when A is singular.
The incidence matrices this package feeds it are well scaled (+-1 entries),
so no preconditioning is applied and the solver stays auditable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import lsmr

from ._validation import check_finite_vector

__all__ = ["SolverConfig", "SolveReport", "ConvergenceError", "min_norm_lsq"]


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and iteration budget for the min-norm solver.

    max_iter defaults to max_iter_factor * max(m, n) when not set.
    """

    atol: float = 1e-10
    btol: float = 1e-10
    max_iter: int | None = None
    max_iter_factor: int = 8

    def iteration_cap(self, shape: tuple[int, int]) -> int:
        if self.max_iter is not None:
            return self.max_iter
        return self.max_iter_factor * max(max(shape), 1)


@dataclass(frozen=True)
class SolveReport:
    iterations: int
    residual_norm: float
    solution_norm: float
    converged: bool


class ConvergenceError(RuntimeError):
    """Solver hit its iteration cap; carries the offending report."""

    def __init__(self, message: str, report: SolveReport):
        super().__init__(message)
        self.report = report


def min_norm_lsq(A, b, atol: float = 1e-10, btol: float = 1e-10,
                 max_iter: int | None = None) -> tuple[np.ndarray, SolveReport]:
    """Minimum-norm solution of min ||Ax - b|| for sparse (or dense) A.

    Convergence is reported, not enforced: the report's ``converged`` flag
    is False only when the iteration cap was hit, and the caller decides
    whether that is fatal.  The residual norm in the report is recomputed
    exactly from the returned solution.
    """
    if atol <= 0 or btol <= 0:
        raise ValueError("tolerances must be positive")
    A = sparse.csr_array(A)
    m, n = A.shape
    b = check_finite_vector(b, length=m, name="b")
    if A.nnz and not np.all(np.isfinite(A.data)):
        raise ValueError("A contains non-finite entries")
    cap = max_iter if max_iter is not None else 8 * max(m, n, 1)

    if n == 0 or m == 0 or A.nnz == 0:
        # kernel is everything: the min-norm minimizer is zero
        x = np.zeros(n)
        return x, SolveReport(0, float(np.linalg.norm(b)), 0.0, True)

    x, istop, itn, *_ = lsmr(A, b, atol=atol, btol=btol, conlim=0, maxiter=cap)
    residual = float(np.linalg.norm(b - A @ x))
    report = SolveReport(int(itn), residual, float(np.linalg.norm(x)), istop != 7)
    return x, report
