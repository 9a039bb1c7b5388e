"""Sigmoid-primitive fits of rank-error curves and power-law scaling fits.

The rank error as a function of disorder strength is modeled by the
primitive of a logistic sigmoid,

    m(sigma) = (A/B) * ln(1 + exp(B * (sigma - sigma_c))),

which vanishes for sigma << sigma_c and grows linearly with slope A for
sigma >> sigma_c.  The curvature m'' peaks at sigma_c with height A*B/4;
that height doubles as the transition sharpness and as the objective for
choosing how far into the saturated regime the fit window should reach.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

__all__ = [
    "Curve",
    "SigmoidFit",
    "PowerLawFit",
    "NoTransitionError",
    "FitConvergenceError",
    "softplus_primitive",
    "fit_sigmoid_primitive",
    "select_range_and_fit",
    "fit_power_law",
]

_FLAT_CURVE_EPS = 1e-12
_PENALTY = 1e30


class NoTransitionError(ValueError):
    """Curve carries no rise to fit (flat within numerical zero)."""


class FitConvergenceError(RuntimeError):
    """No optimizer restart converged."""


@dataclass(frozen=True)
class Curve:
    """Measured values with standard errors on a strictly increasing grid."""

    sigma: np.ndarray
    value: np.ndarray
    sem: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        value = np.asarray(self.value, dtype=float)
        sem = np.asarray(self.sem, dtype=float)
        if not (sigma.shape == value.shape == sem.shape) or sigma.ndim != 1:
            raise ValueError("sigma, value, sem must be 1-D and equally long")
        if sigma.shape[0] < 2:
            raise ValueError("need at least two points")
        if not np.all(np.isfinite(sigma)) or not np.all(np.isfinite(value)) \
                or not np.all(np.isfinite(sem)):
            raise ValueError("curve entries must be finite")
        if np.any(np.diff(sigma) <= 0):
            raise ValueError("sigma grid must be strictly increasing")
        if np.any(sem < 0):
            raise ValueError("sems must be nonnegative")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "sem", sem)

    def __len__(self) -> int:
        return self.sigma.shape[0]


@dataclass(frozen=True)
class SigmoidFit:
    A: float
    dA: float
    B: float
    dB: float
    sigma_c: float
    dsigma_c: float
    sigma_star: float
    sigma_star2: float
    dpeak: float
    residual_sse: float
    n_points: int

    @property
    def peak(self) -> float:
        """Maximum curvature of the fitted model, A*B/4, reached at sigma_c."""
        return self.A * self.B / 4.0


@dataclass(frozen=True)
class PowerLawFit:
    exponent: float
    prefactor: float
    dexponent: float


def softplus_primitive(sigma, A: float, B: float, sigma_c: float):
    """(A/B) * ln(1 + exp(B*(sigma - sigma_c))), stable at both tails."""
    t = B * (np.asarray(sigma, dtype=float) - sigma_c)
    return (A / B) * np.logaddexp(0.0, t)


def _weights(sem: np.ndarray) -> np.ndarray:
    w = np.ones_like(sem)
    positive = sem > 0
    w[positive] = 1.0 / sem[positive] ** 2
    return w


def _initial_guesses(sigma: np.ndarray, value: np.ndarray) -> list[np.ndarray]:
    a0 = (value[-1] - value[-3]) / (sigma[-1] - sigma[-3])
    if not np.isfinite(a0) or a0 <= 0:
        a0 = max(value.max(), 1.0) / max(sigma[-1] - sigma[0], 1.0)
    rises = np.diff(value) / np.diff(sigma)
    sc0 = sigma[int(np.argmax(rises))]
    starts = [np.array([a0, b0, sc0]) for b0 in (0.5, 2.0, 8.0)]
    rng = np.random.default_rng(0)
    for _ in range(2):
        jitter = rng.uniform(0.5, 1.5, size=2)
        starts.append(np.array([a0 * jitter[0], 2.0 * jitter[1],
                                sc0 + rng.uniform(-0.5, 0.5)]))
    return starts


def _gauss_newton_errors(sigma, value, weights, params):
    """Covariance from the finite-difference J^T W J curvature at the optimum."""
    n, p = sigma.shape[0], 3
    jac = np.empty((n, p))
    for k in range(p):
        h = 1e-6 * max(1.0, abs(params[k]))
        hi = params.copy()
        lo = params.copy()
        hi[k] += h
        lo[k] -= h
        jac[:, k] = (softplus_primitive(sigma, *hi) - softplus_primitive(sigma, *lo)) / (2 * h)
    residual = value - softplus_primitive(sigma, *params)
    chi2 = float(np.sum(weights * residual**2))
    curvature = jac.T @ (weights[:, None] * jac)
    dof = max(n - p, 1)
    try:
        cov = np.linalg.inv(curvature) * (chi2 / dof)
    except np.linalg.LinAlgError:
        cov = np.linalg.pinv(curvature) * (chi2 / dof)
    return cov, chi2


def fit_sigmoid_primitive(curve: Curve, fit_range: tuple[float, float]) -> SigmoidFit:
    """Weighted least squares of the sigmoid primitive over [sigma*, sigma**].

    Weights are 1/sem^2 (unit weight where sem = 0).  Parameter errors come
    from the Gauss-Newton curvature scaled by the residual variance, and the
    peak error folds in the A-B covariance.
    """
    lo, hi = float(fit_range[0]), float(fit_range[1])
    if not lo < hi:
        raise ValueError("empty fit range")
    mask = (curve.sigma >= lo) & (curve.sigma <= hi)
    sigma = curve.sigma[mask]
    value = curve.value[mask]
    sem = curve.sem[mask]
    if sigma.shape[0] < 6:
        raise ValueError("need at least six points in the fit range")
    if np.any(value < 0):
        raise ValueError("curve values must be nonnegative")
    if np.all(value < _FLAT_CURVE_EPS):
        raise NoTransitionError("curve is flat; nothing to fit")
    weights = _weights(sem)

    def objective(params):
        a, b, sc = params
        if b <= 1e-12:
            return _PENALTY
        residual = value - softplus_primitive(sigma, a, b, sc)
        return float(np.sum(weights * residual**2))

    best = None
    for start in _initial_guesses(sigma, value):
        result = minimize(objective, start, method="Nelder-Mead",
                          options={"maxiter": 4000, "xatol": 1e-10, "fatol": 1e-12})
        if not result.success or result.x[1] <= 1e-12:
            continue
        if best is None or result.fun < best.fun:
            best = result
    if best is None:
        raise FitConvergenceError("no optimizer start converged")

    a, b, sc = (float(v) for v in best.x)
    cov, chi2 = _gauss_newton_errors(sigma, value, weights, best.x)
    da, db, dsc = (float(np.sqrt(max(cov[k, k], 0.0))) for k in range(3))
    # variance of A*B/4 by linear propagation: (1/16) v^T cov v with v = (B, A)
    v = np.array([b, a])
    dpeak = float(np.sqrt(max(v @ cov[:2, :2] @ v, 0.0)) / 4.0)
    return SigmoidFit(A=a, dA=da, B=b, dB=db, sigma_c=sc, dsigma_c=dsc,
                      sigma_star=lo, sigma_star2=hi, dpeak=dpeak,
                      residual_sse=chi2, n_points=int(sigma.shape[0]))


def select_range_and_fit(curve: Curve) -> SigmoidFit:
    """Scan the upper end of the fit window, keep the sharpest transition.

    The lower end is pinned at the curve's smallest sigma; every grid point
    leaving at least six points in the window is tried as the upper end, and
    the converged fit with the largest peak A*B/4 wins (ties go to the
    smaller window).
    """
    if len(curve) < 8:
        raise ValueError("need at least eight points to scan the fit range")
    lo = float(curve.sigma[0])
    best: SigmoidFit | None = None
    saw_flat = False
    for end in range(5, len(curve)):
        hi = float(curve.sigma[end])
        try:
            fit = fit_sigmoid_primitive(curve, (lo, hi))
        except NoTransitionError:
            saw_flat = True
            continue
        except FitConvergenceError:
            continue
        if best is None or fit.peak > best.peak:
            best = fit
    if best is None:
        if saw_flat:
            raise NoTransitionError("curve is flat; nothing to fit")
        raise FitConvergenceError("no fit converged at any range endpoint")
    return best


def fit_power_law(xs, ys) -> PowerLawFit:
    """Least squares of ln y on ln x: y ~ prefactor * x**exponent.

    With exactly two points the line interpolates and dexponent is NaN.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1 or xs.shape[0] < 2:
        raise ValueError("need equally long 1-D data with at least two points")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("power-law fit needs positive data")
    lx = np.log(xs)
    ly = np.log(ys)
    n = lx.shape[0]
    vx = lx - lx.mean()
    slope = float(vx @ (ly - ly.mean()) / (vx @ vx))
    intercept = float(ly.mean() - slope * lx.mean())
    if n == 2:
        dslope = float("nan")
    else:
        sse = float(np.sum((ly - slope * lx - intercept) ** 2))
        dslope = float(np.sqrt(sse / (n - 2) / (vx @ vx)))
    return PowerLawFit(exponent=slope, prefactor=float(np.exp(intercept)), dexponent=dslope)
