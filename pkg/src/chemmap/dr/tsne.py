"""Exact O(n²) t-SNE with the standard optimization schedule.

Per-row Gaussian bandwidths are found by binary search on the precision
until the row perplexity matches the target within 1e-3. Optimization
runs plain gradient descent with per-parameter gains, a two-stage
momentum schedule and early exaggeration. The reported projection is
the iterate with the best KL divergence, so the final KL never exceeds
the initial one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distances import pairwise_cosine_distances, pairwise_squared_euclidean
from .types import EmbeddingMatrix, Projection2D

_EPS = np.finfo(np.float64).eps
_SEARCH_STEPS = 200
_PERPLEXITY_TOL = 1e-3


class TsneError(ValueError):
    pass


@dataclass
class TsneConfig:
    perplexity: float
    max_epochs: int = 1000
    epochs_without_progress: int = 300
    learning_rate: float = 200.0
    early_exaggeration_factor: float = 12.0
    early_exaggeration_epochs: int = 250
    momentum_initial: float = 0.5
    momentum_final: float = 0.8
    momentum_switch_epoch: int = 250
    seed: int = 0
    metric: str = "euclidean"  # euclidean|cosine affinity input

    def __post_init__(self) -> None:
        if not self.perplexity > 1:
            raise TsneError("perplexity must exceed 1")
        if self.max_epochs < self.epochs_without_progress:
            raise TsneError("max_epochs must be at least epochs_without_progress")
        if self.learning_rate <= 0:
            raise TsneError("learning_rate must be positive")
        if self.metric not in ("euclidean", "cosine"):
            raise TsneError(f"unknown metric {self.metric!r}")

    def validate_for(self, n: int) -> None:
        """Strict dataset-size bound used by the pipeline before fitting."""
        if not self.perplexity < (n - 1) / 3:
            raise TsneError(
                f"perplexity {self.perplexity} too large for {n} compounds "
                f"(needs perplexity < {(n - 1) / 3:.2f})"
            )


def _row_perplexity(p_row: np.ndarray) -> float:
    total = p_row.sum()
    if total <= 0.0:
        return 1.0
    p = p_row / total
    nz = p[p > 0.0]
    entropy = -float(np.sum(nz * np.log(nz)))
    return float(np.exp(entropy))


def conditional_probabilities(
    distances: np.ndarray,
    perplexity: float,
    ids: tuple[str, ...] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-row conditional affinities p(j|i) with bandwidth search.

    Returns (P_conditional, achieved per-row perplexities). Raises
    TsneError naming the row if the search has not converged after 200
    bisection steps.

    A row whose off-diagonal distances are all equal and positive (a
    regular simplex) yields the uniform distribution for every
    bandwidth, so the search is skipped and the neighbor count is
    reported as the achieved perplexity. All-zero rows (points
    indistinguishable from every other) still exhaust the search and
    raise.
    """
    n = distances.shape[0]
    P = np.zeros((n, n), dtype=np.float64)
    achieved = np.zeros(n, dtype=np.float64)
    mask = ~np.eye(n, dtype=bool)
    for i in range(n):
        d = distances[i][mask[i]]
        if d.min() == d.max() and d.min() > 0.0:
            P[i][mask[i]] = 1.0 / d.size
            achieved[i] = float(d.size)
            continue
        beta, beta_min, beta_max = 1.0, -np.inf, np.inf
        row = None
        converged = False
        for _ in range(_SEARCH_STEPS):
            row = np.exp(-(d - d.min()) * beta)
            perp = _row_perplexity(row)
            diff = perp - perplexity
            if abs(diff) <= _PERPLEXITY_TOL:
                converged = True
                break
            if diff > 0:  # too flat: sharpen by raising beta
                beta_min = beta
                beta = beta * 2.0 if np.isinf(beta_max) else (beta + beta_max) / 2.0
            else:
                beta_max = beta
                beta = beta / 2.0 if np.isinf(beta_min) else (beta + beta_min) / 2.0
        if not converged:
            label = ids[i] if ids is not None else str(i)
            raise TsneError(
                f"perplexity search did not converge within {_SEARCH_STEPS} "
                f"bisection steps for row {label!r}"
            )
        total = row.sum()
        P[i][mask[i]] = row / total
        achieved[i] = _row_perplexity(row)
    return P, achieved


def joint_probabilities(p_conditional: np.ndarray) -> np.ndarray:
    """Symmetrized affinities P = (P|i + P|j) / 2n; sums to 1."""
    n = p_conditional.shape[0]
    return (p_conditional + p_conditional.T) / (2.0 * n)


def kl_and_gradient(
    P: np.ndarray, Y: np.ndarray, exaggeration: float = 1.0
) -> tuple[float, np.ndarray, np.ndarray]:
    """KL(P‖Q) of the current layout plus its analytic gradient.

    The gradient uses the (possibly exaggerated) affinities; the reported
    KL always uses the true P so the optimization trace is comparable
    across the exaggeration boundary.
    """
    num = 1.0 / (1.0 + pairwise_squared_euclidean(Y))
    np.fill_diagonal(num, 0.0)
    Q = num / max(num.sum(), _EPS)
    P_eff = P * exaggeration
    PQd = (P_eff - Q) * num
    grad = 4.0 * (np.diag(PQd.sum(axis=1)) - PQd) @ Y
    kl = float(np.sum(P * np.log(np.maximum(P, _EPS) / np.maximum(Q, _EPS))))
    # KL ≥ 0 by Gibbs; rounding can leave ~−1e-16 when Q matches P
    return max(kl, 0.0), grad, Q


def fit_tsne(matrix: EmbeddingMatrix, config: TsneConfig) -> Projection2D:
    """Fit a 2D t-SNE projection of the embedding matrix.

    Standard exact algorithm: binary-searched bandwidths, symmetrized
    affinities, Student-t low-dimensional kernel, gradient descent with
    gains, momentum switch and early exaggeration. Stops at max_epochs
    or when the best KL has not improved for epochs_without_progress
    epochs; returns the best-KL iterate.
    """
    n = matrix.n
    if config.perplexity >= n - 1:
        raise TsneError(
            f"perplexity {config.perplexity} requires more than "
            f"{n} rows (needs perplexity < n - 1)"
        )
    if config.metric == "cosine":
        distances = pairwise_cosine_distances(matrix)
    else:
        distances = pairwise_squared_euclidean(matrix.X)

    p_cond, _ = conditional_probabilities(distances, config.perplexity, matrix.ids)
    P = joint_probabilities(p_cond)

    rng = np.random.default_rng(config.seed)
    # standard schedule samples from N(0, 1e-4 I): 1e-4 is the variance
    Y = rng.normal(0.0, 1e-2, size=(n, 2))
    velocity = np.zeros_like(Y)
    gains = np.ones_like(Y)

    best_kl = np.inf
    best_Y = Y.copy()
    best_epoch = 0
    initial_kl = None

    for epoch in range(config.max_epochs):
        exaggeration = (
            config.early_exaggeration_factor
            if epoch < config.early_exaggeration_epochs
            else 1.0
        )
        kl, grad, _ = kl_and_gradient(P, Y, exaggeration)
        if initial_kl is None:
            initial_kl = kl
        if kl < best_kl:
            best_kl = kl
            best_Y = Y.copy()
            best_epoch = epoch
        elif epoch - best_epoch >= config.epochs_without_progress:
            break

        momentum = (
            config.momentum_initial
            if epoch < config.momentum_switch_epoch
            else config.momentum_final
        )
        same_sign = np.sign(grad) == np.sign(velocity)
        gains[same_sign] *= 0.8
        gains[~same_sign] += 0.2
        np.maximum(gains, 0.01, out=gains)
        velocity = momentum * velocity - config.learning_rate * (gains * grad)
        Y = Y + velocity

    return Projection2D(
        tag=matrix.tag,
        ids=matrix.ids,
        coords=best_Y,
        source="tsne",
        metadata={
            "kl": best_kl,
            "initial_kl": initial_kl,
            "perplexity": config.perplexity,
            "seed": config.seed,
            "metric": config.metric,
        },
    )
