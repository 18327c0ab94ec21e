"""Parametric projection: a small feedforward network d → h1 → h2 → 2
trained to reproduce t-SNE coordinates, enabling out-of-sample placement.

Backpropagation, Adam and inverted dropout are implemented directly so
the gradients can be validated against finite differences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .types import EmbeddingMatrix, Projection2D

SERIALIZATION_VERSION = 1


class ProjectorError(ValueError):
    pass


class ProjectorDivergence(ProjectorError):
    """Training loss became non-finite; carries the last finite loss."""

    def __init__(self, epoch: int, last_finite_loss: float):
        super().__init__(
            f"training diverged at epoch {epoch}; "
            f"last finite loss {last_finite_loss:.6g}"
        )
        self.epoch = epoch
        self.last_finite_loss = last_finite_loss


def _relu(z: np.ndarray) -> np.ndarray:
    return np.maximum(z, 0.0)


def _relu_grad(z: np.ndarray, a: np.ndarray) -> np.ndarray:
    return (z > 0.0).astype(np.float64)


def _tanh(z: np.ndarray) -> np.ndarray:
    return np.tanh(z)


def _tanh_grad(z: np.ndarray, a: np.ndarray) -> np.ndarray:
    return 1.0 - a * a


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _sigmoid_grad(z: np.ndarray, a: np.ndarray) -> np.ndarray:
    return a * (1.0 - a)


ACTIVATIONS = {
    "relu": (_relu, _relu_grad),
    "tanh": (_tanh, _tanh_grad),
    "sigmoid": (_sigmoid, _sigmoid_grad),
}


@dataclass
class ProjectorConfig:
    hidden: tuple[int, int] = (100, 10)
    activation: str | tuple[str, str] = "relu"
    dropout: tuple[float, float, float] = (0.25, 0.15, 0.1)  # input, h1, h2
    learning_rate: float = 0.0001
    patience: int = 70
    min_delta: float = 0.005
    max_epochs: int = 20000
    seed: int = 0

    def __post_init__(self) -> None:
        if isinstance(self.activation, str):
            self.activation = (self.activation, self.activation)
        for name in self.activation:
            if name not in ACTIVATIONS:
                raise ProjectorError(f"unknown activation {name!r}")
        if len(self.hidden) != 2 or any(h < 1 for h in self.hidden):
            raise ProjectorError("hidden widths must be two positive integers")
        if len(self.dropout) != 3 or any(not 0 <= p < 1 for p in self.dropout):
            raise ProjectorError("dropout rates must be three values in [0, 1)")
        if self.learning_rate <= 0:
            raise ProjectorError("learning_rate must be positive")
        if self.patience < 0 or self.max_epochs < 1:
            raise ProjectorError("patience/max_epochs out of range")


@dataclass
class TrainingReport:
    epochs_run: int
    final_loss: float
    pearson_per_axis: tuple[float, float]
    stopped_early: bool


@dataclass
class ParametricProjector:
    """Feedforward network with linear 2-unit output."""

    input_width: int
    hidden: tuple[int, int]
    activations: tuple[str, str]
    weights: list[np.ndarray]  # (d,h1), (h1,h2), (h2,2)
    biases: list[np.ndarray]
    training_report: TrainingReport | None = None
    config: ProjectorConfig | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        shapes = [
            (self.input_width, self.hidden[0]),
            (self.hidden[0], self.hidden[1]),
            (self.hidden[1], 2),
        ]
        for W, expected in zip(self.weights, shapes):
            if W.shape != expected:
                raise ProjectorError(f"weight shape {W.shape} != {expected}")
            if not np.isfinite(W).all():
                raise ProjectorError("non-finite weights")
        for b, expected in zip(self.biases, shapes):
            if b.shape != (expected[1],):
                raise ProjectorError("bias shape mismatch")
            if not np.isfinite(b).all():
                raise ProjectorError("non-finite biases")

    # --- forward -------------------------------------------------------

    def forward(self, X: np.ndarray) -> np.ndarray:
        """Deterministic forward pass (no dropout)."""
        X = np.atleast_2d(np.asarray(X, dtype=np.float64))
        if X.shape[1] != self.input_width:
            raise ProjectorError(
                f"input width {X.shape[1]} does not match "
                f"projector width {self.input_width}"
            )
        if not np.isfinite(X).all():
            raise ProjectorError("input contains NaN or infinite values")
        a = X
        for layer in range(2):
            act, _ = ACTIVATIONS[self.activations[layer]]
            a = act(a @ self.weights[layer] + self.biases[layer])
        return a @ self.weights[2] + self.biases[2]

    # --- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        payload = {
            "version": SERIALIZATION_VERSION,
            "input_width": self.input_width,
            "hidden": list(self.hidden),
            "activations": list(self.activations),
            "weights": [W.tolist() for W in self.weights],  # row-major
            "biases": [b.tolist() for b in self.biases],
        }
        if self.training_report is not None:
            payload["training_report"] = {
                "epochs_run": self.training_report.epochs_run,
                "final_loss": self.training_report.final_loss,
                "pearson_per_axis": list(self.training_report.pearson_per_axis),
                "stopped_early": self.training_report.stopped_early,
            }
        return payload

    @classmethod
    def from_dict(cls, payload: dict) -> "ParametricProjector":
        version = payload.get("version")
        if version != SERIALIZATION_VERSION:
            raise ProjectorError(
                f"unsupported projector version: expected "
                f"{SERIALIZATION_VERSION}, found {version}"
            )
        report = None
        if "training_report" in payload:
            r = payload["training_report"]
            report = TrainingReport(
                epochs_run=r["epochs_run"],
                final_loss=r["final_loss"],
                pearson_per_axis=tuple(r["pearson_per_axis"]),
                stopped_early=r["stopped_early"],
            )
        return cls(
            input_width=payload["input_width"],
            hidden=tuple(payload["hidden"]),
            activations=tuple(payload["activations"]),
            weights=[np.asarray(W, dtype=np.float64) for W in payload["weights"]],
            biases=[np.asarray(b, dtype=np.float64) for b in payload["biases"]],
            training_report=report,
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()))

    @classmethod
    def load(cls, path: str | Path) -> "ParametricProjector":
        return cls.from_dict(json.loads(Path(path).read_text()))


def project(projector: ParametricProjector, row: np.ndarray) -> np.ndarray:
    """Place one feature vector; deterministic, dropout disabled."""
    row = np.asarray(row, dtype=np.float64)
    if row.ndim != 1:
        raise ProjectorError("project expects a single feature vector")
    return projector.forward(row[None, :])[0]


# --- training ------------------------------------------------------------


def _forward_cached(
    projector: ParametricProjector,
    X: np.ndarray,
    masks: list[np.ndarray] | None,
) -> tuple[np.ndarray, list]:
    """Forward pass keeping intermediates for backprop. `masks` are
    inverted-dropout multipliers for (input, hidden1, hidden2)."""
    a = X if masks is None else X * masks[0]
    cache = [("input", None, None, a)]
    for layer in range(2):
        act, _ = ACTIVATIONS[projector.activations[layer]]
        z = a @ projector.weights[layer] + projector.biases[layer]
        h = act(z)
        dropped = h if masks is None else h * masks[layer + 1]
        cache.append((projector.activations[layer], z, h, dropped))
        a = dropped
    out = a @ projector.weights[2] + projector.biases[2]
    return out, cache


def loss_and_gradients(
    projector: ParametricProjector,
    X: np.ndarray,
    targets: np.ndarray,
    masks: list[np.ndarray] | None = None,
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Mean-squared-error loss and gradients for every weight and bias.

    Loss is averaged over all n×2 output entries. Exposed so tests can
    compare the analytic gradients against finite differences.
    """
    out, cache = _forward_cached(projector, X, masks)
    diff = out - targets
    n_terms = diff.size
    loss = float(np.sum(diff * diff) / n_terms)

    grad_ws: list[np.ndarray] = [None] * 3  # type: ignore[list-item]
    grad_bs: list[np.ndarray] = [None] * 3  # type: ignore[list-item]

    delta = 2.0 * diff / n_terms
    grad_ws[2] = cache[2][3].T @ delta
    grad_bs[2] = delta.sum(axis=0)

    upstream = delta @ projector.weights[2].T
    for layer in (1, 0):
        name, z, h, _ = cache[layer + 1]
        if masks is not None:
            upstream = upstream * masks[layer + 1]
        _, act_grad = ACTIVATIONS[name]
        dz = upstream * act_grad(z, h)
        prev_a = cache[layer][3]
        grad_ws[layer] = prev_a.T @ dz
        grad_bs[layer] = dz.sum(axis=0)
        if layer > 0:
            upstream = dz @ projector.weights[layer].T
    return loss, grad_ws, grad_bs


def _init_projector(d: int, config: ProjectorConfig, rng: np.random.Generator) -> ParametricProjector:
    widths = [d, config.hidden[0], config.hidden[1], 2]
    weights = []
    biases = []
    for i in range(3):
        fan_in, fan_out = widths[i], widths[i + 1]
        if i < 2 and config.activation[i] == "relu":
            scale = np.sqrt(2.0 / fan_in)
        else:
            scale = np.sqrt(1.0 / fan_in)
        weights.append(rng.normal(0.0, scale, size=(fan_in, fan_out)))
        biases.append(np.zeros(fan_out))
    return ParametricProjector(
        input_width=d,
        hidden=tuple(config.hidden),
        activations=tuple(config.activation),
        weights=weights,
        biases=biases,
        config=config,
    )


def train_projector(
    matrix: EmbeddingMatrix,
    target: Projection2D,
    config: ProjectorConfig | None = None,
) -> ParametricProjector:
    """Train a parametric projector to reproduce the target projection.

    Full-batch Adam on mean squared error, inverted dropout re-sampled
    every epoch, early stopping on the dropout-free loss with patience
    and min-delta semantics, best weights restored. The returned
    projector carries a TrainingReport with per-axis Pearson correlation
    between its predictions and the targets.
    """
    config = config or ProjectorConfig()
    if matrix.ids != target.ids:
        raise ProjectorError("matrix and target projection are not row-aligned")
    X = matrix.X
    T = target.coords
    rng = np.random.default_rng(config.seed)
    projector = _init_projector(matrix.d, config, rng)

    params = projector.weights + projector.biases
    adam_m = [np.zeros_like(p) for p in params]
    adam_v = [np.zeros_like(p) for p in params]
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    step = 0

    widths = (matrix.d, config.hidden[0], config.hidden[1])
    best_loss = np.inf
    best_weights = [W.copy() for W in projector.weights]
    best_biases = [b.copy() for b in projector.biases]
    wait = 0
    last_finite = np.inf
    epochs_run = 0
    stopped_early = False

    for epoch in range(config.max_epochs):
        epochs_run = epoch + 1
        if any(rate > 0 for rate in config.dropout):
            masks = []
            for rate, width in zip(config.dropout, widths):
                if rate > 0:
                    keep = rng.random((X.shape[0], width)) >= rate
                    masks.append(keep.astype(np.float64) / (1.0 - rate))
                else:
                    masks.append(np.ones((X.shape[0], width)))
        else:
            masks = None

        loss, grad_ws, grad_bs = loss_and_gradients(projector, X, T, masks)
        if not np.isfinite(loss):
            raise ProjectorDivergence(epoch, float(last_finite))
        last_finite = loss

        step += 1
        grads = grad_ws + grad_bs
        for p, g, m, v in zip(params, grads, adam_m, adam_v):
            m *= beta1
            m += (1 - beta1) * g
            v *= beta2
            v += (1 - beta2) * (g * g)
            m_hat = m / (1 - beta1**step)
            v_hat = v / (1 - beta2**step)
            p -= config.learning_rate * m_hat / (np.sqrt(v_hat) + eps)

        eval_pred = projector.forward(X)
        eval_loss = float(np.mean((eval_pred - T) ** 2))
        if not np.isfinite(eval_loss):
            raise ProjectorDivergence(epoch, float(last_finite))
        if eval_loss < best_loss - config.min_delta:
            best_loss = eval_loss
            best_weights = [W.copy() for W in projector.weights]
            best_biases = [b.copy() for b in projector.biases]
            wait = 0
        else:
            wait += 1
            if wait > config.patience:
                stopped_early = True
                break

    projector.weights = best_weights
    projector.biases = best_biases
    predictions = projector.forward(X)
    final_loss = float(np.mean((predictions - T) ** 2))
    pearson = tuple(
        _pearson(predictions[:, axis], T[:, axis]) for axis in range(2)
    )
    projector.training_report = TrainingReport(
        epochs_run=epochs_run,
        final_loss=final_loss,
        pearson_per_axis=pearson,  # type: ignore[arg-type]
        stopped_early=stopped_early,
    )
    return projector


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    n = x.size
    sx, sy = x.sum(), y.sum()
    sxy = float(x @ y)
    sxx, syy = float(x @ x), float(y @ y)
    denom = np.sqrt((n * sxx - sx * sx) * (n * syy - sy * sy))
    if denom == 0.0:
        return 0.0
    return float((n * sxy - sx * sy) / denom)
