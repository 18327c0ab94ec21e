"""Parametric projector: training, gradients, serialization, inference."""

import numpy as np
import pytest

from chemmap.dr import (
    EmbeddingMatrix,
    ParametricProjector,
    Projection2D,
    ProjectorConfig,
    ProjectorDivergence,
    ProjectorError,
    loss_and_gradients,
    project,
    train_projector,
)


def _tiny_projector(seed=0, d=4, hidden=(5, 3), activations=("relu", "tanh")):
    rng = np.random.default_rng(seed)
    weights = [
        rng.normal(0, 0.5, size=(d, hidden[0])),
        rng.normal(0, 0.5, size=(hidden[0], hidden[1])),
        rng.normal(0, 0.5, size=(hidden[1], 2)),
    ]
    biases = [rng.normal(0, 0.1, size=hidden[0]),
              rng.normal(0, 0.1, size=hidden[1]),
              rng.normal(0, 0.1, size=2)]
    return ParametricProjector(d, hidden, activations, weights, biases)


def test_zero_weight_network_outputs_bias():
    p = _tiny_projector()
    p.weights = [np.zeros_like(W) for W in p.weights]
    p.biases = [np.zeros_like(b) for b in p.biases]
    p.biases[2] = np.array([3.25, -1.5])
    rng = np.random.default_rng(1)
    for _ in range(5):
        out = project(p, rng.normal(size=4))
        assert np.array_equal(out, np.array([3.25, -1.5]))


def test_projection_deterministic():
    p = _tiny_projector(seed=3)
    row = np.linspace(-1, 1, 4)
    assert np.array_equal(project(p, row), project(p, row))


def test_width_mismatch_rejected():
    p = _tiny_projector()
    with pytest.raises(ProjectorError, match="width"):
        project(p, np.ones(7))


def test_nan_input_rejected():
    p = _tiny_projector()
    row = np.ones(4)
    row[2] = np.nan
    with pytest.raises(ProjectorError):
        project(p, row)


@pytest.mark.parametrize("activations", [("relu", "relu"), ("tanh", "tanh"),
                                         ("sigmoid", "sigmoid"),
                                         ("relu", "sigmoid")])
def test_backprop_matches_finite_differences(activations):
    rng = np.random.default_rng(17)
    p = _tiny_projector(seed=11, activations=activations)
    X = rng.normal(size=(6, 4))
    T = rng.normal(size=(6, 2))

    def loss_at() -> float:
        return loss_and_gradients(p, X, T)[0]

    _, grad_ws, grad_bs = loss_and_gradients(p, X, T)
    h = 1e-6
    for params, grads in ((p.weights, grad_ws), (p.biases, grad_bs)):
        for param, grad in zip(params, grads):
            flat = param.reshape(-1)
            flat_grad = grad.reshape(-1)
            for idx in range(flat.size):
                original = flat[idx]
                flat[idx] = original + h
                up = loss_at()
                flat[idx] = original - h
                down = loss_at()
                flat[idx] = original
                numeric = (up - down) / (2 * h)
                scale = max(abs(numeric), abs(flat_grad[idx]), 1e-8)
                assert abs(flat_grad[idx] - numeric) / scale <= 1e-4


def test_linear_target_recovered():
    # a fixed linear map of a 2-feature input is representable exactly:
    # training correlation should reach 0.999+ per axis with dropout off
    rng = np.random.default_rng(5)
    X = rng.normal(size=(60, 2))
    A = np.array([[2.0, -1.0], [0.5, 1.5]])
    T = X @ A
    matrix = EmbeddingMatrix("descriptors", tuple(f"m{i}" for i in range(60)), X)
    target = Projection2D("descriptors", matrix.ids, T, source="tsne")
    config = ProjectorConfig(
        hidden=(16, 8),
        activation="relu",
        dropout=(0.0, 0.0, 0.0),
        learning_rate=0.005,
        patience=500,
        min_delta=0.0,
        max_epochs=6000,
        seed=2,
    )
    projector = train_projector(matrix, target, config)
    report = projector.training_report
    assert report is not None
    assert report.pearson_per_axis[0] >= 0.999
    assert report.pearson_per_axis[1] >= 0.999


def test_training_with_dropout_runs_and_reports():
    rng = np.random.default_rng(8)
    X = rng.normal(size=(40, 6))
    T = rng.normal(size=(40, 2))
    matrix = EmbeddingMatrix("ecfp", tuple(f"m{i}" for i in range(40)), X)
    target = Projection2D("ecfp", matrix.ids, T)
    config = ProjectorConfig(hidden=(10, 5), dropout=(0.25, 0.15, 0.1),
                             learning_rate=0.005, patience=30, min_delta=0.001,
                             max_epochs=500, seed=1)
    projector = train_projector(matrix, target, config)
    assert projector.training_report.epochs_run <= 500
    assert np.isfinite(projector.training_report.final_loss)


def test_training_determinism():
    rng = np.random.default_rng(21)
    X = rng.normal(size=(30, 5))
    T = rng.normal(size=(30, 2))
    matrix = EmbeddingMatrix("path", tuple(f"m{i}" for i in range(30)), X)
    target = Projection2D("path", matrix.ids, T)
    config = ProjectorConfig(hidden=(8, 4), dropout=(0.1, 0.1, 0.1),
                             learning_rate=0.002, patience=20, min_delta=0.0,
                             max_epochs=200, seed=9)
    a = train_projector(matrix, target, config)
    b = train_projector(matrix, target, config)
    for Wa, Wb in zip(a.weights, b.weights):
        assert np.array_equal(Wa, Wb)


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_divergence_reports_last_finite_loss():
    # Adam steps are bounded by the learning rate, so the rate itself has
    # to push a layer product past float range to force divergence
    rng = np.random.default_rng(2)
    X = rng.normal(size=(20, 3)) * 1e3
    T = rng.normal(size=(20, 2)) * 1e3
    matrix = EmbeddingMatrix("ecfp", tuple(f"m{i}" for i in range(20)), X)
    target = Projection2D("ecfp", matrix.ids, T)
    config = ProjectorConfig(hidden=(6, 4), dropout=(0, 0, 0),
                             learning_rate=1e160, patience=50, min_delta=0.0,
                             max_epochs=50, seed=0)
    with pytest.raises(ProjectorDivergence) as exc:
        train_projector(matrix, target, config)
    assert np.isfinite(exc.value.last_finite_loss)


def test_serialization_bit_exact_roundtrip(tmp_path):
    p = _tiny_projector(seed=13)
    path = tmp_path / "projector.json"
    p.save(path)
    loaded = ParametricProjector.load(path)
    for Wa, Wb in zip(p.weights, loaded.weights):
        assert np.array_equal(Wa, Wb)
    for ba, bb in zip(p.biases, loaded.biases):
        assert np.array_equal(ba, bb)
    assert loaded.activations == p.activations
    rng = np.random.default_rng(4)
    row = rng.normal(size=4)
    assert np.array_equal(project(p, row), project(loaded, row))


def test_serialization_version_checked(tmp_path):
    p = _tiny_projector()
    payload = p.to_dict()
    payload["version"] = 99
    import json

    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    with pytest.raises(ProjectorError, match="version"):
        ParametricProjector.load(path)


def test_row_alignment_required():
    rng = np.random.default_rng(1)
    X = rng.normal(size=(10, 3))
    matrix = EmbeddingMatrix("ecfp", tuple(f"m{i}" for i in range(10)), X)
    target = Projection2D("ecfp", tuple(f"x{i}" for i in range(10)),
                          rng.normal(size=(10, 2)))
    with pytest.raises(ProjectorError, match="aligned"):
        train_projector(matrix, target, ProjectorConfig(max_epochs=5, patience=1))
