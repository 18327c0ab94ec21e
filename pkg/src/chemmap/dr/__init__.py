"""Dimensionality reduction: t-SNE, parametric projection, trust scores."""

from .distances import (
    pairwise_cosine_distances,
    pairwise_euclidean,
    pairwise_squared_euclidean,
)
from .projector import (
    ParametricProjector,
    ProjectorConfig,
    ProjectorDivergence,
    ProjectorError,
    TrainingReport,
    loss_and_gradients,
    project,
    train_projector,
)
from .trust import (
    TrustScores,
    compute_trust_scores,
    kendall_tau_a,
    kendall_trust,
    pearson_trust,
)
from .tsne import (
    TsneConfig,
    TsneError,
    conditional_probabilities,
    fit_tsne,
    joint_probabilities,
    kl_and_gradient,
)
from .types import EmbeddingMatrix, Projection2D

__all__ = [
    "EmbeddingMatrix",
    "ParametricProjector",
    "Projection2D",
    "ProjectorConfig",
    "ProjectorDivergence",
    "ProjectorError",
    "TrainingReport",
    "TrustScores",
    "TsneConfig",
    "TsneError",
    "compute_trust_scores",
    "conditional_probabilities",
    "fit_tsne",
    "joint_probabilities",
    "kendall_tau_a",
    "kendall_trust",
    "kl_and_gradient",
    "loss_and_gradients",
    "pairwise_cosine_distances",
    "pairwise_euclidean",
    "pairwise_squared_euclidean",
    "pearson_trust",
    "project",
    "train_projector",
]
