"""Linear classifiers: one-vs-rest squared-hinge SVM and multinomial
logistic regression.

Both trainers minimize an explicit objective with an analytic gradient,
driven by L-BFGS. Weights start at zero, so training is deterministic and
retraining with identical inputs yields bit-identical models. Trained
models are immutable and safe to share across threads for prediction.
"""

from dataclasses import dataclass

import numpy as np
import scipy.optimize
import scipy.sparse as sp
from scipy.special import logsumexp

from .errors import (
    DimensionMismatch,
    LengthMismatch,
    NonFiniteFeature,
    SingleClassCorpus,
)
from .features import SparseVector

KINDS = ("svc_ovr", "logreg_multinomial")


@dataclass
class TrainConfig:
    """Shared trainer knobs. ``c`` is the inverse regularization strength.

    For the SVM path ``tol`` bounds the objective's relative decrease per
    epoch; for logistic regression it bounds the gradient max-norm.
    """

    c: float = 1.0
    max_iter: int = 1000
    tol: float = 1e-4
    seed: int = 42

    def __post_init__(self):
        if self.c <= 0:
            raise ValueError("c must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


@dataclass(eq=False)
class LinearModel:
    """Per-class weight vectors and biases, plus the objective kind."""

    classes: list[str]
    weights: np.ndarray  # (n_classes, dim)
    biases: np.ndarray  # (n_classes,)
    kind: str
    dim: int

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.biases = np.asarray(self.biases, dtype=np.float64)
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if len(self.classes) < 2:
            raise ValueError("need at least two classes")
        if self.weights.shape != (len(self.classes), self.dim):
            raise ValueError("weights shape must be (n_classes, dim)")
        if self.biases.shape != (len(self.classes),):
            raise ValueError("biases length must equal n_classes")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.biases))):
            raise ValueError("weights and biases must be finite")


def _to_csr(vectors: list[SparseVector]) -> sp.csr_matrix:
    if not vectors:
        raise ValueError("no training vectors")
    dim = vectors[0].dim
    for v in vectors:
        if v.dim != dim:
            raise DimensionMismatch(f"vector dims differ: {v.dim} != {dim}")
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    np.cumsum([v.indices.size for v in vectors], out=indptr[1:])
    indices = (
        np.concatenate([v.indices for v in vectors])
        if indptr[-1]
        else np.zeros(0, dtype=np.int64)
    )
    data = (
        np.concatenate([v.values for v in vectors])
        if indptr[-1]
        else np.zeros(0, dtype=np.float64)
    )
    if not np.all(np.isfinite(data)):
        raise NonFiniteFeature("training data contains NaN or inf")
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


def squared_hinge_objective(params, x, signs, c):
    """Value and gradient of 0.5*||w||^2 + c * sum(max(0, 1 - s*(x@w + b))^2).

    ``params`` is [w..., b]; the bias is unpenalized.
    """
    w, b = params[:-1], params[-1]
    margins = 1.0 - signs * (x @ w + b)
    active = np.maximum(margins, 0.0)
    value = 0.5 * np.dot(w, w) + c * np.sum(active ** 2)
    coef = -2.0 * c * signs * active
    grad_w = w + x.T @ coef
    grad_b = np.sum(coef)
    return value, np.concatenate([grad_w, [grad_b]])


def logreg_objective(params, x, y_idx, n_classes, c):
    """Value and gradient of multinomial cross-entropy plus the L2 penalty
    ``(1/(2c)) * sum_k ||w_k||^2`` (biases unpenalized).

    ``params`` is [W.ravel()..., b...] with W of shape (n_classes, dim).
    """
    n, dim = x.shape
    w = params[: n_classes * dim].reshape(n_classes, dim)
    b = params[n_classes * dim:]
    scores = x @ w.T + b
    log_norm = logsumexp(scores, axis=1)
    value = float(np.sum(log_norm - scores[np.arange(n), y_idx]))
    value += 0.5 / c * float(np.sum(w ** 2))
    probs = np.exp(scores - log_norm[:, None])
    probs[np.arange(n), y_idx] -= 1.0
    grad_w = (x.T @ probs).T + w / c
    grad_b = probs.sum(axis=0)
    return value, np.concatenate([grad_w.ravel(), grad_b])


def _monotone_monitor(fun, args):
    # Debug-mode check that the optimizer never increases the objective.
    state = {"prev": np.inf}

    def callback(xk):
        value = fun(xk, *args)[0]
        assert value <= state["prev"] + 1e-9 * (1.0 + abs(state["prev"])), (
            f"objective increased: {state['prev']} -> {value}"
        )
        state["prev"] = value

    return callback


def _check_labels(x, y, classes=None):
    if len(x) != len(y):
        raise LengthMismatch(f"{len(x)} vectors vs {len(y)} labels")
    if classes is not None:
        classes = sorted(classes)
        unknown = set(y) - set(classes)
        if unknown:
            raise ValueError(f"labels {sorted(unknown)} not in declared classes")
        if len(classes) < 2:
            raise SingleClassCorpus("declared class list has fewer than two classes")
        return classes
    if len(x) < 2:
        raise ValueError("need at least two training examples")
    classes = sorted(set(y))
    if len(classes) < 2:
        raise SingleClassCorpus(f"all {len(y)} labels are {classes[0]!r}")
    return classes


def train_lsvc(x: list[SparseVector], y: list[str], cfg: TrainConfig,
               classes: list[str] | None = None) -> LinearModel:
    """One-vs-rest linear SVM with squared hinge loss.

    Per class k the trainer minimizes
    ``0.5*||w_k||^2 + c * sum_i max(0, 1 - s_i*(w_k.x_i + b_k))^2`` with
    s_i = +1 for class k and -1 otherwise, stopping when the objective's
    relative decrease falls below ``cfg.tol`` or after ``cfg.max_iter``
    epochs. ``classes`` widens the label universe beyond the labels seen
    in ``y``; by default the universe is derived from ``y`` and must hold
    at least two distinct labels.
    """
    classes = _check_labels(x, y, classes)
    mat = _to_csr(x)
    dim = mat.shape[1]
    y_arr = np.asarray(y, dtype=object)
    weights = np.zeros((len(classes), dim))
    biases = np.zeros(len(classes))
    for k, cls in enumerate(classes):
        signs = np.where(y_arr == cls, 1.0, -1.0)
        args = (mat, signs, cfg.c)
        result = scipy.optimize.minimize(
            squared_hinge_objective,
            np.zeros(dim + 1),
            args=args,
            jac=True,
            method="L-BFGS-B",
            callback=_monotone_monitor(squared_hinge_objective, args) if __debug__ else None,
            options={"maxiter": cfg.max_iter, "ftol": cfg.tol, "gtol": 0.0},
        )
        weights[k] = result.x[:-1]
        biases[k] = result.x[-1]
    return LinearModel(classes, weights, biases, "svc_ovr", dim)


def train_logreg(x: list[SparseVector], y: list[str], cfg: TrainConfig,
                 classes: list[str] | None = None) -> LinearModel:
    """Multinomial logistic regression with L2 penalty 1/(2c)*||W||^2.

    Stops when the gradient max-norm falls below ``cfg.tol`` or after
    ``cfg.max_iter`` iterations. ``classes`` widens the label universe as
    in ``train_lsvc``.
    """
    classes = _check_labels(x, y, classes)
    mat = _to_csr(x)
    dim = mat.shape[1]
    class_index = {cls: k for k, cls in enumerate(classes)}
    y_idx = np.array([class_index[label] for label in y], dtype=np.int64)
    n_classes = len(classes)
    args = (mat, y_idx, n_classes, cfg.c)
    result = scipy.optimize.minimize(
        logreg_objective,
        np.zeros(n_classes * dim + n_classes),
        args=args,
        jac=True,
        method="L-BFGS-B",
        callback=_monotone_monitor(logreg_objective, args) if __debug__ else None,
        options={"maxiter": cfg.max_iter, "ftol": 0.0, "gtol": cfg.tol},
    )
    weights = result.x[: n_classes * dim].reshape(n_classes, dim)
    biases = result.x[n_classes * dim:]
    return LinearModel(classes, weights, biases, "logreg_multinomial", dim)


def decision_scores(model: LinearModel, vec: SparseVector) -> np.ndarray:
    """Per-class raw scores ``w_k . v + b_k``."""
    if vec.dim != model.dim:
        raise DimensionMismatch(f"vector dim {vec.dim} != model dim {model.dim}")
    if vec.indices.size == 0:
        return model.biases.copy()
    return model.weights[:, vec.indices] @ vec.values + model.biases


def predict_proba(model: LinearModel, vec: SparseVector) -> np.ndarray:
    """Softmax view of the scores; only defined for the logreg kind."""
    if model.kind != "logreg_multinomial":
        raise ValueError("probabilities are only defined for logreg models")
    scores = decision_scores(model, vec)
    scores = scores - scores.max()
    exp = np.exp(scores)
    return exp / exp.sum()


def predict(model: LinearModel, vec: SparseVector) -> str:
    """Highest-scoring class; ties go to the lowest class index."""
    return model.classes[int(np.argmax(decision_scores(model, vec)))]


def predict_batch(model: LinearModel, vectors: list[SparseVector]) -> list[str]:
    if not vectors:
        return []
    mat = _to_csr(vectors)
    if mat.shape[1] != model.dim:
        raise DimensionMismatch(f"vector dim {mat.shape[1]} != model dim {model.dim}")
    scores = mat @ model.weights.T + model.biases
    return [model.classes[k] for k in np.argmax(scores, axis=1)]
