"""Linear classifier on the squared-hinge + L2 objective.

    objective(w, b) = 1/2 * sum_i max(0, 1 - y_i * (w.x_i + b))**2 + lam * ||w||**2

The bias is not regularized. Training is deterministic full-batch gradient
descent with a backtracking (Armijo) line search, which is adequate for
desk-scale sets of pooled document vectors.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from lingaug import NOT, OFF, ConfigError, DataError

ARMIJO_C = 1e-4
MIN_STEP = 1e-20


@dataclass(frozen=True)
class LinearModel:
    w: np.ndarray
    b: float
    lam: float

    def __post_init__(self):
        w = np.asarray(self.w, dtype=np.float64)
        if w.ndim != 1:
            raise DataError("weights must be a vector")
        if not (np.all(np.isfinite(w)) and np.isfinite(self.b)):
            raise DataError("model parameters must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", float(self.b))

    @property
    def dim(self) -> int:
        return int(self.w.shape[0])

    def decision(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.float64)
        if X.shape[-1] != self.dim:
            raise DataError(f"feature dimension {X.shape[-1]} does not match model dimension {self.dim}")
        return X @ self.w + self.b

    def to_dict(self) -> dict:
        return {"dim": self.dim, "lambda": self.lam, "bias": self.b, "weights": self.w.tolist()}

    def save(self, path: str | Path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        # json writes floats with repr, which round-trips exactly
        path.write_text(json.dumps(self.to_dict()) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "LinearModel":
        path = Path(path)
        try:
            d = json.loads(path.read_text(encoding="utf-8"))
            model = cls(np.asarray(d["weights"], dtype=np.float64), d["bias"], d["lambda"])
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise DataError(f"{path}: unreadable model file ({exc})") from None
        if model.dim != d.get("dim", model.dim):
            raise DataError(f"{path}: 'dim' does not match the weight count")
        return model


@dataclass(frozen=True)
class TrainSet:
    X: np.ndarray
    y: np.ndarray  # +1 for OFF, -1 for NOT

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        y = np.asarray(self.y, dtype=np.float64)
        if X.ndim != 2 or y.ndim != 1 or X.shape[0] != y.shape[0] or X.shape[0] < 1:
            raise DataError("training set needs X of shape (n, dim) and n labels, n >= 1")
        if not np.all(np.isin(y, (-1.0, 1.0))):
            raise DataError("training labels must be +1 or -1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_labels(cls, X: np.ndarray, labels: Sequence[str]) -> "TrainSet":
        bad = [lab for lab in labels if lab not in (OFF, NOT)]
        if bad:
            raise DataError(f"unknown label {bad[0]!r}")
        return cls(X, np.array([1.0 if lab == OFF else -1.0 for lab in labels]))


def _objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, lam: float) -> float:
    slack = np.maximum(0.0, 1.0 - y * (X @ w + b))
    return 0.5 * float(slack @ slack) + lam * float(w @ w)


def _gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray, lam: float) -> tuple[np.ndarray, float]:
    slack = np.maximum(0.0, 1.0 - y * (X @ w + b))
    coef = -slack * y
    return X.T @ coef + 2.0 * lam * w, float(coef.sum())


def loss(model: LinearModel, data: TrainSet) -> float:
    if data.X.shape[1] != model.dim:
        raise DataError(f"feature dimension {data.X.shape[1]} does not match model dimension {model.dim}")
    return _objective(model.w, model.b, data.X, data.y, model.lam)


def gradient(model: LinearModel, data: TrainSet) -> tuple[np.ndarray, float]:
    """Gradient of the objective with respect to ``(w, b)``."""
    if data.X.shape[1] != model.dim:
        raise DataError(f"feature dimension {data.X.shape[1]} does not match model dimension {model.dim}")
    return _gradient(model.w, model.b, data.X, data.y, model.lam)


def train(data: TrainSet, lam: float = 1.0, max_iters: int = 10_000, tol: float = 1e-8,
          trace: list[float] | None = None) -> LinearModel:
    """Minimize the objective from ``w = 0, b = 0``.

    Stops when the relative objective change drops below ``tol`` or after
    ``max_iters`` accepted steps. If ``trace`` is given, the objective at the
    start and after every accepted step is appended to it.
    """
    if lam < 0 or not np.isfinite(lam):
        raise ConfigError(f"lambda must be a finite non-negative number, got {lam!r}")
    X, y = data.X, data.y
    if not np.all(np.isfinite(X)):
        raise DataError("training features contain NaN or Inf")
    if len(np.unique(y)) < 2:
        raise DataError("training set must contain both OFF and NOT examples")

    w, b = np.zeros(X.shape[1]), 0.0
    f = _objective(w, b, X, y, lam)
    if trace is not None:
        trace.append(f)
    step = 1.0
    for _ in range(max_iters):
        gw, gb = _gradient(w, b, X, y, lam)
        gnorm2 = float(gw @ gw) + gb * gb
        if gnorm2 == 0.0:
            break
        step = min(step * 2.0, 1e12)
        while True:
            w_new, b_new = w - step * gw, b - step * gb
            f_new = _objective(w_new, b_new, X, y, lam)
            if f_new <= f - ARMIJO_C * step * gnorm2:
                break
            step *= 0.5
            if step < MIN_STEP:
                break
        if step < MIN_STEP:
            break
        w, b = w_new, b_new
        change = abs(f - f_new) / max(abs(f), 1e-300)
        f = f_new
        if trace is not None:
            trace.append(f)
        if change < tol:
            break
    return LinearModel(w, b, lam)


def predict(model: LinearModel, x: np.ndarray) -> str:
    """OFF when the margin is >= 0 (ties go to the offensive class)."""
    return OFF if float(model.decision(np.asarray(x, dtype=np.float64))) >= 0.0 else NOT


def predict_batch(model: LinearModel, X: np.ndarray) -> list[str]:
    X = np.asarray(X, dtype=np.float64)
    if X.shape[0] == 0:
        return []
    return [OFF if m >= 0.0 else NOT for m in model.decision(X)]
