"""Norm geometry for robust linear classification.

Dual exponents, lp norms, closed-form worst-case perturbations against
linear classifiers, and empirical standard/robust loss evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InvalidNormError",
    "ZeroWeightError",
    "NormSpec",
    "LabeledPoint",
    "Dataset",
    "LinearClassifier",
    "dual_exponent",
    "lp_norm",
    "lp_distance_to_hyperplane",
    "worst_case_perturbation",
    "robust_margin_value",
    "robust_margin_values",
    "empirical_robust_loss",
    "empirical_standard_loss",
]


class InvalidNormError(ValueError):
    """Norm exponent outside the supported range."""


class ZeroWeightError(ValueError):
    """Operation undefined for an all-zero weight vector."""


def dual_exponent(p: float) -> float:
    """Exponent q with 1/p + 1/q = 1.  p = inf maps to q = 1.

    Only p > 1 is accepted; for p <= 1 the worst-case perturbation
    geometry used elsewhere is not defined.
    """
    p = float(p)
    if math.isnan(p) or p <= 1.0:
        raise InvalidNormError(f"norm exponent must satisfy p > 1, got {p!r}")
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


@dataclass(frozen=True)
class NormSpec:
    """An lp robustness metric, p in (1, inf], with its dual exponent q."""

    p: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", float(self.p))
        dual_exponent(self.p)  # validates the range

    @property
    def q(self) -> float:
        return dual_exponent(self.p)

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)

    def __repr__(self) -> str:  # "inf" reads better than float repr
        return f"NormSpec(p={'inf' if self.is_inf else self.p})"


def lp_norm(x, p: float) -> float:
    """The lp norm for p in [1, inf]; p = inf is the max absolute coordinate."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise InvalidNormError(f"lp_norm requires p >= 1, got {p!r}")
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return 0.0
    if math.isinf(p):
        return float(np.max(np.abs(x)))
    return float(np.sum(np.abs(x) ** p) ** (1.0 / p))


@dataclass(frozen=True)
class LabeledPoint:
    """A point in R^d with a binary label in {+1, -1}."""

    x: np.ndarray
    y: int

    def __post_init__(self) -> None:
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.size < 1:
            raise ValueError("point must be a nonempty 1-D vector")
        if self.y not in (-1, 1):
            raise ValueError(f"label must be +1 or -1, got {self.y!r}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", int(self.y))


class Dataset:
    """An ordered labeled sample with a common dimension, array-backed.

    ``X`` has shape (n, d) and ``y`` shape (n,) with entries in {+1, -1}.
    """

    def __init__(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("X must be a nonempty (n, d) array")
        if y.shape != (X.shape[0],):
            raise ValueError("y must have one label per row of X")
        if not np.all(np.isin(y, (-1, 1))):
            raise ValueError("labels must be +1 or -1")
        self.X = X
        self.y = y

    @classmethod
    def from_points(cls, points) -> "Dataset":
        pts = list(points)
        if not pts:
            raise ValueError("dataset must contain at least one point")
        d = pts[0].x.size
        if any(p.x.size != d for p in pts):
            raise ValueError("all points must share one dimension")
        return cls(np.stack([p.x for p in pts]), np.array([p.y for p in pts]))

    @property
    def n(self) -> int:
        return self.X.shape[0]

    @property
    def d(self) -> int:
        return self.X.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> LabeledPoint:
        return LabeledPoint(self.X[i], int(self.y[i]))

    def __iter__(self):
        for i in range(self.n):
            yield self[i]

    def subset(self, indices) -> "Dataset":
        indices = np.asarray(indices, dtype=int)
        return Dataset(self.X[indices], self.y[indices])


@dataclass(frozen=True)
class LinearClassifier:
    """Affine decision rule: predicts +1 iff <w, x> >= b."""

    w: np.ndarray
    b: float

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("weight must be a nonempty 1-D vector")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", float(self.b))

    @property
    def is_zero(self) -> bool:
        return not np.any(self.w)

    def decision_values(self, X) -> np.ndarray:
        return np.asarray(X, dtype=float) @ self.w - self.b

    def predict(self, X) -> np.ndarray:
        return np.where(self.decision_values(X) >= 0.0, 1, -1)

    def predict_point(self, x) -> int:
        return 1 if float(np.dot(self.w, np.asarray(x, dtype=float))) >= self.b else -1


def worst_case_perturbation(w, y: int, r: float, norm: NormSpec) -> np.ndarray:
    """Perturbation delta with ||delta||_p <= r minimizing y<w, delta>.

    Attains y<w, delta> = -r * ||w||_q exactly.  The optimum does not
    depend on the attacked point; the attack on x is x + delta.
    """
    w = np.asarray(w, dtype=float)
    if r < 0:
        raise ValueError(f"radius must be nonnegative, got {r}")
    if not np.any(w):
        raise ZeroWeightError("attack undefined for w = 0 (any perturbation is optimal)")
    if norm.is_inf:
        return -y * r * np.sign(w)
    q = norm.q
    dual = lp_norm(w, q)
    return -y * r * np.sign(w) * (np.abs(w) / dual) ** (q - 1.0)


def robust_margin_value(f: LinearClassifier, pt: LabeledPoint, r: float, norm: NormSpec) -> float:
    """y(<w, x> - b) - r ||w||_q.  The point is astute iff this is strictly positive."""
    if f.is_zero:
        raise ZeroWeightError("robust margin undefined for w = 0")
    return float(pt.y * (np.dot(f.w, pt.x) - f.b) - r * lp_norm(f.w, norm.q))


def robust_margin_values(f: LinearClassifier, data: Dataset, r: float, norm: NormSpec) -> np.ndarray:
    """Vectorized robust margin over a dataset."""
    if f.is_zero:
        raise ZeroWeightError("robust margin undefined for w = 0")
    return data.y * f.decision_values(data.X) - r * lp_norm(f.w, norm.q)


def empirical_robust_loss(f: LinearClassifier, data: Dataset, r: float, norm: NormSpec) -> float:
    """Fraction of points that are not astute (robust margin <= 0).

    A zero weight vector is never astute under the strict-positivity
    convention, so it scores loss 1 rather than raising.
    """
    if len(data) == 0:
        raise ValueError("empty dataset")
    if f.is_zero:
        return 1.0
    return float(np.mean(robust_margin_values(f, data, r, norm) <= 0.0))


def empirical_standard_loss(f: LinearClassifier, data: Dataset) -> float:
    """Fraction of points the decision rule mislabels."""
    if len(data) == 0:
        raise ValueError("empty dataset")
    return float(np.mean(f.predict(data.X) != data.y))


def lp_distance_to_hyperplane(x, w, c: float, norm: NormSpec) -> float:
    """lp distance from x to the hyperplane <w, z> = c, via the dual norm."""
    w = np.asarray(w, dtype=float)
    if not np.any(w):
        raise ZeroWeightError("hyperplane undefined for w = 0")
    return abs(float(np.dot(w, np.asarray(x, dtype=float))) - c) / lp_norm(w, norm.q)
