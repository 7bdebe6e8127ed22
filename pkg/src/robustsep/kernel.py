"""Kernel classifiers, input-space attacks, and the adversarial kernel perceptron.

Kernel classifiers are linear rules in the embedding space of a
similarity function, evaluated without materializing the embedding.
Attacks on the linear kernel reduce to the closed-form dual-norm
perturbation; nonlinear kernels use projected gradient descent with
random restarts over the l2 or linf ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .geometry import (
    Dataset,
    InvalidNormError,
    LabeledPoint,
    NormSpec,
    worst_case_perturbation,
)

__all__ = [
    "UnsupportedNormError",
    "LinearKernel",
    "PolynomialKernel",
    "RBFKernel",
    "KernelSpec",
    "kernel_eval",
    "KernelClassifier",
    "kernel_decision_value",
    "kernel_attack",
    "adversarial_kernel_perceptron",
]


class UnsupportedNormError(InvalidNormError):
    """The attack solver has no projection for this norm exponent."""


@dataclass(frozen=True)
class LinearKernel:
    def matrix(self, A, B) -> np.ndarray:
        return np.atleast_2d(A) @ np.atleast_2d(B).T

    def gradient(self, Z, x) -> np.ndarray:
        """d K(z_i, x) / dx, one row per center z_i."""
        return np.atleast_2d(Z).copy()


@dataclass(frozen=True)
class PolynomialKernel:
    degree: int
    offset: float = 0.0

    def __post_init__(self) -> None:
        if int(self.degree) != self.degree or self.degree < 1:
            raise ValueError("degree must be an integer >= 1")
        if self.offset < 0:
            raise ValueError("offset must be nonnegative")
        object.__setattr__(self, "degree", int(self.degree))
        object.__setattr__(self, "offset", float(self.offset))

    def matrix(self, A, B) -> np.ndarray:
        return (np.atleast_2d(A) @ np.atleast_2d(B).T + self.offset) ** self.degree

    def gradient(self, Z, x) -> np.ndarray:
        Z = np.atleast_2d(Z)
        base = Z @ np.asarray(x, dtype=float) + self.offset
        return (self.degree * base ** (self.degree - 1))[:, None] * Z


@dataclass(frozen=True)
class RBFKernel:
    bandwidth: float

    def __post_init__(self) -> None:
        if self.bandwidth <= 0:
            raise ValueError("bandwidth must be positive")
        object.__setattr__(self, "bandwidth", float(self.bandwidth))

    def matrix(self, A, B) -> np.ndarray:
        A = np.atleast_2d(A)
        B = np.atleast_2d(B)
        sq = (
            np.sum(A * A, axis=1)[:, None]
            + np.sum(B * B, axis=1)[None, :]
            - 2.0 * (A @ B.T)
        )
        return np.exp(-np.maximum(sq, 0.0) / (2.0 * self.bandwidth**2))

    def gradient(self, Z, x) -> np.ndarray:
        Z = np.atleast_2d(Z)
        x = np.asarray(x, dtype=float)
        vals = self.matrix(Z, x[None, :])[:, 0]
        return vals[:, None] * (Z - x) / self.bandwidth**2


KernelSpec = Union[LinearKernel, PolynomialKernel, RBFKernel]


def kernel_eval(kernel: KernelSpec, x1, x2) -> float:
    """Similarity of two points under a kernel; dimensions must match."""
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    if x1.shape != x2.shape or x1.ndim != 1:
        raise ValueError("kernel arguments must be 1-D vectors of equal dimension")
    return float(kernel.matrix(x1[None, :], x2[None, :])[0, 0])


class KernelClassifier:
    """Support-set classifier: sign of sum_i alpha_i y_i K(z_i, x).

    Predicts +1 on ties (value >= 0).  An empty support evaluates to 0
    everywhere.
    """

    def __init__(self, kernel: KernelSpec, d: int, Z=None, labels=None, alpha=None):
        self.kernel = kernel
        self.d = int(d)
        self.Z = np.zeros((0, d)) if Z is None else np.asarray(Z, dtype=float).reshape(-1, d)
        m = self.Z.shape[0]
        self.labels = np.zeros(0, dtype=int) if labels is None else np.asarray(labels, dtype=int)
        self.alpha = np.ones(m) if alpha is None else np.asarray(alpha, dtype=float)
        if self.labels.shape != (m,) or self.alpha.shape != (m,):
            raise ValueError("support, labels and alpha must have matching lengths")
        if m and not np.all(np.isin(self.labels, (-1, 1))):
            raise ValueError("support labels must be +1 or -1")

    @property
    def support(self) -> list[tuple[np.ndarray, int]]:
        return [(self.Z[i].copy(), int(self.labels[i])) for i in range(self.Z.shape[0])]

    @property
    def support_size(self) -> int:
        return self.Z.shape[0]

    def decision_values(self, X) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.support_size == 0:
            return np.zeros(X.shape[0])
        return (self.alpha * self.labels) @ self.kernel.matrix(self.Z, X)

    def decision_value(self, x) -> float:
        return float(self.decision_values(np.asarray(x, dtype=float)[None, :])[0])

    def predict(self, X) -> np.ndarray:
        return np.where(self.decision_values(X) >= 0.0, 1, -1)

    def gradient(self, x) -> np.ndarray:
        """Input-space gradient of the decision value at x."""
        if self.support_size == 0:
            return np.zeros(self.d)
        return (self.alpha * self.labels) @ self.kernel.gradient(self.Z, x)

    def with_support_point(self, z, y: int) -> "KernelClassifier":
        Z = np.vstack([self.Z, np.asarray(z, dtype=float)[None, :]])
        labels = np.concatenate([self.labels, [int(y)]])
        # Coefficients stay all-ones; repeats are separate support entries.
        return KernelClassifier(self.kernel, self.d, Z, labels, np.ones(Z.shape[0]))

    def explicit_weight(self) -> np.ndarray:
        if not isinstance(self.kernel, LinearKernel):
            raise TypeError("explicit weight exists only for the linear kernel")
        if self.support_size == 0:
            return np.zeros(self.d)
        return (self.alpha * self.labels) @ self.Z


def kernel_decision_value(f: KernelClassifier, x) -> float:
    return f.decision_value(x)


def _project_ball(z: np.ndarray, center: np.ndarray, r: float, norm: NormSpec) -> np.ndarray:
    delta = z - center
    if norm.is_inf:
        return center + np.clip(delta, -r, r)
    nrm = float(np.linalg.norm(delta))
    if nrm > r:
        delta = delta * (r / nrm)
    return center + delta


def _restart_points(center: np.ndarray, r: float, norm: NormSpec, count: int, rng) -> list[np.ndarray]:
    d = center.size
    pts = []
    for _ in range(count):
        if norm.is_inf:
            pts.append(center + r * (2.0 * rng.random(d) - 1.0))
        else:
            direction = rng.standard_normal(d)
            nrm = float(np.linalg.norm(direction))
            if nrm == 0.0:
                pts.append(center.copy())
                continue
            radius = r * rng.random() ** (1.0 / d)
            pts.append(center + radius * direction / nrm)
    return pts


def kernel_attack(
    f: KernelClassifier,
    pt: LabeledPoint,
    r: float,
    norm: NormSpec,
    steps: int = 100,
    restarts: int = 5,
    restart_seed: int = 0,
) -> np.ndarray:
    """Approximate minimizer of y * f(z) over the lp ball around pt.x.

    The linear kernel is solved exactly for any p > 1 by the dual-norm
    perturbation.  Other kernels run projected gradient descent (step
    r/10, ``steps`` iterations) from the ball center plus ``restarts``
    random interior starts, keeping the best iterate seen; ties break
    on the earliest candidate, so the result is deterministic.  Only
    p in {2, inf} has a closed-form projection; other exponents raise
    rather than silently approximating.
    """
    x = pt.x
    if r < 0:
        raise ValueError("radius must be nonnegative")
    if r == 0.0 or f.support_size == 0:
        return x.copy()
    if isinstance(f.kernel, LinearKernel):
        w = f.explicit_weight()
        if not np.any(w):
            return x.copy()
        return x + worst_case_perturbation(w, pt.y, r, norm)
    if not (norm.is_inf or norm.p == 2.0):
        raise UnsupportedNormError(
            f"projected-gradient attack supports p in {{2, inf}} only, got p={norm.p}"
        )

    rng = np.random.default_rng(restart_seed)
    starts = [x.copy()] + _restart_points(x, r, norm, restarts, rng)
    step = r / 10.0
    best = x.copy()
    best_val = pt.y * f.decision_value(x)
    for z0 in starts:
        z = _project_ball(z0, x, r, norm)
        val = pt.y * f.decision_value(z)
        if val < best_val:
            best, best_val = z.copy(), val
        for _ in range(steps):
            g = pt.y * f.gradient(z)
            z = _project_ball(z - step * g, x, r, norm)
            val = pt.y * f.decision_value(z)
            if val < best_val:
                best, best_val = z.copy(), val
    return best


def adversarial_kernel_perceptron(
    S: Dataset,
    kernel: KernelSpec,
    r: float,
    norm: NormSpec,
    attack_steps: int = 100,
    attack_restarts: int = 5,
    restart_seed: int = 0,
) -> KernelClassifier:
    """Single pass; on each mistake the attacked point joins the support.

    Coefficients are frozen at all-ones; a repeated offender simply
    appears as another support entry.
    """
    if len(S) == 0:
        raise ValueError("empty dataset")
    f = KernelClassifier(kernel, S.d)
    for i in range(len(S)):
        pt = LabeledPoint(S.X[i], int(S.y[i]))
        z = kernel_attack(
            f, pt, r, norm, steps=attack_steps, restarts=attack_restarts, restart_seed=restart_seed
        )
        if pt.y * f.decision_value(z) <= 0.0:
            f = f.with_support_point(z, pt.y)
    return f
