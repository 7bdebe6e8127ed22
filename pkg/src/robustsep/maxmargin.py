"""Approximate hard-margin SVM via dual coordinate ascent.

Pairs of dual variables move together to preserve the equality
constraint sum(alpha * y) = 0, selecting the maximal violating pair
each step.  Adequate at desk scale; convergence is detected through
the KKT violation gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Dataset, LinearClassifier

__all__ = ["SvmSolution", "hard_margin_svm"]


@dataclass
class SvmSolution:
    """A solved (or capped) hard-margin problem.

    When ``converged`` the classifier separates the training set with
    l2 margin at least ``achieved_margin``.
    """

    classifier: LinearClassifier
    achieved_margin: float
    iterations: int
    converged: bool


def hard_margin_svm(S: Dataset, tolerance: float = 1e-6, max_iter: int = 1_000_000) -> SvmSolution:
    """Maximize the l2 margin of a separating hyperplane over S.

    Separability is the caller's responsibility; a non-separable or
    ill-conditioned sample exhausts the iteration cap and is reported
    with converged=False rather than raised.  The stopping gap is
    measured in functional-margin units where support vectors score 1,
    so ``tolerance`` bounds the relative margin shortfall.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    X = S.X
    y = S.y.astype(float)
    n = len(S)

    if np.all(y == y[0]):
        # Single-class sample: any constant rule of that sign separates.
        w = np.zeros(S.d)
        return SvmSolution(LinearClassifier(w, -float(y[0])), math.inf, 0, True)

    K = X @ X.T
    Q = K * np.outer(y, y)
    alpha = np.zeros(n)
    grad = -np.ones(n)  # gradient of the dual objective 0.5 a'Qa - 1'a

    pos = y > 0
    neg = ~pos
    it = 0
    converged = False
    m_up = m_low = 0.0
    for it in range(1, max_iter + 1):
        crit = -y * grad
        up = pos | (alpha > 0)
        low = neg | (alpha > 0)
        iu = int(np.argmax(np.where(up, crit, -np.inf)))
        il = int(np.argmin(np.where(low, crit, np.inf)))
        m_up = crit[iu]
        m_low = crit[il]
        if m_up - m_low <= tolerance:
            converged = True
            break
        eta = K[iu, iu] + K[il, il] - 2.0 * K[iu, il]
        step = (m_up - m_low) / max(eta, 1e-18)
        if y[iu] < 0:
            step = min(step, alpha[iu])
        if y[il] > 0:
            step = min(step, alpha[il])
        alpha[iu] += y[iu] * step
        alpha[il] -= y[il] * step
        grad += step * (y[iu] * Q[:, iu] - y[il] * Q[:, il])

    w = (alpha * y) @ X
    b = -(m_up + m_low) / 2.0
    wnorm = float(np.linalg.norm(w))
    if wnorm > 0:
        margins = y * (X @ w - b)
        achieved = float(np.min(margins)) / wnorm
    else:
        achieved = 0.0
    return SvmSolution(LinearClassifier(w, b), achieved, it, converged)
