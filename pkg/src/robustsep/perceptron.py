"""Adversarial perceptron trainers.

Three variants: a through-origin single-pass trainer, a randomized-cutoff
wrapper around it, and a lifted trainer that handles an offset by
appending a scale coordinate and translating the data.  All trainers
attack each point with the closed-form dual-norm perturbation before the
usual perceptron update test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import Dataset, LinearClassifier, NormSpec, lp_norm, worst_case_perturbation

__all__ = [
    "TrainReport",
    "adversarial_perceptron",
    "adversarial_perceptron_until_stable",
    "modified_adversarial_perceptron",
    "general_adversarial_perceptron",
    "lift",
    "l2_diameter",
]


@dataclass
class TrainReport:
    """Outcome of one training run.

    ``mistakes`` counts weight updates and ``cutoff_k`` the number of
    point visits, so mistakes <= cutoff_k always.  ``order`` is the
    visit order over the training set when the trainer permutes it.
    ``updates`` holds the vectors added to the weight on each update
    when recording was requested.
    """

    classifier: LinearClassifier
    mistakes: int
    cutoff_k: int
    lifted: bool
    order: np.ndarray | None = None
    updates: list[np.ndarray] | None = field(default=None, repr=False)


def lift(x, last: float) -> np.ndarray:
    """Append one coordinate holding ``last`` to a vector."""
    x = np.asarray(x, dtype=float)
    return np.concatenate([x, [float(last)]])


def l2_diameter(X) -> float:
    """Max pairwise l2 distance over the rows of X."""
    X = np.asarray(X, dtype=float)
    sq = np.sum(X * X, axis=1)
    d2 = sq[:, None] + sq[None, :] - 2.0 * (X @ X.T)
    return float(np.sqrt(max(0.0, float(np.max(d2)))))


def _attacked(w: np.ndarray, x: np.ndarray, y: int, r: float, norm: NormSpec) -> np.ndarray:
    # w = 0 leaves the attack undefined; the point is used unperturbed.
    if not np.any(w):
        return x
    return x + worst_case_perturbation(w, y, r, norm)


def _single_pass(w, X, ys, r, norm, updates=None):
    mistakes = 0
    for i in range(X.shape[0]):
        x = X[i]
        y = int(ys[i])
        z = _attacked(w, x, y, r, norm)
        if y * float(w @ z) <= 0.0:
            w = w + y * z
            mistakes += 1
            if updates is not None:
                updates.append(y * z)
    return w, mistakes


def adversarial_perceptron(
    S: Dataset, r: float, norm: NormSpec, record_updates: bool = False
) -> TrainReport:
    """Single pass over S in the given order, attacking before each update test.

    Each point is replaced by its worst-case perturbation against the
    current weights; if the perturbed point is scored at or below zero
    the standard perceptron update fires on it.  Returns the
    through-origin classifier f_{w, 0} and the update count.
    Deterministic for a fixed input order.
    """
    updates: list[np.ndarray] | None = [] if record_updates else None
    w = np.zeros(S.d)
    w, mistakes = _single_pass(w, S.X, S.y, r, norm, updates)
    return TrainReport(LinearClassifier(w, 0.0), mistakes, cutoff_k=len(S), lifted=False, updates=updates)


def adversarial_perceptron_until_stable(
    S: Dataset, r: float, norm: NormSpec, max_epochs: int = 50, record_updates: bool = False
) -> TrainReport:
    """Repeat passes until one makes no update (or max_epochs is hit).

    The total update count obeys the same mistake bound as the single
    pass regardless of the pass structure.
    """
    updates: list[np.ndarray] | None = [] if record_updates else None
    w = np.zeros(S.d)
    total = 0
    consumed = 0
    for _ in range(max_epochs):
        w, m = _single_pass(w, S.X, S.y, r, norm, updates)
        total += m
        consumed += len(S)
        if m == 0:
            break
    return TrainReport(LinearClassifier(w, 0.0), total, cutoff_k=consumed, lifted=False, updates=updates)


def modified_adversarial_perceptron(
    S: Dataset, r: float, norm: NormSpec, rng: np.random.Generator, record_updates: bool = False
) -> TrainReport:
    """Draw k uniformly from {0, ..., n} and train on the first k points only."""
    n = len(S)
    k = int(rng.integers(0, n + 1))
    updates: list[np.ndarray] | None = [] if record_updates else None
    w = np.zeros(S.d)
    w, mistakes = _single_pass(w, S.X[:k], S.y[:k], r, norm, updates)
    return TrainReport(LinearClassifier(w, 0.0), mistakes, cutoff_k=k, lifted=False, updates=updates)


def general_adversarial_perceptron(
    S: Dataset,
    r: float,
    norm: NormSpec,
    rng: np.random.Generator,
    permutation=None,
    cutoff: int | None = None,
    run_to_convergence: bool = False,
    max_epochs: int = 50,
) -> TrainReport:
    """Offset-capable trainer: translate by the first point, lift, train through the origin.

    Every point is translated by x_1 and extended with the sample
    diameter as an extra coordinate.  The update condition compares the
    lifted score against r times the dual norm of the first d weight
    coordinates, which is the attacked-score condition written without
    materializing the attack; the weight update then adds the
    closed-form perturbation (zero-padded in the lifted coordinate).
    The visit order is a random permutation truncated at k drawn
    uniformly from {1, ..., n}.  The returned classifier folds the
    translation and the lifted offset back into input coordinates.

    With ``run_to_convergence`` the cutoff is ignored and full passes
    repeat until one makes no update (or max_epochs).  Degenerate
    unseparable inputs terminate normally; non-convergence shows up as
    a saturated mistake count, never an exception.
    """
    n = len(S)
    d = S.d
    q = norm.q
    anchor = S.X[0].copy()
    Xp = S.X - anchor
    R_S = l2_diameter(S.X)

    if permutation is None:
        perm = rng.permutation(n)
    else:
        perm = np.asarray(permutation, dtype=int)
        if sorted(perm.tolist()) != list(range(n)):
            raise ValueError("permutation must reorder range(n)")
    if run_to_convergence:
        k = n
    elif cutoff is not None:
        if not 0 <= cutoff <= n:
            raise ValueError("cutoff must lie in [0, n]")
        k = int(cutoff)
    else:
        k = int(rng.integers(1, n + 1))

    w = np.zeros(d + 1)
    mistakes = 0
    epochs = max_epochs if run_to_convergence else 1
    consumed = 0
    for _ in range(epochs):
        updated_this_pass = 0
        for idx in perm[:k]:
            xt = Xp[idx]
            yt = int(S.y[idx])
            consumed += 1
            score = yt * (float(w[:d] @ xt) + w[d] * R_S)
            if score <= r * lp_norm(w[:d], q):
                if np.any(w[:d]):
                    zp = worst_case_perturbation(w[:d], 1, r, norm)
                    w[:d] += yt * xt + zp
                else:
                    w[:d] += yt * xt
                w[d] += yt * R_S
                mistakes += 1
                updated_this_pass += 1
        if not run_to_convergence or updated_this_pass == 0:
            break

    w_star = w[:d].copy()
    offset = float(w_star @ anchor) - w[d] * R_S
    return TrainReport(
        LinearClassifier(w_star, offset), mistakes, cutoff_k=consumed, lifted=True, order=perm
    )
