"""Seeded synthetic distributions with known separation geometry.

The two-slab family is mirrored about the hyperplane x1 = 0, so it is
linearly separated through the origin and every separation constant
(robust margin, attacked-point radius) is available in closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Dataset, LinearClassifier, NormSpec

__all__ = ["TwoSlabDistribution"]


@dataclass(frozen=True)
class TwoSlabDistribution:
    """Uniform distribution over two parallel axis-aligned slabs.

    The positive class occupies x1 in [gap, gap + thickness], the
    negative class its mirror image, and the remaining d - 1
    coordinates are uniform in [-width, width].  For a robustness
    radius r < gap the distribution is linearly r-separated through
    the origin with robust margin exactly gap - r: inflating either
    slab by an lp ball of radius r moves its inner face to |x1| =
    gap - r, and by mirror symmetry no hyperplane beats x1 = 0.
    """

    d: int
    r: float
    norm: NormSpec
    gap: float
    thickness: float = 0.2
    width: float = 0.5

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be at least 1")
        if not 0.0 <= self.r < self.gap:
            raise ValueError("need 0 <= r < gap for r-separation")
        if self.thickness <= 0 or self.width < 0:
            raise ValueError("thickness must be positive and width nonnegative")

    def sample(self, n: int, rng: np.random.Generator) -> Dataset:
        if n < 1:
            raise ValueError("need n >= 1")
        labels = 2 * rng.integers(0, 2, size=n) - 1
        x1 = (self.gap + self.thickness * rng.random(n)) * labels
        X = np.empty((n, self.d))
        X[:, 0] = x1
        if self.d > 1:
            X[:, 1:] = self.width * (2.0 * rng.random((n, self.d - 1)) - 1.0)
        return Dataset(X, labels)

    @property
    def robust_margin(self) -> float:
        return self.gap - self.r

    @property
    def separator(self) -> LinearClassifier:
        w = np.zeros(self.d)
        w[0] = 1.0
        return LinearClassifier(w, 0.0)

    def support_radius(self) -> float:
        """Max l2 norm over the (uninflated) support."""
        return math.sqrt((self.gap + self.thickness) ** 2 + (self.d - 1) * self.width**2)

    def perturbation_l2_bound(self) -> float:
        """Max l2 norm of any lp perturbation of norm <= r."""
        half = 0.5 - (0.0 if self.norm.is_inf else 1.0 / self.norm.p)
        return self.r * self.d ** max(0.0, half)

    def attacked_radius_bound(self) -> float:
        """Upper bound R on the l2 norm of any r-attacked support point."""
        return self.support_radius() + self.perturbation_l2_bound()

    def mistake_bound(self) -> float:
        """R^2 / gamma_r^2 for the bound constants of this construction."""
        return self.attacked_radius_bound() ** 2 / self.robust_margin**2

    def inflated_diameter_bound(self) -> float:
        """Upper bound on the l2 diameter of the r-inflated support."""
        across = 2.0 * (self.gap + self.thickness)
        box = 2.0 * self.width
        return math.sqrt(across**2 + (self.d - 1) * box**2) + 2.0 * self.perturbation_l2_bound()

    def robust_aspect_ratio_bound(self) -> float:
        return self.inflated_diameter_bound() / self.robust_margin
