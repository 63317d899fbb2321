"""Integer labeling of sphere points and completeness of vertex sets.

A point ``s`` gets the largest (or smallest, depending on the tie-break)
index ``i`` such that ``(Ts)_i + eps <= s_i``.  The slack ``eps`` is the
one documented robustness parameter of the whole method: a point found
with this labeling decays with margin at least ``eps`` in every component.
``None`` means no index qualifies; during a homotopy run that is treated
as a hard failure of the covering hypothesis at the current slack.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .maps import MonotoneMap
from .order import as_point

__all__ = [
    "label_eps",
    "omega_membership",
    "LabeledVertexSet",
    "is_complete",
]


def label_eps(T: MonotoneMap, s, eps: float, tie_break: str = "max") -> int | None:
    """Label of ``s``: extremal index i (1-based) with ``(Ts)_i + eps <= s_i``.

    Returns None when no index qualifies.  ``tie_break`` selects the max
    (default) or min qualifying index; both are valid pivoting strategies.
    """
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    if tie_break not in ("max", "min"):
        raise ValueError(f"tie_break must be 'max' or 'min', got {tie_break!r}")
    s = as_point(s, dim=T.dimension)
    Ts = T(s)
    qualifying = np.where(Ts + eps <= s)[0]
    if qualifying.size == 0:
        return None
    idx = qualifying[-1] if tie_break == "max" else qualifying[0]
    return int(idx) + 1


def omega_membership(T: MonotoneMap, s) -> set[int]:
    """Indices i (1-based) with ``(Ts)_i < s_i`` (the slack-free covering sets)."""
    s = as_point(s, dim=T.dimension)
    Ts = T(s)
    return {int(i) + 1 for i in np.where(Ts < s)[0]}


@dataclass
class LabeledVertexSet:
    """A set of distinct vertices with parallel integer labels.

    Labels are 1-based indices or None for not-yet-labeled / unlabelable
    vertices.  Vertices must be pairwise distinct (exact comparison).
    """

    vertices: list[np.ndarray]
    labels: list[int | None] = field(default_factory=list)

    def __post_init__(self):
        self.vertices = [as_point(v) for v in self.vertices]
        if not self.labels:
            self.labels = [None] * len(self.vertices)
        if len(self.labels) != len(self.vertices):
            raise ValueError(
                f"{len(self.labels)} labels for {len(self.vertices)} vertices"
            )
        for a in range(len(self.vertices)):
            for b in range(a + 1, len(self.vertices)):
                if np.array_equal(self.vertices[a], self.vertices[b]):
                    raise ValueError(f"duplicate vertices at positions {a} and {b}")

    def __len__(self) -> int:
        return len(self.vertices)

    def barycentre(self) -> np.ndarray:
        return np.mean(np.stack(self.vertices), axis=0)

    def diameter(self) -> float:
        """Largest pairwise sup-norm distance between vertices."""
        d = 0.0
        for a in range(len(self.vertices)):
            for b in range(a + 1, len(self.vertices)):
                d = max(d, float(np.max(np.abs(self.vertices[a] - self.vertices[b]))))
        return d


def is_complete(vs: LabeledVertexSet, n: int) -> bool:
    """True iff the set has exactly n vertices carrying each label 1..n once."""
    if len(vs) != n:
        raise ValueError(f"expected exactly {n} vertices, got {len(vs)}")
    if any(lab is None for lab in vs.labels):
        return False
    return sorted(vs.labels) == list(range(1, n + 1))
