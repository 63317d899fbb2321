"""Search for decay points on the 1-norm sphere by simplicial pivoting.

``find_decay_point`` looks for a point ``s*`` with ``(Ts*)_i + eps <= s*_i``
in every component and ``|s*|_1 = r``.  It refines the sphere grid level
by level (mesh halving) and runs the door-in-door-out complete-cell
search of :mod:`decaycert.triangulation` at each level; every map
evaluation doubles as a direct certificate test, so the solver returns
the first evaluated point that decays with the required margin.  The
per-level complete cells have diameter proportional to ``r / 2^level``,
which forces the candidate region to shrink to a point when the direct
test keeps failing; runs end honestly at the iteration cap.

One practical subtlety drives the structure below.  Complete cells of
the slack-``d`` labeling contract onto points whose worst component
decays with margin exactly ``d``, so testing those candidates against
the *same* slack can only succeed through grid luck.  The solver instead
walks a descending ladder of labeling slacks, starting well above the
requested ``eps`` and ending exactly at it: a walk at inflated slack
``d > eps`` homes in on points of margin about ``d``, which pass the
``eps`` certificate with room to spare as soon as the mesh resolves the
difference.  When no point with an inflated-slack label exists along the
walk (the covering fails at that slack), the ladder steps down; the
final rung uses ``eps`` itself, so the failure modes of the plain method
are preserved verbatim.

Map evaluations are memoized across levels and rungs (a lattice point of
level L reappears at every finer level), so refinement never re-pays for
points it has already seen, and the direct certificate test runs once
per distinct point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .labeling import LabeledVertexSet, is_complete
from .maps import MonotoneMap
from .order import as_point
from .triangulation import CompleteCellSearch

__all__ = [
    "SolverConfig",
    "SolveReport",
    "entry_set",
    "complete_subsets",
    "pivot_step",
    "find_decay_point",
]

# Slack applied to the success margin so that re-checks of a returned point
# cannot flip the verdict through last-ulp rounding.
MARGIN_SLACK = 1e-12


@dataclass
class SolverConfig:
    """Tunables of the decay-point search.

    mesh_tolerance defaults to ``1e-8 * r``: the set diameter by which a
    complete cell's barycentre must have been tried as a certificate (the
    solver tries barycentres at every level, which is strictly earlier).
    """

    r: float
    epsilon: float = 1e-2
    max_iterations: int = 1000
    mesh_tolerance: float | None = None
    tie_break: str = "max"

    def __post_init__(self):
        if self.r <= 0.0:
            raise ValueError(f"r must be positive, got {self.r}")
        if self.epsilon <= 0.0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.mesh_tolerance is None:
            self.mesh_tolerance = 1e-8 * self.r
        if self.mesh_tolerance <= 0.0:
            raise ValueError(f"mesh_tolerance must be positive, got {self.mesh_tolerance}")
        if self.tie_break not in ("max", "min"):
            raise ValueError(f"tie_break must be 'max' or 'min', got {self.tie_break!r}")


@dataclass(eq=False)
class SolveReport:
    """Outcome of a decay-point search."""

    success: bool
    s_star: np.ndarray | None
    iterations: int
    margin: float | None = None
    failure_reason: str | None = None  # iteration_cap | label_none | not_applicable
    failure_point: np.ndarray | None = field(default=None, repr=False)


def entry_set(r: float, n: int) -> LabeledVertexSet:
    """The n scaled unit vectors spanning the sphere, not yet labeled."""
    if r <= 0.0:
        raise ValueError(f"r must be positive, got {r}")
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    vertices = [r * np.eye(n)[i] for i in range(n)]
    return LabeledVertexSet(vertices, [None] * n)


def complete_subsets(tau: LabeledVertexSet, n: int) -> list[LabeledVertexSet]:
    """All complete n-vertex subsets of an (n+1)-vertex set.

    By the door-in-door-out principle the result always has length 0 or 2
    (the test suite checks this exhaustively over all label assignments).
    """
    if len(tau) != n + 1:
        raise ValueError(f"expected {n + 1} vertices, got {len(tau)}")
    out = []
    for drop in range(n + 1):
        candidate = LabeledVertexSet(
            [v for p, v in enumerate(tau.vertices) if p != drop],
            [lab for p, lab in enumerate(tau.labels) if p != drop],
        )
        if is_complete(candidate, n):
            out.append(candidate)
    return out


def pivot_step(current: LabeledVertexSet, new_vertex, new_label: int) -> LabeledVertexSet:
    """Replace the vertex carrying ``new_label`` by ``new_vertex``.

    The result is again complete; this is the one move that keeps a walk
    through complete sets from ever backtracking.
    """
    if new_label is None:
        raise ValueError("cannot pivot on an unlabeled vertex")
    n = len(current)
    if not is_complete(current, n):
        raise ValueError("pivot requires a complete vertex set")
    new_vertex = as_point(new_vertex)
    for v in current.vertices:
        if np.array_equal(v, new_vertex):
            raise ValueError("new vertex coincides with an existing vertex")
    pos = current.labels.index(new_label)
    vertices = list(current.vertices)
    vertices[pos] = new_vertex
    return LabeledVertexSet(vertices, list(current.labels))


class _FoundPoint(Exception):
    def __init__(self, point: np.ndarray, margin: float):
        self.point = point
        self.margin = margin


class _NoLabel(Exception):
    def __init__(self, point: np.ndarray):
        self.point = point


class _CapReached(Exception):
    pass


def _slack_ladder(eps: float, r: float, n: int) -> list[float]:
    """Descending labeling slacks, ratio sqrt(2), from ~r/(2n) down to eps.

    The componentwise margins of any sphere point sum to at most r, so no
    point decays with margin above r/n; starting the ladder at half that
    bound loses nothing.  The last rung is always exactly eps.
    """
    top = r / (2.0 * n)
    rungs = []
    j = 1
    while True:
        rung = eps * 2.0 ** (j / 2.0)
        if rung > top:
            break
        rungs.append(rung)
        j += 1
    rungs.reverse()
    rungs.append(eps)
    return rungs


def find_decay_point(T: MonotoneMap, cfg: SolverConfig, n: int) -> SolveReport:
    """Search the sphere of radius ``cfg.r`` for a point with ``Ts << s``.

    On success the returned point satisfies ``(Ts*)_i + eps <= s*_i`` for
    all i (so in particular the contractual ``eps - 1e-12`` margin) and
    lies on the sphere to within ``1e-9 * r``.  Failures report either
    ``iteration_cap`` (evaluation budget exhausted) or ``label_none`` (a
    visited point had no decaying component at slack eps, so the covering
    hypothesis fails there; the point is recorded in ``failure_point``).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if T.dimension != n:
        raise ValueError(f"map has dimension {T.dimension}, expected {n}")
    r = cfg.r
    eps = cfg.epsilon
    take_max = cfg.tie_break == "max"
    cache: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}
    count = 0

    def evaluate(point: np.ndarray) -> np.ndarray:
        nonlocal count
        if count >= cfg.max_iterations:
            raise _CapReached
        count += 1
        Ts = T(point)
        if float(np.min(point - Ts)) >= eps:
            raise _FoundPoint(point, float(np.min(point - Ts)))
        return Ts

    def make_label_of(m: int, label_slack: float):
        scale = r / m

        def label_of(z: tuple[int, ...]) -> int:
            g = math.gcd(m, *z)
            key = (m // g,) + tuple(c // g for c in z)
            hit = cache.get(key)
            if hit is None:
                point = np.asarray(z, dtype=float) * scale
                hit = (point, evaluate(point))
                cache[key] = hit
            point, Ts = hit
            qualifying = np.where(Ts + label_slack <= point)[0]
            if qualifying.size == 0:
                raise _NoLabel(point)
            return int(qualifying[-1] if take_max else qualifying[0])

        return label_of

    try:
        for label_slack in _slack_ladder(eps, r, n):
            try:
                m = 1
                while True:
                    verts = CompleteCellSearch(m, n, make_label_of(m, label_slack)).find()
                    bary = np.asarray(verts, dtype=float).mean(axis=0) * (r / m)
                    evaluate(bary)
                    m *= 2
            except _NoLabel as miss:
                if label_slack == eps:
                    return SolveReport(
                        False,
                        None,
                        count,
                        failure_reason="label_none",
                        failure_point=miss.point,
                    )
                # covering fails at the inflated slack; step the ladder down
    except _FoundPoint as hit:
        s_star = np.array(hit.point)
        s_star.flags.writeable = False
        return SolveReport(True, s_star, count, margin=hit.margin)
    except _CapReached:
        return SolveReport(False, None, count, failure_reason="iteration_cap")
    raise AssertionError("slack ladder ended without a rung at eps")  # pragma: no cover
