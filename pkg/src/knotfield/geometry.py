"""Closed curves, empirical measures, transport distance, polygon predicates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.optimize import linear_sum_assignment

from .errors import (
    DegenerateSegmentError,
    InvalidParameterError,
    SizeMismatchError,
)

TWO_PI = 2.0 * np.pi
SELF_INTERSECTION_TOL = 1e-7
WASSERSTEIN_MAX_ATOMS = 512


class ClosedCurve:
    """Periodic cubic-spline curve through n uniformly spaced samples.

    Samples sit at parameters t_k = 2*pi*k/n.  The interpolant is the
    C^2 periodic cubic spline, so ``point(t_k)`` reproduces the samples
    and ``point(0) == point(2*pi)`` exactly (parameters are wrapped).
    """

    def __init__(self, samples: np.ndarray):
        samples = np.asarray(samples, dtype=float)
        if samples.ndim != 2 or samples.shape[1] not in (2, 3):
            raise InvalidParameterError("samples must be an (n, 2) or (n, 3) array")
        if len(samples) < 8:
            raise InvalidParameterError(f"need at least 8 samples, got {len(samples)}")
        self.samples = samples
        self.n = len(samples)
        self.dim = samples.shape[1]
        knots = np.linspace(0.0, TWO_PI, self.n + 1)
        closed = np.vstack([samples, samples[:1]])
        self._spline = CubicSpline(knots, closed, axis=0, bc_type="periodic")

    def point(self, t) -> np.ndarray:
        """Curve point(s) at parameter t (scalar or array), wrapped mod 2*pi."""
        tt = np.mod(np.asarray(t, dtype=float), TWO_PI)
        return self._spline(tt)

    def uniform_points(self, m: int) -> np.ndarray:
        """Points at parameters 2*pi*j/m, j = 0..m-1, shape (m, dim)."""
        if m < 1:
            raise InvalidParameterError(f"m must be >= 1, got {m}")
        return self.point(TWO_PI * np.arange(m) / m)

    def transformed(self, func) -> "ClosedCurve":
        """Curve through the images of the samples under ``func``."""
        return ClosedCurve(np.asarray(func(self.samples), dtype=float))


def circle_curve(n: int) -> ClosedCurve:
    """Unit circle in the plane sampled at n uniform parameters."""
    if n < 8:
        raise InvalidParameterError(f"circle_curve needs n >= 8, got {n}")
    t = TWO_PI * np.arange(n) / n
    return ClosedCurve(np.column_stack([np.cos(t), np.sin(t)]))


def embed_r3(points: np.ndarray) -> np.ndarray:
    """Pad 2-D points with a zero third coordinate; pass 3-D through."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[-1] == 3:
        return pts
    pad = np.zeros(pts.shape[:-1] + (1,))
    return np.concatenate([pts, pad], axis=-1)


@dataclass(frozen=True)
class EmpiricalMeasure:
    """m equal-weight atoms in R^3 (weight 1/m each)."""

    atoms: np.ndarray

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float)
        if atoms.ndim != 2 or atoms.shape[1] != 3 or len(atoms) < 1:
            raise InvalidParameterError("atoms must be a nonempty (m, 3) array")
        object.__setattr__(self, "atoms", atoms)

    @property
    def size(self) -> int:
        return len(self.atoms)

    def pushforward(self, func) -> "EmpiricalMeasure":
        """Image measure under a pointwise map of the atoms."""
        return EmpiricalMeasure(np.asarray(func(self.atoms), dtype=float))


def visitation_measure(curve: ClosedCurve, m: int) -> EmpiricalMeasure:
    """Uniform-parameter discretization of the curve's visitation measure."""
    return EmpiricalMeasure(embed_r3(curve.uniform_points(m)))


def center_of_mass(mu: EmpiricalMeasure) -> np.ndarray:
    """Arithmetic mean of the atoms."""
    return mu.atoms.mean(axis=0)


def wasserstein2(mu: EmpiricalMeasure, nu: EmpiricalMeasure) -> float:
    """Wasserstein-2 distance between equal-size equal-weight measures.

    Solved as an exact assignment problem, which realizes the optimal
    coupling when both measures have m atoms of weight 1/m.
    """
    if mu.size != nu.size:
        raise SizeMismatchError(f"atom counts differ: {mu.size} vs {nu.size}")
    if mu.size > WASSERSTEIN_MAX_ATOMS:
        raise InvalidParameterError(
            f"atom count {mu.size} exceeds supported maximum {WASSERSTEIN_MAX_ATOMS}"
        )
    diff = mu.atoms[:, None, :] - nu.atoms[None, :, :]
    cost = np.sum(diff * diff, axis=-1)
    rows, cols = linear_sum_assignment(cost)
    return float(np.sqrt(cost[rows, cols].sum() / mu.size))


class PolygonalKnot:
    """Ordered closed vertex loop in R^3."""

    def __init__(self, vertices: np.ndarray):
        vertices = np.asarray(vertices, dtype=float)
        if vertices.ndim != 2 or vertices.shape[1] != 3 or len(vertices) < 3:
            raise InvalidParameterError("vertices must be an (v >= 3, 3) array")
        gaps = np.linalg.norm(np.roll(vertices, -1, axis=0) - vertices, axis=1)
        if np.any(gaps <= 1e-9):
            raise DegenerateSegmentError("consecutive vertices coincide")
        self.vertices = vertices

    @property
    def size(self) -> int:
        return len(self.vertices)

    def is_valid(self, tol: float = SELF_INTERSECTION_TOL) -> bool:
        """True when all nonadjacent segments clear each other by more than tol."""
        return min_nonadjacent_distance(self) > tol

    def transformed(self, func) -> "PolygonalKnot":
        return PolygonalKnot(np.asarray(func(self.vertices), dtype=float))


def _segment_pair_distances(p1, p2, q1, q2) -> np.ndarray:
    """Clamped closest-point distance between segment batches [p1,p2] and [q1,q2]."""
    d1 = p2 - p1
    d2 = q2 - q1
    r = p1 - q1
    a = np.sum(d1 * d1, axis=-1)
    e = np.sum(d2 * d2, axis=-1)
    f = np.sum(d2 * r, axis=-1)
    c = np.sum(d1 * r, axis=-1)
    b = np.sum(d1 * d2, axis=-1)
    denom = a * e - b * b
    # Parallel pairs have denom ~ 0; any s in [0,1] works, take 0.
    s = np.where(denom > 1e-14 * np.maximum(a * e, 1e-300), (b * f - c * e) / np.where(denom == 0, 1.0, denom), 0.0)
    s = np.clip(s, 0.0, 1.0)
    t = (b * s + f) / np.where(e == 0, 1.0, e)
    t_clamped = np.clip(t, 0.0, 1.0)
    # Re-derive s where t was clamped.
    s = np.where(t != t_clamped, np.clip((b * t_clamped - c) / np.where(a == 0, 1.0, a), 0.0, 1.0), s)
    t = t_clamped
    closest1 = p1 + s[..., None] * d1
    closest2 = q1 + t[..., None] * d2
    return np.linalg.norm(closest1 - closest2, axis=-1)


def nonadjacent_segment_pairs(v: int) -> tuple[np.ndarray, np.ndarray]:
    """Index pairs (i, j), i < j, of closed-polygon segments not sharing a vertex."""
    i, j = np.triu_indices(v, k=2)
    keep = ~((i == 0) & (j == v - 1))
    return i[keep], j[keep]


def min_nonadjacent_distance(k: PolygonalKnot) -> float:
    """Minimum distance between all pairs of nonadjacent closed-polygon segments."""
    verts = k.vertices
    v = len(verts)
    nxt = np.roll(verts, -1, axis=0)
    i, j = nonadjacent_segment_pairs(v)
    if len(i) == 0:
        return float("inf")
    d = _segment_pair_distances(verts[i], nxt[i], verts[j], nxt[j])
    return float(d.min())


def write_vertices(path, vertices: np.ndarray, comment: str | None = None) -> None:
    """Write a vertex list, one comma-separated point per line."""
    vertices = np.asarray(vertices, dtype=float)
    lines = []
    if comment:
        lines.append(f"# {comment}")
    for row in vertices:
        lines.append(", ".join(repr(float(x)) for x in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_vertices(path) -> np.ndarray:
    """Read a vertex list written by :func:`write_vertices`."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([float(x) for x in line.split(",")])
    return np.asarray(rows, dtype=float)
