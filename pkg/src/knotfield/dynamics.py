"""Curve evolution: the exactly solvable rotation-plus-drift equation and
the general interaction equation via Euler-Maruyama, plus image knots."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGridError, InvalidParameterError, StepExplosionError
from .geometry import ClosedCurve, EmpiricalMeasure, PolygonalKnot, center_of_mass, embed_r3
from .grf import FieldRealization
from .seeding import rng_from


class SkewGenerator:
    """Skew-symmetric 3x3 generator stored as an axis-angle-rate vector."""

    def __init__(self, omega):
        omega = np.asarray(omega, dtype=float)
        if omega.shape != (3,) or not np.all(np.isfinite(omega)):
            raise InvalidParameterError("omega must be a finite 3-vector")
        self.omega = omega

    @property
    def matrix(self) -> np.ndarray:
        x, y, z = self.omega
        return np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])


def rotation(a: SkewGenerator, t: float) -> np.ndarray:
    """exp(t A) by the closed-form axis-angle (Rodrigues) formula."""
    axis = a.omega * t
    theta = float(np.linalg.norm(axis))
    k = SkewGenerator(axis).matrix
    if theta < 1e-8:
        # Series keeps orthogonality error at O(theta^3) ~ below 1e-24.
        return np.eye(3) + k + 0.5 * (k @ k)
    u = k / theta
    return np.eye(3) + np.sin(theta) * u + (1.0 - np.cos(theta)) * (u @ u)


@dataclass
class BrownianPath:
    """Standard Brownian motion in R^3 sampled on a fixed time grid.

    Refinement is bridge-consistent: values at existing times never
    change when intermediate times are filled in.
    """

    times: np.ndarray
    values: np.ndarray

    @classmethod
    def sample(cls, times, seed: int) -> "BrownianPath":
        times = np.asarray(times, dtype=float)
        _check_grid(times)
        rng = rng_from(seed, 0)
        values = np.zeros((len(times), 3))
        for i in range(1, len(times)):
            dt = times[i] - times[i - 1]
            values[i] = values[i - 1] + np.sqrt(dt) * rng.standard_normal(3)
        return cls(times=times, values=values)

    def value_at(self, t: float) -> np.ndarray:
        idx = np.searchsorted(self.times, t)
        if idx >= len(self.times) or self.times[idx] != t:
            raise InvalidGridError(f"time {t} not on the sampled grid")
        return self.values[idx]

    def refined(self, new_times, seed: int) -> "BrownianPath":
        """Path on a superset grid; existing values are kept exactly.

        Interior new times are filled by Brownian-bridge conditionals,
        times beyond the last existing one by fresh increments.
        """
        new_times = np.asarray(new_times, dtype=float)
        _check_grid(new_times)
        old = {float(t): v for t, v in zip(self.times, self.values)}
        missing = [float(t) for t in new_times if float(t) not in old]
        if any(float(t) not in set(map(float, new_times)) for t in self.times):
            raise InvalidGridError("new grid must contain all existing times")
        rng = rng_from(seed, 1)
        known_t = list(map(float, self.times))
        known_v = dict(old)
        for t in missing:
            lo = max((kt for kt in known_t if kt < t), default=None)
            hi = min((kt for kt in known_t if kt > t), default=None)
            if lo is None:
                raise InvalidGridError("new grid starts before the existing one")
            if hi is None:
                dt = t - lo
                value = known_v[lo] + np.sqrt(dt) * rng.standard_normal(3)
            else:
                frac = (t - lo) / (hi - lo)
                mean = known_v[lo] + frac * (known_v[hi] - known_v[lo])
                var = (t - lo) * (hi - t) / (hi - lo)
                value = mean + np.sqrt(var) * rng.standard_normal(3)
            known_t.append(t)
            known_t.sort()
            known_v[t] = value
        values = np.array([known_v[float(t)] for t in new_times])
        return BrownianPath(times=new_times, values=values)


def _check_grid(times: np.ndarray) -> None:
    if len(times) < 1 or times[0] != 0.0:
        raise InvalidGridError("time grid must start at 0")
    if np.any(np.diff(times) <= 0):
        raise InvalidGridError("time grid must be strictly increasing")


@dataclass
class TrajectoryRecord:
    """States of an evolving curve on a time grid.

    ``rotations`` is None for dynamics without a rotation part.
    ``knots`` is filled when the curve states were pushed through a
    field realization.
    """

    times: np.ndarray
    com_path: np.ndarray
    curves: list[ClosedCurve]
    rotations: list[np.ndarray] | None = None
    knots: list[PolygonalKnot] | None = None
    seed: int = 0
    labels: list | None = field(default=None, repr=False)


def evolve_ou(curve0: ClosedCurve, a: SkewGenerator, times, seed: int,
              brownian: BrownianPath | None = None) -> TrajectoryRecord:
    """Integrate the rotation-around-drifting-center dynamics exactly.

    The center of mass follows the given (or freshly sampled) Brownian
    path with exact Gaussian increments; every curve sample u moves to
    m0 + w(t) + U_t (u - m0).  No discretization error.
    """
    times = np.asarray(times, dtype=float)
    _check_grid(times)
    if curve0.dim != 3:
        raise InvalidParameterError("evolve_ou expects a curve in R^3")
    if brownian is None:
        brownian = BrownianPath.sample(times, seed)
    samples0 = curve0.samples
    m0 = samples0.mean(axis=0)
    com = np.empty((len(times), 3))
    rotations = []
    curves = []
    for idx, t in enumerate(times):
        w = brownian.value_at(float(t))
        u = rotation(a, float(t))
        m_t = m0 + w
        com[idx] = m_t
        rotations.append(u)
        curves.append(ClosedCurve(m_t + (samples0 - m0) @ u.T))
    return TrajectoryRecord(
        times=times, com_path=com, curves=curves, rotations=rotations, seed=seed
    )


def interaction_drift(h, u, mu: EmpiricalMeasure, ensemble) -> np.ndarray:
    """Monte Carlo estimate of the mean-field drift at position u.

    Averages h(u, xi(atom)) over the measure's atoms and over the field
    realizations in ``ensemble``.  Note that each xi(atom) is standard
    normal marginally whatever the atoms are, so the estimated mean
    depends on mu only through sampling noise; the general
    measure-dependent form is kept so transport-distance bounds on the
    drift can be exercised.
    """
    samples = interaction_drift_samples(h, u, mu, ensemble)
    return samples.mean(axis=0)


def interaction_drift_samples(h, u, mu: EmpiricalMeasure, ensemble) -> np.ndarray:
    """Per-realization drift estimates, shape (len(ensemble), 3)."""
    ensemble = list(ensemble)
    if not ensemble:
        raise InvalidParameterError("ensemble must be nonempty")
    u = np.asarray(u, dtype=float)
    out = np.empty((len(ensemble), 3))
    for j, xi in enumerate(ensemble):
        values = xi.evaluate(mu.atoms)
        out[j] = np.asarray(h(u, values), dtype=float).mean(axis=0)
    return out


@dataclass(frozen=True)
class NoiseSpec:
    """Noise model for the interaction dynamics.

    kind 'none' turns noise off; 'additive-brownian' adds one shared
    Brownian increment to every sample per step; 'finite-mode-sheet'
    adds sum_k b_k(x) dW_k with scalar kernels b_k (vectorized over an
    (n, 3) sample array) and independent 3-vector increments dW_k.
    """

    kind: str = "additive-brownian"
    modes: tuple = ()

    def __post_init__(self):
        if self.kind not in ("none", "additive-brownian", "finite-mode-sheet"):
            raise InvalidParameterError(f"unknown noise kind {self.kind!r}")
        if self.kind == "finite-mode-sheet" and not self.modes:
            raise InvalidParameterError("finite-mode-sheet noise needs at least one mode")


def evolve_interaction(
    curve0: ClosedCurve,
    h,
    noise: NoiseSpec,
    dt: float,
    horizon: float,
    ensemble_size: int,
    seed: int,
    field_factory=None,
) -> TrajectoryRecord:
    """Euler-Maruyama for the interaction dynamics on all curve samples.

    The drift is re-estimated each step from a fixed per-run field
    ensemble (common random numbers across steps).  The visitation
    measure is the pushforward of the initial uniform-parameter
    discretization through the current sample map.
    """
    if dt <= 0:
        raise InvalidParameterError(f"dt must be positive, got {dt}")
    if horizon < dt:
        raise InvalidParameterError("horizon must be at least dt")
    from .grf import make_field

    if field_factory is None:
        def field_factory(s):
            return make_field(3, "spectral-feature", {"num_features": 256}, s)

    ensemble = [field_factory(rng_from(seed, 10 + j).integers(2**63)) for j in range(ensemble_size)]
    rng = rng_from(seed, 1)
    steps = int(round(horizon / dt))
    times = np.concatenate([[0.0], dt * np.arange(1, steps + 1)])
    state = embed_r3(curve0.samples).copy()
    com = [state.mean(axis=0)]
    curves = [ClosedCurve(state.copy())]
    for _ in range(steps):
        mu = EmpiricalMeasure(state.copy())
        drift = np.empty_like(state)
        for idx, x in enumerate(state):
            drift[idx] = interaction_drift(h, x, mu, ensemble)
        state = state + dt * drift
        if noise.kind == "additive-brownian":
            state = state + np.sqrt(dt) * rng.standard_normal(3)
        elif noise.kind == "finite-mode-sheet":
            for b_k in noise.modes:
                dw = np.sqrt(dt) * rng.standard_normal(3)
                state = state + np.asarray(b_k(state), dtype=float)[:, None] * dw
        if np.any(np.abs(state) > 1e6):
            raise StepExplosionError("sample norm exceeded 1e6; configuration unstable")
        com.append(state.mean(axis=0))
        curves.append(ClosedCurve(state.copy()))
    return TrajectoryRecord(
        times=times, com_path=np.array(com), curves=curves, rotations=None, seed=seed
    )


def image_knot(field: FieldRealization, curve: ClosedCurve, m: int) -> PolygonalKnot:
    """Polygonal image of the curve under the field, m vertices.

    Vertices are the field values at curve.point(2*pi*j/m); this
    discretizes the image curve finely enough that its diagram stands
    in for the smooth knot.
    """
    if m < 8:
        raise InvalidParameterError(f"image_knot needs m >= 8, got {m}")
    if field.dim != curve.dim:
        raise InvalidParameterError(
            f"field dim {field.dim} does not match curve dim {curve.dim}"
        )
    points = curve.uniform_points(m)
    return PolygonalKnot(field.evaluate(points))


# -- trajectory serialization -------------------------------------------


def write_trajectory(path, record: TrajectoryRecord) -> None:
    """One '|'-separated record per time step: time, com, U, label, samples."""
    lines = [
        "# knotfield trajectory v1",
        "# time | com(3) | rotation(9 or -) | label | curve samples (3 per vertex)",
    ]
    labels = record.labels or [None] * len(record.times)
    for idx, t in enumerate(record.times):
        com = " ".join(repr(float(x)) for x in record.com_path[idx])
        if record.rotations is not None:
            rot = " ".join(repr(float(x)) for x in record.rotations[idx].reshape(-1))
        else:
            rot = "-"
        label = labels[idx] if labels[idx] is not None else "-"
        samples = " ".join(
            repr(float(x)) for x in record.curves[idx].samples.reshape(-1)
        )
        lines.append(f"{float(t)!r} | {com} | {rot} | {label} | {samples}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_trajectory(path) -> TrajectoryRecord:
    """Parse a file written by :func:`write_trajectory`."""
    times, com, rotations, labels, curves = [], [], [], [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            t_s, com_s, rot_s, label_s, samp_s = [p.strip() for p in line.split("|")]
            times.append(float(t_s))
            com.append([float(x) for x in com_s.split()])
            rotations.append(
                None if rot_s == "-" else np.array([float(x) for x in rot_s.split()]).reshape(3, 3)
            )
            labels.append(None if label_s == "-" else label_s)
            flat = np.array([float(x) for x in samp_s.split()])
            curves.append(ClosedCurve(flat.reshape(-1, 3)))
    rect: list[np.ndarray] | None
    rect = None if any(r is None for r in rotations) else rotations  # type: ignore[assignment]
    return TrajectoryRecord(
        times=np.array(times),
        com_path=np.array(com),
        curves=curves,
        rotations=rect,
        labels=labels if any(lb is not None for lb in labels) else None,
    )
