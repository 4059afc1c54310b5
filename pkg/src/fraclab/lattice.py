"""Uniform discretization of the truncated window [-R, R) and test-data ensembles.

The window is treated as one period: shifts wrap around, quadrature is the
rectangle rule with uniform weights, and all experiment data is required to be
well localized inside [-R/2, R/2] so that the wrap introduces only controlled
aliasing.  Fields are immutable after construction and safe to share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Literal

import numpy as np

SYMMETRY_TAGS = ("none", "symmetric", "antisymmetric", "orthogonal")
_TAG_TOL = 1e-12


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [-R, R) with n a power of two."""

    radius: float
    n: int
    points: np.ndarray = field(repr=False, compare=False, default=None)
    spacing: float = field(default=None, compare=False)

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        if self.n < 8 or (self.n & (self.n - 1)) != 0:
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        spacing = 2.0 * self.radius / self.n
        points = -self.radius + spacing * np.arange(self.n)
        object.__setattr__(self, "spacing", spacing)
        object.__setattr__(self, "points", _frozen(points))

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.n, self.spacing)

    @property
    def frequencies(self) -> np.ndarray:
        """Discrete frequencies xi_k = pi*k/R in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)

    def wrapped(self, u: np.ndarray) -> np.ndarray:
        """Map separations into the principal period [-R, R)."""
        period = 2.0 * self.radius
        return np.mod(np.asarray(u) + self.radius, period) - self.radius


def make_grid(radius: float, n: int) -> Grid:
    return Grid(float(radius), int(n))


@dataclass(frozen=True)
class VectorField:
    """Samples of an R^m valued function on a grid; shape (n, m)."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        s = np.atleast_2d(np.asarray(self.samples, dtype=float))
        if s.ndim != 2 or s.shape[0] != self.grid.n:
            raise ValueError(f"samples must have shape (n, m), got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def m(self) -> int:
        return self.samples.shape[1]


@dataclass(frozen=True)
class MatrixField:
    """Samples of an m x m matrix valued function; shape (n, m, m)."""

    grid: Grid
    samples: np.ndarray
    symmetry: Literal["none", "symmetric", "antisymmetric", "orthogonal"] = "none"

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float)
        if s.ndim == 1:
            s = s[:, None, None]
        if s.ndim != 3 or s.shape[0] != self.grid.n or s.shape[1] != s.shape[2]:
            raise ValueError(f"samples must have shape (n, m, m), got {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        if self.symmetry not in SYMMETRY_TAGS:
            raise ValueError(f"unknown symmetry tag {self.symmetry!r}")
        st = np.swapaxes(s, 1, 2)
        if self.symmetry == "symmetric" and np.max(np.abs(s - st)) > _TAG_TOL:
            raise ValueError("field tagged symmetric is not symmetric")
        if self.symmetry == "antisymmetric" and np.max(np.abs(s + st)) > _TAG_TOL:
            raise ValueError("field tagged antisymmetric is not antisymmetric")
        if self.symmetry == "orthogonal":
            eye = np.eye(s.shape[1])
            if np.max(np.abs(np.einsum("nij,nkj->nik", s, s) - eye)) > _TAG_TOL:
                raise ValueError("field tagged orthogonal is not orthogonal")
        object.__setattr__(self, "samples", _frozen(s))

    @property
    def m(self) -> int:
        return self.samples.shape[1]


def integrate(f: VectorField) -> np.ndarray:
    """Windowed rectangle rule, componentwise: sum_i w_i f(x_i)."""
    return f.grid.spacing * f.samples.sum(axis=0)


def shift(f: VectorField, k: int) -> VectorField:
    """Periodic shift by k cells: result samples g(x_i) = f(x_{i+k})."""
    if abs(k) >= f.grid.n:
        raise ValueError(f"|k| must be < n, got {k}")
    return VectorField(f.grid, np.roll(f.samples, -k, axis=0))


def localization_report(samples: np.ndarray, grid: Grid) -> float:
    """Max amplitude outside [-R/2, R/2] relative to the peak (0 for zero data)."""
    flat = np.abs(np.asarray(samples)).reshape(grid.n, -1).max(axis=1)
    peak = flat.max()
    if peak == 0.0:
        return 0.0
    outside = np.abs(grid.points) > grid.radius / 2.0
    return float(flat[outside].max() / peak) if outside.any() else 0.0


# ---------------------------------------------------------------------------
# reproducible ensembles


@dataclass(frozen=True)
class EnsembleSpec:
    """Parameters of a reproducible random ensemble of (Q, v) test data."""

    seed: int
    count: int
    m: int = 1
    delta: float = 0.2
    amplitude: float = 1.0
    kind: Literal["smooth-random", "bump", "trig"] = "smooth-random"
    symmetry: str = "symmetric"

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.delta <= 0:
            raise ValueError("delta must be > 0")
        if self.kind not in ("smooth-random", "bump", "trig"):
            raise ValueError(f"unknown ensemble kind {self.kind!r}")


def smooth_window(grid: Grid, half_width: float | None = None) -> np.ndarray:
    """C-infinity bump profile equal to 1 at 0 and exactly 0 outside |x| >= w."""
    w = grid.radius / 2.0 if half_width is None else half_width
    t = grid.points / w
    out = np.zeros(grid.n)
    inside = np.abs(t) < 1.0
    out[inside] = np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=np.uint64(seed), counter=[0, 0, 0, np.uint64(trial)]))


def _fourier_scalar(rng: np.random.Generator, grid: Grid, decay: float) -> np.ndarray:
    """Real random band field with coefficient envelope (1+|k|)^-decay.

    Modes are drawn in fixed ascending order so that coarse grids reuse the
    leading draws of fine grids (refinement-stable trials).
    """
    kmax = grid.n // 2 - 1
    coef = (rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)) / math.sqrt(2.0)
    envelope = (1.0 + np.arange(1, kmax + 1)) ** (-decay)
    spec = np.zeros(grid.n, dtype=complex)
    spec[1 : kmax + 1] = coef * envelope
    spec[-1:-kmax - 1:-1] = np.conj(spec[1 : kmax + 1])
    return np.fft.ifft(spec * grid.n).real


def _bump_scalar(rng: np.random.Generator, grid: Grid) -> np.ndarray:
    out = np.zeros(grid.n)
    for _ in range(3):
        center = rng.uniform(-grid.radius / 4.0, grid.radius / 4.0)
        width = rng.uniform(grid.radius / 16.0, grid.radius / 6.0)
        height = rng.standard_normal()
        t = (grid.points - center) / width
        inside = np.abs(t) < 1.0
        out[inside] += height * np.exp(1.0 - 1.0 / (1.0 - t[inside] ** 2))
    return out


def _trig_scalar(rng: np.random.Generator, grid: Grid) -> np.ndarray:
    out = np.zeros(grid.n)
    for k in rng.integers(1, max(2, grid.n // 8), size=3):
        phase = rng.uniform(0.0, 2.0 * np.pi)
        out += rng.standard_normal() * np.cos(np.pi * k * grid.points / grid.radius + phase)
    return out


def _scalar_sample(rng, grid: Grid, spec: EnsembleSpec, decay: float) -> np.ndarray:
    if spec.kind == "trig":
        return _trig_scalar(rng, grid)
    if spec.kind == "bump":
        return _bump_scalar(rng, grid)
    return _fourier_scalar(rng, grid, decay) * smooth_window(grid)


def sample_trial(spec: EnsembleSpec, grid: Grid, trial: int) -> tuple[MatrixField, VectorField]:
    """Deterministic (Q, v) pair for one trial index.

    Q carries the H^{1/2}-type envelope (1+|k|)^{-1-delta/2}; v carries the
    L^2-type envelope (1+|k|)^{-(1+delta)/2}.  Both are localized by the
    smooth window except for the trig kind.
    """
    rng = _trial_rng(spec.seed, trial)
    m = spec.m
    q = np.zeros((grid.n, m, m))
    decay_q = 1.0 + spec.delta / 2.0
    for a in range(m):
        for b in range(a, m):
            sample = _scalar_sample(rng, grid, spec, decay_q)
            if spec.symmetry == "antisymmetric":
                if a != b:
                    q[:, a, b] = sample
                    q[:, b, a] = -sample
            else:
                q[:, a, b] = sample
                q[:, b, a] = sample
    decay_v = (1.0 + spec.delta) / 2.0
    v = np.column_stack([_scalar_sample(rng, grid, spec, decay_v) for _ in range(m)])
    amp = spec.amplitude
    tag = spec.symmetry if spec.symmetry in ("symmetric", "antisymmetric") else "none"
    if spec.symmetry == "antisymmetric" and m == 1:
        q = np.zeros_like(q)
    return MatrixField(grid, amp * q, tag), VectorField(grid, amp * v)


def sample_ensemble(spec: EnsembleSpec, grid: Grid) -> Iterator[tuple[MatrixField, VectorField]]:
    for trial in range(spec.count):
        yield sample_trial(spec, grid, trial)


def rotation_field(grid: Grid, angles: np.ndarray) -> MatrixField:
    """Pointwise 2x2 rotation field, orthogonal at every grid point."""
    c, s = np.cos(angles), np.sin(angles)
    samples = np.empty((grid.n, 2, 2))
    samples[:, 0, 0] = c
    samples[:, 0, 1] = -s
    samples[:, 1, 0] = s
    samples[:, 1, 1] = c
    return MatrixField(grid, samples, "orthogonal")
