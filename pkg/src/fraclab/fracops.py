"""Primitive operators and composed-operator pipelines.

Two cross-checking backends realize each homogeneous operator:

* ``multiplier``: exact Fourier symbol on the periodic window (``|xi|**sigma``
  for the fractional Laplacian, ``1j*sign(xi)`` for the Riesz transform), zero
  mode annihilated;
* ``quadrature``: the principal-value difference sum with the *periodized*
  singular weight, evaluated as a circular convolution, normalized by
  ``pv_constant`` so both backends represent the same operator.

Pipelines are immutable sums of composition chains of primitive stages and are
exactly linear in their input field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .conventions import periodized_power_kernel, periodized_riesz_kernel, pv_constant
from .lattice import Grid, MatrixField, VectorField

Backend = Literal["multiplier", "quadrature"]


# ---------------------------------------------------------------------------
# spectral layer


@dataclass(frozen=True)
class SpectrumRep:
    """Complex Fourier coefficients c_k (per component) with f = sum c_k e^{i xi_k x}."""

    grid: Grid
    coefficients: np.ndarray

    @property
    def frequencies(self) -> np.ndarray:
        return self.grid.frequencies


def to_spectrum(f: VectorField) -> SpectrumRep:
    return SpectrumRep(f.grid, np.fft.fft(f.samples, axis=0) / f.grid.n)


def from_spectrum(rep: SpectrumRep) -> VectorField:
    return VectorField(rep.grid, np.fft.ifft(rep.coefficients * rep.grid.n, axis=0).real)


def apply_symbol(samples: np.ndarray, grid: Grid, symbol: np.ndarray) -> np.ndarray:
    """Apply a Fourier multiplier along axis 0 of a real sample array."""
    spec = np.fft.fft(samples, axis=0)
    spec *= symbol.reshape((grid.n,) + (1,) * (samples.ndim - 1))
    return np.fft.ifft(spec, axis=0).real


def fraclap_symbol(grid: Grid, sigma: float) -> np.ndarray:
    xi = grid.frequencies
    symbol = np.zeros(grid.n)
    nz = xi != 0.0
    symbol[nz] = np.abs(xi[nz]) ** sigma
    return symbol


def riesz_symbol(grid: Grid) -> np.ndarray:
    xi = grid.frequencies
    symbol = 1j * np.sign(xi)
    symbol[grid.n // 2] = 0.0  # unpaired Nyquist mode of an odd symbol
    return symbol


# ---------------------------------------------------------------------------
# quadrature layer (periodized principal-value sums via circular convolution)


def _pv_convolve(samples: np.ndarray, grid: Grid, kernel_vec: np.ndarray) -> np.ndarray:
    spec = np.fft.fft(samples, axis=0)
    spec *= np.fft.fft(kernel_vec).reshape((grid.n,) + (1,) * (samples.ndim - 1))
    return np.fft.ifft(spec, axis=0).real


def fraclap_quadrature(samples: np.ndarray, grid: Grid, sigma: float) -> np.ndarray:
    """PV sum (f(x)-f(y)) * W_per(x-y) / c_sigma, diagonal cell omitted."""
    if not 0.0 < sigma <= 1.0:
        raise ValueError("quadrature backend requires 0 < sigma <= 1")
    k = np.arange(1, grid.n)
    vec = np.zeros(grid.n)
    vec[1:] = grid.spacing * periodized_power_kernel(k * grid.spacing, 1.0 + sigma, grid.radius)
    total = vec.sum()
    return (total * samples - _pv_convolve(samples, grid, vec)) / pv_constant(sigma)


def riesz_quadrature(samples: np.ndarray, grid: Grid) -> np.ndarray:
    """PV sum (v(x)-v(y)) * cot-kernel(x-y); the odd kernel sums to zero."""
    k = np.arange(1, grid.n)
    vec = np.zeros(grid.n)
    vec[1:] = grid.spacing * periodized_riesz_kernel(k * grid.spacing, grid.radius)
    vec[grid.n // 2] = 0.0
    return -_pv_convolve(samples, grid, vec)


# ---------------------------------------------------------------------------
# public operator entry points


def frac_laplacian(f: VectorField, sigma: float, backend: Backend = "multiplier") -> VectorField:
    """Fractional Laplacian of order sigma in [0, 1]; mean annihilated."""
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma}")
    if backend == "multiplier":
        out = apply_symbol(f.samples, f.grid, fraclap_symbol(f.grid, sigma))
    elif backend == "quadrature":
        out = fraclap_quadrature(f.samples, f.grid, sigma)
        out -= out.mean(axis=0)  # match the zero-mode convention exactly
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return VectorField(f.grid, out)


def riesz(f: VectorField, backend: Backend = "multiplier") -> VectorField:
    if backend == "multiplier":
        out = apply_symbol(f.samples, f.grid, riesz_symbol(f.grid))
    elif backend == "quadrature":
        out = riesz_quadrature(f.samples, f.grid)
        out -= out.mean(axis=0)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    return VectorField(f.grid, out)


def frac_laplacian_field(M: MatrixField, sigma: float) -> MatrixField:
    out = apply_symbol(M.samples, M.grid, fraclap_symbol(M.grid, sigma))
    tag = M.symmetry if M.symmetry in ("symmetric", "antisymmetric") else "none"
    return MatrixField(M.grid, out, tag)


def riesz_field(M: MatrixField) -> MatrixField:
    out = apply_symbol(M.samples, M.grid, riesz_symbol(M.grid))
    tag = M.symmetry if M.symmetry in ("symmetric", "antisymmetric") else "none"
    return MatrixField(M.grid, out, tag)


def matfield_product(A: MatrixField, B: MatrixField) -> MatrixField:
    prod = np.einsum("nij,njk->nik", A.samples, B.samples)
    return MatrixField(A.grid, prod)


# ---------------------------------------------------------------------------
# operator pipelines: sums of composition chains of primitive stages


@dataclass(frozen=True)
class Stage:
    kind: Literal["multiply", "fraclap", "riesz", "kernel", ]
    payload: object = None

    def apply(self, samples: np.ndarray, grid: Grid) -> np.ndarray:
        if self.kind == "multiply":
            return np.einsum("nij,nj->ni", self.payload.samples, samples)
        if self.kind == "fraclap":
            return apply_symbol(samples, grid, fraclap_symbol(grid, self.payload))
        if self.kind == "riesz":
            return apply_symbol(samples, grid, riesz_symbol(grid))
        if self.kind == "kernel":
            return self.payload.apply_integral(samples)
        raise ValueError(f"unknown stage kind {self.kind!r}")


@dataclass(frozen=True)
class OperatorPipeline:
    """Linear operator sum_t coeff_t * (stage chain), chains applied left to right."""

    grid: Grid
    m: int
    terms: tuple[tuple[float, tuple[Stage, ...]], ...]

    def __call__(self, f: VectorField) -> VectorField:
        return apply_pipeline(self, f)

    def __matmul__(self, other: "OperatorPipeline") -> "OperatorPipeline":
        """self after other: chains of other run first."""
        self._check(other)
        terms = tuple(
            (ca * cb, sb + sa) for (ca, sa) in self.terms for (cb, sb) in other.terms
        )
        return OperatorPipeline(self.grid, self.m, terms)

    def __add__(self, other: "OperatorPipeline") -> "OperatorPipeline":
        self._check(other)
        return OperatorPipeline(self.grid, self.m, self.terms + other.terms)

    def __sub__(self, other: "OperatorPipeline") -> "OperatorPipeline":
        return self + (-1.0) * other

    def __rmul__(self, c: float) -> "OperatorPipeline":
        return OperatorPipeline(self.grid, self.m, tuple((c * coeff, chain) for coeff, chain in self.terms))

    def __neg__(self) -> "OperatorPipeline":
        return (-1.0) * self

    def _check(self, other: "OperatorPipeline") -> None:
        if other.grid is not self.grid and (other.grid.n != self.grid.n or other.grid.radius != self.grid.radius):
            raise ValueError("pipelines live on different grids")
        if other.m != self.m:
            raise ValueError("pipelines have different component counts")


def identity_op(grid: Grid, m: int) -> OperatorPipeline:
    return OperatorPipeline(grid, m, ((1.0, ()),))


def zero_op(grid: Grid, m: int) -> OperatorPipeline:
    return OperatorPipeline(grid, m, ((0.0, ()),))


def multiply_op(M: MatrixField) -> OperatorPipeline:
    return OperatorPipeline(M.grid, M.m, ((1.0, (Stage("multiply", M),)),))


def fraclap_op(grid: Grid, m: int, sigma: float) -> OperatorPipeline:
    if not 0.0 <= sigma <= 1.0:
        raise ValueError(f"sigma must lie in [0, 1], got {sigma}")
    return OperatorPipeline(grid, m, ((1.0, (Stage("fraclap", sigma),)),))


def riesz_op(grid: Grid, m: int) -> OperatorPipeline:
    return OperatorPipeline(grid, m, ((1.0, (Stage("riesz"),)),))


def kernel_op(kernel) -> OperatorPipeline:
    return OperatorPipeline(kernel.grid, kernel.m, ((1.0, (Stage("kernel", kernel),)),))


def apply_pipeline(p: OperatorPipeline, f: VectorField) -> VectorField:
    if f.grid.n != p.grid.n or f.grid.radius != p.grid.radius:
        raise ValueError("field grid does not match pipeline grid")
    if f.m != p.m:
        raise ValueError("field component count does not match pipeline")
    acc = np.zeros_like(f.samples)
    for coeff, chain in p.terms:
        if coeff == 0.0:
            continue
        u = f.samples
        for stage in chain:
            u = stage.apply(u, p.grid)
        acc = acc + coeff * u
    return VectorField(f.grid, acc)


# ---------------------------------------------------------------------------
# named composed operators


def dhalf_op(Q: MatrixField) -> OperatorPipeline:
    """Half-order multiplication commutator Q o L - L o Q with L = (-Delta)^{1/4}."""
    L = fraclap_op(Q.grid, Q.m, 0.5)
    MQ = multiply_op(Q)
    return MQ @ L - L @ MQ


def three_commutator_op(Q: MatrixField) -> OperatorPipeline:
    """v -> L(Qv) - Q Lv + (LQ) v with L = (-Delta)^{1/4}."""
    L = fraclap_op(Q.grid, Q.m, 0.5)
    MQ = multiply_op(Q)
    Mg = multiply_op(frac_laplacian_field(Q, 0.5))
    return L @ MQ - MQ @ L + Mg


def _require_symmetric(field: MatrixField, name: str) -> None:
    if field.symmetry != "symmetric":
        raise ValueError(f"{name} requires a field tagged symmetric")


def build_named_operator(name: str, Q: MatrixField, P: MatrixField | None = None) -> OperatorPipeline:
    """Composed commutator pipelines by name.

    T3      three-term commutator of Q
    TSQ_R   antisymmetrized Riesz composition of the three-term structure
    TSQ_RR  two-sided Riesz conjugation with its correction terms
    opL     same operator written through the F_Q correction functions
    VPQ     adjoint-multiplication commutator of (P, Q)
    CRW     v -> Q*riesz(v) + riesz(Q)*v
    """
    grid, m = Q.grid, Q.m
    R = riesz_op(grid, m)
    L = fraclap_op(grid, m, 0.5)
    MQ = multiply_op(Q)

    if name == "T3":
        _require_symmetric(Q, "T3")
        return three_commutator_op(Q)

    if name == "TSQ_R":
        _require_symmetric(Q, "TSQ_R")
        g = frac_laplacian_field(Q, 0.5)
        Mg = multiply_op(g)
        Mrg = multiply_op(riesz_field(g))
        D = dhalf_op(Q)
        return R @ D - D @ R - R @ Mg - Mg @ R - 2.0 * Mrg

    if name == "TSQ_RR":
        _require_symmetric(Q, "TSQ_RR")
        g = frac_laplacian_field(Q, 0.5)
        Mg = multiply_op(g)
        Mrg = multiply_op(riesz_field(g))
        D = dhalf_op(Q)
        return R @ D @ R + Mrg @ R + R @ Mrg - Mg

    if name == "opL":
        _require_symmetric(Q, "opL")
        # written through F_Q = -riesz((-Delta)^{1/4} Q): the correction terms
        # -M_F o R - R o M_F - M_{riesz(F)} reduce to +M_rg o R + R o M_rg - M_g
        g = frac_laplacian_field(Q, 0.5)
        Mrg = multiply_op(riesz_field(g))
        Mg = multiply_op(g)
        core = R @ MQ @ R @ L - L @ R @ MQ @ R
        return core + Mrg @ R + R @ Mrg - Mg

    if name == "VPQ":
        if P is None:
            raise ValueError("VPQ requires the P field")
        _require_symmetric(Q, "VPQ")
        _require_symmetric(P, "VPQ")
        MP = multiply_op(P)
        MPQ = multiply_op(matfield_product(P, Q))
        MQP = multiply_op(matfield_product(Q, P))
        g = frac_laplacian_field(Q, 0.5)
        term_pg = multiply_op(matfield_product(P, g))
        term_lqp = multiply_op(frac_laplacian_field(matfield_product(Q, P), 0.5))
        term_qlp = multiply_op(matfield_product(Q, frac_laplacian_field(P, 0.5)))
        return (
            MPQ @ L - MP @ L @ MQ + MQ @ L @ MP - L @ MQP
            - term_pg - term_lqp + term_qlp
        )

    if name == "CRW":
        return MQ @ R + multiply_op(riesz_field(Q))

    raise ValueError(f"unknown operator name {name!r}")
