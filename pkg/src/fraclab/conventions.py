"""Fixed analytic conventions shared by every module.

All homogeneous operators are defined through their exact Fourier symbols on
the 2R-periodic window:

* fractional Laplacian of order sigma: symbol ``|xi|**sigma``, zero mode
  annihilated;
* Riesz transform: symbol ``1j * sign(xi)``, zero mode annihilated.

The principal-value quadrature realizations of the same operators use the
singular difference kernels ``|x-y|**-(1+sigma)`` and ``1/(pi*(x-y))``.  The
first carries a normalization constant

    pv_constant(sigma) = pi / (Gamma(1+sigma) * sin(pi*sigma/2))

relating the raw difference integral to the ``|xi|**sigma`` symbol; the Riesz
kernel with its 1/pi prefactor matches ``1j*sign(xi)`` with constant one.
Every singular two-point kernel constructed in :mod:`fraclab.kernelspace`
includes ``1/pv_constant`` of its singularity order, so kernel routes and
spectral routes represent the same operator with constant exactly one.

``RIESZ_SIGN`` records the validated orientation: with symbol
``+1j*sign(xi)`` one has ``riesz(sin(k x)) = +cos(k x)`` for k > 0, and the
principal-value quadrature backend reproduces the same sign.

``THREE_COMMUTATOR_SIGN`` records the validated orientation of the kernel
route: applying the abstract multi-commutator to the kernel
``(Q(x)-Q(y))/|x-y|^{3/2}`` (normalized) yields *plus*
``L(Qv) - Q Lv + (LQ) v`` where ``L`` is the fractional Laplacian of order
one half.
"""

import math

import numpy as np

RIESZ_SIGN = +1.0
THREE_COMMUTATOR_SIGN = +1.0


def pv_constant(sigma: float) -> float:
    """Constant c with pv-integral of (f(x)-f(y))/|x-y|^(1+sigma) = c*|xi|^sigma f.

    Valid for 0 < sigma < 2.  As sigma -> 0 the constant diverges like
    2/sigma; callers treating sigma = 0 must special-case it.
    """
    if not 0.0 < sigma < 2.0:
        raise ValueError(f"pv_constant requires 0 < sigma < 2, got {sigma}")
    return math.pi / (math.gamma(1.0 + sigma) * math.sin(math.pi * sigma / 2.0))


def periodized_power_kernel(u: np.ndarray, exponent: float, radius: float) -> np.ndarray:
    """Periodization over the 2R window of |u|**(-exponent), exponent > 1.

    Returns sum_m |u + 2R m|**(-exponent) evaluated with the Hurwitz zeta
    function; u may be any real array with u not a multiple of 2R.
    """
    from scipy.special import zeta

    period = 2.0 * radius
    frac = np.mod(np.asarray(u, dtype=float) / period, 1.0)
    return (zeta(exponent, frac) + zeta(exponent, 1.0 - frac)) / period**exponent


def periodized_riesz_kernel(u: np.ndarray, radius: float) -> np.ndarray:
    """Periodization of 1/(pi*u): the cotangent kernel (2R)^-1 cot(pi u / 2R)."""
    period = 2.0 * radius
    return np.cos(np.pi * u / period) / (period * np.sin(np.pi * u / period))


def conventions_record() -> dict:
    """Conventions block embedded in every emitted report."""
    return {
        "riesz_symbol": "+1j*sign(xi)",
        "riesz_sign": RIESZ_SIGN,
        "frac_laplacian_symbol": "|xi|**sigma",
        "zero_mode": "annihilated",
        "pv_constant_formula": "pi/(gamma(1+sigma)*sin(pi*sigma/2))",
        "three_commutator_sign": THREE_COMMUTATOR_SIGN,
        "window": "periodic [-R, R), singular weights periodized",
    }
