"""Closed-form spectra and semiclassical partition functions.

These expressions solve special instances of the coupled parafermion-oscillator
model and serve as independent oracles for the numerical pipeline:

* F = 2, generic k: a Fourier-mode argument reduces each block to k decoupled
  two-level problems, giving 2k levels E(s, l) with binomial degeneracies
  C(k-1, l); a deformed-oscillator generalization holds in the saturated
  regime n >= k.
* F = 3, k = 1: the 3x3 block reduces to a depressed cubic with an explicit
  radical solution.
* Linearizing the spectrum in a small parameter hbar (structure function
  hbar*x) yields closed-form partition sums accurate away from the crossover
  at omega ~ delta/hbar.

Each function refuses inputs outside its regime of validity instead of
extrapolating.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from .deformations import Deformation, evaluate
from .errors import NumericalError, OutOfRegimeError, ParameterError

logger = logging.getLogger(__name__)

#: Imaginary parts below this (relative) threshold are rounding noise.
_REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class LabeledSpectrum:
    """Energy levels with multiplicities, as (value, degeneracy) pairs."""

    levels: tuple[tuple[float, int], ...]

    def values(self) -> np.ndarray:
        """Eigenvalues expanded by multiplicity, ascending."""
        out = []
        for value, degeneracy in self.levels:
            out.extend([value] * degeneracy)
        return np.sort(np.asarray(out, dtype=np.float64))

    def total_multiplicity(self) -> int:
        return sum(d for _, d in self.levels)

    def trace(self) -> float:
        return sum(value * degeneracy for value, degeneracy in self.levels)


def _check_f2_regime(k: int, n: int) -> None:
    if k < 1 or int(k) != k:
        raise ParameterError(f"k must be an integer >= 1, got {k}")
    if int(n) != n:
        raise ParameterError(f"n must be an integer, got {n}")
    if n < k:
        raise OutOfRegimeError(
            f"F=2 closed form needs the saturated regime n >= k, got n={n}, k={k}"
        )


def exact_f2_undeformed(k: int, n: int, omega: float, delta: float, g: float) -> LabeledSpectrum:
    """Spectrum of the F=2 block with an ordinary oscillator, n >= k.

    E(s, l) = [(2l+1) delta + (2(n-l)-1) omega
               + s * sqrt(4 k g^2 (n-l) + (delta-omega)^2)] / 2
    for l = 0..k-1, s = +-1, each with degeneracy C(k-1, l).
    """
    _check_f2_regime(k, n)
    levels = []
    for l in range(k):
        root = math.sqrt(4.0 * k * g * g * (n - l) + (delta - omega) ** 2)
        base = (2 * l + 1) * delta + (2 * (n - l) - 1) * omega
        degeneracy = math.comb(k - 1, l)
        levels.append((0.5 * (base + root), degeneracy))
        levels.append((0.5 * (base - root), degeneracy))
    return LabeledSpectrum(tuple(levels))


def exact_f2_deformed(
    k: int, n: int, omega: float, delta: float, g: float, phi: Deformation
) -> LabeledSpectrum:
    """Spectrum of the F=2 block with a deformed oscillator, n >= k.

    E(s, l) = [(2(k-l)-1) delta + s * R(l)
               + (phi(n-k+l) + phi(n-k+l+1)) omega] / 2,
    R(l)^2 = (delta + omega phi(n-k+l))^2
             + phi(n-k+l+1) (4 k g^2 - 2 omega delta
                             - 2 omega^2 phi(n-k+l) + omega^2 phi(n-k+l+1)).
    Degeneracy C(k-1, l); reduces to the undeformed multiset for phi(x) = x.
    """
    _check_f2_regime(k, n)
    levels = []
    for l in range(k):
        lo = evaluate(phi, n - k + l)
        hi = evaluate(phi, n - k + l + 1)
        radicand = (delta + omega * lo) ** 2 + hi * (
            4.0 * k * g * g - 2.0 * omega * delta - 2.0 * omega * omega * lo + omega * omega * hi
        )
        if radicand < 0.0:
            raise NumericalError(
                "negative radicand in the deformed F=2 level formula "
                f"(k={k}, n={n}, l={l}, omega={omega}, delta={delta}, g={g})"
            )
        root = math.sqrt(radicand)
        base = (2 * (k - l) - 1) * delta + (lo + hi) * omega
        degeneracy = math.comb(k - 1, l)
        levels.append((0.5 * (base + root), degeneracy))
        levels.append((0.5 * (base - root), degeneracy))
    return LabeledSpectrum(tuple(levels))


def _depressed_cubic_roots_real(c: float, q0: float) -> list[float]:
    """Real roots of x^3 - c x + q0 = 0 by the trigonometric method (requires c > 0)."""
    p = -c
    amp = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q0 / (2.0 * p) * math.sqrt(-3.0 / p)
    arg = min(1.0, max(-1.0, arg))
    phase = math.acos(arg)
    return [amp * math.cos((phase - 2.0 * math.pi * j) / 3.0) for j in range(3)]


def exact_f3_k1(n: int, omega: float, delta: float, g: float) -> LabeledSpectrum:
    """Spectrum of the 3x3 block for F=3, k=1 in the saturated regime n >= 3.

    The levels are delta + (n-1) omega plus the roots of the depressed cubic
    x^3 - c x + g^2 (delta - omega) with c = g^2 (2n - 1) + (delta - omega)^2.
    The radical form evaluates

        E(l) = delta + (n-1) omega + e^{-2 pi i l / 3} W / (3 * 2^(1/3))
               + e^{+2 pi i l / 3} 2^(1/3) c / W,
        W^3 = sqrt(-108 c^3 + 729 g^4 (delta-omega)^2) + 27 g^2 (omega - delta)

    with principal branches; when all three real eigenvalues are distinct the
    inner square root is imaginary and the principal-branch combination is
    automatically real.  If residual imaginary parts exceed tolerance the
    trigonometric real-root solver takes over, and a vanishing W falls back to
    companion-matrix roots.
    """
    if int(n) != n:
        raise ParameterError(f"n must be an integer, got {n}")
    if n < 3:
        raise OutOfRegimeError(f"F=3, k=1 closed form needs n >= 3, got n={n}")
    shift = delta + (n - 1) * omega
    c = g * g * (2 * n - 1) + (delta - omega) ** 2
    q0 = g * g * (delta - omega)
    inner = complex(-108.0 * c ** 3 + 729.0 * g ** 4 * (delta - omega) ** 2)
    w_cubed = cmath.sqrt(inner) + 27.0 * g * g * (omega - delta)
    scale = 1.0 + abs(shift) + math.sqrt(c)
    if abs(w_cubed) < 1e-30:
        # degenerate cubic; companion-matrix roots of x^3 - c x + q0
        logger.info("cubic solver: W = 0, falling back to companion-matrix roots")
        roots = np.roots([1.0, 0.0, -c, q0])
        if np.max(np.abs(roots.imag)) > _REALNESS_TOL * scale:
            raise NumericalError(f"companion roots not real (n={n}, omega={omega}, delta={delta}, g={g})")
        values = sorted(float(r) for r in roots.real)
    else:
        w = w_cubed ** (1.0 / 3.0)
        candidates = []
        for l in range(3):
            term = (
                cmath.exp(-2j * cmath.pi * l / 3) * w / (3.0 * 2.0 ** (1.0 / 3.0))
                + cmath.exp(2j * cmath.pi * l / 3) * 2.0 ** (1.0 / 3.0) * c / w
            )
            candidates.append(term)
        if max(abs(t.imag) for t in candidates) <= _REALNESS_TOL * scale:
            values = sorted(t.real for t in candidates)
        else:
            logger.info("cubic solver: principal branch left imaginary residue, using trigonometric roots")
            values = sorted(_depressed_cubic_roots_real(c, q0))
    return LabeledSpectrum(tuple((shift + v, 1) for v in values))


def semiclassical_levels_f2(
    k: int, n: int, hbar: float, omega: float, delta: float, g: float
) -> LabeledSpectrum:
    """Levels for F=2 linearized in hbar (structure function hbar*x), n > k.

    E(s, l) = [2 g^2 k s hbar (l+n-k+1) + delta^2 (2k - 2l + s - 1)
               + delta omega hbar (2l + 2n - 2k - s + 1)] / (2 delta),
    s = +-1, l = 0..k-1, degeneracy C(k-1, l).
    """
    if k < 1 or int(k) != k:
        raise ParameterError(f"k must be an integer >= 1, got {k}")
    if n <= k:
        raise OutOfRegimeError(f"linearized F=2 levels need n > k, got n={n}, k={k}")
    if delta == 0.0:
        raise ParameterError("linearized levels expand about delta != 0")
    levels = []
    for l in range(k):
        degeneracy = math.comb(k - 1, l)
        for s in (+1, -1):
            value = (
                2.0 * g * g * k * s * hbar * (l + n - k + 1)
                + delta * delta * (2 * k - 2 * l + s - 1)
                + delta * omega * hbar * (2 * l + 2 * n - 2 * k - s + 1)
            ) / (2.0 * delta)
            levels.append((value, degeneracy))
    return LabeledSpectrum(tuple(levels))


def semiclassical_z_f2(
    k: int, n: int, hbar: float, omega: float, delta: float, g: float, beta: float = 1.0
) -> float:
    """Degeneracy-weighted Boltzmann sum over the linearized F=2 levels.

    Evaluated through a shifted exponential sum so large exponents cannot
    overflow; at beta = 1 it reproduces ``semiclassical_z_f2_closed_form``.
    """
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    spectrum = semiclassical_levels_f2(k, n, hbar, omega, delta, g)
    exponents = np.array([-beta * value for value, _ in spectrum.levels])
    weights = np.array([degeneracy for _, degeneracy in spectrum.levels], dtype=np.float64)
    shift = float(np.max(exponents))
    return float(math.exp(shift) * np.sum(weights * np.exp(exponents - shift)))


def semiclassical_z_f2_closed_form(
    k: int, n: int, hbar: float, omega: float, delta: float, g: float
) -> float:
    """Explicit two-term evaluation of the linearized F=2 partition sum (beta = 1)."""
    if k < 1 or int(k) != k:
        raise ParameterError(f"k must be an integer >= 1, got {k}")
    if n <= k:
        raise OutOfRegimeError(f"closed-form Z needs n > k, got n={n}, k={k}")
    if delta == 0.0:
        raise ParameterError("closed-form Z expands about delta != 0")
    e = math.exp
    gk = g * g * k
    try:
        term_minus = (
            (e(delta - gk * hbar / delta - omega * hbar) + 1.0) ** k
            / (e(delta) + e(hbar * (gk / delta + omega)))
            * e(hbar * (delta * omega + (k - n) * (delta * omega + gk)) / delta - delta * k)
        )
        term_plus = (
            (e(delta + gk * hbar / delta - omega * hbar) + 1.0) ** k
            / (e(delta + gk * hbar / delta) + e(omega * hbar))
            * e(delta + gk * hbar * (-k + n + 1) / delta - delta * k + omega * hbar * (k - n))
        )
    except OverflowError as exc:
        # unshifted exponentials; the summed form stays finite much longer
        raise NumericalError(
            f"closed-form partition overflow (k={k}, n={n}, hbar={hbar}, "
            f"omega={omega}, delta={delta}, g={g}); use semiclassical_z_f2"
        ) from exc
    return term_minus + term_plus


def semiclassical_z_k1(
    F: int, n: int, hbar: float, omega: float, delta: float, g: float, beta: float = 1.0
) -> float:
    """Linearized partition sum for a single mode of generic order F, n > F-1.

    Three groups of terms: the weight-0 branch, the fully occupied branch, and
    a ladder over intermediate weights s = 1..F-2; every exponent is
    multiplied by beta.
    """
    if int(F) != F or F < 2:
        raise ParameterError(f"F must be an integer >= 2, got {F}")
    if not beta > 0:
        raise ParameterError(f"beta must be positive, got {beta}")
    if delta == 0.0:
        raise ParameterError("linearized Z expands about delta != 0")
    if n <= F - 1:
        raise OutOfRegimeError(f"single-mode linearized Z needs n > F-1, got n={n}, F={F}")
    exponents = [
        -hbar * n * (delta * omega - g * g) / delta,
        delta * (1 - F) - g * g * (n - F + 2) * hbar / delta - (n + 1 - F) * omega * hbar,
    ]
    for s in range(1, F - 1):
        exponents.append(-omega * hbar * (n - s) - g * g * hbar / delta - delta * s)
    arr = beta * np.asarray(exponents)
    shift = float(np.max(arr))
    return float(math.exp(shift) * np.sum(np.exp(arr - shift)))
