"""Two-variable exponential lattice sums with certified truncation.

The evaluator computes

    sum_{m,n in Z} exp(2*pi*i*s*l * (tau1*u**2 + 2*tau3*u*v + tau2*v**2))

with

    u = m + a1/(2*s*l) + b1/2,    v = n + a2/(2*s*l) + b2/2,

for integer characteristics (a1, a2), real translations (b1, b2), degree
l >= 1 and shear parameter s >= 1.  The shear selects the family: s=2 gives
the quarter-characteristic sums used by the Kummer pipeline, s=3 the
sixth-characteristic sums with translations used by the relation generator.

Absolute convergence requires the imaginary part of the symmetric matrix
[[tau1, tau3], [tau3, tau2]] to be positive definite; that is enforced at
``PeriodMatrix`` construction.  Summation is over a centered box whose
radius is chosen from a Gaussian comparison bound, accumulated row-major
with exact (fsum) accumulation so results are deterministic.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, PrecisionError

_FLOAT_EPS = sys.float_info.epsilon
_MAX_RADIUS = 100_000


@dataclass(frozen=True)
class PeriodMatrix:
    """Complex symplectic parameters (tau1, tau2, tau3).

    The imaginary part of [[tau1, tau3], [tau3, tau2]] must be positive
    definite: Im(tau1) > 0, Im(tau2) > 0 and
    Im(tau1)*Im(tau2) - Im(tau3)**2 > 0.
    """

    tau1: complex
    tau2: complex
    tau3: complex

    def __post_init__(self):
        object.__setattr__(self, "tau1", complex(self.tau1))
        object.__setattr__(self, "tau2", complex(self.tau2))
        object.__setattr__(self, "tau3", complex(self.tau3))
        i1, i2, i3 = self.tau1.imag, self.tau2.imag, self.tau3.imag
        if not (i1 > 0.0 and i2 > 0.0 and i1 * i2 - i3 * i3 > 0.0):
            raise DomainError(
                "period matrix must have positive-definite imaginary part: "
                f"Im tau1={i1!r}, Im tau2={i2!r}, Im tau3={i3!r}"
            )

    def min_imag_eigenvalue(self) -> float:
        """Smallest eigenvalue of the imaginary part (2x2 closed form)."""
        i1, i2, i3 = self.tau1.imag, self.tau2.imag, self.tau3.imag
        return 0.5 * ((i1 + i2) - math.hypot(i1 - i2, 2.0 * i3))


@dataclass(frozen=True)
class ThetaArgs:
    """Characteristics (a1, a2), translations (b1, b2), degree l, shear s."""

    a1: int
    a2: int
    b1: float = 0.0
    b2: float = 0.0
    l: int = 1
    s: int = 2

    def __post_init__(self):
        if self.l < 1:
            raise ValueError(f"degree l must be >= 1, got {self.l}")
        if self.s < 1:
            raise ValueError(f"shear s must be >= 1, got {self.s}")


@dataclass(frozen=True)
class Tolerance:
    """Requested absolute truncation error."""

    abs_eps: float = 1e-14

    def __post_init__(self):
        if not self.abs_eps > 0.0:
            raise ValueError(f"abs_eps must be positive, got {self.abs_eps}")


def _reduced_offsets(args: ThetaArgs) -> tuple[float, float]:
    # Shifting either offset by an integer reindexes the lattice, so both
    # can be centered into [-1/2, 1/2] without changing the sum.
    denom = 2 * args.s * args.l
    off1 = args.a1 / denom + args.b1 / 2.0
    off2 = args.a2 / denom + args.b2 / 2.0
    return off1 - round(off1), off2 - round(off2)


def _tail_bound(decay: float, radius: int) -> float:
    """Upper bound for sum_{k>radius} 8*k*exp(-decay*(k-1/2)^2).

    The shells of the integer box at Chebyshev distance k from the center
    hold 8k points, each at Euclidean distance >= k - 1/2 from the offset
    center.  Valid (finite) only where the shell weight is decreasing.
    """
    u0 = radius + 0.5
    if u0 * math.sqrt(2.0 * decay) < 1.0:
        return math.inf
    edge = math.exp(-decay * u0 * u0)
    integral = 4.0 * edge / decay + 2.0 * math.sqrt(math.pi / decay) * math.erfc(
        u0 * math.sqrt(decay)
    )
    return 8.0 * (radius + 1) * edge + integral


def truncation_radius(period: PeriodMatrix, args: ThetaArgs, tol: Tolerance) -> int:
    """Smallest box half-width R whose excluded tail is below tol.abs_eps.

    The box is centered at the integer point nearest the real minimizer of
    the exponent's decaying quadratic form; the tail is controlled through
    the smallest eigenvalue of the imaginary part of the form.
    """
    lam = period.min_imag_eigenvalue()
    if lam <= 0.0:
        raise DomainError(f"exponent form not positive definite: lambda_min={lam}")
    decay = 2.0 * math.pi * args.s * args.l * lam
    radius = 0
    while _tail_bound(decay, radius) > tol.abs_eps:
        radius += 1
        if radius > _MAX_RADIUS:
            raise PrecisionError(
                f"truncation radius exceeds {_MAX_RADIUS} for abs_eps={tol.abs_eps}"
            )
    return radius


def theta_general(
    period: PeriodMatrix, args: ThetaArgs, tol: Tolerance = Tolerance()
) -> complex:
    """Evaluate the lattice sum with absolute error at most tol.abs_eps.

    Half the budget goes to truncation, half to a certified floating-point
    bound; if the rounding floor alone exceeds the budget a
    ``PrecisionError`` is raised rather than returning an uncertified value.
    """
    half = Tolerance(tol.abs_eps / 2.0)
    radius = truncation_radius(period, args, half)
    off1, off2 = _reduced_offsets(args)

    span = np.arange(-radius, radius + 1, dtype=float)
    u = (span + off1)[:, None]
    v = (span + off2)[None, :]
    form = period.tau1 * u * u + 2.0 * period.tau3 * u * v + period.tau2 * v * v
    scale = 2.0 * math.pi * args.s * args.l
    terms = np.exp(1j * scale * form).ravel(order="C")

    value = complex(math.fsum(terms.real), math.fsum(terms.imag))
    magnitudes = np.abs(terms)
    rounding = _FLOAT_EPS * math.fsum(
        magnitudes * (2.0 + scale * np.abs(form).ravel(order="C"))
    )
    if rounding > half.abs_eps:
        raise PrecisionError(
            f"abs_eps={tol.abs_eps} not certifiable in double precision "
            f"(rounding floor {rounding:.3e})"
        )
    return value
