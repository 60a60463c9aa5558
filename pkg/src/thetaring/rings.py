"""Graded rings with theta-value structure constants.

Three families are supported: the shear-2 torus ring, its quotient by the
sign involution (the Kummer ring), and the shear-3 torus ring with a real
translation (b1, b2).  Degree-l generators are indexed by residue pairs
modulo shear*l; Kummer generators are sign-involution orbits of shear-2
indices.  Products of equal-degree elements follow the structure-constant
formula: the product of two degree-l generators is a four-term combination
of degree-2l generators weighted by lattice sums of degree l.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum

from .errors import UsageError
from .theta import PeriodMatrix, ThetaArgs, Tolerance, theta_general

COEFF_REL_TOL = 1e-12


class RingKind(str, Enum):
    TORUS_SHEAR2 = "torus2"
    TORUS_SHEAR3 = "torus3"
    KUMMER = "kummer"


@dataclass(frozen=True)
class RingFamily:
    """A ring choice: kind, period, translation (shear-3 torus only)."""

    kind: RingKind
    period: PeriodMatrix
    b1: float = 0.0
    b2: float = 0.0
    eps: float = 1e-14

    def __post_init__(self):
        object.__setattr__(self, "kind", RingKind(self.kind))
        if self.kind is not RingKind.TORUS_SHEAR3 and (self.b1, self.b2) != (0.0, 0.0):
            # The involution quotient (and the shear-2 product formula)
            # admit no translation.
            raise UsageError(f"translation not supported for {self.kind.value}")

    @property
    def shear(self) -> int:
        return 3 if self.kind is RingKind.TORUS_SHEAR3 else 2

    @property
    def is_torus(self) -> bool:
        return self.kind is not RingKind.KUMMER


@functools.lru_cache(maxsize=None)
def cached_theta(
    period: PeriodMatrix,
    a1: int,
    a2: int,
    b1: float,
    b2: float,
    l: int,
    s: int,
    eps: float,
) -> complex:
    return theta_general(period, ThetaArgs(a1, a2, b1, b2, l, s), Tolerance(eps))


def canonical_index(family: RingFamily, degree: int, a1: int, a2: int) -> tuple[int, int]:
    """Canonical representative of a generator index in degree ``degree``."""
    modulus = family.shear * degree
    pair = (a1 % modulus, a2 % modulus)
    if family.kind is RingKind.KUMMER:
        mirrored = ((-a1) % modulus, (-a2) % modulus)
        return min(pair, mirrored)
    return pair


def generators(family: RingFamily, degree: int) -> list[tuple[int, int]]:
    """All canonical generator indices in degree ``degree``.

    A shear-s torus has (s*degree)**2 of them; the Kummer quotient has
    2*(degree**2 + 1) orbit representatives.
    """
    if degree < 1:
        raise ValueError(f"degree must be >= 1, got {degree}")
    modulus = family.shear * degree
    if family.is_torus:
        return [(i, j) for i in range(modulus) for j in range(modulus)]
    seen = sorted(
        {canonical_index(family, degree, i, j) for i in range(modulus) for j in range(modulus)}
    )
    return seen


class RingElement:
    """Finitely supported complex combination of same-degree generators.

    Instances are immutable by convention: arithmetic returns new elements,
    and exact-zero coefficients are never stored.
    """

    __slots__ = ("family", "degree", "_coeffs")

    def __init__(self, family: RingFamily, degree: int, coeffs=None):
        acc: dict[tuple[int, int], complex] = {}
        for (a1, a2), c in (coeffs or {}).items():
            c = complex(c)
            if c == 0.0:
                continue
            key = canonical_index(family, degree, a1, a2)
            val = acc.get(key, 0.0) + c
            if val == 0.0:
                acc.pop(key, None)
            else:
                acc[key] = val
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_coeffs", acc)

    def __setattr__(self, name, value):
        raise AttributeError("RingElement is immutable")

    @classmethod
    def zero(cls, family: RingFamily, degree: int) -> "RingElement":
        return cls(family, degree, {})

    @classmethod
    def generator(cls, family: RingFamily, degree: int, index) -> "RingElement":
        return cls(family, degree, {tuple(index): 1.0})

    def coeff(self, index) -> complex:
        key = canonical_index(self.family, self.degree, *index)
        return self._coeffs.get(key, 0.0 + 0.0j)

    def items(self):
        return sorted(self._coeffs.items())

    def support(self):
        return set(self._coeffs)

    def sup_norm(self) -> float:
        return max((abs(c) for c in self._coeffs.values()), default=0.0)

    def is_negligible(self, scale: float, rel: float = COEFF_REL_TOL) -> bool:
        """True when every coefficient is below rel * scale."""
        return self.sup_norm() <= rel * scale

    def _require_compatible(self, other: "RingElement"):
        if self.family != other.family or self.degree != other.degree:
            raise UsageError("elements belong to different families or degrees")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._require_compatible(other)
        acc = dict(self._coeffs)
        for key, c in other._coeffs.items():
            acc[key] = acc.get(key, 0.0) + c
        return RingElement(self.family, self.degree, acc)

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-1.0) * other

    def __neg__(self) -> "RingElement":
        return (-1.0) * self

    def __mul__(self, scalar) -> "RingElement":
        scalar = complex(scalar)
        return RingElement(
            self.family, self.degree, {k: scalar * c for k, c in self._coeffs.items()}
        )

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RingElement)
            and self.family == other.family
            and self.degree == other.degree
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        return (
            f"RingElement({self.family.kind.value}, degree={self.degree}, "
            f"{len(self._coeffs)} terms)"
        )

    def to_record(self) -> dict:
        return {
            "family": self.family.kind.value,
            "degree": self.degree,
            "entries": [[a1, a2, c.real, c.imag] for (a1, a2), c in self.items()],
        }

    @classmethod
    def from_record(cls, family: RingFamily, record: dict) -> "RingElement":
        if record.get("family") != family.kind.value:
            raise UsageError(
                f"record family {record.get('family')!r} does not match "
                f"{family.kind.value!r}"
            )
        degree = int(record["degree"])
        coeffs = {}
        for a1, a2, re, im in record["entries"]:
            key = (int(a1), int(a2))
            coeffs[key] = coeffs.get(key, 0.0) + complex(re, im)
        return cls(family, degree, coeffs)


def structure_constant(family: RingFamily, x1: int, x2: int, l: int) -> complex:
    """Theta weight attached to index difference (x1, x2) in degree l."""
    modulus = 2 * family.shear * l
    return cached_theta(
        family.period,
        x1 % modulus,
        x2 % modulus,
        family.b1,
        family.b2,
        l,
        family.shear,
        family.eps,
    )


def product_torus(u: RingElement, v: RingElement) -> RingElement:
    """Bilinear product of equal-degree torus elements (degree doubles)."""
    u._require_compatible(v)
    family = u.family
    if not family.is_torus:
        raise UsageError("product_torus requires torus elements")
    s, l = family.shear, u.degree
    acc: dict[tuple[int, int], complex] = {}
    for (a1, a2), cu in u._coeffs.items():
        for (c1, c2), cv in v._coeffs.items():
            w = cu * cv
            for i in (0, 1):
                for j in (0, 1):
                    sc = structure_constant(family, c1 - a1 + s * l * i, c2 - a2 + s * l * j, l)
                    key = canonical_index(
                        family, 2 * l, a1 + c1 + s * l * i, a2 + c2 + s * l * j
                    )
                    acc[key] = acc.get(key, 0.0) + w * sc
    return RingElement(family, 2 * l, acc)


def kummer_family(torus: RingFamily) -> RingFamily:
    return RingFamily(RingKind.KUMMER, torus.period, eps=torus.eps)


def torus_family(kummer: RingFamily) -> RingFamily:
    return RingFamily(RingKind.TORUS_SHEAR2, kummer.period, eps=kummer.eps)


def kummer_project(u: RingElement) -> RingElement:
    """Identify sign-involution orbits; coefficients of identified
    generators add."""
    if u.family.kind is not RingKind.TORUS_SHEAR2:
        raise UsageError("kummer_project expects a shear-2 torus element")
    target = kummer_family(u.family)
    acc: dict[tuple[int, int], complex] = {}
    for key, c in u._coeffs.items():
        orbit = canonical_index(target, u.degree, *key)
        acc[orbit] = acc.get(orbit, 0.0) + c
    return RingElement(target, u.degree, acc)


def kummer_lift(x: RingElement) -> RingElement:
    """Replace each orbit generator by the sum of its torus preimages."""
    if x.family.kind is not RingKind.KUMMER:
        raise UsageError("kummer_lift expects a Kummer element")
    target = torus_family(x.family)
    modulus = 2 * x.degree
    acc: dict[tuple[int, int], complex] = {}
    for (a1, a2), c in x._coeffs.items():
        preimages = {(a1, a2), ((-a1) % modulus, (-a2) % modulus)}
        for key in preimages:
            acc[key] = acc.get(key, 0.0) + c
    return RingElement(target, x.degree, acc)


def _orbit_average(u: RingElement) -> RingElement:
    """Project to the quotient with orbit-averaged coefficients."""
    target = kummer_family(u.family)
    modulus = 2 * u.degree
    acc: dict[tuple[int, int], complex] = {}
    for (a1, a2), c in u._coeffs.items():
        orbit = canonical_index(target, u.degree, a1, a2)
        size = 1 if ((-a1) % modulus, (-a2) % modulus) == (a1 % modulus, a2 % modulus) else 2
        acc[orbit] = acc.get(orbit, 0.0) + c / size
    return RingElement(target, u.degree, acc)


def product_kummer(x: RingElement, y: RingElement) -> RingElement:
    """Quotient-ring product: lift orbits to preimage sums, multiply on the
    torus, project back with orbit-averaged coefficients.

    Averaging makes lift-then-project the identity, so iterated products
    agree with products computed entirely inside the involution-invariant
    part of the torus ring; the additive projection would instead double
    every pass through a two-element orbit.
    """
    x._require_compatible(y)
    if x.family.kind is not RingKind.KUMMER:
        raise UsageError("product_kummer requires Kummer elements")
    return _orbit_average(product_torus(kummer_lift(x), kummer_lift(y)))
