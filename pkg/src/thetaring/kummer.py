"""Kummer quartic data from symplectic parameters.

Pipeline: four theta constants (g, h, j, k) in degree two; the five
symmetric quartic expressions in the degree-one orbit generators computed
through the quotient-ring product; their expansion over a four-element
basis of degree-four combinations; and the one-dimensional kernel of that
expansion, whose normalized form (1, A, B, C, D) supplies the quartic

    sum_i Xi^4 + A(X0^2 X1^2 + X2^2 X3^2) + B(X0^2 X2^2 + X1^2 X3^2)
        + C(X0^2 X3^2 + X1^2 X2^2) + D X0 X1 X2 X3.

Coefficients are validated two independent ways: the kernel route above and
closed-form rational expressions in (g, h, j, k).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegeneracyError, ModelError
from .rings import (
    RingElement,
    RingFamily,
    RingKind,
    cached_theta,
    generators,
    product_kummer,
)
from .theta import PeriodMatrix

GENERICITY_RTOL = 1e-10
KERNEL_RTOL = 1e-9
DUAL_ROUTE_RTOL = 1e-9
SUPPORT_LEAK_RTOL = 1e-9

#: The seven genericity conditions on (g, h, j, k), in report order.
GENERICITY_NAMES = (
    "gh_vs_jk",
    "gj_vs_hk",
    "gk_vs_hj",
    "g2h2_vs_j2k2",
    "g2j2_vs_h2k2",
    "g2k2_vs_h2j2",
    "sum_of_squares_nonzero",
)

#: Degree-4 monomial exponents in report order; the coefficient vector is
#: (1, 1, 1, 1, A, A, B, B, C, C, D).
QUARTIC_MONOMIALS = (
    (4, 0, 0, 0),
    (0, 4, 0, 0),
    (0, 0, 4, 0),
    (0, 0, 0, 4),
    (2, 2, 0, 0),
    (0, 0, 2, 2),
    (2, 0, 2, 0),
    (0, 2, 0, 2),
    (2, 0, 0, 2),
    (0, 2, 2, 0),
    (1, 1, 1, 1),
)


@dataclass(frozen=True)
class QuarticData:
    g: complex
    h: complex
    j: complex
    k: complex
    A: complex
    B: complex
    C: complex
    D: complex
    genericity: dict
    expansion_matrix: np.ndarray
    kernel_residual: float


@dataclass(frozen=True)
class QuarticPolynomial:
    """Sparse quartic supported on the nine symmetric monomial shapes."""

    coeffs: dict

    def coefficient_vector(self) -> list[complex]:
        return [complex(self.coeffs.get(m, 0.0)) for m in QUARTIC_MONOMIALS]

    def __str__(self) -> str:
        parts = []
        for mono in QUARTIC_MONOMIALS:
            c = self.coeffs.get(mono, 0.0)
            if c == 0.0:
                continue
            name = "*".join(
                f"X{i}" if e == 1 else f"X{i}^{e}" for i, e in enumerate(mono) if e
            )
            if c == 1.0:
                parts.append(name)
            else:
                parts.append(f"({c.real:.12g}{c.imag:+.12g}i)*{name}")
        return " + ".join(parts) if parts else "0"


def compute_ghjk(period: PeriodMatrix, eps: float = 1e-14):
    """The four degree-two theta-constant combinations (g, h, j, k)."""

    def th(a1, a2):
        return cached_theta(period, a1, a2, 0.0, 0.0, 2, 2, eps)

    g = 0.5 * (th(0, 0) + th(4, 0) + th(0, 4) + th(4, 4))
    h = th(2, 0) + th(2, 4)
    j = th(0, 2) + th(4, 2)
    k = th(2, 2) + th(6, 2)
    return g, h, j, k


def degree_one_elements(family: RingFamily) -> list[RingElement]:
    """The four orbit generators X0..X3 of the quotient ring in degree 1."""
    if family.kind is not RingKind.KUMMER:
        raise ValueError("expected a Kummer family")
    order = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert sorted(order) == generators(family, 1)
    return [RingElement.generator(family, 1, idx) for idx in order]


def quartic_combinations(period: PeriodMatrix, eps: float = 1e-14) -> list[RingElement]:
    """The five symmetric quartics [sum Xi^4, X0^2X1^2 + X2^2X3^2,
    X0^2X2^2 + X1^2X3^2, X0^2X3^2 + X1^2X2^2, X0X1X2X3], each evaluated
    with balanced degree doubling (1,1 -> 2; 2,2 -> 4)."""
    family = RingFamily(RingKind.KUMMER, period, eps=eps)
    x = degree_one_elements(family)
    sq = [product_kummer(xi, xi) for xi in x]

    power_sum = product_kummer(sq[0], sq[0])
    for i in (1, 2, 3):
        power_sum = power_sum + product_kummer(sq[i], sq[i])
    pair01 = product_kummer(sq[0], sq[1]) + product_kummer(sq[2], sq[3])
    pair02 = product_kummer(sq[0], sq[2]) + product_kummer(sq[1], sq[3])
    pair03 = product_kummer(sq[0], sq[3]) + product_kummer(sq[1], sq[2])
    full = product_kummer(product_kummer(x[0], x[1]), product_kummer(x[2], x[3]))
    return [power_sum, pair01, pair02, pair03, full]


def expansion_basis(period: PeriodMatrix, eps: float = 1e-14) -> list[RingElement]:
    """The four degree-4 combinations the quartics expand over: the full
    even-corner sum and the three two-term even pairs."""
    family = RingFamily(RingKind.KUMMER, period, eps=eps)
    groups = [
        [(0, 0), (4, 0), (0, 4), (4, 4)],
        [(2, 0), (2, 4)],
        [(0, 2), (4, 2)],
        [(2, 2), (2, 6)],
    ]
    return [
        RingElement(family, 4, {idx: 1.0 for idx in group}) for group in groups
    ]


def _closed_form_matrix(g, h, j, k) -> np.ndarray:
    return np.array(
        [
            [8 * g**3, 4 * h**2 * g, 4 * j**2 * g, 4 * k**2 * g, 2 * j * k * h],
            [8 * h**3, 4 * g**2 * h, 4 * k**2 * h, 4 * j**2 * h, 2 * j * k * g],
            [8 * j**3, 4 * k**2 * j, 4 * g**2 * j, 4 * h**2 * j, 2 * h * g * k],
            [8 * k**3, 4 * j**2 * k, 4 * h**2 * k, 4 * g**2 * k, 2 * h * g * j],
        ],
        dtype=complex,
    )


def expansion_matrix(period: PeriodMatrix, eps: float = 1e-14) -> np.ndarray:
    """4x5 matrix expressing the five quartics over the four basis
    combinations (rows: basis, columns: quartics).

    Computed by reading coefficients off the ring products, then
    cross-checked against the closed-form monomial matrix in (g, h, j, k)
    up to per-row rescaling; disagreement or support leaking outside the
    basis raises ModelError.
    """
    quartics = quartic_combinations(period, eps)
    basis = expansion_basis(period, eps)
    basis_support = [sorted(z.support()) for z in basis]
    allowed = set().union(*basis_support)

    scale = max(w.sup_norm() for w in quartics)
    matrix = np.zeros((4, 5), dtype=complex)
    for c, w in enumerate(quartics):
        leak = max(
            (abs(coeff) for key, coeff in w.items() if key not in allowed),
            default=0.0,
        )
        if leak > SUPPORT_LEAK_RTOL * scale:
            raise ModelError(
                f"quartic {c} leaks {leak:.3e} outside the expansion basis"
            )
        for r, keys in enumerate(basis_support):
            values = [w.coeff(key) for key in keys]
            spread = max(abs(v - values[0]) for v in values)
            if spread > SUPPORT_LEAK_RTOL * scale:
                raise ModelError(
                    f"quartic {c} is not constant on basis combination {r} "
                    f"(spread {spread:.3e})"
                )
            matrix[r, c] = values[0]

    closed = _closed_form_matrix(*compute_ghjk(period, eps))
    for r in range(4):
        anchor = int(np.argmax(np.abs(closed[r])))
        ratio = matrix[r, anchor] / closed[r, anchor]
        dev = float(np.max(np.abs(matrix[r] - ratio * closed[r])))
        if dev > SUPPORT_LEAK_RTOL * float(np.max(np.abs(matrix[r]))):
            raise ModelError(
                f"expansion row {r} disagrees with its closed form "
                f"(deviation {dev:.3e} after rescaling by {ratio:.6g})"
            )
    return matrix


def _separated(x: complex, y: complex, scale: float) -> bool:
    # Distinguishable from both +y and -y at the relative threshold; two
    # identically null quantities are not reported as a violation.
    if scale == 0.0:
        return True
    cut = GENERICITY_RTOL * scale
    return abs(x - y) > cut and abs(x + y) > cut


def genericity_check(g: complex, h: complex, j: complex, k: complex) -> dict:
    """Evaluate the seven genericity conditions; True means satisfied."""
    g, h, j, k = complex(g), complex(h), complex(j), complex(k)
    sq = [g * g, h * h, j * j, k * k]
    sum_scale = sum(abs(t) for t in sq)
    checks = {
        "gh_vs_jk": _separated(g * h, j * k, max(abs(g * h), abs(j * k))),
        "gj_vs_hk": _separated(g * j, h * k, max(abs(g * j), abs(h * k))),
        "gk_vs_hj": _separated(g * k, h * j, max(abs(g * k), abs(h * j))),
        "g2h2_vs_j2k2": abs(sq[0] + sq[1] - sq[2] - sq[3]) > GENERICITY_RTOL * sum_scale,
        "g2j2_vs_h2k2": abs(sq[0] + sq[2] - sq[1] - sq[3]) > GENERICITY_RTOL * sum_scale,
        "g2k2_vs_h2j2": abs(sq[0] + sq[3] - sq[1] - sq[2]) > GENERICITY_RTOL * sum_scale,
        "sum_of_squares_nonzero": abs(sum(sq)) > GENERICITY_RTOL * sum_scale,
    }
    if sum_scale == 0.0:
        checks["sum_of_squares_nonzero"] = False
    return checks


def _closed_form_coefficients(g, h, j, k):
    g2, h2, j2, k2 = g * g, h * h, j * j, k * k
    den_a = h2 * g2 - j2 * k2
    den_b = j2 * g2 - h2 * k2
    den_c = k2 * g2 - j2 * h2
    scale = max(abs(g), abs(h), abs(j), abs(k)) ** 4
    for name, den in (("gh_vs_jk", den_a), ("gj_vs_hk", den_b), ("gk_vs_hj", den_c)):
        if abs(den) <= GENERICITY_RTOL * scale:
            raise DegeneracyError(
                f"closed-form denominator vanishes (condition {name})", condition=name
            )
    a = (j2 * j2 + k2 * k2 - h2 * h2 - g2 * g2) / den_a
    b = (k2 * k2 + h2 * h2 - j2 * j2 - g2 * g2) / den_b
    c = (h2 * h2 + j2 * j2 - k2 * k2 - g2 * g2) / den_c
    d = (
        2.0
        * h
        * j
        * k
        * g
        * (g2 + h2 - j2 - k2)
        * (g2 + j2 - k2 - h2)
        * (g2 - h2 - j2 + k2)
        * (h2 + j2 + k2 + g2)
        / (den_a * den_b * den_c)
    )
    return a, b, c, d


def quartic_coefficients(period: PeriodMatrix, eps: float = 1e-14) -> QuarticData:
    """Quartic coefficients (A, B, C, D) with dual-route validation.

    The kernel of the expansion matrix, normalized to (1, A, B, C, D),
    must match the closed forms in (g, h, j, k) to DUAL_ROUTE_RTOL.
    Raises DegeneracyError naming the first violated genericity condition.
    """
    g, h, j, k = compute_ghjk(period, eps)
    checks = genericity_check(g, h, j, k)
    for name, ok in checks.items():
        if not ok:
            raise DegeneracyError(
                f"period is degenerate: genericity condition {name} fails",
                condition=name,
            )

    matrix = expansion_matrix(period, eps)
    kernel = linalg.nullspace(matrix, KERNEL_RTOL)
    if len(kernel) != 1:
        raise ModelError(
            f"expected a one-dimensional kernel, found {len(kernel)} vectors"
        )
    vec = kernel[0]
    residual = linalg.norm_inf(matrix @ vec) / (
        linalg.norm_inf(matrix) * linalg.norm_inf(vec)
    )

    closed = _closed_form_coefficients(g, h, j, k)
    for label, got, want in zip("ABCD", vec[1:], closed):
        dev = abs(got - want)
        if dev > DUAL_ROUTE_RTOL * max(abs(got), abs(want)):
            raise ModelError(
                f"coefficient {label} disagrees between kernel and closed form: "
                f"{got} vs {want}"
            )

    return QuarticData(
        g=g,
        h=h,
        j=j,
        k=k,
        A=complex(vec[1]),
        B=complex(vec[2]),
        C=complex(vec[3]),
        D=complex(vec[4]),
        genericity=checks,
        expansion_matrix=matrix,
        kernel_residual=float(residual),
    )


def emit_quartic(data: QuarticData) -> QuarticPolynomial:
    """Assemble the nine-monomial quartic from validated coefficients."""
    a, b, c, d = data.A, data.B, data.C, data.D
    weights = [1.0, 1.0, 1.0, 1.0, a, a, b, b, c, c, d]
    return QuarticPolynomial(
        coeffs={m: complex(w) for m, w in zip(QUARTIC_MONOMIALS, weights)}
    )


def central_relation_residual(period: PeriodMatrix, eps: float = 1e-14):
    """Sup-norm of W0 + A*W1 + B*W2 + C*W3 + D*W4 in ring degree 4,
    relative to the largest quartic; returns (residual, data)."""
    data = quartic_coefficients(period, eps)
    quartics = quartic_combinations(period, eps)
    combo = quartics[0]
    for coeff, w in zip((data.A, data.B, data.C, data.D), quartics[1:]):
        combo = combo + coeff * w
    scale = max(w.sup_norm() for w in quartics)
    return combo.sup_norm() / scale, data
