"""Quadratic relation sets for the shear-3 torus ring with translation.

The nine degree-1 generators Z_ij, (i, j) in (Z/3)^2, satisfy 36 quadratic
relations: for each (i, j), the four commutators of opposite neighbors are
fixed linear combinations of the four matching anticommutators and the
square Z_ij^2.  The combination matrix is built from 36 degree-1 theta
constants and is the same for every (i, j); when the translation (b1, b2)
is integral it vanishes and the relations collapse to plain commutators.

Every relation is verified by evaluating it through the ring product: the
image in degree 2 must be the zero element up to a relative residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DegeneracyError, ModelError, SingularMatrixError
from .rings import RingElement, RingFamily, RingKind, cached_theta, product_torus
from .theta import PeriodMatrix

RELATION_RTOL = 1e-9
COMMUTATIVE_LIMIT_MATRIX_NORM = 1e-10

#: Index pairs (mod 6) whose theta constants form the five column vectors:
#: four sign-split neighbor columns plus the square column.
_SPLIT_COLUMNS = (
    (((2, 0), (4, 0)), ((5, 0), (1, 0)), ((2, 3), (4, 3)), ((5, 3), (1, 3))),
    (((0, 2), (0, 4)), ((3, 2), (3, 4)), ((0, 5), (0, 1)), ((3, 5), (3, 1))),
    (((2, 2), (4, 4)), ((5, 2), (1, 4)), ((2, 5), (4, 1)), ((5, 5), (1, 1))),
    (((2, 4), (4, 2)), ((5, 4), (1, 2)), ((2, 1), (4, 5)), ((5, 1), (1, 5))),
)
_SQUARE_COLUMN = ((0, 0), (3, 0), (0, 3), (3, 3))


@dataclass(frozen=True)
class ThetaConstants:
    """The 6x6 table of degree-1 theta constants for a (period, b) choice."""

    period: PeriodMatrix
    b1: float
    b2: float
    eps: float
    table: np.ndarray

    def value(self, i: int, j: int) -> complex:
        return complex(self.table[i % 6, j % 6])

    def max_magnitude(self) -> float:
        return float(np.max(np.abs(self.table)))


def theta_constants(
    period: PeriodMatrix, b1: float = 0.0, b2: float = 0.0, eps: float = 1e-14
) -> ThetaConstants:
    table = np.empty((6, 6), dtype=complex)
    for i in range(6):
        for j in range(6):
            table[i, j] = cached_theta(period, i, j, float(b1), float(b2), 1, 3, eps)
    table.setflags(write=False)
    return ThetaConstants(period, float(b1), float(b2), eps, table)


@dataclass(frozen=True)
class DeformationMatrix:
    """Row-solved 4x5 combination matrix with its building blocks.

    matrix[r] carries the anticommutator weights of commutator r, with an
    exact zero in column r; column 4 weights the square term.
    construction_log records the per-row condition numbers and the sign
    applied to each solved row.
    """

    v_plus: list
    v_minus: list
    v_square: np.ndarray
    matrix: np.ndarray
    construction_log: dict


def _split_vectors(tc: ThetaConstants):
    plus, minus = [], []
    for column in _SPLIT_COLUMNS:
        p = np.array([tc.value(*a) + tc.value(*b) for a, b in column], dtype=complex)
        m = np.array([tc.value(*a) - tc.value(*b) for a, b in column], dtype=complex)
        plus.append(p)
        minus.append(m)
    square = np.array([tc.value(*idx) for idx in _SQUARE_COLUMN], dtype=complex)
    return plus, minus, square


def build_deformation_matrix(tc: ThetaConstants) -> DeformationMatrix:
    """Solve the four 4x4 systems giving each commutator's expansion.

    Row r is obtained by removing column r from the stacked plus/square
    columns, solving against the minus column, and fixing the overall sign
    so the expansion reproduces the minus column (both candidate signs are
    compared; the choice is logged).  A singular 4x4 system means the
    (period, b) choice is degenerate.
    """
    plus, minus, square = _split_vectors(tc)
    stacked = np.column_stack(plus + [square])
    matrix = np.zeros((4, 5), dtype=complex)
    conds, signs = [], []
    for r in range(4):
        system = np.delete(stacked, r, axis=1)
        try:
            solved, cond = linalg.solve(system, -minus[r])
        except SingularMatrixError as exc:
            raise DegeneracyError(
                f"neighbor-column system {r} is singular (pivot {exc.pivot:.3e})",
                condition=f"system_{r}_nonsingular",
            ) from exc
        row = np.insert(solved, r, 0.0)
        res_plus = linalg.norm_inf(stacked @ row - minus[r])
        res_minus = linalg.norm_inf(stacked @ (-row) - minus[r])
        sign = 1.0 if res_plus <= res_minus else -1.0
        matrix[r] = sign * row
        conds.append(float(cond))
        signs.append(sign)
    return DeformationMatrix(
        v_plus=plus,
        v_minus=minus,
        v_square=square,
        matrix=matrix,
        construction_log={"condition_numbers": conds, "row_signs": signs},
    )


class FreeQuadratic:
    """Formal complex combination of ordered pairs of degree-1 generators."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        for key, c in (terms or {}).items():
            c = complex(c)
            if c == 0.0:
                continue
            a, b = key
            k = ((int(a[0]) % 3, int(a[1]) % 3), (int(b[0]) % 3, int(b[1]) % 3))
            val = acc.get(k, 0.0) + c
            if val == 0.0:
                acc.pop(k, None)
            else:
                acc[k] = val
        self._terms = acc

    def items(self):
        return sorted(self._terms.items())

    def __add__(self, other):
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0.0) + c
        return FreeQuadratic(acc)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        scalar = complex(scalar)
        return FreeQuadratic({k: scalar * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FreeQuadratic) and self._terms == other._terms

    def __repr__(self):
        return f"FreeQuadratic({len(self._terms)} terms)"

    def coefficient_row(self) -> np.ndarray:
        """Coefficients over the 81 ordered pairs, lex over (a1,a2,c1,c2)."""
        row = np.zeros(81, dtype=complex)
        for ((a1, a2), (c1, c2)), c in self._terms.items():
            row[27 * a1 + 9 * a2 + 3 * c1 + c2] = c
        return row


def _neighbor_pairs(i: int, j: int):
    return (
        ((i - 1, j), (i + 1, j)),
        ((i, j - 1), (i, j + 1)),
        ((i - 1, j - 1), (i + 1, j + 1)),
        ((i - 1, j + 1), (i + 1, j - 1)),
    )


def commutator_vector(i: int, j: int) -> list[FreeQuadratic]:
    """The four neighbor commutators attached to generator (i, j)."""
    return [
        FreeQuadratic({(a, b): 1.0, (b, a): -1.0}) for a, b in _neighbor_pairs(i, j)
    ]


def anticommutator_vector(i: int, j: int) -> list[FreeQuadratic]:
    """The four neighbor anticommutators plus the square of (i, j)."""
    out = [
        FreeQuadratic({(a, b): 1.0, (b, a): 1.0}) for a, b in _neighbor_pairs(i, j)
    ]
    out.append(FreeQuadratic({((i, j), (i, j)): 1.0}))
    return out


def evaluate_in_ring(q: FreeQuadratic, family: RingFamily) -> RingElement:
    """Degree-2 image of a formal quadratic under the ring product."""
    if family.kind is not RingKind.TORUS_SHEAR3:
        raise ValueError("free quadratics evaluate in the shear-3 torus ring")
    total = RingElement.zero(family, 2)
    for (a, b), c in q.items():
        left = RingElement.generator(family, 1, a)
        right = RingElement.generator(family, 1, b)
        total = total + c * product_torus(left, right)
    return total


@dataclass(frozen=True)
class RelationSet:
    """The 36 verified relations for one (period, b1, b2) choice."""

    period: PeriodMatrix
    b1: float
    b2: float
    eps: float
    deformation: DeformationMatrix
    relations: list  # (i, j, row, FreeQuadratic) in lex order
    residuals: list
    max_structure_constant: float

    @property
    def max_residual(self) -> float:
        return max(self.residuals)

    def passes(self, rtol: float = RELATION_RTOL) -> bool:
        return self.max_residual <= rtol

    def relation_rank(self, tol: float = RELATION_RTOL) -> int:
        """Rank of the 36 relation images inside the 81-dim quadratic space."""
        rows = np.array([q.coefficient_row() for (_, _, _, q) in self.relations])
        return linalg.rank(rows, tol)


def _relation(i, j, row, matrix) -> FreeQuadratic:
    anti = anticommutator_vector(i, j)
    expr = commutator_vector(i, j)[row]
    for c in range(5):
        w = matrix[row, c]
        if w != 0.0:
            expr = expr - w * anti[c]
    return expr


def generate_and_verify(
    period: PeriodMatrix,
    b1: float = 0.0,
    b2: float = 0.0,
    eps: float = 1e-14,
    rtol: float = RELATION_RTOL,
    strict: bool = True,
) -> RelationSet:
    """Build the 36 relations and verify each vanishes in ring degree 2.

    Residuals are sup-norms of the evaluated relations relative to the
    largest theta constant.  If a row fails with the constructed sign, its
    negation is tried through the ring; if both fail and strict is set, a
    ModelError with diagnostics is raised.
    """
    family = RingFamily(RingKind.TORUS_SHEAR3, period, float(b1), float(b2), eps)
    tc = theta_constants(period, b1, b2, eps)
    built = build_deformation_matrix(tc)
    matrix = built.matrix.copy()
    signs = list(built.construction_log["row_signs"])
    scale = tc.max_magnitude()

    def residual_of(i, j, row, mat):
        image = evaluate_in_ring(_relation(i, j, row, mat), family)
        return image.sup_norm() / scale

    # Fix row signs through the ring once, at (0, 0); the matrix is shared
    # by all nine index pairs.
    for row in range(4):
        res_keep = residual_of(0, 0, row, matrix)
        if res_keep <= rtol:
            continue
        flipped = matrix.copy()
        flipped[row] = -flipped[row]
        res_flip = residual_of(0, 0, row, flipped)
        if strict and res_flip > rtol:
            raise ModelError(
                f"relation row {row} fails under both sign choices "
                f"(residuals {res_keep:.3e} / {res_flip:.3e})"
            )
        if res_flip < res_keep:
            matrix = flipped
            signs[row] *= -1.0

    deformation = DeformationMatrix(
        v_plus=built.v_plus,
        v_minus=built.v_minus,
        v_square=built.v_square,
        matrix=matrix,
        construction_log={
            "condition_numbers": built.construction_log["condition_numbers"],
            "row_signs": signs,
        },
    )

    relations, residuals = [], []
    for i in range(3):
        for j in range(3):
            for row in range(4):
                expr = _relation(i, j, row, matrix)
                res = residual_of(i, j, row, matrix)
                relations.append((i, j, row, expr))
                residuals.append(float(res))
    if strict and max(residuals) > rtol:
        raise ModelError(
            f"relation verification failed: max residual {max(residuals):.3e} "
            f"> {rtol}"
        )
    return RelationSet(
        period=period,
        b1=float(b1),
        b2=float(b2),
        eps=eps,
        deformation=deformation,
        relations=relations,
        residuals=residuals,
        max_structure_constant=scale,
    )
