"""Height-pairing Gram matrices, their determinants and independence verdicts."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from ..curve import INFINITY, Curve, CurvePoint, add, curve_to_json, point_to_json
from ..numeric import DEFAULT_PRECISION, Real
from .canonical import Normalization, canonical_height

DEFAULT_EPSILON = Decimal("1e-4")
# the threshold must dominate the determinant's error bound by this factor
SAFETY_FACTOR = 1000


class Status(str, enum.Enum):
    INDEPENDENT = "independent"
    NOT_CERTIFIED = "not_certified"
    INDETERMINATE = "indeterminate"


def gram_matrix(E: Curve, points: Sequence[CurvePoint], precision: int = DEFAULT_PRECISION,
                normalization: Normalization | str = Normalization.BSD) -> list[list[Real]]:
    """Symmetric matrix of pairings ``<P_i, P_j>``."""
    zero = Real(Decimal(0), Decimal(0), precision)

    def h(P: CurvePoint) -> Real:
        if P is INFINITY:
            return zero
        return canonical_height(E, P, precision, normalization=normalization).value

    diag = [h(P) for P in points]
    n = len(points)
    G = [[zero] * n for _ in range(n)]
    for i in range(n):
        G[i][i] = diag[i]
        for j in range(i + 1, n):
            G[i][j] = G[j][i] = (h(add(E, points[i], points[j])) - diag[i] - diag[j]) / 2
    return G


def determinant(M: list[list[Real]]) -> Real:
    """Cofactor expansion along the first row, memoized on column subsets."""
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    memo: dict[tuple[int, frozenset], Real] = {}

    def minor(row: int, cols: frozenset) -> Real:
        if row == n - 1:
            (c,) = cols
            return M[row][c]
        key = (row, cols)
        if key not in memo:
            acc = None
            for k, c in enumerate(sorted(cols)):
                term = M[row][c] * minor(row + 1, cols - {c})
                if k % 2:
                    term = -term
                acc = term if acc is None else acc + term
            memo[key] = acc
        return memo[key]

    return minor(0, frozenset(range(n)))


def leading_minors(M: list[list[Real]]) -> list[Real]:
    return [determinant([row[:k] for row in M[:k]]) for k in range(1, len(M) + 1)]


@dataclass
class RegulatorReport:
    curve: Curve
    points: list[CurvePoint]
    gram: list[list[Real]]
    det: Real
    epsilon: Decimal
    status: Status
    basis: list[int]  # indices of a greedily chosen independent subset

    @property
    def rank_lower_bound(self) -> int:
        return len(self.basis)

    @property
    def precision(self) -> int:
        return self.det.precision

    @property
    def independent(self) -> bool:
        return self.status is Status.INDEPENDENT

    def to_json(self, digits: int | None = None) -> dict:
        return {
            "det": self.det.to_string(digits),
            "det_error": f"{self.det.error:.2e}",
            "precision": self.precision,
            "epsilon": format(self.epsilon, "e"),
            "independent": self.independent,
            "status": self.status.value,
            "rank_lower_bound": self.rank_lower_bound,
            "basis": self.basis,
            "gram": [[x.to_string(digits) for x in row] for row in self.gram],
            "curve": curve_to_json(self.curve),
            "points": [point_to_json(P) for P in self.points],
        }


def _verdict(det: Real, epsilon: Decimal) -> Status:
    if epsilon <= SAFETY_FACTOR * det.error:
        return Status.INDETERMINATE
    if det.value.copy_abs() > epsilon:
        return Status.INDEPENDENT
    return Status.NOT_CERTIFIED


def independent_subset(G: list[list[Real]], epsilon: Decimal) -> list[int]:
    """Indices kept by adding points in order while the sub-determinant is certified."""
    keep: list[int] = []
    for i in range(len(G)):
        trial = keep + [i]
        sub = [[G[r][c] for c in trial] for r in trial]
        if _verdict(determinant(sub), epsilon) is Status.INDEPENDENT:
            keep = trial
    return keep


def regulator(E: Curve, points: Sequence[CurvePoint], precision: int = DEFAULT_PRECISION,
              epsilon: Decimal | str | float = DEFAULT_EPSILON, *,
              normalization: Normalization | str = Normalization.BSD) -> RegulatorReport:
    """Gram determinant of ``points`` and the rank lower bound it certifies.

    The points are independent when ``|det| > epsilon``.  That verdict is only
    issued when ``epsilon`` exceeds 1000 times the determinant's error bound;
    otherwise the status is ``indeterminate``.  Without full independence the
    bound comes from a greedily grown independent subset.
    """
    points = list(points)
    if not points:
        raise ValueError("regulator needs at least one point")
    for P in points:
        if not E.contains(P):
            raise ValueError(f"{P!r} is not on {E}")
    epsilon = Decimal(str(epsilon))
    G = gram_matrix(E, points, precision, normalization)
    det = determinant(G)
    status = _verdict(det, epsilon)
    basis = list(range(len(points))) if status is Status.INDEPENDENT else independent_subset(G, epsilon)
    return RegulatorReport(E, points, G, det, epsilon, status, basis)
