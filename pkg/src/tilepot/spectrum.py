"""Construction matrices over exact rationals and their solution spaces.

For a pot with p tile types and m bond-edge types, the augmented matrix has
one balance row per bond-edge type i (entry z[i][j] = unhatted count minus
hatted count of label i on tile j, right-hand side 0) and a final proportion
row (1, ..., 1 | 1).  Proportion vectors solving the system scale to integer
tile distributions whenever n times every entry is an integer.

No floating point anywhere: downstream order bounds rely on exact
comparisons.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .pots import CohesiveEnd, Pot, SingleBondPot


class NonIntegralScaleError(ValueError):
    """Scaling a proportion vector by n produced a fractional count."""


@dataclass(frozen=True)
class ConstructionMatrix:
    """Augmented (m+1) x (p+1) matrix of exact rationals."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        widths = {len(row) for row in self.rows}
        if len(widths) != 1:
            raise ValueError("all matrix rows must have equal length")

    @property
    def tile_count(self) -> int:
        return len(self.rows[0]) - 1


@dataclass(frozen=True)
class SpectrumPoint:
    """Rational proportions (r1, ..., rp), each in [0, 1], summing to 1."""

    proportions: tuple[Fraction, ...]

    def __post_init__(self):
        for r in self.proportions:
            if not 0 <= r <= 1:
                raise ValueError(f"proportion {r} outside [0, 1]")
        if sum(self.proportions) != 1:
            raise ValueError("proportions must sum to 1")


@dataclass(frozen=True)
class TileDistribution:
    """Nonnegative integer tile counts (R1, ..., Rp); order is their sum."""

    counts: tuple[int, ...]

    def __post_init__(self):
        for c in self.counts:
            if not isinstance(c, int) or c < 0:
                raise ValueError(f"counts must be nonnegative integers, got {self.counts}")

    @property
    def order(self) -> int:
        return sum(self.counts)

    def __iter__(self):
        return iter(self.counts)

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class SpectrumParameters:
    """Parameters (k, z) of the closed-form single-bond solution family.

    k = 0 would put a zero denominator in the closed form, so k >= 1.
    The upper bound on z depends on the pot and is checked at evaluation.
    """

    k: int
    z: Fraction

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        object.__setattr__(self, "z", Fraction(self.z))
        if self.z < 0:
            raise ValueError(f"z must be nonnegative, got {self.z}")


def z_matrix(pot: Pot) -> tuple[tuple[int, ...], ...]:
    """Integer net-end counts: row per bond-edge type, column per tile."""
    rows = []
    for label in pot.bond_edge_types:
        plain = CohesiveEnd(label)
        hat = CohesiveEnd(label, True)
        rows.append(tuple(tile.count(plain) - tile.count(hat) for tile in pot.tiles))
    return tuple(rows)


def balances(pot: Pot, counts: tuple[int, ...]) -> bool:
    """Whether integer counts zero out every balance row."""
    if len(counts) != pot.tile_count:
        raise ValueError(f"expected {pot.tile_count} counts, got {len(counts)}")
    return all(
        sum(z * c for z, c in zip(row, counts)) == 0 for row in z_matrix(pot)
    )


def construction_matrix(pot: Pot) -> ConstructionMatrix:
    rows = [
        tuple(Fraction(z) for z in row) + (Fraction(0),) for row in z_matrix(pot)
    ]
    rows.append(tuple(Fraction(1) for _ in range(pot.tile_count + 1)))
    return ConstructionMatrix(tuple(rows))


def rref(matrix: ConstructionMatrix) -> ConstructionMatrix:
    """Reduced row echelon form, exact.

    Pivots are chosen leftmost-first; within a column the topmost unused row
    is swapped up only when necessary, pivots are normalized to 1 and cleared
    above and below.  The result is the canonical RREF of the input.
    """
    rows = [list(row) for row in matrix.rows]
    nrows = len(rows)
    ncols = len(rows[0])
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == nrows:
            break
        source = next((r for r in range(pivot_row, nrows) if rows[r][col] != 0), None)
        if source is None:
            continue
        if source != pivot_row:
            rows[pivot_row], rows[source] = rows[source], rows[pivot_row]
        pivot = rows[pivot_row][col]
        rows[pivot_row] = [value / pivot for value in rows[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [
                    value - factor * pivot_value
                    for value, pivot_value in zip(rows[r], rows[pivot_row])
                ]
        pivot_row += 1
    return ConstructionMatrix(tuple(tuple(row) for row in rows))


def general_solution(
    matrix: ConstructionMatrix,
) -> tuple[tuple[Fraction, ...], list[tuple[Fraction, ...]]] | None:
    """Particular solution and nullspace basis of the augmented system.

    Returns None when the system is inconsistent (the pot admits no
    proportion vector at all).  Every solution is particular plus a rational
    combination of the basis vectors; membership in [0, 1]^p is a further,
    separate condition.
    """
    reduced = rref(matrix)
    p = reduced.tile_count
    pivot_of_row: list[int] = []
    for row in reduced.rows:
        col = next((c for c, value in enumerate(row) if value != 0), None)
        if col is None:
            continue
        if col == p:
            return None
        pivot_of_row.append(col)
    pivot_cols = set(pivot_of_row)
    particular = [Fraction(0)] * p
    for r, col in enumerate(pivot_of_row):
        particular[col] = reduced.rows[r][p]
    basis = []
    for free in range(p):
        if free in pivot_cols:
            continue
        vector = [Fraction(0)] * p
        vector[free] = Fraction(1)
        for r, col in enumerate(pivot_of_row):
            vector[col] = -reduced.rows[r][free]
        basis.append(tuple(vector))
    return tuple(particular), basis


def single_bond_spectrum(pot: SingleBondPot, params: SpectrumParameters) -> SpectrumPoint:
    """Closed-form solution point for the three-tile family:

        1/(k*(e1+e2)) * < k*e2 - (e2-1)*z,  k*e1 - (e1+1)*z,  (e1+e2)*z >

    valid for integer k >= 1 and rational z in [0, k*e1/(e1+1)].
    """
    e1, e2 = pot.e1, pot.e2
    k, z = params.k, params.z
    z_max = Fraction(k * e1, e1 + 1)
    if not 0 <= z <= z_max:
        raise ValueError(f"z must lie in [0, {z_max}], got {z}")
    denom = k * (e1 + e2)
    return SpectrumPoint(
        (
            (k * e2 - (e2 - 1) * z) / denom,
            (k * e1 - (e1 + 1) * z) / denom,
            (e1 + e2) * z / denom,
        )
    )


def scale_to_distribution(point: SpectrumPoint, n: int) -> TileDistribution:
    """Multiply a proportion vector by n, requiring every entry to land on an
    integer; the first fractional component is reported otherwise."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    counts = []
    for j, r in enumerate(point.proportions, start=1):
        scaled = n * r
        if scaled.denominator != 1:
            raise NonIntegralScaleError(
                f"component {j}: n*r_{j} = {scaled} is not an integer"
            )
        counts.append(int(scaled))
    return TileDistribution(tuple(counts))
