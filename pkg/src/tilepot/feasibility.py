"""Which orders a single-bond pot realizes.

A distribution (R1, R2, R3) of order n exists exactly when nonnegative
integers x, y solve (e1+1)*x + (1-e2)*y = n with z = e1*x - e2*y >= 0 and
x + y + z = n; the fast path scans the finite x-window this forces.  The
exhaustive oracle enumerates raw count vectors for any pot and is the ground
truth the fast path is tested against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .pots import Pot, SingleBondPot
from .spectrum import TileDistribution, z_matrix

ENUMERATION_BUDGET = 10**7


class BudgetExceededError(RuntimeError):
    """Requested enumeration is beyond the supported desk scale."""


class InfeasibleOrderError(ValueError):
    """The pot realizes no complex of the requested order."""


@dataclass(frozen=True)
class DivisionForm:
    """The unique q >= 0 and 0 <= r < e2 with e1 = e2*q + r."""

    q: int
    r: int


@dataclass(frozen=True)
class FeasibilityReport:
    """Summary of realizable orders for a single-bond pot.

    ``eta`` is the rational threshold above which every order is realizable
    and ``zeta`` the least order from which every order on is realizable;
    both are None when gcd(e1+1, e2-1) != 1, where realizable orders are
    exactly the multiples of that gcd at or above ``min_order``.
    """

    d: int
    min_order: int
    eta: Fraction | None
    zeta: int | None
    table: tuple[tuple[int, TileDistribution | None], ...]


def distributions_for_order(pot: Pot, n: int) -> list[TileDistribution]:
    """Every nonnegative integer count vector of total n that zeroes all
    balance rows, in lexicographic order.  Brute force; the candidate count
    C(n+p-1, p-1) must stay within the enumeration budget."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    p = pot.tile_count
    candidates = math.comb(n + p - 1, p - 1)
    if candidates > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"{candidates} candidate vectors exceed the budget of {ENUMERATION_BUDGET}"
        )
    zm = z_matrix(pot)
    m = len(zm)
    found: list[TileDistribution] = []

    def extend(j: int, remaining: int, partial: tuple[int, ...], sums: tuple[int, ...]):
        if j == p - 1:
            final = tuple(s + z[j] * remaining for s, z in zip(sums, zm))
            if all(value == 0 for value in final):
                found.append(TileDistribution(partial + (remaining,)))
            return
        for count in range(remaining + 1):
            extend(
                j + 1,
                remaining - count,
                partial + (count,),
                tuple(s + z[j] * count for s, z in zip(sums, zm)),
            )

    extend(0, n, (), (0,) * m)
    return found


def witnesses(pot: SingleBondPot, n: int) -> list[TileDistribution]:
    """All (R1, R2, R3) of order n for the single-bond pot, ordered by R1."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    e1, e2 = pot.e1, pot.e2
    lo = math.ceil(Fraction(n, e1 + 1))
    hi = (e2 * n) // (e1 + e2)
    out = []
    for x in range(lo, hi + 1):
        over = (e1 + 1) * x - n
        if over % (e2 - 1):
            continue
        y = over // (e2 - 1)
        z = n - x - y
        assert z == e1 * x - e2 * y and z >= 0 and y >= 0
        out.append(TileDistribution((x, y, z)))
    return out


def is_realizable(pot: SingleBondPot, n: int) -> tuple[bool, TileDistribution | None]:
    """Fast feasibility for the single-bond pot; the witness has smallest R1
    (and with it smallest R2, since R2 is determined by R1 and n)."""
    found = witnesses(pot, n)
    if found:
        return True, found[0]
    return False, None


def gcd_classifier(pot: SingleBondPot) -> int:
    """gcd(e1+1, e2-1), the solvability modulus of the order equation."""
    return math.gcd(pot.e1 + 1, pot.e2 - 1)


def min_order(pot: SingleBondPot) -> int:
    """Smallest realizable order; the scan stops because order e1+e2 always
    works (complete bipartite distribution (e2, e1, 0))."""
    for n in range(1, pot.e1 + pot.e2 + 1):
        if is_realizable(pot, n)[0]:
            return n
    raise AssertionError("unreachable: order e1+e2 is always realizable")


def eta(pot: SingleBondPot) -> Fraction:
    """Exact threshold max{(e1+1)(e1+e2)/e1, (e2-1)(e1+e2)/e2}: every order
    at or above it is realizable.  Only meaningful when the gcd is 1."""
    if gcd_classifier(pot) != 1:
        raise ValueError(
            f"eta is not applicable: gcd(e1+1, e2-1) = {gcd_classifier(pot)} != 1"
        )
    e1, e2 = pot.e1, pot.e2
    return max(
        Fraction((e1 + 1) * (e1 + e2), e1),
        Fraction((e2 - 1) * (e1 + e2), e2),
    )


def zeta(pot: SingleBondPot) -> int | None:
    """Least order such that every order from it on (inclusive) is
    realizable; None when the gcd is not 1 (orders are then confined to
    multiples of the gcd, so no such threshold exists).

    Orders at or above eta need no scan; below it each order is checked.
    """
    if gcd_classifier(pot) != 1:
        return None
    ceiling = math.ceil(eta(pot))
    last_infeasible = max(
        n for n in range(1, ceiling + 1) if not is_realizable(pot, n)[0]
    )
    return last_infeasible + 1


def division_form(pot: SingleBondPot) -> DivisionForm:
    return DivisionForm(q=pot.e1 // pot.e2, r=pot.e1 % pot.e2)


def canonical_distributions(
    pot: SingleBondPot,
) -> tuple[TileDistribution, TileDistribution, TileDistribution]:
    """Three distributions every pot in the family realizes:

    (1, q, r) of order q+r+1, (1, 0, e1) of order 1+e1, and (e2, e1, 0) of
    order e1+e2.
    """
    form = division_form(pot)
    dists = (
        TileDistribution((1, form.q, form.r)),
        TileDistribution((1, 0, pot.e1)),
        TileDistribution((pot.e2, pot.e1, 0)),
    )
    for dist in dists:
        assert pot.balanced(dist.counts), f"unbalanced canonical distribution {dist}"
    return dists


def feasibility_report(pot: SingleBondPot, max_order: int) -> FeasibilityReport:
    """Realizability table for orders 1..max_order plus the pot's constants."""
    if max_order < 1:
        raise ValueError(f"max_order must be >= 1, got {max_order}")
    d = gcd_classifier(pot)
    table = tuple((n, is_realizable(pot, n)[1]) for n in range(1, max_order + 1))
    return FeasibilityReport(
        d=d,
        min_order=min_order(pot),
        eta=eta(pot) if d == 1 else None,
        zeta=zeta(pot),
        table=table,
    )
