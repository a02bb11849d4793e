"""Tile types, pots, and the textual pot format.

A tile type is a multiset of labeled cohesive ends; an unhatted end ``a``
bonds with the hatted end ``a*``.  A pot is an ordered collection of
distinct tile types that is closed under complementation: every end label
that appears unhatted somewhere must also appear hatted somewhere, and
vice versa.

Pot text grammar (whitespace insignificant)::

    pot   := tile ( ";" tile )*
    tile  := "{" end ( "," end )* "}"
    end   := letter star? mult?
    star  := "*"            hatted (complementary) end
    mult  := "^" integer    multiplicity >= 1, default 1
    letter := [a-z]

Example: ``{a^6};{a*^4};{a*}``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass


class PotSyntaxError(ValueError):
    """Malformed pot text; ``position`` is the 0-based offset of the error."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PotValidationError(ValueError):
    """Well-formed pot text that violates a pot invariant."""


class NotSingleBondError(ValueError):
    """Pot does not have the three-tile single-bond-type shape."""


@dataclass(frozen=True, order=True)
class CohesiveEnd:
    """A labeled sticky end; ``hatted`` marks the complementary orientation."""

    label: str
    hatted: bool = False

    def __post_init__(self):
        if len(self.label) != 1 or not ("a" <= self.label <= "z"):
            raise PotValidationError(
                f"end label must be a single letter a-z, got {self.label!r}"
            )

    def complement(self) -> CohesiveEnd:
        return CohesiveEnd(self.label, not self.hatted)

    def __str__(self) -> str:
        return self.label + ("*" if self.hatted else "")


@dataclass(frozen=True)
class TileType:
    """A multiset of cohesive ends, stored canonically as sorted
    ``(end, count)`` pairs with positive counts."""

    ends: tuple[tuple[CohesiveEnd, int], ...]

    def __post_init__(self):
        if not self.ends:
            raise PotValidationError("a tile needs at least one cohesive end")
        kinds = [end for end, _ in self.ends]
        if len(set(kinds)) != len(kinds) or list(kinds) != sorted(kinds):
            raise PotValidationError("tile ends must be canonical: sorted and merged")
        for end, count in self.ends:
            if count < 1:
                raise PotValidationError(f"multiplicity of {end} must be >= 1")

    @classmethod
    def from_counts(cls, counts: dict[CohesiveEnd, int]) -> TileType:
        return cls(tuple(sorted(counts.items())))

    @property
    def arm_count(self) -> int:
        return sum(count for _, count in self.ends)

    def count(self, end: CohesiveEnd) -> int:
        for candidate, count in self.ends:
            if candidate == end:
                return count
        return 0

    @property
    def labels(self) -> set[str]:
        return {end.label for end, _ in self.ends}

    def __str__(self) -> str:
        parts = []
        for end, count in self.ends:
            parts.append(f"{end}^{count}" if count > 1 else str(end))
        return "{" + ",".join(parts) + "}"


@dataclass(frozen=True)
class Pot:
    """Ordered collection of distinct tile types; tile index j is 1-based."""

    tiles: tuple[TileType, ...]

    def __post_init__(self):
        if not self.tiles:
            raise PotValidationError("a pot needs at least one tile type")
        seen: set[TileType] = set()
        for tile in self.tiles:
            if tile in seen:
                raise PotValidationError(f"duplicate tile type {tile}")
            seen.add(tile)
        present = {end for tile in self.tiles for end, _ in tile.ends}
        for end in sorted(present):
            if end.complement() not in present:
                raise PotValidationError(
                    f"complement closure violated: {end} appears but "
                    f"{end.complement()} never does"
                )

    @property
    def bond_edge_types(self) -> tuple[str, ...]:
        """Distinct end labels, alphabetically (tile ends are multisets, so
        textual first-appearance order is not well defined)."""
        return tuple(sorted({label for tile in self.tiles for label in tile.labels}))

    @property
    def tile_count(self) -> int:
        return len(self.tiles)

    def __str__(self) -> str:
        return render_pot(self)


@dataclass(frozen=True)
class SingleBondPot:
    """The studied three-tile family: {a^e1}, {a*^e2}, {a*} with e1 >= e2 > 1.

    ``hat_swapped`` records that the source pot came in the mirrored hat
    orientation; ``tile_order`` maps the canonical tile positions
    (t1, t2, t3) to 1-based tile indices of the source pot, so graphs built
    against the canonical pot can be relabeled for the source pot.
    """

    e1: int
    e2: int
    label: str = "a"
    hat_swapped: bool = False
    tile_order: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        if not (self.e1 >= self.e2 > 1):
            raise NotSingleBondError(
                f"the family requires e1 >= e2 > 1, got e1={self.e1}, e2={self.e2}"
            )
        if sorted(self.tile_order) != [1, 2, 3]:
            raise NotSingleBondError(f"tile_order must permute (1, 2, 3), got {self.tile_order}")
        CohesiveEnd(self.label)

    def canonical_pot(self) -> Pot:
        plain = CohesiveEnd(self.label)
        hat = CohesiveEnd(self.label, True)
        return Pot(
            (
                TileType.from_counts({plain: self.e1}),
                TileType.from_counts({hat: self.e2}),
                TileType.from_counts({hat: 1}),
            )
        )

    def balanced(self, counts: tuple[int, int, int]) -> bool:
        """Whether (R1, R2, R3) satisfies e1*R1 - e2*R2 - R3 = 0."""
        r1, r2, r3 = counts
        return self.e1 * r1 - self.e2 * r2 - r3 == 0

    def __str__(self) -> str:
        return f"(e1={self.e1}, e2={self.e2})"


class _PotParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, position: int | None = None) -> PotSyntaxError:
        return PotSyntaxError(message, self.pos if position is None else position)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        self.skip_ws()
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Pot:
        tiles = [self.parse_tile()]
        self.skip_ws()
        while self.peek() == ";":
            self.pos += 1
            tiles.append(self.parse_tile())
            self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("unexpected trailing input")
        return Pot(tuple(tiles))

    def parse_tile(self) -> TileType:
        self.expect("{")
        self.skip_ws()
        if self.peek() == "}":
            raise self.error("empty tile")
        counts: Counter[CohesiveEnd] = Counter()
        end, count = self.parse_end()
        counts[end] += count
        self.skip_ws()
        while self.peek() == ",":
            self.pos += 1
            end, count = self.parse_end()
            counts[end] += count
            self.skip_ws()
        self.expect("}")
        return TileType.from_counts(dict(counts))

    def parse_end(self) -> tuple[CohesiveEnd, int]:
        self.skip_ws()
        letter = self.peek()
        if not ("a" <= letter <= "z"):
            raise self.error("expected an end label a-z")
        self.pos += 1
        hatted = False
        if self.peek() == "*":
            hatted = True
            self.pos += 1
        count = 1
        if self.peek() == "^":
            self.pos += 1
            digits_at = self.pos
            while self.peek().isdigit():
                self.pos += 1
            if self.pos == digits_at:
                raise self.error("expected an integer after '^'")
            count = int(self.text[digits_at : self.pos])
            if count < 1:
                raise self.error("zero multiplicity", digits_at)
        return CohesiveEnd(letter, hatted), count


def parse_pot(text: str) -> Pot:
    """Parse pot text; tiles keep their textual order, multiplicities are
    aggregated per (label, hatted) pair within a tile."""
    return _PotParser(text).parse()


def render_pot(pot: Pot) -> str:
    """Canonical text for a pot; parse_pot(render_pot(p)) == p."""
    return ";".join(str(tile) for tile in pot.tiles)


def as_single_bond(pot: Pot) -> SingleBondPot:
    """Match a pot against the single-bond three-tile family.

    The lone tile on one hat orientation supplies e1; the two tiles sharing
    the opposite orientation must be the e2-armed tile and the 1-armed tile.
    A pot given in the mirrored orientation (lone tile hatted) is accepted
    with ``hat_swapped`` set.
    """
    labels = pot.bond_edge_types
    if len(labels) != 1:
        raise NotSingleBondError(
            f"pot has {len(labels)} bond-edge types; the family needs exactly one"
        )
    for tile in pot.tiles:
        orientations = {end.hatted for end, _ in tile.ends}
        if len(orientations) != 1:
            raise NotSingleBondError(
                f"tile {tile} carries both plain and hatted ends; such tiles can "
                "close on themselves and are outside the studied family"
            )
    if not any(tile.arm_count == 1 for tile in pot.tiles):
        raise NotSingleBondError("missing 1-armed tile")
    if len(pot.tiles) != 3:
        raise NotSingleBondError(
            f"expected exactly three tile types, got {len(pot.tiles)}"
        )
    hatted = [i for i, tile in enumerate(pot.tiles) if tile.ends[0][0].hatted]
    plain = [i for i in range(3) if i not in hatted]
    # Closure guarantees both orientations occur, so the split is 1 against 2.
    if len(plain) == 1:
        lone, pair, swapped = plain[0], hatted, False
    else:
        lone, pair, swapped = hatted[0], plain, True
    units = [i for i in pair if pot.tiles[i].arm_count == 1]
    if len(units) != 1:
        raise NotSingleBondError(
            "the two tiles sharing an orientation must be a multi-armed tile "
            "and the 1-armed tile"
        )
    unit = units[0]
    multi = pair[0] if pair[1] == unit else pair[1]
    e1 = pot.tiles[lone].arm_count
    e2 = pot.tiles[multi].arm_count
    if e1 < e2:
        raise NotSingleBondError(
            f"the lone tile has {e1} arms but the paired multi-armed tile has "
            f"{e2}; the family requires e1 >= e2"
        )
    return SingleBondPot(
        e1,
        e2,
        label=labels[0],
        hat_swapped=swapped,
        tile_order=(lone + 1, multi + 1, unit + 1),
    )
