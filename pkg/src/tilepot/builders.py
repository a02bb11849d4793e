"""Constructors for connected complexes of the single-bond family.

All builders work against the canonical pot {a^e1}, {a*^e2}, {a*} with tile
indices 1, 2, 3 and produce graphs that validate with exactly the requested
tile counts.  ``relabel_to_source`` maps a canonical graph back onto the
tile order and hat orientation of the pot the user actually wrote.

The two general constructions:

* path assembly, for 1 + R2*(e2-1) >= R1: an alternating path spine holding
  every copy of the smaller-count tile, greedy attachment of the remaining
  copies of the other tile onto the odd spine positions, then residual
  half-edge pairing and the 1-armed tiles;
* cycle assembly, for 1 <= R1 <= R2: an alternating cycle on 2*R1 vertices,
  the extra hatted arms of each ring consumer split between its ring
  neighbors, the remaining consumers attached one arm at a time onto ring
  hubs, then residual pairing and the 1-armed tiles.

Book-keeping identities from the constructions are asserted at each stage:
after the spine and attachments the unmatched plain-end count is
(e1-1)*R1 - R2 + 1 and the unmatched hatted-end count (e2-1)*R2 - R1 + 1;
after residual pairing exactly R3 = e1*R1 - e2*R2 plain ends remain.
"""

from __future__ import annotations

from .complexes import LabeledMultigraph
from .feasibility import InfeasibleOrderError, witnesses
from .pots import SingleBondPot
from .spectrum import TileDistribution


class BuildError(ValueError):
    """A builder precondition fails for the requested distribution."""


class _Assembly:
    """Mutable half-edge ledger during construction.

    Plain (unhatted) free ends live only on tile-1 vertices, hatted free
    ends on tile-2 and tile-3 vertices, so no pairing can create a loop.
    """

    def __init__(self, pot: SingleBondPot):
        self.pot = pot
        self.tiles: list[int] = []
        self.edges: list[tuple[int, int, str]] = []
        self.free_plain: dict[int, int] = {}
        self.free_hat: dict[int, int] = {}

    def add(self, tile: int) -> int:
        vertex = len(self.tiles) + 1
        self.tiles.append(tile)
        if tile == 1:
            self.free_plain[vertex] = self.pot.e1
        elif tile == 2:
            self.free_hat[vertex] = self.pot.e2
        else:
            self.free_hat[vertex] = 1
        return vertex

    def connect(self, plain_vertex: int, hat_vertex: int) -> None:
        assert self.free_plain.get(plain_vertex, 0) > 0, f"no free plain end on v{plain_vertex}"
        assert self.free_hat.get(hat_vertex, 0) > 0, f"no free hatted end on v{hat_vertex}"
        self.free_plain[plain_vertex] -= 1
        self.free_hat[hat_vertex] -= 1
        self.edges.append((plain_vertex, hat_vertex, self.pot.label))

    def connect_pair(self, u: int, w: int) -> None:
        """Connect two vertices, whichever side holds the plain end."""
        if u in self.free_plain:
            self.connect(u, w)
        else:
            self.connect(w, u)

    @property
    def total_free_plain(self) -> int:
        return sum(self.free_plain.values())

    @property
    def total_free_hat(self) -> int:
        return sum(self.free_hat.values())

    def pair_all_free(self) -> None:
        """Join every free hatted end to a free plain end, lowest vertex id
        first on both sides."""
        hats = [v for v in sorted(self.free_hat) for _ in range(self.free_hat[v])]
        plains = [v for v in sorted(self.free_plain) for _ in range(self.free_plain[v])]
        assert len(hats) <= len(plains), "more hatted than plain free ends"
        for hat_vertex, plain_vertex in zip(hats, plains):
            self.connect(plain_vertex, hat_vertex)

    def attach_unit_tiles(self, count: int) -> None:
        plains = [v for v in sorted(self.free_plain) for _ in range(self.free_plain[v])]
        assert len(plains) == count, f"{len(plains)} free plain ends for {count} unit tiles"
        for plain_vertex in plains:
            leaf = self.add(3)
            self.connect(plain_vertex, leaf)

    def finish(self, dist: TileDistribution) -> LabeledMultigraph:
        assert self.total_free_plain == 0 and self.total_free_hat == 0, "unmatched ends remain"
        observed = [self.tiles.count(t) for t in (1, 2, 3)]
        assert tuple(observed) == tuple(dist.counts), f"built {observed}, wanted {dist}"
        return LabeledMultigraph(
            tuple((v, t) for v, t in enumerate(self.tiles, start=1)),
            tuple(self.edges),
        )


def _require_balanced(pot: SingleBondPot, dist: TileDistribution) -> tuple[int, int, int]:
    counts = tuple(dist.counts)
    if len(counts) != 3:
        raise BuildError(f"expected three counts, got {dist}")
    if not pot.balanced(counts):
        raise BuildError(
            f"distribution {dist} violates e1*R1 - e2*R2 - R3 = 0 for {pot}"
        )
    return counts


def build_star(pot: SingleBondPot) -> LabeledMultigraph:
    """One hub joined to e1 one-armed leaves: distribution (1, 0, e1)."""
    asm = _Assembly(pot)
    asm.add(1)
    asm.attach_unit_tiles(pot.e1)
    return asm.finish(TileDistribution((1, 0, pot.e1)))


def build_divalg(pot: SingleBondPot) -> LabeledMultigraph:
    """Division-form complex of order q + r + 1 where e1 = e2*q + r: the hub
    sends e2 parallel edges to each of q consumers and one edge to each of r
    leaves, distribution (1, q, r)."""
    q, r = pot.e1 // pot.e2, pot.e1 % pot.e2
    asm = _Assembly(pot)
    hub = asm.add(1)
    for _ in range(q):
        consumer = asm.add(2)
        for _ in range(pot.e2):
            asm.connect(hub, consumer)
    asm.attach_unit_tiles(r)
    return asm.finish(TileDistribution((1, q, r)))


def build_bipartite(pot: SingleBondPot) -> LabeledMultigraph:
    """Complete bipartite wiring on e2 hubs and e1 consumers, one edge per
    pair: distribution (e2, e1, 0), order e1 + e2."""
    asm = _Assembly(pot)
    hubs = [asm.add(1) for _ in range(pot.e2)]
    consumers = [asm.add(2) for _ in range(pot.e1)]
    for hub in hubs:
        for consumer in consumers:
            asm.connect(hub, consumer)
    return asm.finish(TileDistribution((pot.e2, pot.e1, 0)))


def build_path(pot: SingleBondPot, dist: TileDistribution) -> LabeledMultigraph:
    """Path assembly; connected whenever 1 + R2*(e2-1) >= R1.

    Written for R1 >= R2; when R1 < R2 the spine and attachment roles of the
    two multi-armed tiles swap, while residual pairing and leaf attachment
    are unchanged.  R2 = 0 is delegated to the star (R1 = 1 is the only
    connected possibility there).
    """
    r1, r2, r3 = _require_balanced(pot, dist)
    e1, e2 = pot.e1, pot.e2
    if r2 == 0:
        if r1 == 1:
            return build_star(pot)
        raise BuildError(
            f"path assembly needs R2 >= 1: with R2 = 0 and R1 = {r1} > 1 the "
            "one-armed tiles cannot join the hubs into one component"
        )
    if 1 + r2 * (e2 - 1) < r1:
        raise BuildError(
            f"precondition violated: 1 + R2*(e2-1) >= R1 fails "
            f"({1 + r2 * (e2 - 1)} < {r1})"
        )
    if r1 >= r2:
        spine_tile, spine_count, other_tile, other_count = 2, r2, 1, r1
    else:
        spine_tile, spine_count, other_tile, other_count = 1, r1, 2, r2
    asm = _Assembly(pot)
    spine = [
        asm.add(spine_tile if i % 2 == 0 else other_tile)
        for i in range(2 * spine_count - 1)
    ]
    for u, w in zip(spine, spine[1:]):
        asm.connect_pair(u, w)
    # Greedy attachment of the remaining copies onto odd spine positions,
    # each position up to its free capacity; the precondition guarantees the
    # total capacity suffices.
    remaining = other_count - (spine_count - 1)
    free = asm.free_hat if spine_tile == 2 else asm.free_plain
    for vertex in spine[0::2]:
        take = min(free[vertex], remaining)
        for _ in range(take):
            copy = asm.add(other_tile)
            asm.connect_pair(vertex, copy)
        remaining -= take
        if remaining == 0:
            break
    assert remaining == 0, "attachment capacity exhausted despite precondition"
    assert asm.total_free_plain == (e1 - 1) * r1 - r2 + 1
    assert asm.total_free_hat == (e2 - 1) * r2 - r1 + 1
    asm.pair_all_free()
    assert asm.total_free_hat == 0
    assert asm.total_free_plain == e1 * r1 - e2 * r2 == r3
    asm.attach_unit_tiles(r3)
    return asm.finish(dist)


def build_cycle(pot: SingleBondPot, dist: TileDistribution) -> LabeledMultigraph:
    """Cycle assembly; requires 1 <= R1 <= R2.

    R1 = 1 yields the two-vertex ring, a double edge, which is a legitimate
    multigraph cycle.
    """
    r1, r2, r3 = _require_balanced(pot, dist)
    e1, e2 = pot.e1, pot.e2
    if r1 < 1:
        raise BuildError("cycle assembly needs R1 >= 1")
    if r1 > r2:
        raise BuildError(f"precondition violated: R1 <= R2 fails ({r1} > {r2})")
    asm = _Assembly(pot)
    ring = [asm.add(1 if i % 2 == 0 else 2) for i in range(2 * r1)]
    for i in range(2 * r1):
        asm.connect_pair(ring[i], ring[(i + 1) % (2 * r1)])
    # Each ring consumer splits its e2 - 2 spare arms between its two ring
    # neighbors: the smaller half backward, the larger half forward.
    for i in range(1, 2 * r1, 2):
        backward, forward = ring[i - 1], ring[(i + 1) % (2 * r1)]
        for _ in range((e2 - 2) // 2):
            asm.connect(backward, ring[i])
        for _ in range((e2 - 2) - (e2 - 2) // 2):
            asm.connect(forward, ring[i])
    assert all(asm.free_plain[v] == e1 - e2 for v in ring[0::2])
    assert asm.total_free_hat == 0
    # Remaining consumers hook onto ring hubs one arm each, filling hubs in
    # ring order; capacity R1*(e1-e2) always covers R2 - R1.
    remaining = r2 - r1
    for hub in ring[0::2]:
        take = min(asm.free_plain[hub], remaining)
        for _ in range(take):
            consumer = asm.add(2)
            asm.connect(hub, consumer)
        remaining -= take
        if remaining == 0:
            break
    assert remaining == 0, "ring hub capacity exhausted despite preconditions"
    assert asm.total_free_hat == (r2 - r1) * (e2 - 1)
    asm.pair_all_free()
    assert asm.total_free_plain == r1 * (e1 - e2) - e2 * (r2 - r1) == r3
    asm.attach_unit_tiles(r3)
    return asm.finish(dist)


def dispatch_distribution(pot: SingleBondPot, dist: TileDistribution) -> LabeledMultigraph:
    """Pick a builder for one distribution: the star and division-form
    specializations for their exact counts, else the cycle assembly when
    R1 <= R2, else the path assembly when its inequality holds."""
    r1, r2, r3 = _require_balanced(pot, dist)
    q, r = pot.e1 // pot.e2, pot.e1 % pot.e2
    if (r1, r2, r3) == (1, 0, pot.e1):
        return build_star(pot)
    if (r1, r2, r3) == (1, q, r):
        return build_divalg(pot)
    if 1 <= r1 <= r2:
        return build_cycle(pot, dist)
    if r2 >= 1 and 1 + r2 * (pot.e2 - 1) >= r1:
        return build_path(pot, dist)
    raise BuildError(
        f"no connected construction applies to {dist}: "
        f"1 + R2*(e2-1) = {1 + r2 * (pot.e2 - 1)} < R1 = {r1}, so every "
        "realization of this distribution is disconnected"
    )


def build_auto(pot: SingleBondPot, n: int) -> LabeledMultigraph:
    """Build a connected complex of order n from whichever witness
    distribution admits a builder."""
    candidates = witnesses(pot, n)
    if not candidates:
        raise InfeasibleOrderError(f"pot {pot} realizes no complex of order {n}")
    failures = []
    for dist in candidates:
        try:
            return dispatch_distribution(pot, dist)
        except BuildError as exc:
            failures.append(str(exc))
    raise BuildError(
        f"every distribution of order {n} is forced disconnected: "
        + "; ".join(failures)
    )


def relabel_to_source(graph: LabeledMultigraph, pot: SingleBondPot) -> LabeledMultigraph:
    """Translate a canonical graph onto the source pot: tile indices follow
    the pot's tile order and, under a hat swap, edge directions flip because
    the plain ends sit on the other side of the bond."""
    order = pot.tile_order
    vertices = tuple((v, order[t - 1]) for v, t in graph.vertices)
    if pot.hat_swapped:
        edges = tuple((w, u, label) for u, w, label in graph.edges)
    else:
        edges = graph.edges
    return LabeledMultigraph(vertices, edges)
