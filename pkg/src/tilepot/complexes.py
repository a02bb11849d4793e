"""Labeled multigraphs modeling complete complexes.

Vertices carry a 1-based tile index; directed edges carry a bond-edge
letter and point from the vertex contributing the unhatted end to the
vertex contributing the hatted end.  Parallel edges are allowed, loops are
not (a valid complex never closes an edge on a single vertex).

Also here: the exhaustive realization oracle (all loop-free half-edge
matchings up to multigraph isomorphism), distribution decompositions that
certify disconnected outcomes, and the JSON / DOT wire formats.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from itertools import permutations, product

from .feasibility import (
    ENUMERATION_BUDGET,
    BudgetExceededError,
    gcd_classifier,
    min_order,
    zeta,
)
from .pots import Pot, SingleBondPot, parse_pot, render_pot
from .spectrum import TileDistribution, balances

EndMultiset = tuple[tuple[tuple[str, bool], int], ...]


@dataclass(frozen=True)
class LabeledMultigraph:
    """Immutable multigraph; vertices are (id, tile index) pairs and edges
    are (from id, to id, label) triples, both kept sorted."""

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(sorted(self.vertices)))
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))
        ids = [v for v, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate vertex ids")
        known = set(ids)
        for u, w, _ in self.edges:
            if u not in known or w not in known:
                raise ValueError(f"edge ({u}, {w}) references an unknown vertex")

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def tile_of(self) -> dict[int, int]:
        return dict(self.vertices)


@dataclass(frozen=True)
class RealizationCheck:
    """Outcome of checking a graph against a pot; ok iff no mismatches and
    no structural problems."""

    ok: bool
    mismatches: tuple[tuple[int, EndMultiset, EndMultiset], ...]
    structural: tuple[str, ...]

    def describe(self) -> list[str]:
        lines = list(self.structural)
        for vertex, expected, observed in self.mismatches:
            lines.append(
                f"vertex {vertex}: expected ends {_ends_text(expected)}, "
                f"observed {_ends_text(observed)}"
            )
        return lines


def _ends_text(ends: EndMultiset) -> str:
    parts = []
    for (label, hatted), count in ends:
        text = label + ("*" if hatted else "")
        parts.append(f"{text}^{count}" if count > 1 else text)
    return "{" + ",".join(parts) + "}"


def validate_realization(graph: LabeledMultigraph, pot: Pot) -> RealizationCheck:
    """A graph is realized by the pot when every vertex's incident ends,
    outgoing as unhatted and incoming as hatted, match its tile's end
    multiset exactly and no edge is a loop."""
    for vertex, tile in graph.vertices:
        if not 1 <= tile <= pot.tile_count:
            raise ValueError(f"vertex {vertex} has unknown tile index {tile}")
    structural = tuple(
        f"loop edge at vertex {u} (label {label})"
        for u, w, label in graph.edges
        if u == w
    )
    observed: dict[int, Counter] = {v: Counter() for v, _ in graph.vertices}
    for u, w, label in graph.edges:
        if u == w:
            continue
        observed[u][(label, False)] += 1
        observed[w][(label, True)] += 1
    mismatches = []
    for vertex, tile in graph.vertices:
        expected = Counter(
            {(end.label, end.hatted): count for end, count in pot.tiles[tile - 1].ends}
        )
        if observed[vertex] != expected:
            mismatches.append(
                (
                    vertex,
                    tuple(sorted(expected.items())),
                    tuple(sorted(observed[vertex].items())),
                )
            )
    ok = not mismatches and not structural
    return RealizationCheck(ok=ok, mismatches=tuple(mismatches), structural=structural)


def components(graph: LabeledMultigraph) -> tuple[tuple[int, ...], ...]:
    """Connected components under edge adjacency, direction ignored, ordered
    by smallest contained vertex id."""
    neighbors: dict[int, set[int]] = {v: set() for v, _ in graph.vertices}
    for u, w, _ in graph.edges:
        neighbors[u].add(w)
        neighbors[w].add(u)
    seen: set[int] = set()
    out = []
    for start, _ in graph.vertices:
        if start in seen:
            continue
        stack, found = [start], {start}
        while stack:
            v = stack.pop()
            for w in neighbors[v]:
                if w not in found:
                    found.add(w)
                    stack.append(w)
        seen |= found
        out.append(tuple(sorted(found)))
    return tuple(out)


def tile_distribution_of(graph: LabeledMultigraph, pot: Pot) -> TileDistribution:
    """Vertex counts per tile index; the graph must be a valid realization."""
    check = validate_realization(graph, pot)
    if not check.ok:
        raise ValueError(
            "graph is not a valid realization: " + "; ".join(check.describe())
        )
    counts = [0] * pot.tile_count
    for _, tile in graph.vertices:
        counts[tile - 1] += 1
    return TileDistribution(tuple(counts))


def forced_disconnected(dist: TileDistribution, pot: SingleBondPot) -> bool:
    """When 1 + R2*(e2-1) < R1 the R2 hub-consuming tiles cannot hold all R1
    hubs in one component, so every realization of the distribution is
    disconnected."""
    if not pot.balanced(tuple(dist.counts)):
        raise ValueError(f"distribution {dist} violates e1*R1 - e2*R2 - R3 = 0")
    r1, r2, _ = dist.counts
    return 1 + r2 * (pot.e2 - 1) < r1


def decompose_distribution(
    pot: Pot, dist: TileDistribution
) -> list[tuple[TileDistribution, ...]]:
    """All multisets of two or more balanced nonzero distributions, each of
    order below dist's, that sum componentwise to dist.

    A nonempty result certifies that some realization of dist is
    disconnected; an empty result means no split into smaller complexes
    exists.  Parts are listed nonincreasing within each decomposition and
    decompositions are sorted.
    """
    counts = tuple(dist.counts)
    if len(counts) != pot.tile_count:
        raise ValueError(f"expected {pot.tile_count} counts, got {len(counts)}")
    if not balances(pot, counts):
        raise ValueError(f"distribution {dist} does not balance the pot")
    box = 1
    for c in counts:
        box *= c + 1
    if box > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"{box} candidate parts exceed the budget of {ENUMERATION_BUDGET}"
        )
    total = sum(counts)
    parts = [
        vec
        for vec in product(*(range(c + 1) for c in counts))
        if 0 < sum(vec) < total and balances(pot, vec)
    ]
    parts.sort(reverse=True)
    results: list[tuple[TileDistribution, ...]] = []

    def extend(remaining: tuple[int, ...], start: int, chosen: tuple):
        if all(c == 0 for c in remaining):
            if len(chosen) >= 2:
                results.append(tuple(TileDistribution(part) for part in chosen))
            return
        for i in range(start, len(parts)):
            part = parts[i]
            if all(p <= r for p, r in zip(part, remaining)):
                extend(
                    tuple(r - p for r, p in zip(remaining, part)),
                    i,
                    chosen + (part,),
                )

    extend(counts, 0, ())
    results.sort(key=lambda decomposition: [d.counts for d in decomposition])
    return results


def realizes_disconnected(pot: Pot, dist: TileDistribution) -> bool:
    """Whether some realization of dist is disconnected, decided through the
    distribution split certificate."""
    return bool(decompose_distribution(pot, dist))


def disconnected_by_gcd(pot: SingleBondPot, n: int) -> bool:
    """gcd != 1 shortcut: a disconnected complex of order n exists exactly
    when n splits into two or more multiples of the gcd, each at least the
    minimum order.  Two parts always suffice: m_P itself is such a multiple,
    and so is n - m_P whenever n is one and n >= 2*m_P."""
    d = gcd_classifier(pot)
    if d == 1:
        raise ValueError("shortcut applies only when gcd(e1+1, e2-1) != 1")
    return n % d == 0 and n >= 2 * min_order(pot)


def disconnected_by_zeta(pot: SingleBondPot, n: int) -> bool:
    """gcd = 1 sufficient condition: n is a sum of two or more orders each at
    or above the density threshold, i.e. n >= 2*zeta."""
    threshold = zeta(pot)
    if threshold is None:
        raise ValueError("shortcut applies only when gcd(e1+1, e2-1) = 1")
    return n >= 2 * threshold


def enumerate_realizations(
    pot: Pot, dist: TileDistribution, max_half_edges: int = 12
) -> list[LabeledMultigraph]:
    """Every loop-free complete complex with the given tile counts, one
    representative per multigraph isomorphism class.

    Works by matching unhatted to hatted half-edge slots per label and
    deduplicating first exactly, then up to tile-preserving vertex
    permutation.  Exact and exhaustive, hence the half-edge budget.
    """
    counts = tuple(dist.counts)
    if len(counts) != pot.tile_count:
        raise ValueError(f"expected {pot.tile_count} counts, got {len(counts)}")
    total_half_edges = sum(
        count * tile.arm_count for count, tile in zip(counts, pot.tiles)
    )
    if total_half_edges > max_half_edges:
        raise BudgetExceededError(
            f"{total_half_edges} half-edges exceed the limit of {max_half_edges}"
        )
    vertices = []
    vid = 0
    for tile_index, count in enumerate(counts, start=1):
        for _ in range(count):
            vid += 1
            vertices.append((vid, tile_index))
    out_slots: dict[str, list[int]] = {}
    in_slots: dict[str, list[int]] = {}
    for vertex, tile_index in vertices:
        for end, count in pot.tiles[tile_index - 1].ends:
            side = in_slots if end.hatted else out_slots
            side.setdefault(end.label, []).extend([vertex] * count)
    if set(out_slots) != set(in_slots) or any(
        len(out_slots[label]) != len(in_slots[label]) for label in out_slots
    ):
        return []
    labels = sorted(out_slots)
    edge_sets: set[tuple[tuple[int, int, str], ...]] = set()
    for assignment in product(*(permutations(in_slots[label]) for label in labels)):
        edges = []
        for label, targets in zip(labels, assignment):
            edges.extend(
                (source, target, label)
                for source, target in zip(out_slots[label], targets)
            )
        if any(u == w for u, w, _ in edges):
            continue
        edge_sets.add(tuple(sorted(edges)))
    by_tile: dict[int, list[int]] = {}
    for vertex, tile_index in vertices:
        by_tile.setdefault(tile_index, []).append(vertex)
    relabelings = []
    classes = sorted(by_tile.values())
    for perms in product(*(permutations(cls) for cls in classes)):
        mapping = {}
        for cls, perm in zip(classes, perms):
            mapping.update(dict(zip(cls, perm)))
        relabelings.append(mapping)
    canonical_forms = set()
    for edges in edge_sets:
        canonical_forms.add(
            min(
                tuple(sorted((m[u], m[w], label) for u, w, label in edges))
                for m in relabelings
            )
        )
    return [
        LabeledMultigraph(tuple(vertices), edges)
        for edges in sorted(canonical_forms)
    ]


def graph_to_json_dict(graph: LabeledMultigraph, pot: Pot) -> dict:
    return {
        "pot": render_pot(pot),
        "vertices": [{"id": v, "tile": t} for v, t in graph.vertices],
        "edges": [{"from": u, "to": w, "label": label} for u, w, label in graph.edges],
    }


def graph_to_json(graph: LabeledMultigraph, pot: Pot) -> str:
    return json.dumps(graph_to_json_dict(graph, pot), indent=2, sort_keys=True) + "\n"


def graph_from_json_dict(payload: dict) -> tuple[LabeledMultigraph, Pot]:
    try:
        pot = parse_pot(payload["pot"])
        vertices = tuple(
            (int(v["id"]), int(v["tile"])) for v in payload["vertices"]
        )
        edges = tuple(
            (int(e["from"]), int(e["to"]), str(e["label"])) for e in payload["edges"]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed graph document: {exc}") from exc
    return LabeledMultigraph(vertices, edges), pot


def graph_from_json(text: str) -> tuple[LabeledMultigraph, Pot]:
    payload = json.loads(text)
    if not isinstance(payload, dict):
        raise ValueError("malformed graph document: expected a JSON object")
    return graph_from_json_dict(payload)


def graph_to_dot(graph: LabeledMultigraph, name: str = "complex") -> str:
    lines = [f"digraph {name} {{"]
    for vertex, tile in graph.vertices:
        lines.append(f'  v{vertex} [label="t{tile}"];')
    for u, w, label in graph.edges:
        lines.append(f'  v{u} -> v{w} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
