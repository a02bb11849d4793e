import json

import pytest

from tilepot.complexes import (
    LabeledMultigraph,
    components,
    decompose_distribution,
    disconnected_by_gcd,
    disconnected_by_zeta,
    enumerate_realizations,
    forced_disconnected,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    realizes_disconnected,
    tile_distribution_of,
    validate_realization,
)
from tilepot.feasibility import BudgetExceededError
from tilepot.pots import SingleBondPot, parse_pot
from tilepot.spectrum import TileDistribution

POT33 = parse_pot("{a^3};{a*^3};{a*}")
POT64 = parse_pot("{a^6};{a*^4};{a*}")


def triple_edge():
    return LabeledMultigraph(((1, 1), (2, 2)), ((1, 2, "a"),) * 3)


def star33():
    return LabeledMultigraph(
        ((1, 1), (2, 3), (3, 3), (4, 3)),
        ((1, 2, "a"), (1, 3, "a"), (1, 4, "a")),
    )


def test_validate_triple_edge():
    assert validate_realization(triple_edge(), POT33).ok


def test_validate_star():
    assert validate_realization(star33(), POT33).ok


def test_validate_degree_mismatch():
    short = LabeledMultigraph(
        ((1, 1), (2, 3), (3, 3)), ((1, 2, "a"), (1, 3, "a"))
    )
    check = validate_realization(short, POT33)
    assert not check.ok
    assert check.mismatches[0][0] == 1  # the center is one arm short
    assert not check.structural


def test_validate_loop():
    loopy = LabeledMultigraph(
        ((1, 1), (2, 2)), ((1, 1, "a"), (1, 2, "a"), (1, 2, "a"))
    )
    check = validate_realization(loopy, POT33)
    assert not check.ok
    assert any("loop" in line for line in check.structural)


def test_validate_unknown_tile_index():
    bad = LabeledMultigraph(((1, 9),), ())
    with pytest.raises(ValueError, match="unknown tile index"):
        validate_realization(bad, POT33)


def test_graph_rejects_unknown_endpoint():
    with pytest.raises(ValueError, match="unknown vertex"):
        LabeledMultigraph(((1, 1),), ((1, 2, "a"),))


def test_components_path():
    path = LabeledMultigraph(
        ((1, 1), (2, 2), (3, 1)), ((1, 2, "a"), (3, 2, "a"))
    )
    assert components(path) == ((1, 2, 3),)


def test_components_two_triple_edges():
    two = LabeledMultigraph(
        ((1, 1), (2, 2), (3, 1), (4, 2)),
        ((1, 2, "a"),) * 3 + ((3, 4, "a"),) * 3,
    )
    assert components(two) == ((1, 2), (3, 4))


def test_components_empty_graph():
    assert components(LabeledMultigraph((), ())) == ()


def test_tile_distribution_of():
    assert tile_distribution_of(triple_edge(), POT33) == TileDistribution((1, 1, 0))
    assert tile_distribution_of(star33(), POT33) == TileDistribution((1, 0, 3))
    assert tile_distribution_of(LabeledMultigraph((), ()), POT33) == TileDistribution(
        (0, 0, 0)
    )


def test_tile_distribution_requires_validity():
    short = LabeledMultigraph(((1, 1),), ())
    with pytest.raises(ValueError, match="not a valid realization"):
        tile_distribution_of(short, POT33)


def test_forced_disconnected():
    assert forced_disconnected(TileDistribution((5, 1, 26)), SingleBondPot(6, 4))
    assert not forced_disconnected(TileDistribution((7, 3, 19)), SingleBondPot(4, 3))
    for e1, e2 in [(2, 2), (6, 4), (9, 5)]:
        assert not forced_disconnected(
            TileDistribution((1, 0, e1)), SingleBondPot(e1, e2)
        )
    with pytest.raises(ValueError, match="violates"):
        forced_disconnected(TileDistribution((1, 1, 1)), SingleBondPot(6, 4))


def test_decompose_worked_examples():
    pot74 = parse_pot("{a^7};{a*^4};{a*}")
    splits = decompose_distribution(pot74, TileDistribution((3, 4, 5)))
    assert any(
        sorted(part.counts for part in split) == [(1, 1, 3), (2, 3, 2)]
        for split in splits
    )
    splits = decompose_distribution(POT64, TileDistribution((2, 2, 4)))
    assert [[part.counts for part in split] for split in splits] == [
        [(1, 1, 2), (1, 1, 2)]
    ]
    assert decompose_distribution(POT64, TileDistribution((1, 1, 2))) == []


def test_decompose_parts_are_nonincreasing_and_sum():
    pot = parse_pot("{a^4};{a*^2};{a*}")
    dist = TileDistribution((3, 4, 4))
    for split in decompose_distribution(pot, dist):
        parts = [part.counts for part in split]
        assert parts == sorted(parts, reverse=True)
        totals = tuple(sum(col) for col in zip(*parts))
        assert totals == dist.counts
        assert all(sum(part) < dist.order for part in parts)


def test_enumerate_worked_examples():
    assert len(enumerate_realizations(POT33, TileDistribution((1, 1, 0)))) == 1
    assert len(enumerate_realizations(POT33, TileDistribution((1, 0, 3)))) == 1
    graphs = enumerate_realizations(POT64, TileDistribution((1, 1, 2)))
    assert any(len(components(g)) == 1 and g.order == 4 for g in graphs)
    for g in graphs:
        assert validate_realization(g, POT64).ok


def test_enumerate_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_realizations(POT64, TileDistribution((2, 2, 4)))
    # An explicit budget admits more half-edges.
    pot22 = SingleBondPot(2, 2).canonical_pot()
    graphs = enumerate_realizations(
        pot22, TileDistribution((4, 4, 0)), max_half_edges=16
    )
    assert graphs and all(validate_realization(g, pot22).ok for g in graphs)


def test_enumerate_half_edge_conservation():
    for e1, e2, counts in [(2, 2, (2, 1, 2)), (3, 2, (2, 2, 2)), (3, 3, (2, 2, 0))]:
        sbp = SingleBondPot(e1, e2)
        pot = sbp.canonical_pot()
        for g in enumerate_realizations(pot, TileDistribution(counts)):
            r1, r2, r3 = counts
            assert len(g.edges) == e1 * r1 == e2 * r2 + r3


def test_enumerate_finds_both_order_four_complexes():
    # (1,0,3) gives the star, (2,2,0) both the cycle and the doubled pair.
    stars = enumerate_realizations(POT33, TileDistribution((1, 0, 3)))
    assert len(components(stars[0])) == 1
    pot22 = SingleBondPot(2, 2).canonical_pot()
    graphs = enumerate_realizations(pot22, TileDistribution((2, 2, 0)))
    assert sorted(len(components(g)) for g in graphs) == [1, 2]


def test_realizes_disconnected():
    assert realizes_disconnected(POT64, TileDistribution((2, 2, 4)))
    assert not realizes_disconnected(POT64, TileDistribution((1, 1, 2)))


def test_mixed_tile_balances_but_cannot_assemble_alone():
    # A tile carrying both a and a* satisfies every balance row on its own,
    # but a single copy could only complete by looping, which complexes
    # exclude; the enumerator is the loop-free ground truth.
    from tilepot.feasibility import distributions_for_order

    pot = parse_pot("{a,a*}")
    assert [d.counts for d in distributions_for_order(pot, 1)] == [(1,)]
    assert enumerate_realizations(pot, TileDistribution((1,))) == []
    # Two copies can bond each other without loops.
    graphs = enumerate_realizations(pot, TileDistribution((2,)))
    assert len(graphs) == 1 and validate_realization(graphs[0], pot).ok


def test_disconnected_by_gcd():
    sbp = SingleBondPot(3, 3)  # d = 2, minimum order 2
    assert disconnected_by_gcd(sbp, 4)
    assert not disconnected_by_gcd(sbp, 5)  # not a multiple of 2
    assert not disconnected_by_gcd(sbp, 2)  # below 2 * minimum order
    with pytest.raises(ValueError):
        disconnected_by_gcd(SingleBondPot(6, 4), 10)


def test_disconnected_by_zeta():
    sbp = SingleBondPot(7, 4)  # zeta = 7
    assert disconnected_by_zeta(sbp, 15)
    assert disconnected_by_zeta(sbp, 14)
    assert not disconnected_by_zeta(sbp, 13)
    with pytest.raises(ValueError):
        disconnected_by_zeta(SingleBondPot(3, 3), 10)


def test_zeta_shortcut_converse_fails_at_order_twelve():
    # (7,4) realizes a disconnected complex of order 12 even though 12 is
    # below twice the density threshold: (3,4,5) splits as (2,3,2)+(1,1,3).
    sbp = SingleBondPot(7, 4)
    pot = sbp.canonical_pot()
    assert not disconnected_by_zeta(sbp, 12)
    assert realizes_disconnected(pot, TileDistribution((3, 4, 5)))


def test_json_round_trip():
    g = triple_edge()
    text = graph_to_json(g, POT33)
    payload = json.loads(text)
    assert set(payload) == {"pot", "vertices", "edges"}
    assert payload["vertices"][0] == {"id": 1, "tile": 1}
    assert payload["edges"][0] == {"from": 1, "to": 2, "label": "a"}
    back, pot = graph_from_json(text)
    assert back == g
    assert pot == POT33


def test_json_rejects_malformed():
    with pytest.raises(ValueError, match="malformed graph document"):
        graph_from_json('{"pot": "{a};{a*}", "vertices": [{"id": 1}], "edges": []}')


def test_dot_export():
    assert graph_to_dot(triple_edge()) == (
        "digraph complex {\n"
        '  v1 [label="t1"];\n'
        '  v2 [label="t2"];\n'
        '  v1 -> v2 [label="a"];\n'
        '  v1 -> v2 [label="a"];\n'
        '  v1 -> v2 [label="a"];\n'
        "}\n"
    )
