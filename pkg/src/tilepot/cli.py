"""Command-line interface.

Verbs: ``analyze`` (matrix, reduced form, solution family, order bounds),
``orders`` (realizability table, optionally CSV and a chart), ``build``
(construct a witness complex, DOT or JSON, optionally a drawing), ``check``
(validate a graph file against a pot), ``spectrum`` (all distributions of
one order).

Exit codes: 0 success, 1 infeasible or negative answer, 2 input error,
3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from .builders import (
    BuildError,
    build_bipartite,
    build_cycle,
    build_divalg,
    build_path,
    build_star,
    build_auto,
    dispatch_distribution,
    relabel_to_source,
)
from .complexes import (
    LabeledMultigraph,
    components,
    forced_disconnected,
    graph_from_json,
    graph_to_dot,
    graph_to_json,
    tile_distribution_of,
    validate_realization,
)
from .feasibility import (
    BudgetExceededError,
    InfeasibleOrderError,
    canonical_distributions,
    distributions_for_order,
    division_form,
    eta,
    feasibility_report,
    gcd_classifier,
    min_order,
    witnesses,
    zeta,
)
from .pots import (
    NotSingleBondError,
    Pot,
    PotSyntaxError,
    PotValidationError,
    SingleBondPot,
    as_single_bond,
    parse_pot,
    render_pot,
)
from .spectrum import (
    ConstructionMatrix,
    TileDistribution,
    construction_matrix,
    general_solution,
    rref,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tilepot",
        description="Analyze flexible-tile pots and build the complete "
        "complexes they realize.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_pot_arguments(p: argparse.ArgumentParser) -> None:
        p.add_argument("potfile", nargs="?", help="file containing pot text")
        p.add_argument(
            "--pot",
            help="inline pot text such as '{a^6};{a*^4};{a*}' "
            "(wins over the file when both are given)",
        )
        p.add_argument("--json", action="store_true", help="machine output")

    p_analyze = sub.add_parser("analyze", help="matrix, solution family, order bounds")
    add_pot_arguments(p_analyze)
    p_analyze.set_defaults(handler=_cmd_analyze)

    p_orders = sub.add_parser("orders", help="realizability table for orders 1..N")
    add_pot_arguments(p_orders)
    p_orders.add_argument("--max", type=int, required=True, metavar="N")
    p_orders.add_argument("--csv", metavar="FILE", help="also write the table as CSV")
    p_orders.add_argument(
        "--figure", metavar="FILE", help="also render the table as a chart image"
    )
    p_orders.set_defaults(handler=_cmd_orders)

    p_build = sub.add_parser("build", help="construct a connected witness complex")
    add_pot_arguments(p_build)
    group = p_build.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=int, metavar="N")
    group.add_argument(
        "--distribution",
        metavar="R1,R2,R3",
        help="tile counts in the pot's own tile order",
    )
    p_build.add_argument(
        "--algorithm",
        choices=["auto", "path", "cycle", "star", "divalg", "bipartite"],
        default="auto",
    )
    p_build.add_argument("--format", choices=["dot", "json"], default="dot")
    p_build.add_argument("--output", metavar="FILE", help="write the graph here instead of stdout")
    p_build.add_argument("--figure", metavar="FILE", help="also render a drawing of the complex")
    p_build.set_defaults(handler=_cmd_build)

    p_check = sub.add_parser("check", help="validate a graph file against a pot")
    p_check.add_argument("graphfile", help="graph in the JSON wire format")
    p_check.add_argument(
        "potfile", nargs="?", help="pot text file (default: the pot embedded in the graph)"
    )
    p_check.add_argument("--pot", help="inline pot text (wins over files)")
    p_check.add_argument("--json", action="store_true", help="machine output")
    p_check.set_defaults(handler=_cmd_check)

    p_spectrum = sub.add_parser(
        "spectrum", help="all tile distributions of one order (exhaustive)"
    )
    add_pot_arguments(p_spectrum)
    p_spectrum.add_argument("--order", type=int, required=True, metavar="N")
    p_spectrum.set_defaults(handler=_cmd_spectrum)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (BuildError, InfeasibleOrderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        PotSyntaxError,
        PotValidationError,
        NotSingleBondError,
        json.JSONDecodeError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint() -> None:
    sys.exit(main())


# ---------------------------------------------------------------------------
# shared helpers

def _load_pot(args: argparse.Namespace) -> Pot:
    if args.pot is not None:
        return parse_pot(args.pot)
    if getattr(args, "potfile", None):
        with open(args.potfile, encoding="utf-8") as handle:
            return parse_pot(handle.read().strip())
    raise ValueError("no pot given: pass a pot file or --pot")


def _try_single_bond(pot: Pot) -> tuple[SingleBondPot | None, str]:
    try:
        return as_single_bond(pot), ""
    except NotSingleBondError as exc:
        return None, str(exc)


def _canonical_to_source(sbp: SingleBondPot, counts: tuple[int, ...]) -> tuple[int, ...]:
    out = [0, 0, 0]
    for j, count in enumerate(counts):
        out[sbp.tile_order[j] - 1] = count
    return tuple(out)


def _source_to_canonical(sbp: SingleBondPot, counts: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(counts[sbp.tile_order[j] - 1] for j in range(3))


def _matrix_lines(matrix: ConstructionMatrix) -> list[str]:
    cells = [[str(value) for value in row] for row in matrix.rows]
    widths = [
        max(len(cells[r][c]) for r in range(len(cells)))
        for c in range(len(cells[0]))
    ]
    lines = []
    for row in cells:
        body = "  ".join(cell.rjust(w) for cell, w in zip(row[:-1], widths[:-1]))
        lines.append(f"[ {body} | {row[-1].rjust(widths[-1])} ]")
    return lines


def _matrix_json(matrix: ConstructionMatrix) -> list[list[str]]:
    return [[str(value) for value in row] for row in matrix.rows]


def _closed_form_text(sbp: SingleBondPot) -> str:
    e1, e2 = sbp.e1, sbp.e2
    return (
        f"1/({e1 + e2}k) <{e2}k - {e2 - 1}z, {e1}k - {e1 + 1}z, {e1 + e2}z>"
        f"  for integer k >= 1 and rational z in [0, {e1}k/{e1 + 1}]"
    )


def _counts_text(counts: tuple[int, ...]) -> str:
    return "(" + ",".join(str(c) for c in counts) + ")"


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# analyze

def _cmd_analyze(args: argparse.Namespace) -> int:
    pot = _load_pot(args)
    matrix = construction_matrix(pot)
    reduced = rref(matrix)
    sbp, why_not = _try_single_bond(pot)

    if args.json:
        payload: dict = {
            "pot": render_pot(pot),
            "matrix": _matrix_json(matrix),
            "rref": _matrix_json(reduced),
        }
        solution = general_solution(matrix)
        if solution is None:
            payload["solution"] = None
        else:
            particular, basis = solution
            payload["solution"] = {
                "particular": [str(v) for v in particular],
                "basis": [[str(v) for v in vec] for vec in basis],
            }
        if sbp is None:
            payload["single_bond"] = None
            payload["single_bond_reason"] = why_not
        else:
            d = gcd_classifier(sbp)
            form = division_form(sbp)
            payload["single_bond"] = {
                "e1": sbp.e1,
                "e2": sbp.e2,
                "hat_swapped": sbp.hat_swapped,
                "tile_order": list(sbp.tile_order),
                "closed_form": _closed_form_text(sbp),
                "d": d,
                "min_order": min_order(sbp),
                "eta": str(eta(sbp)) if d == 1 else None,
                "zeta": zeta(sbp),
                "division": {"q": form.q, "r": form.r},
                "canonical_distributions": [
                    list(dist.counts) for dist in canonical_distributions(sbp)
                ],
            }
        _emit_json(payload)
        return EXIT_OK

    print(f"pot: {render_pot(pot)}")
    print()
    print("construction matrix:")
    for line in _matrix_lines(matrix):
        print(f"  {line}")
    print("rref:")
    for line in _matrix_lines(reduced):
        print(f"  {line}")
    print()
    if sbp is None:
        solution = general_solution(matrix)
        if solution is None:
            print("solution family: empty (the system is inconsistent)")
        else:
            particular, basis = solution
            print(f"particular solution: ({', '.join(str(v) for v in particular)})")
            for i, vec in enumerate(basis, start=1):
                print(f"free direction {i}: ({', '.join(str(v) for v in vec)})")
        print(f"single-bond analytics: not applicable ({why_not})")
        return EXIT_OK

    print(f"single-bond family: e1={sbp.e1}, e2={sbp.e2}")
    if sbp.hat_swapped or sbp.tile_order != (1, 2, 3):
        t1, t2, t3 = sbp.tile_order
        swap_note = ", hat roles swapped" if sbp.hat_swapped else ""
        print(f"  (t1 = tile #{t1}, t2 = tile #{t2}, t3 = tile #{t3}{swap_note})")
    print(f"solution family: {_closed_form_text(sbp)}")
    print()
    d = gcd_classifier(sbp)
    print(f"gcd(e1+1, e2-1) = {d}")
    print(f"minimum realizable order: {min_order(sbp)}")
    if d == 1:
        bound = eta(sbp)
        threshold = zeta(sbp)
        approx = f" (~{float(bound):.3f})" if bound.denominator != 1 else ""
        print(f"eta = {bound}{approx}: every order >= eta is realizable")
        print(f"zeta = {threshold}: every order >= zeta is realizable")
        if Fraction(threshold) < bound:
            print(
                "  (zeta < eta: only the finitely many orders below eta "
                "needed checking)"
            )
    else:
        print(f"eta: not applicable (gcd = {d})")
        print(
            f"zeta: not applicable; realizable orders are exactly the "
            f"multiples of {d} at or above {min_order(sbp)}"
        )
    form = division_form(sbp)
    print(f"division form: e1 = e2*q + r with q={form.q}, r={form.r}")
    print("canonical distributions:")
    div_dist, star_dist, bip_dist = canonical_distributions(sbp)
    print(f"  {div_dist}  order {div_dist.order}  (division-form complex)")
    print(f"  {star_dist}  order {star_dist.order}  (star)")
    print(f"  {bip_dist}  order {bip_dist.order}  (complete bipartite)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# orders

def _orders_table(pot: Pot, sbp: SingleBondPot | None, max_order: int):
    """Rows (n, witness counts in source tile order | None)."""
    rows = []
    if sbp is not None:
        report = feasibility_report(sbp, max_order)
        for n, witness in report.table:
            counts = (
                _canonical_to_source(sbp, tuple(witness.counts)) if witness else None
            )
            rows.append((n, counts))
    else:
        for n in range(1, max_order + 1):
            found = distributions_for_order(pot, n)
            rows.append((n, tuple(found[0].counts) if found else None))
    return rows


def _cmd_orders(args: argparse.Namespace) -> int:
    if args.max < 1:
        raise ValueError(f"--max must be >= 1, got {args.max}")
    pot = _load_pot(args)
    sbp, _ = _try_single_bond(pot)
    rows = _orders_table(pot, sbp, args.max)

    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as handle:
            writer = csv.writer(handle)
            writer.writerow(
                ["n", "realizable"] + [f"R{j}" for j in range(1, pot.tile_count + 1)]
            )
            for n, counts in rows:
                if counts is None:
                    writer.writerow([n, "no"] + [""] * pot.tile_count)
                else:
                    writer.writerow([n, "yes"] + list(counts))
    if args.figure:
        from .viz import draw_orders

        table = tuple(
            (n, TileDistribution(counts) if counts else None) for n, counts in rows
        )
        draw_orders(table, args.figure, title=f"realizable orders for {render_pot(pot)}")

    if args.json:
        payload = {
            "pot": render_pot(pot),
            "max": args.max,
            "orders": [
                {"n": n, "realizable": counts is not None}
                | ({"witness": list(counts)} if counts is not None else {})
                for n, counts in rows
            ],
        }
        _emit_json(payload)
        return EXIT_OK

    print(f"pot: {render_pot(pot)}")
    names = ",".join(f"R{j}" for j in range(1, pot.tile_count + 1))
    print(f"{'n':>4}  realizable  witness ({names})")
    for n, counts in rows:
        if counts is None:
            print(f"{n:>4}  no          -")
        else:
            print(f"{n:>4}  yes         {_counts_text(counts)}")
    if args.csv:
        print(f"csv written to {args.csv}")
    if args.figure:
        print(f"figure written to {args.figure}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# build

_BUILDERS = {
    "path": build_path,
    "cycle": build_cycle,
}
_NO_DIST_BUILDERS = {
    "star": build_star,
    "divalg": build_divalg,
    "bipartite": build_bipartite,
}


def _build_for_distribution(
    sbp: SingleBondPot, dist: TileDistribution, algorithm: str
) -> LabeledMultigraph:
    if algorithm == "auto":
        return dispatch_distribution(sbp, dist)
    if algorithm in _NO_DIST_BUILDERS:
        graph = _NO_DIST_BUILDERS[algorithm](sbp)
        built = tuple(
            sum(1 for _, t in graph.vertices if t == j) for j in (1, 2, 3)
        )
        if built != tuple(dist.counts):
            raise BuildError(
                f"the {algorithm} construction has distribution {_counts_text(built)}, "
                f"not the requested {dist}"
            )
        return graph
    return _BUILDERS[algorithm](sbp, dist)


def _build_for_order(sbp: SingleBondPot, n: int, algorithm: str) -> LabeledMultigraph:
    if algorithm == "auto":
        return build_auto(sbp, n)
    candidates = witnesses(sbp, n)
    if not candidates:
        raise InfeasibleOrderError(f"pot {sbp} realizes no complex of order {n}")
    failures = []
    for dist in candidates:
        try:
            return _build_for_distribution(sbp, dist, algorithm)
        except BuildError as exc:
            failures.append(str(exc))
    raise BuildError(
        f"the {algorithm} construction applies to no distribution of order {n}: "
        + "; ".join(failures)
    )


def _cmd_build(args: argparse.Namespace) -> int:
    pot = _load_pot(args)
    sbp, why_not = _try_single_bond(pot)
    if sbp is None:
        raise NotSingleBondError(f"build needs a single-bond pot: {why_not}")

    if args.order is not None:
        if args.order < 1:
            raise ValueError(f"--order must be >= 1, got {args.order}")
        graph = _build_for_order(sbp, args.order, args.algorithm)
    else:
        try:
            source_counts = tuple(int(x) for x in args.distribution.split(","))
        except ValueError as exc:
            raise ValueError(f"bad --distribution {args.distribution!r}: {exc}") from exc
        if len(source_counts) != 3:
            raise ValueError("--distribution needs exactly three counts R1,R2,R3")
        dist = TileDistribution(_source_to_canonical(sbp, source_counts))
        graph = _build_for_distribution(sbp, dist, args.algorithm)

    graph = relabel_to_source(graph, sbp)
    check = validate_realization(graph, pot)
    if not check.ok:
        raise RuntimeError(
            "internal error: built graph failed validation: "
            + "; ".join(check.describe())
        )

    rendered = (
        graph_to_json(graph, pot) if args.format == "json" else graph_to_dot(graph)
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(rendered)
        print(f"graph written to {args.output}")
    else:
        print(rendered, end="")
    if args.figure:
        from .viz import draw_complex

        dist = tile_distribution_of(graph, pot)
        draw_complex(
            graph,
            args.figure,
            pot=pot,
            title=f"{render_pot(pot)}  distribution {dist}",
        )
        print(f"figure written to {args.figure}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# check

def _cmd_check(args: argparse.Namespace) -> int:
    with open(args.graphfile, encoding="utf-8") as handle:
        graph, embedded_pot = graph_from_json(handle.read())
    if args.pot is not None:
        pot = parse_pot(args.pot)
    elif args.potfile:
        with open(args.potfile, encoding="utf-8") as handle:
            pot = parse_pot(handle.read().strip())
    else:
        pot = embedded_pot

    check = validate_realization(graph, pot)
    counts = [0] * pot.tile_count
    for _, tile in graph.vertices:
        counts[tile - 1] += 1
    parts = components(graph)
    sbp, _ = _try_single_bond(pot)
    forced: bool | None = None
    if check.ok and sbp is not None:
        canonical = TileDistribution(_source_to_canonical(sbp, tuple(counts)))
        forced = forced_disconnected(canonical, sbp)

    if args.json:
        payload = {
            "pot": render_pot(pot),
            "valid": check.ok,
            "problems": check.describe(),
            "order": graph.order,
            "edges": len(graph.edges),
            "distribution": counts,
            "components": len(parts),
            "connected": len(parts) == 1,
            "forced_disconnected": forced,
        }
        _emit_json(payload)
        return EXIT_OK if check.ok else EXIT_NEGATIVE

    print(f"pot: {render_pot(pot)}")
    print(f"graph: {graph.order} vertices, {len(graph.edges)} edges")
    if check.ok:
        print("realization: valid")
    else:
        print("realization: INVALID")
        for line in check.describe():
            print(f"  - {line}")
    print(f"tile distribution: {_counts_text(tuple(counts))}")
    connected = "connected" if len(parts) == 1 else "disconnected"
    print(f"components: {len(parts)} ({connected})")
    if forced is None:
        print("forced disconnected by counts: n/a")
    elif forced:
        print(
            "forced disconnected by counts: yes (1 + R2*(e2-1) < R1; every "
            "realization of this distribution is disconnected)"
        )
    else:
        print("forced disconnected by counts: no")
    return EXIT_OK if check.ok else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# spectrum

def _cmd_spectrum(args: argparse.Namespace) -> int:
    if args.order < 1:
        raise ValueError(f"--order must be >= 1, got {args.order}")
    pot = _load_pot(args)
    found = distributions_for_order(pot, args.order)

    if args.json:
        payload = {
            "pot": render_pot(pot),
            "order": args.order,
            "distributions": [list(dist.counts) for dist in found],
        }
        _emit_json(payload)
        return EXIT_OK if found else EXIT_NEGATIVE

    print(f"pot: {render_pot(pot)}")
    if not found:
        print(f"no tile distribution of order {args.order}")
        return EXIT_NEGATIVE
    print(f"tile distributions of order {args.order}:")
    for dist in found:
        print(f"  {dist}")
    return EXIT_OK
