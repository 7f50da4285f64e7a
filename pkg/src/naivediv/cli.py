"""Command-line front end.

One binary, eight subcommands, three output formats.  Machine formats
(json, csv) keep rationals as exact strings; the table format is for
reading at a terminal.  Exit codes: 0 for any successfully computed
verdict (including negative ones), 1 for input or usage problems, 2 when
a requested rebalance is mathematically impossible because the source
does not majorize the target.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import fileio
from .errors import NotMajorized
from .matrices import multivariate_feasible
from .measures import (
    axiom_suite,
    ambient_utility,
    evaluate,
    get_measure,
    registry,
    schur_ostrowski_report,
)
from .preferences import (
    aversion_squared,
    inequality_aversion_coefficient,
    naive_prefer,
)
from .rebalancing import rebalance_to
from .simplex import compare, lorenz_curve, lorenz_dominates, uniform_vector


@dataclass
class CliConfig:
    """Global rendering and sampling options shared by every subcommand."""

    format: str = "table"
    precision: int = 12
    seed: int = 42
    out: str | None = None


class _CliParser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this tool reserves 2
    for violated mathematical preconditions, so usage errors become 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _precision_arg(text: str) -> int:
    value = int(text)
    if not 1 <= value <= 17:
        raise argparse.ArgumentTypeError("precision must be between 1 and 17")
    return value


def _seed_arg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("seed must be nonnegative")
    return value


def _build_parser() -> _CliParser:
    common = _CliParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("json", "csv", "table"),
        default=argparse.SUPPRESS,
        help="output format (default: table)",
    )
    common.add_argument(
        "--precision",
        type=_precision_arg,
        default=argparse.SUPPRESS,
        help="significant digits for decimal output, 1-17 (default: 12)",
    )
    common.add_argument(
        "--seed",
        type=_seed_arg,
        default=argparse.SUPPRESS,
        help="seed for randomized checks (default: 42)",
    )
    common.add_argument(
        "--out",
        default=argparse.SUPPRESS,
        help="write output to this path instead of stdout",
    )

    parser = _CliParser(
        prog="naivediv",
        description="Equal-weight allocation toolkit: orderings, measures, plans.",
        parents=[common],
    )
    # Global options stay SUPPRESS-defaulted so they can be given before or
    # after the subcommand; calling set_defaults here would overwrite the
    # shared parent actions' defaults and make the subparser pass clobber
    # values already parsed.  main() fills in the gaps instead.
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_CliParser)

    p = sub.add_parser(
        "compare",
        parents=[common],
        help="order two allocations by concentration",
    )
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument(
        "--lorenz",
        action="store_true",
        help="compare cumulative-share curves (lengths may differ)",
    )
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser(
        "measures", parents=[common], help="evaluate concentration measures"
    )
    p.add_argument("weights")
    p.add_argument(
        "--measure",
        action="append",
        dest="measures",
        metavar="ID",
        help="measure id (repeatable; default: the whole registry)",
    )
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser(
        "rebalance",
        parents=[common],
        help="plan a minimal-step move to a flatter allocation",
    )
    p.add_argument("weights")
    p.add_argument(
        "--target",
        default="equal",
        help="'equal' or a weight file majorized by the source (default: equal)",
    )
    p.add_argument(
        "--cost-rate",
        type=float,
        default=0.0,
        help="proportional cost per unit of traded mass (default: 0)",
    )
    p.set_defaults(func=_cmd_rebalance)

    p = sub.add_parser(
        "lorenz", parents=[common], help="tabulate the cumulative-share curve"
    )
    p.add_argument("weights")
    p.add_argument(
        "--points",
        type=int,
        default=0,
        metavar="N",
        help="also sample the curve at i/N for i = 0..N",
    )
    p.set_defaults(func=_cmd_lorenz)

    p = sub.add_parser(
        "axioms", parents=[common], help="stress a measure against the five axioms"
    )
    p.add_argument("--measure", required=True, metavar="ID")
    p.add_argument("--n", type=int, default=4, help="allocation length (default: 4)")
    p.add_argument(
        "--samples", type=int, default=400, help="cases per axiom (default: 400)"
    )
    p.set_defaults(func=_cmd_axioms)

    p = sub.add_parser(
        "aversion",
        parents=[common],
        help="distance of a benchmark allocation from equal weights",
    )
    p.add_argument("weights")
    p.set_defaults(func=_cmd_aversion)

    p = sub.add_parser(
        "schur-check",
        parents=[common],
        help="finite-difference spread-seeking check at a point",
    )
    p.add_argument("weights")
    p.add_argument("--measure", required=True, metavar="ID")
    p.add_argument(
        "--step", type=float, default=1e-5, help="finite-difference step"
    )
    p.set_defaults(func=_cmd_schur_check)

    p = sub.add_parser(
        "multi-check",
        parents=[common],
        help="simultaneous-mixing feasibility between two allocation stacks",
    )
    p.add_argument("target_rows", help="file with the rows to reach")
    p.add_argument("source_rows", help="file with the rows to mix")
    p.set_defaults(func=_cmd_multi_check)

    return parser


# --------------------------------------------------------------------------
# Rendering helpers.
# --------------------------------------------------------------------------


def _emit(text: str, config: CliConfig) -> None:
    fileio.write_text(text, config.out)


def _render_json(payload) -> str:
    return json.dumps(payload, indent=2)


def _render_pairs(pairs: list[tuple[str, str]], config: CliConfig) -> str:
    if config.format == "json":
        return _render_json(dict(pairs))
    if config.format == "csv":
        lines = ["key,value"]
        lines += [f"{k},{v}" for k, v in pairs]
        return "\n".join(lines)
    width = max(len(k) for k, _ in pairs)
    return "\n".join(f"{k:<{width}}  {v}" for k, v in pairs)


def _fmt(value: float, config: CliConfig) -> str:
    return fileio.format_float(value, config.precision)


# --------------------------------------------------------------------------
# Subcommands.
# --------------------------------------------------------------------------


def _cmd_compare(args, config: CliConfig) -> int:
    first = fileio.load_weights(args.first)
    second = fileio.load_weights(args.second)
    if args.lorenz:
        relation = lorenz_dominates(lorenz_curve(first), lorenz_curve(second))
        _emit(_render_pairs([("relation", relation.value)], config), config)
        return 0
    relation = compare(first, second)
    preference = naive_prefer(first, second)
    _emit(
        _render_pairs(
            [("relation", relation.value), ("preference", preference.value)],
            config,
        ),
        config,
    )
    return 0


def _cmd_measures(args, config: CliConfig) -> int:
    w = fileio.load_weights(args.weights)
    ids = args.measures if args.measures else [m.id for m in registry()]
    values = [(mid, evaluate(get_measure(mid), w)) for mid in ids]
    if config.format == "json":
        _emit(
            _render_json(
                {mid: fileio.json_float(v, config.precision) for mid, v in values}
            ),
            config,
        )
        return 0
    if config.format == "csv":
        lines = ["measure,value"]
        lines += [f"{mid},{_fmt(v, config)}" for mid, v in values]
        _emit("\n".join(lines), config)
        return 0
    width = max(len(mid) for mid, _ in values)
    _emit(
        "\n".join(f"{mid:<{width}}  {_fmt(v, config)}" for mid, v in values),
        config,
    )
    return 0


def _cmd_rebalance(args, config: CliConfig) -> int:
    source = fileio.load_weights(args.weights)
    if args.target == "equal":
        target = uniform_vector(source.n)
    else:
        target = fileio.load_weights(args.target)
    plan = rebalance_to(source, target, args.cost_rate)
    _emit(_render_json(fileio.plan_to_dict(plan, config.precision)), config)
    return 0


def _cmd_lorenz(args, config: CliConfig) -> int:
    w = fileio.load_weights(args.weights)
    curve = lorenz_curve(w)
    grid = set(curve.breakpoints())
    if args.points > 0:
        grid |= {Fraction(i, args.points) for i in range(args.points + 1)}
    rows = [(t, curve.value_at(t)) for t in sorted(grid)]
    if config.format == "json":
        payload = [{"t": str(t), "value": str(v)} for t, v in rows]
        _emit(_render_json({"points": payload}), config)
        return 0
    sep = "," if config.format == "csv" else "  "
    lines = ["t,L(t)"] if config.format == "csv" else []
    lines += [
        f"{_fmt(float(t), config)}{sep}{_fmt(float(v), config)}" for t, v in rows
    ]
    _emit("\n".join(lines), config)
    return 0


def _cmd_axioms(args, config: CliConfig) -> int:
    measure = get_measure(args.measure)
    report = axiom_suite(measure, seed=config.seed, samples=args.samples, n=args.n)
    _emit(_render_json(report.to_json_dict()), config)
    return 0


def _cmd_aversion(args, config: CliConfig) -> int:
    d = fileio.load_weights(args.weights)
    squared = aversion_squared(d)
    coefficient = inequality_aversion_coefficient(d)
    _emit(
        _render_pairs(
            [
                ("aversion_squared", str(squared)),
                ("aversion", _fmt(coefficient, config)),
            ],
            config,
        ),
        config,
    )
    return 0


def _cmd_schur_check(args, config: CliConfig) -> int:
    measure = get_measure(args.measure)
    point = fileio.load_weights(args.weights)
    report = schur_ostrowski_report(
        ambient_utility(measure), point, step=args.step, seed=config.seed
    )
    _emit(
        _render_pairs(
            [
                ("measure", measure.id),
                ("symmetric", str(report.symmetric).lower()),
                ("sign_condition", str(report.sign_condition).lower()),
                ("passed", str(report.passed).lower()),
                ("max_sign_product", _fmt(report.max_sign_product, config)),
            ],
            config,
        ),
        config,
    )
    return 0


def _cmd_multi_check(args, config: CliConfig) -> int:
    target_rows = fileio.load_allocation_rows(args.target_rows)
    source_rows = fileio.load_allocation_rows(args.source_rows)
    witness = multivariate_feasible(target_rows, source_rows)
    if config.format == "json":
        payload = {
            "feasible": witness is not None,
            "witness": fileio.matrix_to_dict(witness) if witness is not None else None,
        }
        _emit(_render_json(payload), config)
        return 0
    pairs = [("feasible", str(witness is not None).lower())]
    if witness is not None:
        pairs.append(
            ("witness", json.dumps(fileio.matrix_to_dict(witness)["entries"]))
        )
    _emit(_render_pairs(pairs, config), config)
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    defaults = CliConfig()
    config = CliConfig(
        format=getattr(args, "format", defaults.format),
        precision=getattr(args, "precision", defaults.precision),
        seed=getattr(args, "seed", defaults.seed),
        out=getattr(args, "out", defaults.out),
    )
    try:
        return args.func(args, config)
    except NotMajorized as exc:
        print(f"naivediv: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"naivediv: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
