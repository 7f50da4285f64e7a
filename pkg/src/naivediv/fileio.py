"""Readers and writers for weight, matrix, and plan files.

Machine formats keep every number as an exact rational string ("1/2",
"0.25" -> exactly 1/4); floats appear only in explicitly decimal fields
like practical turnover and cost.  Weight files are JSON by default, CSV
when the path ends in .csv.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .matrices import SquareMatrix, TTransform
from .rebalancing import RebalancePlan
from .simplex import WeightVector, as_fraction


def parse_rational(text: str) -> Fraction:
    """'p/q' or decimal literal -> exact Fraction."""
    try:
        return as_fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_float(value: float, precision: int) -> str:
    """Render a float with the configured number of significant digits."""
    return f"{value:.{precision}g}"


def json_float(value: float, precision: int) -> float:
    """Round a float through the configured precision for JSON emission."""
    return float(format_float(value, precision))


def weights_to_dict(w: WeightVector) -> dict:
    out: dict = {}
    if w.labels is not None:
        out["labels"] = list(w.labels)
    out["weights"] = [str(x) for x in w.weights]
    return out


def weights_from_dict(data: dict) -> WeightVector:
    if not isinstance(data, dict) or "weights" not in data:
        raise ValueError("weight file needs a 'weights' field")
    weights = tuple(parse_rational(x) for x in data["weights"])
    labels = data.get("labels")
    return WeightVector(weights, tuple(labels) if labels is not None else None)


def _load_weights_csv(text: str) -> WeightVector:
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row]
    if not rows or [cell.strip() for cell in rows[0]] != ["label", "weight"]:
        raise ValueError("weight CSV must start with a 'label,weight' header")
    labels = []
    weights = []
    for row in rows[1:]:
        if len(row) != 2:
            raise ValueError(f"weight CSV rows need 2 columns, got {row!r}")
        labels.append(row[0].strip())
        weights.append(parse_rational(row[1]))
    return WeightVector(tuple(weights), tuple(labels))


def load_weights(path: str | Path) -> WeightVector:
    """Read a weight allocation from a JSON (default) or .csv file."""
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".csv":
        return _load_weights_csv(text)
    return weights_from_dict(json.loads(text))


def matrix_to_dict(m: SquareMatrix) -> dict:
    return {
        "order": m.order,
        "entries": [[str(e) for e in row] for row in m.rows],
    }


def load_square_matrix(path: str | Path) -> SquareMatrix:
    """Read a square rational matrix from its JSON file form."""
    data = json.loads(Path(path).read_text())
    if "entries" not in data:
        raise ValueError("matrix file needs an 'entries' field")
    rows = tuple(
        tuple(parse_rational(e) for e in row) for row in data["entries"]
    )
    matrix = SquareMatrix(rows)
    declared = data.get("order")
    if declared is not None and declared != matrix.order:
        raise ValueError(
            f"declared order {declared} but entries are {matrix.order}x{matrix.order}"
        )
    return matrix


def load_allocation_rows(path: str | Path) -> list[WeightVector]:
    """Read a d x n stack of allocations (each row sums to 1) from JSON."""
    data = json.loads(Path(path).read_text())
    if "entries" not in data:
        raise ValueError("allocation file needs an 'entries' field")
    rows = []
    for row in data["entries"]:
        rows.append(WeightVector(tuple(parse_rational(e) for e in row)))
    if not rows:
        raise ValueError("allocation file has no rows")
    return rows


def plan_to_dict(plan: RebalancePlan, precision: int = 12) -> dict:
    """Serialize a plan; transform indices go out 1-based."""
    practical = plan.practical_turnover
    return {
        "source": weights_to_dict(plan.source),
        "target": weights_to_dict(plan.target),
        "steps": [
            {"j": t.j + 1, "k": t.k + 1, "lambda": str(t.lam)} for t in plan.steps
        ],
        "intermediates": [
            [str(x) for x in w.weights] for w in plan.intermediates
        ],
        "turnover": str(plan.turnover),
        "practical_turnover": (
            json_float(practical, precision) if practical is not None else None
        ),
        "trades": [
            {"label": label, "delta": str(delta)} for label, delta in plan.trades
        ],
        "cost": json_float(plan.cost, precision),
        "cost_rate": json_float(plan.cost_rate, precision),
    }


def plan_from_dict(data: dict) -> RebalancePlan:
    """Rebuild a plan from its JSON form; replay is re-verified on construction."""
    source = weights_from_dict(data["source"])
    target = weights_from_dict(data["target"])
    steps = tuple(
        TTransform(int(s["j"]) - 1, int(s["k"]) - 1, parse_rational(s["lambda"]))
        for s in data["steps"]
    )
    intermediates = tuple(
        WeightVector(tuple(parse_rational(x) for x in row))
        for row in data["intermediates"]
    )
    practical = data.get("practical_turnover")
    return RebalancePlan(
        source=source,
        target=target,
        steps=steps,
        intermediates=intermediates,
        turnover=parse_rational(data["turnover"]),
        practical_turnover=float(practical) if practical is not None else None,
        trades=tuple(
            (t["label"], parse_rational(t["delta"])) for t in data["trades"]
        ),
        cost=float(data["cost"]),
        cost_rate=float(data["cost_rate"]),
    )


def write_text(text: str, out: str | Path | None) -> None:
    """Send rendered output to a file or stdout."""
    if out is None:
        print(text, end="" if text.endswith("\n") else "\n")
    else:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")


__all__ = [
    "parse_rational",
    "format_float",
    "json_float",
    "weights_to_dict",
    "weights_from_dict",
    "load_weights",
    "matrix_to_dict",
    "load_square_matrix",
    "load_allocation_rows",
    "plan_to_dict",
    "plan_from_dict",
    "write_text",
]
