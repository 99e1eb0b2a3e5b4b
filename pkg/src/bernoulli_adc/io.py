"""Measure spec files and report emission.

Spec files are JSON with rationals as ``"num/den"`` strings::

    {"dim": 2, "p": 3, "mode": "length-class", "coefficients": ["1/18", "5/36", "7/72"]}
    {"dim": 2, "p": 3, "mode": "general", "probabilities": [{"nu": [0, 1], "p": "1/9"}, ...]}

Every writer here is byte-deterministic: fixed field order, canonical
rational strings, ``\\n`` line endings.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .audit import AnnulusReport
from .errors import SpecFormatError
from .measure import GENERAL, LENGTH_CLASS, BernoulliMeasure, BernoulliSpec
from .rational import format_fraction, format_vector, parse_fraction

ANNULUS_COLUMNS = (
    "center", "r", "R", "metric", "ann_lo", "ann_hi",
    "ball_lo", "ball_hi", "ratio_lo", "ratio_hi", "exact_flag",
)


def _rational(value, where: str):
    if isinstance(value, int) and not isinstance(value, bool):
        return parse_fraction(str(value))
    if not isinstance(value, str):
        raise SpecFormatError(f"{where}: rationals must be 'num/den' strings, got {value!r}")
    try:
        return parse_fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SpecFormatError(f"{where}: {exc}") from None


def spec_from_dict(data: dict) -> BernoulliSpec:
    if not isinstance(data, dict):
        raise SpecFormatError("spec must be a JSON object")
    try:
        dim = int(data["dim"])
        mode = data.get("mode", LENGTH_CLASS)
        p = int(data.get("p", 3))
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"bad spec header: {exc}") from None
    if mode == LENGTH_CLASS:
        coeffs = data.get("coefficients")
        if not isinstance(coeffs, list):
            raise SpecFormatError("length-class spec needs a 'coefficients' list")
        values = tuple(_rational(v, f"coefficients[{i}]") for i, v in enumerate(coeffs))
        return BernoulliSpec(dim=dim, p=p, mode=LENGTH_CLASS, coefficients=values)
    if mode == GENERAL:
        entries = data.get("probabilities")
        if not isinstance(entries, list):
            raise SpecFormatError("general spec needs a 'probabilities' list")
        table = {}
        for i, entry in enumerate(entries):
            try:
                nu = tuple(int(v) for v in entry["nu"])
                table[nu] = _rational(entry["p"], f"probabilities[{i}].p")
            except (KeyError, TypeError) as exc:
                raise SpecFormatError(f"probabilities[{i}]: {exc}") from None
        return BernoulliSpec(dim=dim, p=p, mode=GENERAL, probabilities=table)
    raise SpecFormatError(f"unknown mode {mode!r}")


def load_spec(path) -> BernoulliSpec:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"{path}: invalid JSON ({exc})") from None
    return spec_from_dict(data)


def spec_to_dict(measure: BernoulliMeasure) -> dict:
    if measure.coefficients is not None:
        return {
            "dim": measure.dim,
            "p": measure.p,
            "mode": LENGTH_CLASS,
            "coefficients": [format_fraction(a) for a in measure.coefficients],
        }
    return {
        "dim": measure.dim,
        "p": measure.p,
        "mode": GENERAL,
        "probabilities": [
            {"nu": list(nu), "p": format_fraction(w)} for nu, w in zip(measure.labels, measure.probs)
        ],
    }


def dumps_json(data) -> str:
    return json.dumps(data, indent=2) + "\n"


def spec_json(measure: BernoulliMeasure) -> str:
    return dumps_json(spec_to_dict(measure))


def _opt(value) -> str:
    return "inf" if value is None else format_fraction(value)


def annulus_row(rep: AnnulusReport) -> list[str]:
    return [
        format_vector(rep.center),
        format_fraction(rep.r),
        format_fraction(rep.R),
        rep.metric.value,
        format_fraction(rep.annulus_measure.lo),
        format_fraction(rep.annulus_measure.hi),
        format_fraction(rep.ball_measure.lo),
        format_fraction(rep.ball_measure.hi),
        format_fraction(rep.ratio_lo),
        _opt(rep.ratio_hi),
        "1" if rep.exact else "0",
    ]


def csv_text(columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return format_vector(value)
    return str(value)


def annulus_csv(reports: Iterable[AnnulusReport]) -> str:
    return csv_text(ANNULUS_COLUMNS, (annulus_row(r) for r in reports))


@dataclass(frozen=True)
class Table:
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


def emit_report(results, fmt: str = "csv", out=None) -> str:
    """Render ``results`` and write them to ``out`` when a path is given.

    CSV accepts a sequence of annulus reports (an empty one gives the bare
    header) or a :class:`Table`; JSON accepts any JSON-ready object.
    """
    if fmt == "json":
        text = dumps_json(results)
    elif fmt == "csv":
        if isinstance(results, Table):
            text = csv_text(results.columns, results.rows)
        else:
            text = annulus_csv(results)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if out is not None:
        Path(out).write_text(text, newline="")
    return text
