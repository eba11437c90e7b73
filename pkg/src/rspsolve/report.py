"""Text and CSV rendering of solver results."""
from __future__ import annotations

import csv
import io
from fractions import Fraction

CSV_COLUMNS = ("instance_id", "n", "k", "D", "engine", "eps", "peak_decimal",
               "peak_rational", "z", "states", "millis", "ratio_bound")


def rational(x) -> str:
    """Lowest-terms ``p/q``, integers included (``3`` -> ``3/1``)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal(x, places: int = 6) -> str:
    """Exact round-half-even to ``places`` decimals, without floats."""
    x = Fraction(x)
    scaled = round(x * 10**places)
    sign = "-" if scaled < 0 else ""
    whole, frac = divmod(abs(scaled), 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def both(x) -> str:
    return f"{rational(x)} ({decimal(x)})"


def times_str(times) -> str:
    return ",".join(str(t) for t in times)


def csv_row(row: dict) -> dict:
    """Format a result row (Python values) into CSV strings."""
    def opt(v, fmt):
        return "" if v is None else fmt(v)

    return {
        "instance_id": row["instance_id"],
        "n": str(row["n"]),
        "k": str(row["k"]),
        "D": decimal(row["D"]),
        "engine": row["engine"],
        "eps": opt(row.get("eps"), rational),
        "peak_decimal": decimal(row["peak"]),
        "peak_rational": rational(row["peak"]),
        "z": str(row["z"]),
        "states": str(row["states"]),
        "millis": opt(row.get("millis"), lambda m: f"{m:.3f}"),
        "ratio_bound": opt(row.get("ratio_bound"), decimal),
    }


def sort_key(row: dict):
    eps = row.get("eps")
    return (row["instance_id"], row["engine"], Fraction(-1) if eps is None else Fraction(eps))


def write_csv(rows, path=None) -> str:
    rows = sorted(rows, key=sort_key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(csv_row(row))
    text = buf.getvalue()
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text
