"""CSV and JSON writers for traces, histograms and scalar records.

Floats are written with 17 significant digits so doubles round-trip.  CSV
files open with ``#``-prefixed provenance lines (command, seed, version).
"""

from __future__ import annotations

import io
import json
import math
from typing import Any

import numpy as np

from . import __version__
from .chain import ChainTrace, CoupledTrace, Histogram

TRACE_HEADER = ("step", "roll", "x", "y", "J", "angle")
FLAT_TRACE_HEADER = ("step", "roll", "x")
HISTOGRAM_HEADER = ("bin_low", "bin_high", "mass")
GAP_HEADER = ("step", "roll", "x", "y", "z", "gap")


def fmt(v: float) -> str:
    v = float(v)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if math.isnan(v):
        return "nan"
    return format(v, ".17g")


def provenance(command: str | None, seed: int | None, **extra: Any) -> dict:
    out = {"command": command, "seed": seed, "version": __version__}
    out.update(extra)
    return out


def _header_lines(prov: dict | None) -> str:
    if not prov:
        return ""
    return "".join(f"# {k}: {v}\n" for k, v in prov.items())


def _encode(o, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent + 1)}" for k, v in o.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(o, (list, tuple)):
        if not o:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in o):
            return "[" + ", ".join(_encode(v, indent) for v in o) + "]"
        items = [pad + _encode(v, indent + 1) for v in o]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    if isinstance(o, (bool, np.bool_)):
        return "true" if o else "false"
    if isinstance(o, (int, np.integer)):
        return str(int(o))
    if isinstance(o, (float, np.floating)):
        v = float(o)
        # non-finite values are not valid JSON numbers
        return fmt(v) if math.isfinite(v) else json.dumps(fmt(v))
    if o is None:
        return "null"
    return json.dumps(str(o))


def dumps_json(obj: dict) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, 0) + "\n"


def trace_csv(trace: ChainTrace, prov: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(prov))
    if trace.kind == "flat":
        buf.write(",".join(FLAT_TRACE_HEADER) + "\n")
        for n, (r, x) in enumerate(zip(trace.rolls.tolist(), trace.x.tolist())):
            buf.write(f"{n},{r},{fmt(x)}\n")
    else:
        buf.write(",".join(TRACE_HEADER) + "\n")
        rows = zip(trace.rolls.tolist(), trace.x.tolist(), trace.y.tolist(), trace.J.tolist(), trace.angle.tolist())
        for n, (r, x, y, j, a) in enumerate(rows):
            buf.write(f"{n},{r},{fmt(x)},{fmt(y)},{fmt(j)},{fmt(a)}\n")
    return buf.getvalue()


def trace_json(trace: ChainTrace, prov: dict | None = None) -> str:
    body: dict[str, Any] = {"provenance": prov, "kind": trace.kind, "seed": trace.seed}
    body["roll"] = trace.rolls.tolist()
    body["x"] = trace.x.tolist()
    if trace.kind != "flat":
        body["y"] = trace.y.tolist()
        body["log_y"] = trace.log_y.tolist()
        body["J"] = trace.J.tolist()
        body["angle"] = trace.angle.tolist()
    return dumps_json(body)


def histogram_csv(hist: Histogram, prov: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(prov))
    buf.write(",".join(HISTOGRAM_HEADER) + "\n")
    for lo, hi, m in zip(hist.edges[:-1].tolist(), hist.edges[1:].tolist(), hist.masses.tolist()):
        buf.write(f"{fmt(lo)},{fmt(hi)},{fmt(m)}\n")
    return buf.getvalue()


def histogram_json(hist: Histogram, prov: dict | None = None) -> str:
    return dumps_json({
        "provenance": prov,
        "bins": [
            {"bin_low": lo, "bin_high": hi, "mass": m}
            for lo, hi, m in zip(hist.edges[:-1].tolist(), hist.edges[1:].tolist(), hist.masses.tolist())
        ],
        "counts": hist.counts.tolist(),
    })


def coupled_csv(ct: CoupledTrace, prov: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(prov))
    buf.write(",".join(GAP_HEADER) + "\n")
    p = ct.planar
    rows = zip(p.rolls.tolist(), p.x.tolist(), p.y.tolist(), ct.flat.x.tolist(), ct.gap.tolist())
    for n, (r, x, y, z, g) in enumerate(rows):
        buf.write(f"{n},{r},{fmt(x)},{fmt(y)},{fmt(z)},{fmt(g)}\n")
    return buf.getvalue()


def coupled_json(ct: CoupledTrace, prov: dict | None = None) -> str:
    p = ct.planar
    return dumps_json({
        "provenance": prov,
        "seed": p.seed,
        "roll": p.rolls.tolist(),
        "x": p.x.tolist(),
        "y": p.y.tolist(),
        "log_y": p.log_y.tolist(),
        "z": ct.flat.x.tolist(),
        "gap": ct.gap.tolist(),
    })


def record_csv(record: dict, prov: dict | None = None) -> str:
    buf = io.StringIO()
    buf.write(_header_lines(prov))
    keys = list(record)
    buf.write(",".join(keys) + "\n")
    buf.write(",".join(fmt(v) if isinstance(v, float) else str(v) for v in record.values()) + "\n")
    return buf.getvalue()


def record_json(record: dict, prov: dict | None = None) -> str:
    return dumps_json({"provenance": prov, **record})


def read_csv_rows(text: str) -> tuple[list[str], list[list[str]]]:
    """Header and rows of a CSV written here, skipping provenance lines."""
    lines = [ln for ln in text.splitlines() if ln and not ln.startswith("#")]
    return lines[0].split(","), [ln.split(",") for ln in lines[1:]]
