"""Deterministic CSV/JSON report emission.

CSV uses comma separators, '.' decimal point and 12 significant digits
for reals, independent of locale.  JSON reports are a single object with
``config``, ``rows`` and ``summary`` keys.  Identical inputs produce
byte-identical files.
"""

import io
import json
import sys


def format_value(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def render_csv(header, rows):
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format_value(v) for v in row) + "\n")
    return buf.getvalue()


def render_json(config, header, rows, summary):
    doc = {
        "config": config,
        "rows": [dict(zip(header, row)) for row in rows],
        "summary": summary,
    }
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True) + "\n"


def write_report(out_path, fmt, config, header, rows, summary):
    """Render and write a report; '-' writes to stdout."""
    if fmt == "csv":
        text = render_csv(header, rows)
    elif fmt == "json":
        text = render_json(config, header, rows, summary)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if out_path == "-":
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return text
