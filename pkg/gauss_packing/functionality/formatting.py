"""
This file contains functions rendering result records as CSV, JSON lines or
human readable text. Reals are written with 17 significant digits so that
every double survives a round trip, and infinities as 'inf'.

Author(s): David Marchant
"""
import csv
import io
import json
import math

from typing import Any, Dict, List, Optional

from .file_io import lines_to_string
from .validation import valid_choice
from ..core.vars import FORMAT_CSV, FORMAT_JSON_LINES, FORMAT_HUMAN, \
    VALID_FORMATS

Record = Dict[str,Any]


def format_real(value:float)->str:
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.17g}"

def format_value(value:Any)->str:
    """Plain text form of a record value, used by CSV and human output."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_real(value)
    if value is None:
        return ""
    return str(value)

def json_value(value:Any)->str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        # JSON has no infinity literal
        if not math.isfinite(value):
            return json.dumps(format_real(value))
        return format_real(value)
    if value is None:
        return "null"
    if isinstance(value, dict):
        return json_object(value)
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(json_value(v) for v in value) + "]"
    return json.dumps(str(value))

def json_object(record:Record)->str:
    fields = [f"{json.dumps(str(k))}: {json_value(v)}"
        for k, v in record.items()]
    return "{" + ", ".join(fields) + "}"

def to_json_lines(records:List[Record])->str:
    return lines_to_string([json_object(r) for r in records]) + "\n"

def to_csv(records:List[Record], header:Optional[List[str]]=None)->str:
    """CSV with one row per record. Nested values are left out unless they
    are named in the header."""
    if header is None:
        header = [k for k, v in records[0].items()
            if not isinstance(v, (dict, list, tuple))] if records else []
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for record in records:
        writer.writerow([format_value(record.get(k)) for k in header])
    return buffer.getvalue()

def to_human(records:List[Record], title:str="")->str:
    lines = [title] if title else []
    for i, record in enumerate(records):
        if i or title:
            lines.append("")
        width = max((len(str(k)) for k in record), default=0)
        for k, v in record.items():
            if isinstance(v, dict):
                v = ", ".join(f"{dk}={format_value(dv)}"
                    for dk, dv in v.items())
            lines.append(f"{str(k).ljust(width)} : {format_value(v)}")
    return lines_to_string(lines) + "\n"

def to_human_table(records:List[Record], columns:List[str], title:str=""
        )->str:
    """Aligned table of the given columns, one row per record."""
    rows = [columns] + [[format_value(r.get(c)) for c in columns]
        for r in records]
    widths = [max(len(row[i]) for row in rows) for i in range(len(columns))]
    lines = [title] if title else []
    for row in rows:
        lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
    return lines_to_string(lines) + "\n"

def render(records:List[Record], format:str,
        header:Optional[List[str]]=None, title:str="")->str:
    valid_choice(format, VALID_FORMATS, hint="render.format")
    if format == FORMAT_CSV:
        return to_csv(records, header=header)
    if format == FORMAT_JSON_LINES:
        return to_json_lines(records)
    if header is not None:
        return to_human_table(records, header, title=title)
    return to_human(records, title=title)
