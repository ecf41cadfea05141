# report_helpers.py
#
# Report writers for the three output formats. Every command hands over a
# payload dict (the JSON document) plus an optional list of flat rows that
# tsv and pretty render as a table.

import json
import logging
import os
from typing import Dict, List, Optional

import pandas as pd

logger = logging.getLogger(__name__)


def render(payload: Dict, rows: Optional[List[Dict]] = None, fmt: str = "pretty", title: str = "") -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    frame = pd.DataFrame(rows if rows is not None else [_flatten(payload)])
    if fmt == "tsv":
        return frame.to_csv(sep="\t", index=False)

    lines = []
    if title:
        lines.append(title)
        lines.append("-" * max(len(title), 20))
    if frame.empty:
        lines.append("(no rows)")
    else:
        lines.append(frame.to_string(index=False))
    scalars = {k: v for k, v in payload.items() if not isinstance(v, (list, dict))}
    if rows is not None and scalars:
        lines.append("")
        lines.extend(f"{k:>16}: {v}" for k, v in scalars.items())
    return "\n".join(lines) + "\n"


def _flatten(payload: Dict) -> Dict:
    return {k: (json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else v) for k, v in payload.items()}


def emit(text: str, out: Optional[str] = None) -> None:
    """Prints the report, or writes it to 'out' when a path is given."""
    if not out:
        print(text, end="")
        return
    directory = os.path.dirname(out)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(out, "w", encoding="utf-8") as f:
        f.write(text)
    logger.info("Wrote report to %s", out)
    print(f"SYSTEM: Report written to {out}")
