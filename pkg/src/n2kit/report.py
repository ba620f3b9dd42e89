"""Report objects and their JSON / CSV / Markdown renderings.

JSON is the canonical, round-trippable form.  Every rational is written as
``"num/den"`` (``"3/1"`` included) and every PBW word as a list of
``{"kind": ..., "index2": ...}`` objects.  Wall-clock timing lives under
``"meta"`` so that the ``"payload"`` section is byte-stable across runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Sequence

from .algebra import Mode

SCHEMA_VERSION = 1
FORMATS = ("json", "csv", "markdown")


def rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    return Fraction(text)


def mode_json(mode: Mode) -> Dict[str, Any]:
    return {"kind": mode.kind.label, "index2": mode.index2}


def mode_from_json(obj: Mapping[str, Any]) -> Mode:
    return Mode.parse(obj["kind"], int(obj["index2"]))


def word_json(word: Sequence[Mode]) -> List[Dict[str, Any]]:
    return [mode_json(m) for m in word]


def word_text(word: Sequence[Mode]) -> str:
    return " ".join(str(m) for m in word) or "|hw>"


def element_json(v) -> List[Dict[str, Any]]:
    """Terms of a :class:`~n2kit.verma.ModuleElement`, in basis order."""
    return [{"word": word_json(w), "coeff": rat(x)} for w, x in v.sorted_terms()]


def grade_json(g) -> Dict[str, Any]:
    return {"level": rat(g.level), "charge": int(g.charge)}


@dataclass
class Report:
    command: str
    config: Dict[str, Any]
    verdict: str = "pass"
    payload: Dict[str, Any] = field(default_factory=dict)
    table: List[Dict[str, Any]] = field(default_factory=list)
    meta: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "verdict": self.verdict,
            "payload": self.payload,
            "meta": self.meta,
        }

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        if fmt == "csv":
            return _csv(self.table)
        if fmt == "markdown":
            return self._markdown()
        raise ValueError(f"unknown format {fmt!r}; choose from {FORMATS}")

    def _markdown(self) -> str:
        lines = [f"# n2kit {self.command}", "", f"verdict: **{self.verdict}**", ""]
        if self.table:
            cols = list(self.table[0])
            lines.append("| " + " | ".join(cols) + " |")
            lines.append("|" + "---|" * len(cols))
            for row in self.table:
                lines.append("| " + " | ".join(str(row.get(c, "")) for c in cols) + " |")
        elif "error" in self.payload:
            lines.append(f"error: {self.payload['error']}")
        return "\n".join(lines) + "\n"


def _csv(rows: List[Dict[str, Any]]) -> str:
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return buf.getvalue()


def payload_bytes(report_json: str) -> bytes:
    """Canonical bytes of the payload section of a rendered JSON report."""
    data = json.loads(report_json)
    return json.dumps(data["payload"], indent=2).encode()


__all__ = [
    "SCHEMA_VERSION",
    "FORMATS",
    "Report",
    "rat",
    "parse_rat",
    "mode_json",
    "mode_from_json",
    "word_json",
    "word_text",
    "element_json",
    "grade_json",
    "payload_bytes",
]
