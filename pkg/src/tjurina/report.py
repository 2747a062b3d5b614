"""Input documents, the analysis pipeline and the JSON topology report.

Input documents are line-oriented::

    # comment
    vars: x,y,z,v,w
    defparams: e
    matrix: 2 x 3
    w, y, x
    z, w, y+v^2-e
    options:
    experimental: true

``defparams`` and the ``options:`` section are optional.  Reports always
describe the base presentation (all parameters set to 0).
"""

from __future__ import annotations

import json
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .deformation import DeformedPresentation, family, h1_tangent, tau_downstairs
from .errors import TjurinaError
from .poly import ParseError, parse_polynomial
from .polymat import PolyMatrix
from .ring import RingContext
from .transform import Presentation, betti_report, tau_upstairs, validate_icmc2

OPTION_KEYS = {"chart", "experimental"}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_DIMS = re.compile(r"\s*(\d+)\s*[xX]\s*(\d+)\s*$")


@dataclass
class InputDoc:
    xvars: tuple
    params: tuple
    rows: list  # per row: (column, entry text) pairs as written
    options: dict = field(default_factory=dict)
    source: str = "<string>"
    row_lines: tuple = ()

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def experimental(self) -> bool:
        return bool(self.options.get("experimental", False))

    def context(self) -> RingContext:
        return RingContext.global_ring(self.xvars + self.params)

    def matrix(self) -> PolyMatrix:
        """Entries parsed over x-variables and parameters (errors carry line/column)."""
        ctx = self.context()
        out = []
        lines = self.row_lines or tuple(range(1, len(self.rows) + 1))
        for lineno, cells in zip(lines, self.rows):
            row = []
            for col, text in cells:
                try:
                    row.append(parse_polynomial(text, ctx))
                except (ParseError, KeyError) as exc:
                    pos = col + getattr(exc, "pos", 0) + 1
                    msg = str(exc).rsplit(" at position", 1)[0]
                    raise TjurinaError("PARSE_ERROR",
                                       f"{self.source}:{lineno}:{pos}: {msg}") from None
            out.append(row)
        return PolyMatrix.from_rows(out)

    def family(self) -> DeformedPresentation:
        return family(self.matrix(), self.xvars, self.params)

    def presentation(self) -> Presentation:
        if self.params:
            return self.family().base()
        M = self.matrix().to_context(RingContext.local_ring(self.xvars))
        return validate_icmc2(M, self.xvars)

    def echo(self) -> dict:
        return {"vars": list(self.xvars), "defparams": list(self.params),
                "matrix": [[text for _, text in row] for row in self.rows],
                "options": dict(sorted(self.options.items()))}


def _names(text: str, lineno: int, source: str) -> tuple:
    names = tuple(n.strip() for n in text.split(",") if n.strip())
    for n in names:
        if not _NAME.match(n):
            raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: bad variable name {n!r}")
    return names


def _split_cells(line: str) -> list[tuple[int, str]]:
    """Comma-separated cells with the column where each starts."""
    cells, start = [], 0
    for part in line.split(","):
        lead = len(part) - len(part.lstrip())
        cells.append((start + lead, part.strip()))
        start += len(part) + 1
    return cells


def _option_value(v: str):
    low = v.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    if re.fullmatch(r"-?\d+", v):
        return int(v)
    return v


def parse_input(text: str, source: str = "<string>") -> InputDoc:
    xvars = params = None
    dims = None
    rows: list = []
    row_lines: list = []
    options: dict = {}
    section = "header"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        if section == "matrix" and len(rows) < dims[0]:
            cells = _split_cells(line)
            if len(cells) != dims[1]:
                raise TjurinaError("SHAPE_ERROR", f"{source}:{lineno}: expected {dims[1]} "
                                                  f"entries, got {len(cells)}")
            if any(not c for _, c in cells):
                raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: empty entry")
            rows.append(cells)
            row_lines.append(lineno)
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep:
            if section == "matrix":
                raise TjurinaError("SHAPE_ERROR", f"{source}:{lineno}: more rows than the "
                                                  f"declared {dims[0]}")
            raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: expected 'key: value'")
        value = value.strip()
        if section == "options":
            if key not in OPTION_KEYS:
                raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: unknown option {key!r}")
            options[key] = _option_value(value)
        elif key == "vars":
            xvars = _names(value, lineno, source)
        elif key == "defparams":
            params = _names(value, lineno, source)
        elif key == "matrix":
            m = _DIMS.match(value)
            if not m or min(int(m.group(1)), int(m.group(2))) < 1:
                raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: expected 'matrix: R x C'")
            dims = (int(m.group(1)), int(m.group(2)))
            section = "matrix"
        elif key == "options":
            section = "options"
        else:
            raise TjurinaError("PARSE_ERROR", f"{source}:{lineno}: unknown key {key!r}")
    if not xvars:
        raise TjurinaError("PARSE_ERROR", f"{source}: missing 'vars:' line")
    if dims is None:
        raise TjurinaError("PARSE_ERROR", f"{source}: missing 'matrix:' section")
    if len(rows) != dims[0]:
        raise TjurinaError("SHAPE_ERROR", f"{source}: declared {dims[0]} rows, got {len(rows)}")
    params = params or ()
    if set(xvars) & set(params):
        raise TjurinaError("PARSE_ERROR", f"{source}: parameters overlap variables")
    return InputDoc(xvars, params, rows, options, source, tuple(row_lines))


def load_input(path: str) -> InputDoc:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise TjurinaError("IO_ERROR", f"{path}: {exc.strerror or exc}") from None
    return parse_input(text, path)


# --- JSON -------------------------------------------------------------------

def jsonable(v: Any) -> Any:
    """Fractions become ``"p/q"`` strings (integers stay integers)."""
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, dict):
        return {k: jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    return v


def dumps(obj: Any) -> str:
    return json.dumps(jsonable(obj), indent=2, ensure_ascii=False) + "\n"


REPORT_KEYS = ("input", "t", "validation", "charts", "tau_down", "tau_up", "h1",
               "betti", "flags", "note", "timings_ms")


@dataclass
class TopologyReport:
    input: dict
    t: int
    validation: dict
    charts: list
    tau_down: int
    tau_up: int
    h1: int
    betti: list
    flags: list
    note: str | None = None
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_KEYS}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TopologyReport":
        d = json.loads(text)
        missing = [k for k in REPORT_KEYS if k not in d]
        if missing:
            raise TjurinaError("PARSE_ERROR", f"report lacks keys {missing}")
        return cls(**{k: d[k] for k in REPORT_KEYS})

    def render(self) -> str:
        lines = [f"t = {self.t}"]
        lines += [f"  {k}: {v}" for k, v in self.validation.items()]
        lines.append("chart  dim  points  tau_new")
        for c in self.charts:
            lines.append(f"{c['index']:>5}  {c['dim']:>3}  {c['points']:>6}  {c['tau_new']:>7}")
        lines.append(f"tau_down = {self.tau_down}   tau_up = {self.tau_up}   h1 = {self.h1}")
        lines.append("betti (b0..b3) = " + ", ".join(map(str, self.betti)))
        lines.append("flags: " + " ".join(self.flags))
        if self.note:
            lines.append(f"note: {self.note}")
        if self.timings_ms:
            lines.append("timings_ms: " + ", ".join(f"{k}={v}" for k, v in self.timings_ms.items()))
        return "\n".join(lines)


class _Clock:
    def __init__(self):
        self.ms: dict = {}

    def run(self, name, fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        self.ms[name] = round((time.perf_counter() - t0) * 1000)
        return out


def build_report(doc: InputDoc, *, experimental: bool | None = None,
                 timings: bool = True) -> TopologyReport:
    """Validate, analyze every chart, and assemble the topology report."""
    experimental = doc.experimental if experimental is None else experimental
    clock = _Clock()
    P = clock.run("validate", doc.presentation)
    if P.t == 3 and not experimental:
        raise TjurinaError("WRONG_TYPE", "t = 3 reports are experimental; "
                                         "pass --experimental or set 'experimental: true'")
    if P.t not in (2, 3):
        raise TjurinaError("WRONG_TYPE", f"topology reports need t = 2 (or t = 3 "
                                         f"experimentally), got t = {P.t}")
    analysis = clock.run("transform", tau_upstairs, P)
    tau_down = clock.run("tau_down", tau_downstairs, P)
    br = betti_report(P, analysis)
    h1 = h1_tangent(tau_down, analysis.tau_upstairs)
    charts = [{"index": c.index, "dim": c.dim, "points": c.points, "tau_new": c.tau_new}
              for c in analysis.charts]
    return TopologyReport(doc.echo(), P.t, dict(P.validation), charts, tau_down,
                          analysis.tau_upstairs, h1, list(br.betti), list(br.flags),
                          br.note or None, clock.ms if timings else {})
