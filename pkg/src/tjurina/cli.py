"""Command line: ``tjurina <command> INPUT [options]``.

Exit codes: 0 success, 2 input error, 3 failed mathematical precondition,
4 invariant violation.  ``TJURINA_TRACE=1`` streams engine events to stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .deformation import (family_transform, fiber_smoothness, flatness_check, h1_tangent,
                          tau_downstairs)
from .errors import TjurinaError
from .polymat import classify_one_jet
from .report import build_report, dumps, load_input
from .transform import (analyze_transform, make_chart, tau_upstairs,
                        transform_chart_equations)


def _emit(args, data: dict, text: str) -> None:
    sys.stdout.write(dumps(data) if args.json else text + "\n")


def cmd_validate(args, doc):
    P = doc.presentation()
    data = {"t": P.t, "shape": [P.matrix.rows, P.matrix.cols],
            "matrix": [[str(e) for e in r] for r in P.matrix.to_rows()],
            "validation": dict(P.validation)}
    text = [f"ICMC2 presentation, t = {P.t}, {P.matrix.rows}x{P.matrix.cols} in {P.n} variables"]
    text += [f"  {k}: {v}" for k, v in P.validation.items()]
    _emit(args, data, "\n".join(text))


def cmd_jet(args, doc):
    P = doc.presentation()
    jc = classify_one_jet(P.matrix, P.xvars)
    _emit(args, {"tag": jc.tag, "generic_rank": jc.generic_rank},
          f"1-jet class {jc.tag} (generic pencil rank {jc.generic_rank})")


def _chart_list(args, doc, t):
    i = args.chart if args.chart is not None else doc.options.get("chart")
    if i is None:
        return list(range(1, t + 1))
    if not isinstance(i, int) or not 1 <= i <= t:
        raise TjurinaError("BAD_CHART", f"chart index {i} outside 1..{t}")
    return [i]


def cmd_transform(args, doc):
    if doc.params:
        DP = doc.family()
        doc.presentation()
        t = DP.t
        eqs = {i: family_transform(DP, i) for i in _chart_list(args, doc, t)}
    else:
        P = doc.presentation()
        t = P.t
        eqs = {i: transform_chart_equations(P, i) for i in _chart_list(args, doc, t)}
    charts = []
    text = []
    for i, H in eqs.items():
        chart = make_chart(doc.context(), t, i)
        charts.append({"index": i, "chart_vars": list(chart.svars),
                       "equations": [str(h) for h in H]})
        text.append(f"chart {i} (s{i} = 1; coordinates {', '.join(chart.svars) or '-'}):")
        text += [f"  {h}" for h in H]
    _emit(args, {"t": t, "charts": charts}, "\n".join(text))


def cmd_sing(args, doc):
    P = doc.presentation()
    charts = analyze_transform(P)
    rows = [{"index": c.index, "dim": c.dim, "isolated": c.isolated,
             "support_in_exceptional": c.support_in_exceptional, "points": c.points}
            for c in charts]
    total = None if any(c.points is None for c in charts) else sum(c.points for c in charts)
    text = ["chart  dim  isolated  exceptional  points"]
    for r in rows:
        pts = "-" if r["points"] is None else r["points"]
        text.append(f"{r['index']:>5}  {r['dim']:>3}  {str(r['isolated']):>8}  "
                    f"{str(r['support_in_exceptional']):>11}  {pts:>6}")
    text.append(f"total points: {'-' if total is None else total}")
    _emit(args, {"t": P.t, "charts": rows, "points": total}, "\n".join(text))


def cmd_tau(args, doc):
    P = doc.presentation()
    data: dict = {}
    if not args.upstairs:
        data["tau_down"] = tau_downstairs(P)
    if not args.downstairs:
        an = tau_upstairs(P)
        data["tau_up"] = an.tau_upstairs
        data["charts"] = [{"index": c.index, "tau_new": c.tau_new, "tau_total": c.tau_total}
                          for c in an.charts]
    if "tau_down" in data and "tau_up" in data:
        data["h1"] = h1_tangent(data["tau_down"], data["tau_up"])
    text = [f"{k} = {v}" for k, v in data.items() if k != "charts"]
    _emit(args, data, "\n".join(text))


def cmd_flatness(args, doc):
    v = flatness_check(doc.family())
    witness = None if v.witness is None else str(v.witness)
    data = {"status": v.status, "witness": witness, "notes": list(v.notes)}
    text = [v.status] + ([f"witness: {witness}"] if witness else []) + \
        [f"note: {n}" for n in v.notes]
    _emit(args, data, "\n".join(text))


def parse_values(spec: str, params: tuple) -> dict:
    """``"e=1,f=1/2"`` or positional ``"1,1/2"`` in parameter order."""
    parts = [p.strip() for p in spec.split(",") if p.strip()]
    out = {}
    try:
        for k, part in enumerate(parts):
            if "=" in part:
                name, val = (s.strip() for s in part.split("=", 1))
            else:
                if k >= len(params):
                    raise TjurinaError("PARSE_ERROR", f"too many values in {spec!r}")
                name, val = params[k], part
            if name not in params:
                raise TjurinaError("PARSE_ERROR", f"unknown parameter {name!r}")
            out[name] = Fraction(val)
    except (ValueError, ZeroDivisionError):
        raise TjurinaError("PARSE_ERROR", f"bad parameter values {spec!r}") from None
    missing = [p for p in params if p not in out]
    if missing:
        raise TjurinaError("PARSE_ERROR", f"no value for parameters {missing}")
    return out


def cmd_fiber(args, doc):
    if not doc.params:
        raise TjurinaError("PARSE_ERROR", "fiber needs a document with 'defparams:'")
    values = parse_values(args.at, doc.params)
    f = fiber_smoothness(doc.family(), values)
    data = {"at": values, "status": f.status, "dim": f.dim, "points": f.points}
    at = ", ".join(f"{k}={v}" for k, v in values.items())
    text = f"fiber at {at}: {f.status}"
    if not f.smooth:
        text += f" (singular locus dim {f.dim}" + \
            (f", {f.points} points)" if f.points is not None else ")")
    _emit(args, data, text)


def cmd_report(args, doc):
    rep = build_report(doc, experimental=args.experimental or None,
                       timings=not args.no_timings)
    sys.stdout.write(rep.to_json() if args.json else rep.render() + "\n")


COMMANDS = {
    "validate": (cmd_validate, "check the ICMC2 hypotheses"),
    "jet": (cmd_jet, "classify the 1-jet of a 3x2 presentation"),
    "transform": (cmd_transform, "chart equations of the Tjurina transform"),
    "sing": (cmd_sing, "singular locus of the transform, chart by chart"),
    "tau": (cmd_tau, "Tjurina numbers downstairs and upstairs"),
    "flatness": (cmd_flatness, "flatness of the modification in the family"),
    "fiber": (cmd_fiber, "smoothness of a fiber of the family"),
    "report": (cmd_report, "full topology report"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tjurina", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, helptext) in COMMANDS.items():
        p = sub.add_parser(name, help=helptext)
        p.add_argument("input", help="input document")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if name == "transform":
            p.add_argument("--chart", type=int, help="only this chart (1..t)")
        elif name == "tau":
            g = p.add_mutually_exclusive_group()
            g.add_argument("--upstairs", action="store_true")
            g.add_argument("--downstairs", action="store_true")
        elif name == "fiber":
            p.add_argument("--at", required=True, help='parameter values, e.g. "e=1"')
        elif name == "report":
            p.add_argument("--experimental", action="store_true",
                           help="allow the t=3 experimental report")
            p.add_argument("--no-timings", action="store_true",
                           help="omit timings (byte-stable output)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = load_input(args.input)
        COMMANDS[args.command][0](args, doc)
    except TjurinaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
