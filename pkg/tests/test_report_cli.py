from __future__ import annotations

import json
from pathlib import Path

import pytest

from tjurina.cli import main, parse_values
from tjurina.errors import TjurinaError
from tjurina.report import (REPORT_KEYS, TopologyReport, build_report, dumps, jsonable,
                            load_input, parse_input)

DATA = Path(__file__).resolve().parent.parent / "data"

A0PLUS_DOC = """\
# terminal threefold
vars: x,y,z,v,w
matrix: 2 x 3
x, y, z
v, w, x
"""


def write(tmp_path, text, name="doc.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestParseInput:
    def test_a0plus(self):
        doc = parse_input(A0PLUS_DOC)
        assert doc.xvars == ("x", "y", "z", "v", "w") and doc.params == ()
        assert doc.shape == (2, 3)
        P = doc.presentation()
        assert P.t == 2 and P.matrix.shape == (3, 2)

    def test_implicit_multiplication(self):
        doc = parse_input(A0PLUS_DOC.replace("v, w, x", "v, 2x, x"), "m.txt")
        with pytest.raises(TjurinaError) as exc:
            doc.matrix()
        assert exc.value.code == "PARSE_ERROR"
        assert "m.txt:5:" in str(exc.value)

    def test_error_column(self):
        doc = parse_input("vars: x,y\nmatrix: 3 x 2\n0, x\nx, y\ny, x+*y\n")
        with pytest.raises(TjurinaError) as exc:
            doc.matrix()
        loc = str(exc.value).split(": ", 2)[1]
        line, col = map(int, loc.split(":")[1:3])
        assert line == 5 and col >= 4

    def test_wrong_entry_count(self):
        bad = "vars: x,y,z\nmatrix: 3 x 2\nx, y\ny, z\nz, x, y\n"
        with pytest.raises(TjurinaError) as exc:
            parse_input(bad)
        assert exc.value.code == "SHAPE_ERROR" and exc.value.exit_code == 2

    def test_missing_rows(self):
        with pytest.raises(TjurinaError) as exc:
            parse_input("vars: x,y\nmatrix: 3 x 2\n0, x\nx, y\n")
        assert exc.value.code == "SHAPE_ERROR"

    @pytest.mark.parametrize("text", [
        "matrix: 1 x 2\nx, y\n",
        "vars: x\n",
        "vars: x, 2y\nmatrix: 1 x 2\nx, x\n",
        "vars: x\ncolour: red\n",
        "vars: x\nmatrix: two by three\n",
        "vars: x,e\ndefparams: e\nmatrix: 1 x 2\nx, e\n",
        "vars: x\nmatrix: 1 x 2\nx, x\noptions:\nspeed: fast\n",
        "vars: x\nmatrix: 1 x 2\nx, \n",
    ])
    def test_parse_errors(self, text):
        with pytest.raises(TjurinaError) as exc:
            parse_input(text)
        assert exc.value.exit_code == 2

    def test_unknown_variable(self):
        doc = parse_input("vars: x,y\nmatrix: 1 x 2\nx, q\n")
        with pytest.raises(TjurinaError) as exc:
            doc.matrix()
        assert exc.value.code == "PARSE_ERROR"

    def test_options_and_comments(self):
        doc = parse_input(A0PLUS_DOC + "options:\nexperimental: yes  # allow t=3\nchart: 2\n")
        assert doc.experimental and doc.options["chart"] == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(TjurinaError) as exc:
            load_input(str(tmp_path / "nope.txt"))
        assert exc.value.code == "IO_ERROR"

    def test_echo(self):
        doc = parse_input(A0PLUS_DOC)
        assert doc.echo()["matrix"] == [["x", "y", "z"], ["v", "w", "x"]]


class TestJson:
    def test_fractions(self):
        from fractions import Fraction
        assert jsonable({"a": [Fraction(3), Fraction(-1, 2)]}) == {"a": [3, "-1/2"]}
        assert dumps({"b": 1}).endswith("}\n")

    @pytest.mark.parametrize("name", ["a0plus", "pi2"])
    def test_round_trip(self, name):
        rep = build_report(load_input(str(DATA / f"{name}.txt")), timings=False)
        text = rep.to_json()
        again = TopologyReport.from_json(text)
        assert again.to_json() == text
        assert list(json.loads(text)) == list(REPORT_KEYS)

    def test_pi2_values(self):
        rep = build_report(load_input(str(DATA / "pi2.txt")))
        assert rep.betti == [1, 0, 1, 0] and rep.tau_up == 0 and rep.h1 == rep.tau_down == 3
        assert rep.note is None and set(rep.timings_ms) == {"validate", "transform", "tau_down"}

    def test_missing_keys(self):
        with pytest.raises(TjurinaError):
            TopologyReport.from_json('{"t": 2}')

    def test_t3_needs_flag(self):
        doc = parse_input("vars: x,y,z,u,v\nmatrix: 4 x 3\n"
                          "x, y-v, y+z\ny, z-v, x+u\nz, 0, x-u\n0, u, v\n")
        with pytest.raises(TjurinaError) as exc:
            build_report(doc)
        assert exc.value.code == "WRONG_TYPE"


class TestParseValues:
    def test_named_and_positional(self):
        assert parse_values("e=1/2", ("e",)) == {"e": 0.5}
        assert parse_values("1, 3", ("a", "b")) == {"a": 1, "b": 3}

    @pytest.mark.parametrize("spec", ["f=1", "1,2", "e=x", ""])
    def test_errors(self, spec):
        with pytest.raises(TjurinaError):
            parse_values(spec, ("e",))


class TestCli:
    def test_validate(self, tmp_path, capsys):
        code, out, _ = run(["validate", write(tmp_path, A0PLUS_DOC)], capsys)
        assert code == 0 and "t = 2" in out

    def test_validate_json(self, tmp_path, capsys):
        code, out, _ = run(["validate", write(tmp_path, A0PLUS_DOC), "--json"], capsys)
        data = json.loads(out)
        assert code == 0 and data["t"] == 2 and data["validation"]["isolated"] is True

    def test_jet(self, capsys):
        code, out, _ = run(["jet", str(DATA / "pi1.txt"), "--json"], capsys)
        assert code == 0 and json.loads(out)["tag"] == "FULL"

    def test_transform_chart(self, capsys):
        code, out, _ = run(["transform", str(DATA / "a0plus.txt"), "--chart", "1", "--json"],
                           capsys)
        charts = json.loads(out)["charts"]
        assert code == 0 and len(charts) == 1 and charts[0]["chart_vars"] == ["s2"]

    def test_bad_chart(self, capsys):
        code, _, err = run(["transform", str(DATA / "a0plus.txt"), "--chart", "5"], capsys)
        assert code == 2 and "BAD_CHART" in err

    def test_tau(self, capsys):
        code, out, _ = run(["tau", str(DATA / "pi3.txt"), "--json"], capsys)
        assert code == 0 and json.loads(out) == {
            "tau_down": 5, "tau_up": 0, "charts": [
                {"index": 1, "tau_new": 0, "tau_total": 0},
                {"index": 2, "tau_new": 0, "tau_total": 0}], "h1": 5}

    def test_tau_downstairs_only(self, capsys):
        code, out, _ = run(["tau", str(DATA / "pi1.txt"), "--downstairs"], capsys)
        assert code == 0 and out == "tau_down = 1\n"

    def test_flatness(self, capsys):
        code, out, _ = run(["flatness", str(DATA / "fatpoint.txt")], capsys)
        assert code == 0
        assert out.splitlines()[:2] == ["NOT_FLAT", "witness: s1^2*e1 - s1*s2*e2 + s2^2*e3"]

    def test_fiber(self, capsys):
        code, out, _ = run(["fiber", str(DATA / "pi3.txt"), "--at", "e=1", "--json"], capsys)
        data = json.loads(out)
        assert code == 0 and data["status"] == "SINGULAR" and data["points"] == 3

    def test_fiber_needs_params(self, capsys):
        code, _, err = run(["fiber", str(DATA / "a0plus.txt"), "--at", "1"], capsys)
        assert code == 2 and "PARSE_ERROR" in err

    def test_report_byte_stable(self, capsys):
        argv = ["report", str(DATA / "pi2.txt"), "--json", "--no-timings"]
        _, first, _ = run(argv, capsys)
        _, second, _ = run(argv, capsys)
        assert first == second
        assert TopologyReport.from_json(first).to_json() == first

    def test_report_text(self, capsys):
        code, out, _ = run(["report", str(DATA / "a0plus.txt")], capsys)
        assert code == 0 and "betti (b0..b3) = 1, 0, 1, 0" in out

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = run(["validate", str(tmp_path / "none.txt")], capsys)
        assert code == 2 and err.startswith("error: IO_ERROR")

    def test_parse_error_exit(self, tmp_path, capsys):
        path = write(tmp_path, A0PLUS_DOC.replace("x, y, z", "x, y, 3z"))
        code, _, err = run(["validate", path], capsys)
        assert code == 2 and "PARSE_ERROR" in err and ":4:" in err

    def test_not_isolated_exit(self, tmp_path, capsys):
        path = write(tmp_path, "vars: x,y,z,v,w\nmatrix: 3 x 2\nx, 0\n0, x\n0, 0\n")
        code, _, err = run(["validate", path], capsys)
        assert code == 3 and "NOT_ISOLATED" in err

    def test_non_isolated_transform_exit(self, tmp_path, capsys):
        path = write(tmp_path, "vars: x,y,z,v,w\nmatrix: 3 x 2\nx, y\nz, v\n"
                               "w^2+y*v, z^2+x^2\n")
        code, _, err = run(["tau", path, "--upstairs"], capsys)
        assert code == 3 and "NON_ISOLATED_TRANSFORM" in err

    def test_sing_non_isolated(self, tmp_path, capsys):
        path = write(tmp_path, "vars: x,y,z,v,w\nmatrix: 3 x 2\nx, y\nz, v\n"
                               "w^2+y*v, z^2+x^2\n")
        code, out, _ = run(["sing", path, "--json"], capsys)
        assert code == 0 and json.loads(out)["points"] is None

    def test_t3_report_exit(self, tmp_path, capsys):
        text = "vars: x,y,z,u,v\nmatrix: 4 x 3\nx, y-v, y+z\ny, z-v, x+u\nz, 0, x-u\n0, u, v\n"
        code, _, err = run(["report", write(tmp_path, text)], capsys)
        assert code == 3 and "WRONG_TYPE" in err

    def test_t1_report_exit(self, tmp_path, capsys):
        code, _, err = run(["report", write(tmp_path, "vars: x,y\nmatrix: 2 x 1\nx\ny\n")],
                           capsys)
        assert code == 3 and "WRONG_TYPE" in err

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2
