import csv
import io
import json

import pytest

from knotasym.cli import main
from knotasym.exactpoly import BivarPoly, QLaurent
from knotasym.qjones import JonesQuery, jones_eval
from knotasym.knots import KnotSpec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_apoly_text(capsys):
    assert run(capsys, "apoly", "--knot", "twist:1") == (0, "l + m^6\n", "")
    assert run(capsys, "apoly", "--knot", "torus:2")[1] == "l*m^10 + 1\n"


def test_apoly_json(capsys):
    code, out, _ = run(capsys, "apoly", "--knot", "twist:-1", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert list(doc) == ["command", "config", "results", "checks"]
    assert len(doc["results"][0]["terms"]) == 7
    assert BivarPoly.parse(doc["results"][0]["poly"]) == BivarPoly.parse(
        "-l + l*m^2 + m^4 + 2*l*m^4 + l^2*m^4 + l*m^6 - l*m^8")


def test_apoly_crosscheck(capsys):
    code, out, _ = run(capsys, "apoly", "--knot", "twist:-4", "--crosscheck")
    assert code == 0 and "PASS matrix route = 3-term route" in out
    code, out, _ = run(capsys, "apoly", "--knot", "torus:3", "--crosscheck")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("spec", ["twist:0", "torus:0", "twist", "knot:3", "twist:x"])
def test_bad_knot_spec(capsys, spec):
    with pytest.raises(SystemExit) as exc:
        main(["apoly", "--knot", spec])
    assert exc.value.code == 2


def test_printed_polynomials_reparse(capsys):
    for knot in ("twist:3", "twist:-2", "torus:4"):
        out = run(capsys, "apoly", "--knot", knot)[1]
        poly = BivarPoly.parse(out.strip())
        assert str(poly) == out.strip()
    out = run(capsys, "jones", "--knot", "twist:2", "--color", "4")[1].strip()
    assert str(QLaurent.parse(out)) == out


def test_jones(capsys):
    assert run(capsys, "jones", "--knot", "twist:-1", "--color", "2")[1] == "q^2 - q + 1 - q^-1 + q^-2\n"
    assert run(capsys, "jones", "--knot", "torus:1", "--color", "1")[1] == "1\n"
    code, out, _ = run(capsys, "jones", "--knot", "twist:-1", "--color", "5", "--eval", "r=1",
                       "--format", "json")
    res = json.loads(out)["results"][0]
    want = jones_eval(JonesQuery(KnotSpec("twist", -1), 5, 1))
    assert code == 0 and abs(complex(res["re"], res["im"]) - want) < 1e-12


def test_jones_errors(capsys):
    code, _, err = run(capsys, "jones", "--knot", "twist:5", "--color", "60")
    assert code == 3 and "cap" in err
    assert run(capsys, "jones", "--knot", "twist:1", "--color", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["jones", "--knot", "twist:1", "--color", "3", "--eval", "s=1"])
    assert exc.value.code == 2


def test_volume_single_row(capsys):
    code, out, _ = run(capsys, "volume", "--p", "2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["p", "volume", "re_x0", "im_x0"]
    assert rows[1][0] == "2"
    assert abs(float(rows[1][1]) - 2.82812) < 1e-5
    assert abs(complex(float(rows[1][2]), float(rows[1][3])) - complex(1.21508, -1.30714)) < 1e-5


def test_volume_table(capsys):
    code, out, _ = run(capsys, "volume", "--paper-table", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert code == 0 and len(rows) == 9
    assert rows[0] == ["-5", "3.57388", "0.99151", "-1.91177"]
    assert rows[5] == ["2", "2.82812", "1.21508", "-1.30714"]


def test_volume_limit_check(capsys):
    code, out, _ = run(capsys, "volume", "--p-range", "2..50", "--limit-check", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["results"]) == 49
    assert all(c["status"] == "pass" for c in doc["checks"])
    assert run(capsys, "volume", "--p-range=-2..2")[0] == 2


def test_vzeros(capsys):
    code, out, _ = run(capsys, "vzeros", "--k", "1")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["k", "re", "im", "residual"] and len(rows) == 3
    code, out, _ = run(capsys, "vzeros", "--k", "5,10,30,50", "--upper-half", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))[1:]
    assert len(rows) == 95
    assert all(float(r[3]) < 1e-8 and float(r[2]) > 0 for r in rows)
    assert run(capsys, "vzeros", "--k", "0")[0] == 2


def test_verify_apoly(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "apoly", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["ok"]
    names = [c["identity"] for c in doc["checks"]]
    assert any("3-term" in n for n in names) and any("M+ M-" in n for n in names)


def test_output_is_deterministic(capsys, tmp_path):
    target = tmp_path / "a.json"
    outs = []
    for _ in range(2):
        assert main(["volume", "--p-range=-3..-1", "--format", "json", "-o", str(target)]) == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
